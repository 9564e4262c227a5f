#include "tubedse/mellin.hpp"

#include <functional>
#include <numeric>
#include <stdexcept>

namespace tubedse {

MellinSeries::MellinSeries(std::string primitiveLabel, std::vector<std::string> places,
                           int maxOrder, bool boring, bool symbolic)
    : label_(std::move(primitiveLabel)),
      places_(std::move(places)),
      max_order_(maxOrder),
      boring_(boring),
      symbolic_(symbolic) {
    if (places_.empty()) throw std::invalid_argument("mellin: primitive needs insertion places");
    if (max_order_ < 0) throw std::invalid_argument("mellin: negative order");
}

void MellinSeries::require_order(int order) {
    if (order > max_order_) max_order_ = order;
}

void MellinSeries::check_alpha(const std::vector<int>& alpha) const {
    if (alpha.size() != places_.size())
        throw std::invalid_argument("mellin '" + label_ + "': exponent vector arity mismatch");
    for (int a : alpha)
        if (a < 0) throw std::invalid_argument("mellin: negative exponent");
}

std::vector<int> MellinSeries::storage_key(const std::vector<int>& alpha) const {
    if (!boring_) return alpha;
    // boring coefficients depend only on the total degree
    std::vector<int> key(alpha.size(), 0);
    key[0] = std::accumulate(alpha.begin(), alpha.end(), 0);
    return key;
}

Poly MellinSeries::coeff(const std::vector<int>& alpha) const {
    check_alpha(alpha);
    const int total = std::accumulate(alpha.begin(), alpha.end(), 0);
    auto it = coeffs_.find(storage_key(alpha));
    if (it != coeffs_.end()) return it->second;
    if (!symbolic_) return Poly();
    if (total > max_order_)
        throw std::runtime_error("mellin '" + label_ + "': coefficient of total degree " +
                                 std::to_string(total) + " exceeds the materialized order " +
                                 std::to_string(max_order_));
    return Poly::symbol(default_symbol(label_, alpha, boring_));
}

Poly MellinSeries::raw_coeff(const std::vector<int>& alpha) const {
    return coeff(alpha).scaled(multinomial(alpha));
}

void MellinSeries::set_coeff(const std::vector<int>& alpha, Poly value) {
    check_alpha(alpha);
    const auto key = storage_key(alpha);
    auto it = coeffs_.find(key);
    if (boring_ && it != coeffs_.end() && !(it->second == value))
        throw std::invalid_argument("mellin '" + label_ +
                                    "': conflicting values for a boring coefficient");
    coeffs_[key] = std::move(value);
}

const std::vector<Rational>& MellinSeries::random_sample_set() {
    static const std::vector<Rational> set = {
        Rational(-9, 7), Rational(-5, 3), Rational(-3, 2), Rational(-1),
        Rational(-2, 3), Rational(-1, 2), Rational(-1, 3), Rational(1, 4),
        Rational(1, 3),  Rational(1, 2),  Rational(2, 3),  Rational(1),
        Rational(5, 4),  Rational(4, 3),  Rational(3, 2),  Rational(2)};
    return set;
}

void MellinSeries::bind_random(std::mt19937_64& rng) {
    const auto& sample = random_sample_set();
    std::uniform_int_distribution<std::size_t> pick(0, sample.size() - 1);
    coeffs_.clear();
    if (boring_) {
        for (int n = 0; n <= max_order_; ++n) {
            std::vector<int> alpha(places_.size(), 0);
            alpha[0] = n;
            coeffs_[alpha] = Poly(sample[pick(rng)]);
        }
    } else {
        for (const auto& alpha : exponent_vectors_up_to(static_cast<int>(places_.size()),
                                                        max_order_))
            coeffs_[alpha] = Poly(sample[pick(rng)]);
    }
    symbolic_ = false;
}

std::string MellinSeries::default_symbol(const std::string& label, const std::vector<int>& alpha,
                                         bool boring) {
    if (boring) {
        int total = std::accumulate(alpha.begin(), alpha.end(), 0);
        return "a[" + label + "][" + std::to_string(total) + "]";
    }
    std::string idx;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        if (i) idx += ",";
        idx += std::to_string(alpha[i]);
    }
    return "a[" + label + "][" + idx + "]";
}

Json MellinSeries::to_json() const {
    Json coeffs = Json::array();
    for (const auto& [alpha, value] : coeffs_) {
        Json a = Json::array();
        if (boring_) {
            a.push_back(alpha[0]);
        } else {
            for (int e : alpha) a.push_back(e);
        }
        Json entry = Json::object();
        entry["alpha"] = std::move(a);
        if (value.is_constant()) {
            entry["value"] = value.constant_value().str();
        } else if (value.terms().size() == 1 && value.terms().begin()->second.is_one() &&
                   value.terms().begin()->first.size() == 1 &&
                   value.terms().begin()->first.begin()->second == 1) {
            entry["value"] = value.terms().begin()->first.begin()->first;
        } else {
            entry["value"] = value.to_json();
        }
        coeffs.push_back(std::move(entry));
    }
    return Json{{"order", max_order_},
                {"boring", boring_},
                {"symbolic", symbolic_},
                {"coeffs", std::move(coeffs)}};
}

MellinSeries MellinSeries::from_json(const Json& j, const std::string& label,
                                     const std::vector<std::string>& places, int defaultOrder) {
    const bool boring = j.value("boring", false);
    const bool symbolic = j.value("symbolic", true);
    const int order = j.contains("order") ? j.at("order").get<int>() : defaultOrder;
    MellinSeries m(label, places, order, boring, symbolic);
    if (j.contains("coeffs")) {
        for (const auto& entry : j.at("coeffs")) {
            std::vector<int> alpha;
            const auto& a = entry.at("alpha");
            if (boring && a.size() == 1 && places.size() > 1) {
                alpha.assign(places.size(), 0);
                alpha[0] = a[0].get<int>();
            } else {
                for (const auto& e : a) alpha.push_back(e.get<int>());
            }
            const auto& v = entry.at("value");
            if (v.is_array()) {
                m.set_coeff(alpha, Poly::from_json(v));
            } else {
                const std::string s = v.get<std::string>();
                if (s == "sym") {
                    m.set_coeff(alpha, Poly::symbol(default_symbol(label, alpha, boring)));
                } else {
                    try {
                        m.set_coeff(alpha, Poly(Rational::parse(s)));
                    } catch (const std::invalid_argument&) {
                        m.set_coeff(alpha, Poly::symbol(s));
                    }
                }
            }
        }
    }
    return m;
}

std::vector<std::vector<int>> exponent_vectors_up_to(int arity, int maxTotal) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(arity), 0);
    std::function<void(int, int)> walk = [&](int i, int used) {
        if (i == arity) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; used + e <= maxTotal; ++e) {
            cur[static_cast<std::size_t>(i)] = e;
            walk(i + 1, used + e);
        }
        cur[static_cast<std::size_t>(i)] = 0;
    };
    walk(0, 0);
    return out;
}

}  // namespace tubedse
