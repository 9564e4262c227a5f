#include "tubedse/poly.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace tubedse {

Poly::Poly(const Rational& c) {
    if (!c.is_zero()) terms_[Monomial{}] = c;
}

Poly Poly::symbol(const std::string& name, int exponent) {
    if (name.empty()) throw std::invalid_argument("poly: empty symbol name");
    Poly p;
    if (exponent < 0) throw std::invalid_argument("poly: negative exponent");
    if (exponent == 0) return one();
    p.terms_[Monomial{{name, exponent}}] = Rational(1);
    return p;
}

Poly Poly::term(const Rational& coeff, const Monomial& mono) {
    Poly p;
    p.add_term(mono, coeff);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    return terms_.size() == 1 && terms_.begin()->first.empty();
}

Rational Poly::constant_value() const {
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? Rational(0) : it->second;
}

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (c.is_zero()) return;
    for (const auto& [sym, e] : m)
        if (e <= 0) throw std::invalid_argument("poly: nonpositive exponent in monomial");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r;
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly& Poly::operator+=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
}

Poly& Poly::operator-=(const Poly& o) {
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a.terms_) {
        for (const auto& [mb, cb] : b.terms_) {
            Monomial m = ma;
            for (const auto& [sym, e] : mb) m[sym] += e;
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r;
    if (c.is_zero()) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

Poly Poly::pow(int k) const {
    if (k < 0) throw std::invalid_argument("poly: negative power");
    Poly r = one();
    for (int j = 0; j < k; ++j) r = r * *this;
    return r;
}

namespace {

// One replacement pass: assigned symbols replaced by their images, which are
// not themselves re-expanded.
Poly substitute_once(const Poly& p, const std::map<std::string, Poly>& map) {
    Poly out;
    for (const auto& [mono, coeff] : p.terms()) {
        Poly term(coeff);
        for (const auto& [sym, e] : mono) {
            auto it = map.find(sym);
            if (it == map.end()) {
                term *= Poly::symbol(sym, e);
            } else {
                term *= it->second.pow(e);
            }
        }
        out += term;
    }
    return out;
}

}  // namespace

Poly Poly::substitute(const std::map<std::string, Poly>& assignments) const {
    if (assignments.empty()) return *this;

    // Cycle check on the graph s -> t for assigned t occurring in image(s).
    enum class Mark { none, active, done };
    std::map<std::string, Mark> mark;
    std::map<std::string, Poly> expanded;
    std::vector<std::string> stack;

    auto visit = [&](auto&& self, const std::string& s) -> void {
        auto& m = mark[s];
        if (m == Mark::done) return;
        if (m == Mark::active)
            throw std::invalid_argument("poly: cyclic substitution through '" + s + "'");
        m = Mark::active;
        std::map<std::string, Poly> deps;
        for (const std::string& t : assignments.at(s).symbols()) {
            if (!assignments.count(t)) continue;
            self(self, t);
            deps.emplace(t, expanded.at(t));
        }
        expanded[s] = deps.empty() ? assignments.at(s) : substitute_once(assignments.at(s), deps);
        m = Mark::done;
    };
    for (const auto& [s, img] : assignments) visit(visit, s);

    return substitute_once(*this, expanded);
}

Poly Poly::derivative(const std::string& sym) const {
    Poly r;
    for (const auto& [mono, coeff] : terms_) {
        auto it = mono.find(sym);
        if (it == mono.end()) continue;
        Monomial m = mono;
        int e = it->second;
        if (e == 1)
            m.erase(sym);
        else
            m[sym] = e - 1;
        r.add_term(m, coeff * Rational(e));
    }
    return r;
}

Poly Poly::coefficient_of(const std::string& sym, int k) const {
    Poly r;
    for (const auto& [mono, coeff] : terms_) {
        auto it = mono.find(sym);
        int e = it == mono.end() ? 0 : it->second;
        if (e != k) continue;
        Monomial m = mono;
        m.erase(sym);
        r.add_term(m, coeff);
    }
    return r;
}

int Poly::degree_in(const std::string& sym) const {
    int d = 0;
    for (const auto& [mono, coeff] : terms_) {
        (void)coeff;
        auto it = mono.find(sym);
        if (it != mono.end()) d = std::max(d, it->second);
    }
    return d;
}

bool Poly::contains_symbol(const std::string& sym) const {
    for (const auto& [mono, coeff] : terms_) {
        (void)coeff;
        if (mono.count(sym)) return true;
    }
    return false;
}

std::set<std::string> Poly::symbols() const {
    std::set<std::string> s;
    for (const auto& [mono, coeff] : terms_) {
        (void)coeff;
        for (const auto& [sym, e] : mono) {
            (void)e;
            s.insert(sym);
        }
    }
    return s;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [mono, coeff] : terms_) {
        if (!first) out += " + ";
        first = false;
        out += coeff.str();
        for (const auto& [sym, e] : mono) {
            out += " * " + sym;
            if (e > 1) out += "^" + std::to_string(e);
        }
    }
    return out;
}

Json Poly::to_json() const {
    Json arr = Json::array();
    for (const auto& [mono, coeff] : terms_) {
        Json m = Json::object();
        for (const auto& [sym, e] : mono) m[sym] = e;
        arr.push_back(Json{{"coeff", coeff.str()}, {"monomial", std::move(m)}});
    }
    return arr;
}

Poly Poly::from_json(const Json& j) {
    Poly p;
    if (!j.is_array()) throw std::invalid_argument("poly: expected JSON array of terms");
    for (const auto& t : j) {
        Monomial m;
        for (const auto& [sym, e] : t.at("monomial").items()) m[sym] = e.get<int>();
        p.add_term(m, Rational::parse(t.at("coeff").get<std::string>()));
    }
    return p;
}

}  // namespace tubedse
