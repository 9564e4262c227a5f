#include "tubedse/hopf.hpp"

#include <functional>
#include <stdexcept>

namespace tubedse {

ForestLC::ForestLC(const Forest& f, Poly coeff) {
    if (!coeff.is_zero()) terms_.emplace(f, std::move(coeff));
}

void ForestLC::add(const Forest& f, const Poly& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(f);
    if (it == terms_.end()) {
        terms_.emplace(f, c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

ForestLC& ForestLC::operator+=(const ForestLC& o) {
    for (const auto& [f, c] : o.terms_) add(f, c);
    return *this;
}

ForestLC operator*(const ForestLC& a, const ForestLC& b) {
    ForestLC r;
    for (const auto& [fa, ca] : a.terms_)
        for (const auto& [fb, cb] : b.terms_) r.add(fa.disjoint_union(fb), ca * cb);
    return r;
}

ForestLC ForestLC::scaled(const Rational& c) const {
    ForestLC r;
    for (const auto& [f, v] : terms_) r.add(f, v.scaled(c));
    return r;
}

ForestLC ForestLC::scaled_poly(const Poly& c) const {
    ForestLC r;
    for (const auto& [f, v] : terms_) r.add(f, v * c);
    return r;
}

Poly ForestLC::counit() const {
    auto it = terms_.find(Forest::empty());
    return it == terms_.end() ? Poly() : it->second;
}

Poly ForestLC::eval_trees_to_one() const {
    Poly total;
    for (const auto& [f, c] : terms_) {
        (void)f;
        total += c;
    }
    return total;
}

std::string ForestLC::str() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [f, c] : terms_) {
        if (!first) out += " + ";
        first = false;
        out += "(" + c.str() + ") " + f.str();
    }
    return out;
}

Json ForestLC::to_json() const {
    Json arr = Json::array();
    for (const auto& [f, c] : terms_)
        arr.push_back(Json{{"forest", f.str()}, {"coeff", c.to_json()}});
    return arr;
}

void TensorLC::add(const Forest& left, const Forest& right, const Poly& c) {
    if (c.is_zero()) return;
    auto key = std::make_pair(left, right);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

TensorLC& TensorLC::operator+=(const TensorLC& o) {
    for (const auto& [k, c] : o.terms_) add(k.first, k.second, c);
    return *this;
}

TensorLC operator*(const TensorLC& a, const TensorLC& b) {
    TensorLC r;
    for (const auto& [ka, ca] : a.terms_)
        for (const auto& [kb, cb] : b.terms_)
            r.add(ka.first.disjoint_union(kb.first), ka.second.disjoint_union(kb.second), ca * cb);
    return r;
}

TensorLC TensorLC::scaled(const Rational& c) const {
    TensorLC r;
    for (const auto& [k, v] : terms_) r.add(k.first, k.second, v.scaled(c));
    return r;
}

Json TensorLC::to_json() const {
    Json arr = Json::array();
    for (const auto& [k, c] : terms_)
        arr.push_back(
            Json{{"left", k.first.str()}, {"right", k.second.str()}, {"coeff", c.to_json()}});
    return arr;
}

void CoactionLC::add(const Forest& left, const std::vector<Forest>& right, const Poly& c) {
    if (c.is_zero()) return;
    Key key{left, right};
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Json CoactionLC::to_json() const {
    Json arr = Json::array();
    for (const auto& [k, c] : terms_) {
        Json tuple = Json::array();
        for (const auto& f : k.second) tuple.push_back(f.str());
        arr.push_back(
            Json{{"left", k.first.str()}, {"right", std::move(tuple)}, {"coeff", c.to_json()}});
    }
    return arr;
}

TensorLC tensor_product(const ForestLC& left, const ForestLC& right) {
    TensorLC r;
    for (const auto& [fl, cl] : left.terms())
        for (const auto& [fr, cr] : right.terms()) r.add(fl, fr, cl * cr);
    return r;
}

TensorLC coproduct(const ForestLC& f) {
    TensorLC r;
    for (const auto& [forest, coeff] : f.terms())
        for (const auto& [down, up] : downset_splits(forest)) r.add(down, up, coeff);
    return r;
}

TreePtr graft(const PrimitiveInfo& p, const std::vector<Forest>& args_by_place) {
    if (args_by_place.size() != p.places.size())
        throw std::invalid_argument("graft: argument count does not match places of '" + p.label +
                                    "'");
    std::vector<ChildEdge> kids;
    for (std::size_t i = 0; i < p.places.size(); ++i)
        for (const auto& t : args_by_place[i].trees()) kids.push_back({p.places[i], t});
    return DecoratedTree::make(p.label, std::move(kids));
}

namespace {

// Expands a tuple of linear combinations into basis tuples with coefficients.
void for_each_basis_tuple(const std::vector<ForestLC>& args,
                          const std::function<void(const std::vector<Forest>&, const Poly&)>& fn) {
    std::vector<Forest> tuple(args.size());
    std::function<void(std::size_t, Poly)> walk = [&](std::size_t i, Poly coeff) {
        if (i == args.size()) {
            fn(tuple, coeff);
            return;
        }
        for (const auto& [f, c] : args[i].terms()) {
            tuple[i] = f;
            walk(i + 1, coeff * c);
        }
    };
    walk(0, Poly(1));
}

}  // namespace

ForestLC b_plus(const PrimitiveInfo& p, const std::vector<ForestLC>& args_by_place) {
    ForestLC r;
    for_each_basis_tuple(args_by_place, [&](const std::vector<Forest>& tuple, const Poly& coeff) {
        r.add(Forest(graft(p, tuple)), coeff);
    });
    return r;
}

CoactionLC coaction(const std::vector<ForestLC>& args_by_place) {
    CoactionLC r;
    for_each_basis_tuple(args_by_place, [&](const std::vector<Forest>& tuple, const Poly& coeff) {
        // one downset choice per component, left legs multiplied
        std::vector<std::vector<std::pair<Forest, Forest>>> splits;
        splits.reserve(tuple.size());
        for (const auto& f : tuple) splits.push_back(downset_splits(f));

        std::vector<Forest> right(tuple.size());
        std::function<void(std::size_t, Forest)> walk = [&](std::size_t i, Forest left) {
            if (i == tuple.size()) {
                r.add(left, right, coeff);
                return;
            }
            for (const auto& [down, up] : splits[i]) {
                right[i] = up;
                walk(i + 1, left.disjoint_union(down));
            }
        };
        walk(0, Forest::empty());
    });
    return r;
}

bool check_cocycle(const PrimitiveInfo& p, const std::vector<ForestLC>& args_by_place) {
    const ForestLC grafted = b_plus(p, args_by_place);
    const TensorLC lhs = coproduct(grafted);

    TensorLC rhs = tensor_product(grafted, ForestLC::one());
    const CoactionLC delta = coaction(args_by_place);
    for (const auto& [key, coeff] : delta.terms())
        rhs.add(key.first, Forest(graft(p, key.second)), coeff);

    return lhs == rhs;
}

bool rio_coproduct_holds(const std::vector<TruncSeries<ForestLC>>& T,
                         const TruncSeries<ForestLC>& Q, std::size_t equationIndex, int n) {
    const auto& Ti = T.at(equationIndex);
    if (n > Ti.truncation() || n > Q.truncation())
        throw std::invalid_argument("rio check: order beyond truncation");

    const TensorLC lhs = coproduct(Ti.at(n));

    TensorLC rhs;
    TruncSeries<ForestLC> TiQj = Ti;  // T_i Q^j, starting at j = 0
    for (int j = 0; j <= n; ++j) {
        rhs += tensor_product(TiQj.at(n), Ti.at(j));
        if (j < n) TiQj = TiQj * Q;
    }
    return lhs == rhs;
}

}  // namespace tubedse
