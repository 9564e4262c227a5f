#include "tubedse/cocycle.hpp"

#include <functional>
#include <stdexcept>

namespace tubedse {

bool is_scale_symbol(const std::string& name) {
    return name == "L" || name.rfind("L.", 0) == 0;
}

namespace {

// Splits a monomial into per-place scale exponents and the riding remainder.
struct SplitMonomial {
    std::vector<int> alpha;
    Monomial rest;
};

SplitMonomial split_scales(const Monomial& mono, const PrimitiveInfo& p) {
    SplitMonomial out;
    out.alpha.assign(p.places.size(), 0);
    for (const auto& [sym, e] : mono) {
        if (!is_scale_symbol(sym)) {
            out.rest[sym] = e;
            continue;
        }
        bool found = false;
        for (std::size_t i = 0; i < p.places.size(); ++i) {
            if (sym == scale_symbol(p.places[i])) {
                out.alpha[i] += e;
                found = true;
                break;
            }
        }
        if (!found) {
            if (sym == scale_symbol() && p.places.size() == 1) {
                out.alpha[0] += e;  // bare L aliases the unique place
            } else {
                throw std::invalid_argument("apply_cocycle: foreign scale variable '" + sym +
                                            "' for primitive '" + p.label + "'");
            }
        }
    }
    return out;
}

void for_each_beta_below(const std::vector<int>& alpha,
                         const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> beta(alpha.size(), 0);
    std::function<void(std::size_t)> walk = [&](std::size_t i) {
        if (i == alpha.size()) {
            fn(beta);
            return;
        }
        for (int b = 0; b <= alpha[i]; ++b) {
            beta[i] = b;
            walk(i + 1);
        }
        beta[i] = 0;
    };
    walk(0);
}

}  // namespace

Poly apply_cocycle(const PrimitiveInfo& p, const MellinSeries& A, const Poly& f) {
    if (A.places().size() != p.places.size())
        throw std::invalid_argument("apply_cocycle: mellin arity mismatch for '" + p.label + "'");
    Poly out;
    for (const auto& [mono, coeff] : f.terms()) {
        const SplitMonomial sm = split_scales(mono, p);
        int total = 0;
        for (int a : sm.alpha) total += a;
        const Poly rest = Poly::term(coeff, sm.rest);

        for_each_beta_below(sm.alpha, [&](const std::vector<int>& beta) {
            long long ff = 1;
            int btot = 0;
            for (std::size_t i = 0; i < beta.size(); ++i) {
                ff *= falling_factorial_int(sm.alpha[i], beta[i]);
                btot += beta[i];
            }
            if (ff == 0) return;
            const Poly raw = A.raw_coeff(beta);
            if (raw.is_zero()) return;
            const int k = total - btot + 1;
            const Rational scale = Rational(ff) / Rational(k);
            out += rest * raw * Poly::symbol(scale_symbol(), k).scaled(scale);
        });
    }
    return out;
}

const PrimitiveInfo& PhiContext::primitive(const std::string& label) const {
    auto it = primitives_->find(label);
    if (it == primitives_->end())
        throw std::invalid_argument("phi: unknown primitive '" + label + "'");
    return it->second;
}

const MellinSeries& PhiContext::mellin(const std::string& label) const {
    auto it = mellin_->find(label);
    if (it == mellin_->end())
        throw std::invalid_argument("phi: no mellin data for primitive '" + label + "'");
    return it->second;
}

Poly phi_recursive(const TreePtr& t, PhiContext& ctx) {
    auto memo = ctx.memo().find(t->code());
    if (memo != ctx.memo().end()) return memo->second;

    const PrimitiveInfo& p = ctx.primitive(t->decoration());

    // argument of the cocycle: per place, the product of the children's
    // images with L renamed to that place's variable
    Poly arg = Poly::one();
    for (const auto& place : p.places) {
        Poly g = Poly::one();
        for (const auto& ce : t->children()) {
            if (ce.place != place) continue;
            g *= phi_recursive(ce.child, ctx);
        }
        arg *= g.substitute({{scale_symbol(), Poly::symbol(scale_symbol(place))}});
    }
    for (const auto& ce : t->children()) {
        bool known = false;
        for (const auto& place : p.places) known = known || ce.place == place;
        if (!known)
            throw std::invalid_argument("phi: edge place '" + ce.place +
                                        "' not among the places of '" + p.label + "'");
    }

    Poly result = apply_cocycle(p, ctx.mellin(t->decoration()), arg);
    ctx.memo().emplace(t->code(), result);
    return result;
}

Poly phi_recursive(const Forest& f, PhiContext& ctx) {
    Poly out = Poly::one();
    for (const auto& t : f.trees()) out *= phi_recursive(t, ctx);
    return out;
}

bool cocycle_identity_check(const PrimitiveInfo& p, const MellinSeries& A, const Poly& f) {
    const std::string Lleft = "L'";
    const std::string Lright = "L''";

    const Poly image = apply_cocycle(p, A, f);
    const Poly lhs = image.substitute(
        {{scale_symbol(), Poly::symbol(Lleft) + Poly::symbol(Lright)}});

    Poly rhs = image.substitute({{scale_symbol(), Poly::symbol(Lleft)}});

    for (const auto& [mono, coeff] : f.terms()) {
        const SplitMonomial sm = split_scales(mono, p);
        const Poly rest = Poly::term(coeff, sm.rest);
        int total = 0;
        for (int a : sm.alpha) total += a;

        for_each_beta_below(sm.alpha, [&](const std::vector<int>& beta) {
            Rational binom = 1;
            int btot = 0;
            for (std::size_t i = 0; i < beta.size(); ++i) {
                binom *= rational_binomial(Rational(sm.alpha[i]), beta[i]);
                btot += beta[i];
            }
            Monomial betaMono;
            for (std::size_t i = 0; i < beta.size(); ++i)
                if (beta[i] > 0) betaMono[scale_symbol(p.places[i])] = beta[i];
            const Poly lambdaRight =
                apply_cocycle(p, A, Poly::term(Rational(1), betaMono))
                    .substitute({{scale_symbol(), Poly::symbol(Lright)}});
            rhs += rest.scaled(binom) * Poly::symbol(Lleft, total - btot) * lambdaRight;
        });
    }
    return lhs == rhs;
}

}  // namespace tubedse
