#ifndef TUBEDSE_COCYCLE_HPP
#define TUBEDSE_COCYCLE_HPP

#include <string>
#include <unordered_map>

#include "tubedse/mellin.hpp"
#include "tubedse/poly.hpp"
#include "tubedse/trees.hpp"

namespace tubedse {

/// Scale-variable names: the output variable is "L", the per-place inputs
/// are "L.<place>".
inline std::string scale_symbol() { return "L"; }
inline std::string scale_symbol(const std::string& place) { return "L." + place; }
bool is_scale_symbol(const std::string& name);

/// The integro-differential operator of a primitive applied to a polynomial
/// in that primitive's scale variables: on a monomial prod_e L_e^{alpha_e},
///
///   sum_{beta <= alpha} rawA(beta) * prod_e alpha_e^(falling beta_e)
///                       * L^{|alpha|-|beta|+1} / (|alpha|-|beta|+1),
///
/// extended linearly; symbols other than scale variables ride along as
/// coefficients. For a single-place primitive a bare "L" in the input is
/// accepted as an alias for its one scale variable. Foreign scale variables
/// are an error.
Poly apply_cocycle(const PrimitiveInfo& p, const MellinSeries& A, const Poly& f);

/// Memoized recursive evaluation of the universal map determined by the
/// cocycles: phi(B+^(p)(tensor of forests)) = Lambda_p(product of phi of the
/// components, each renamed into its place's scale variable); phi(1) = 1.
/// phi of the single vertex p is coeff(p, 0) * L: integration always
/// contributes the factor L.
class PhiContext {
public:
    PhiContext(const std::map<std::string, PrimitiveInfo>& primitives,
               const std::map<std::string, MellinSeries>& mellin)
        : primitives_(&primitives), mellin_(&mellin) {}

    const PrimitiveInfo& primitive(const std::string& label) const;
    const MellinSeries& mellin(const std::string& label) const;

    std::unordered_map<std::string, Poly>& memo() { return memo_; }

private:
    const std::map<std::string, PrimitiveInfo>* primitives_;
    const std::map<std::string, MellinSeries>* mellin_;
    std::unordered_map<std::string, Poly> memo_;
};

Poly phi_recursive(const TreePtr& t, PhiContext& ctx);
/// Algebra morphism: product over the components.
Poly phi_recursive(const Forest& f, PhiContext& ctx);

/// Checks the polynomial 1-cocycle identity for Lambda_p on the input f by
/// two-variable substitution: with Lambda f computed once,
///   (Lambda f)(L' + L'')  ==  (Lambda f)(L')
///                             + sum over the coaction expansion of f of
///                               (L' part) * (Lambda applied to the L'' part),
/// where the coaction sends each L_e to L' + L''_e. Exact equality of
/// polynomials in L', L'' and the riding coefficient symbols.
bool cocycle_identity_check(const PrimitiveInfo& p, const MellinSeries& A, const Poly& f);

}  // namespace tubedse

#endif
