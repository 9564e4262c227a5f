#ifndef TUBEDSE_DSE_HPP
#define TUBEDSE_DSE_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tubedse/hopf.hpp"
#include "tubedse/mellin.hpp"
#include "tubedse/series.hpp"
#include "tubedse/trees.hpp"

namespace tubedse {

using XSeries = TruncSeries<Poly>;
using ForestSeries = TruncSeries<ForestLC>;

/// Full data of one Dyson-Schwinger system: equation ids, primitives with
/// their Mellin data, the x-truncation, and (optionally) the exponent split
/// that certifies an invariant charge.
struct DSESpec {
    std::vector<std::string> equations;
    std::vector<PrimitiveInfo> primitives;
    std::map<std::string, MellinSeries> mellin;  // by primitive label
    int order = 0;

    struct Charge {
        bool present = false;
        std::map<std::string, Rational> s;                       // per equation
        std::map<std::string, std::pair<Rational, int>> split;   // place -> (u_e, w_e)
    };
    Charge charge;

    std::size_t equation_index(const std::string& id) const;
    std::map<std::string, PrimitiveInfo> primitive_table() const;

    /// Checks all structural invariants; charge data, when present, must
    /// satisfy sum u_e = 1, sum w_e = w_p and mu_e = u_e 1_i + w_e s exactly.
    void validate() const;

    /// Symbolic Mellin data must be materialized to order - 1.
    void require_mellin_order();

    void bind_random_mellin(std::uint64_t seed);

    Json to_json() const;
    static DSESpec from_json(const Json& j);
};

/// Per-equation tree series solving the combinatorial system, found by
/// order-by-order fixed-point iteration.
std::vector<ForestSeries> solve_combinatorial_fixpoint(const DSESpec& spec);

/// The same series from the closed form: sum over trees of the product of
/// per-place falling factorials of the insertion exponents at the outdegree
/// vectors, divided by the automorphism order.
std::vector<ForestSeries> solve_combinatorial_closed(const DSESpec& spec);

/// Rational weight of one tree in the closed-form solution (without x^w/Aut).
Rational tree_solution_weight(const TreePtr& t, const DSESpec& spec);

/// Green functions by fixed-point iteration of the analytic system, applying
/// each primitive's operator coefficientwise; this is the ground-truth
/// oracle route.
std::vector<XSeries> solve_analytic_oracle(const DSESpec& spec);

/// Green functions as the tubing expansion over all trees.
std::vector<XSeries> solve_analytic_tubing(const DSESpec& spec);

/// Image of a combinatorial solution under the universal map, computed by
/// the recursive route; the third way to the same series.
std::vector<XSeries> green_from_combinatorial(const DSESpec& spec,
                                              const std::vector<ForestSeries>& T);

/// Q(x) = x * prod_i T_i(x)^{s_i}; requires charge data.
ForestSeries invariant_charge(const DSESpec& spec, const std::vector<ForestSeries>& T);

struct GammaBeta {
    std::vector<XSeries> gamma;  // linear-in-L part per equation
    XSeries beta;                // sum_i s_i x gamma_i (zero when no charge)
};

GammaBeta extract_gamma_beta(const std::vector<XSeries>& G, const DSESpec& spec);

/// (d/dL - beta d/dx - gamma_i) G_i, truncated one order below the solution
/// (the x-derivative loses the top order). Zero for charge-compatible specs.
std::vector<XSeries> check_rge(const std::vector<XSeries>& G, const GammaBeta& gb,
                               const DSESpec& spec);

/// gamma_i - sum_k A_{i,k}(beta d/dx + gamma_i) x^k with the operator series
/// expanded as operator monomials applied right to left. Requires charge
/// data and single-place primitives (grouped by weight k).
std::vector<XSeries> check_gamma_equation(const DSESpec& spec, const std::vector<XSeries>& G);

/// Linear special case: gamma_i - sum_k x^k A_{i,k}(gamma_i(x)); requires a
/// vanishing beta (all s_i = 0).
std::vector<XSeries> check_gamma_functional(const DSESpec& spec, const std::vector<XSeries>& G);

/// Rewrites a single-equation spec whose per-place exponents sum to one per
/// primitive into an equivalent single-place linear spec with Mellin series
/// rescaled by the exponents.
DSESpec quasilinear_reduce(const DSESpec& spec);

/// Coproduct identity of the solution against powers of the invariant
/// charge, for every equation at x-order n.
bool rio_coproduct_check(const DSESpec& spec, int n);

/// Reproduction of the two-place vs single-place matching obstruction:
/// both series, the forced substitutions, and the x^4 residual after
/// substitution, compared against the reference polynomial.
struct CounterexampleReport {
    int order = 4;
    XSeries two_place{4};     // L-polynomial coefficients, symbols b[i,j]
    XSeries single_place{4};  // symbols a[n]
    std::map<std::string, Poly> substitutions;
    bool substitutions_match_low_orders = false;  // x^1..x^3 agree after substitution
    Poly x4_residual;                             // [x^4](single|subs - two_place)
    Poly expected_residual;
    bool residual_matches_reference = false;

    Json to_json() const;
};

CounterexampleReport counterexample_report(int order);

/// Bounded worker count for per-tree sums (TUBEDSE_THREADS, default 1).
int worker_count();

}  // namespace tubedse

#endif
