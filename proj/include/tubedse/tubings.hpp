#ifndef TUBEDSE_TUBINGS_HPP
#define TUBEDSE_TUBINGS_HPP

#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "tubedse/cocycle.hpp"
#include "tubedse/mellin.hpp"
#include "tubedse/trees.hpp"

namespace tubedse {

/// Flat preorder view of a decorated tree; vertex 0 is the root.
struct IndexedTree {
    std::vector<std::string> decoration;
    std::vector<int> parent;            // -1 for the root
    std::vector<std::string> edge_place;  // place of the edge to the parent
    std::vector<std::vector<int>> children;

    explicit IndexedTree(const TreePtr& t);
    int size() const { return static_cast<int>(decoration.size()); }
};

/// One binary tubing, carried as its statistics: per-vertex rank vectors
/// (upper-tube counts by type), and the types of the root-containing upper
/// tubes from the outermost inwards. b = |root_types| + 1 tubes contain the
/// root. Full tube sets are only materialized on request.
struct Tubing {
    std::vector<std::map<std::string, int>> rank;  // per preorder vertex
    std::vector<std::string> root_types;           // outermost-first
    std::vector<std::vector<int>> tubes;           // optional: sorted vertex lists

    int b() const { return static_cast<int>(root_types.size()) + 1; }

    /// Type counts of the root tubes after dropping the outermost k-1,
    /// as an exponent vector over the given place order.
    std::vector<int> beta(int k, const std::vector<std::string>& places) const;

    std::vector<int> rank_vector(int vertex, const std::vector<std::string>& places) const;
};

/// All binary tubings of t; |Tub(chain of n)| is the (n-1)st Catalan number.
std::vector<Tubing> enumerate_tubings(const TreePtr& t, bool collect_tubes = false);

/// Product over non-root vertices of the Mellin coefficient at that vertex's
/// rank vector.
Poly mel(const Tubing& tau, const IndexedTree& it,
         const std::map<std::string, PrimitiveInfo>& primitives,
         const std::map<std::string, MellinSeries>& mellin);

/// Closed-form evaluation of the universal map,
///   phi(t) = sum over tubings of mel(tau) * sum_{k=1..b} coeff(root, beta^k) L^k / k!,
/// computed by a memoized recursion over principal subtree splits that
/// aggregates (root type sequence -> summed Mellin monomials) per canonical
/// subtree instead of enumerating tubings one by one.
class TubingPhiContext {
public:
    TubingPhiContext(const std::map<std::string, PrimitiveInfo>& primitives,
                     const std::map<std::string, MellinSeries>& mellin)
        : primitives_(&primitives), mellin_(&mellin) {}

    const PrimitiveInfo& primitive(const std::string& label) const;
    const MellinSeries& mellin(const std::string& label) const;

    using SeqAggregate = std::map<std::vector<std::string>, Poly>;
    std::unordered_map<std::string, SeqAggregate>& memo() { return memo_; }

private:
    const std::map<std::string, PrimitiveInfo>* primitives_;
    const std::map<std::string, MellinSeries>* mellin_;
    std::unordered_map<std::string, SeqAggregate> memo_;
};

Poly phi_tubing(const TreePtr& t, TubingPhiContext& ctx);

/// Literal evaluation of the same double sum over enumerate_tubings; used to
/// pin the aggregated recursion in tests.
Poly phi_tubing_direct(const TreePtr& t, const std::map<std::string, PrimitiveInfo>& primitives,
                       const std::map<std::string, MellinSeries>& mellin);

/// Convolution power of the linear coefficient functional evaluated on a
/// tree via iterated coproduct; sigma itself is the k = 1 case.
Poly sigma_convolution_power(const TreePtr& t, int k,
                             const std::map<std::string, PrimitiveInfo>& primitives,
                             const std::map<std::string, MellinSeries>& mellin);

/// Minimal primitive table inferred from a bare tree: each decoration gets
/// weight 1, equation "1", and the places seen on its outgoing edges.
std::map<std::string, PrimitiveInfo> infer_primitives(const TreePtr& t);

}  // namespace tubedse

#endif
