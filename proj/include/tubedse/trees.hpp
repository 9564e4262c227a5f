#ifndef TUBEDSE_TREES_HPP
#define TUBEDSE_TREES_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "tubedse/poly.hpp"
#include "tubedse/rational.hpp"

namespace tubedse {

/// One driving primitive: label, grading weight, equation it feeds, its
/// insertion places in a fixed order, and the per-place exponent vector
/// (one rational per equation index; absent entries are zero).
struct PrimitiveInfo {
    std::string label;
    int weight = 1;
    std::string equation;
    std::vector<std::string> places;
    std::map<std::string, std::map<std::string, Rational>> mu;

    const std::map<std::string, Rational>& mu_of(const std::string& place) const;
    Rational mu_scalar(const std::string& place) const;  // single-equation convenience
    /// Overall exponent vector: sum of the per-place vectors.
    std::map<std::string, Rational> overall_mu() const;
};

class DecoratedTree;
using TreePtr = std::shared_ptr<const DecoratedTree>;

struct ChildEdge {
    std::string place;
    TreePtr child;
};

/// Immutable decorated rooted tree. Children are stored sorted by
/// (edge place, child canonical code), so the canonical code of the whole
/// tree is fixed at construction and doubles as the isomorphism key.
class DecoratedTree {
public:
    static TreePtr make(std::string decoration, std::vector<ChildEdge> children);
    static TreePtr leaf(std::string decoration) { return make(std::move(decoration), {}); }

    const std::string& decoration() const { return decoration_; }
    const std::vector<ChildEdge>& children() const { return children_; }
    const std::string& code() const { return code_; }
    int vertex_count() const { return size_; }

private:
    DecoratedTree() = default;
    std::string decoration_;
    std::vector<ChildEdge> children_;
    std::string code_;
    int size_ = 1;
};

inline std::string canonical_code(const TreePtr& t) { return t->code(); }

/// |Aut(t)|: decoration-preserving poset automorphisms. Equal to the product
/// over vertices of m! over each class of identical (place, subtree) children.
long long aut_order(const TreePtr& t);

int tree_weight(const TreePtr& t, const std::map<std::string, int>& weight_of_label);

/// Nested text form "p(e1: child, e2: child)"; a leaf prints as "p".
std::string tree_text(const TreePtr& t);
TreePtr parse_tree(const std::string& text);

Json tree_to_json(const TreePtr& t);
TreePtr tree_from_json(const Json& j);

/// Multiset of trees in canonical order; the product of the forest algebra.
class Forest {
public:
    Forest() = default;
    explicit Forest(TreePtr t);
    explicit Forest(std::vector<TreePtr> trees);

    static const Forest& empty();

    bool is_empty() const { return trees_.empty(); }
    int vertex_count() const;
    const std::vector<TreePtr>& trees() const { return trees_; }
    const std::string& key() const { return key_; }

    Forest disjoint_union(const Forest& o) const;

    friend bool operator==(const Forest& a, const Forest& b) { return a.key_ == b.key_; }
    friend bool operator!=(const Forest& a, const Forest& b) { return a.key_ != b.key_; }
    friend bool operator<(const Forest& a, const Forest& b) { return a.key_ < b.key_; }

    std::string str() const;  // trees joined by " "; empty forest is "1"

private:
    void rebuild_key();
    std::vector<TreePtr> trees_;
    std::string key_;
};

/// All trees over the given primitives with weight <= maxWeight, one per
/// isomorphism class, ordered by (weight, canonical code). When rootEquation
/// is given only trees whose root primitive feeds that equation are kept.
std::vector<TreePtr> enumerate_trees(const std::vector<PrimitiveInfo>& primitives, int maxWeight,
                                     const std::optional<std::string>& rootEquation = {});

/// All (downset, complement) splits of a forest, one entry per downset.
std::vector<std::pair<Forest, Forest>> downset_splits(const Forest& f);

struct PrincipalSplit {
    TreePtr subtree;     // rooted at a non-root vertex v
    TreePtr complement;  // the tree with that subtree removed
    std::string place;   // decoration of the edge leaving the root toward v
};

/// One split per non-root vertex; empty for a single vertex.
std::vector<PrincipalSplit> principal_subtree_splits(const TreePtr& t);

/// Number of linear extensions: exhaustive count of topological orders for
/// small trees, |t|!/tree_factorial(t) beyond that.
long long linear_extension_count(const TreePtr& t);
long long linear_extension_count_bruteforce(const TreePtr& t);  // |t| <= 9

/// Product over vertices of the size of the subtree rooted there.
long long tree_factorial(const TreePtr& t);

}  // namespace tubedse

#endif
