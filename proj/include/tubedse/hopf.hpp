#ifndef TUBEDSE_HOPF_HPP
#define TUBEDSE_HOPF_HPP

#include <map>
#include <utility>
#include <vector>

#include "tubedse/poly.hpp"
#include "tubedse/series.hpp"
#include "tubedse/trees.hpp"

namespace tubedse {

/// Linear combination of forests with Poly coefficients; the working algebra
/// for tree series. Multiplication is disjoint union, extended bilinearly.
class ForestLC {
public:
    ForestLC() = default;
    explicit ForestLC(const Forest& f, Poly coeff = Poly(1));

    static ForestLC one() { return ForestLC(Forest::empty()); }

    bool is_zero() const { return terms_.empty(); }
    const std::map<Forest, Poly>& terms() const { return terms_; }

    void add(const Forest& f, const Poly& c);

    ForestLC& operator+=(const ForestLC& o);
    friend ForestLC operator+(ForestLC a, const ForestLC& b) { return a += b; }
    friend ForestLC operator*(const ForestLC& a, const ForestLC& b);
    ForestLC scaled(const Rational& c) const;
    ForestLC scaled_poly(const Poly& c) const;

    friend bool operator==(const ForestLC& a, const ForestLC& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const ForestLC& a, const ForestLC& b) { return !(a == b); }

    /// Coefficient of the empty forest (the counit).
    Poly counit() const;

    /// Image under a ring map sending every forest to 1 (coefficient sum).
    Poly eval_trees_to_one() const;

    std::string str() const;
    Json to_json() const;

private:
    std::map<Forest, Poly> terms_;
};

/// Linear combination of two-leg tensors of forests.
class TensorLC {
public:
    bool is_zero() const { return terms_.empty(); }
    const std::map<std::pair<Forest, Forest>, Poly>& terms() const { return terms_; }
    void add(const Forest& left, const Forest& right, const Poly& c);
    TensorLC& operator+=(const TensorLC& o);
    friend TensorLC operator+(TensorLC a, const TensorLC& b) { return a += b; }
    /// Legwise product: (a (x) b)(c (x) d) = ac (x) bd.
    friend TensorLC operator*(const TensorLC& a, const TensorLC& b);
    TensorLC scaled(const Rational& c) const;
    friend bool operator==(const TensorLC& a, const TensorLC& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const TensorLC& a, const TensorLC& b) { return !(a == b); }
    Json to_json() const;

private:
    std::map<std::pair<Forest, Forest>, Poly> terms_;
};

/// Left leg forest, right leg a tuple of forests (one per insertion place).
class CoactionLC {
public:
    using Key = std::pair<Forest, std::vector<Forest>>;
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Poly>& terms() const { return terms_; }
    void add(const Forest& left, const std::vector<Forest>& right, const Poly& c);
    friend bool operator==(const CoactionLC& a, const CoactionLC& b) {
        return a.terms_ == b.terms_;
    }
    Json to_json() const;

private:
    std::map<Key, Poly> terms_;
};

TensorLC tensor_product(const ForestLC& left, const ForestLC& right);

/// Downset/upset coproduct, extended linearly.
TensorLC coproduct(const ForestLC& f);

/// Grafts one forest per insertion place under a new root decorated by the
/// primitive; edges to the components of the e-th forest are decorated e.
TreePtr graft(const PrimitiveInfo& p, const std::vector<Forest>& args_by_place);

/// Multilinear extension of graft to forest linear combinations.
ForestLC b_plus(const PrimitiveInfo& p, const std::vector<ForestLC>& args_by_place);

/// Left coaction on a tuple of forest linear combinations: downsets of all
/// components multiplied on the left leg, complements kept per place.
CoactionLC coaction(const std::vector<ForestLC>& args_by_place);

/// Verifies the grafting cocycle identity
///   coproduct(B+(args)) = B+(args) (x) 1 + (id (x) B+) coaction(args)
/// exactly. The B+(args) (x) 1 orientation is the one forced by the
/// downset (x) upset coproduct convention used throughout; some sources
/// display the mirrored form.
bool check_cocycle(const PrimitiveInfo& p, const std::vector<ForestLC>& args_by_place);

/// Verifies, for the coefficient of x^n of the equation-i solution series,
///   coproduct([x^n] T_i) = sum_{j=0..n} [x^n](T_i Q^j) (x) [x^j] T_i.
bool rio_coproduct_holds(const std::vector<TruncSeries<ForestLC>>& T,
                         const TruncSeries<ForestLC>& Q, std::size_t equationIndex, int n);

}  // namespace tubedse

#endif
