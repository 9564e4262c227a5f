#ifndef TUBEDSE_POLY_HPP
#define TUBEDSE_POLY_HPP

#include <map>
#include <set>
#include <string>

#include "tubedse/rational.hpp"

#include <json.hpp>

namespace tubedse {

using Json = nlohmann::ordered_json;

/// Exponent map; no zero exponents stored. Ordered by symbol name so the
/// induced term order (lexicographic by name, then exponent) is total.
using Monomial = std::map<std::string, int>;

/// Sparse multivariate polynomial over Rational in named indeterminates.
/// No zero coefficients stored; term order is the canonical map order.
class Poly {
public:
    Poly() = default;
    Poly(const Rational& c);  // NOLINT: constants convert implicitly
    Poly(long c) : Poly(Rational(c)) {}

    static Poly symbol(const std::string& name, int exponent = 1);
    static Poly term(const Rational& coeff, const Monomial& mono);
    static Poly one() { return Poly(Rational(1)); }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (zero if absent).
    Rational constant_value() const;

    const std::map<Monomial, Rational>& terms() const { return terms_; }

    Poly operator-() const;
    Poly& operator+=(const Poly& o);
    Poly& operator-=(const Poly& o);
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator*(const Poly& a, const Poly& b);
    Poly& operator*=(const Poly& o) { return *this = *this * o; }

    Poly scaled(const Rational& c) const;
    Poly pow(int k) const;  // k >= 0

    friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

    /// Simultaneous substitution, fully expanded. Assignments must be acyclic
    /// (a symbol may not reach itself through the assignment graph).
    Poly substitute(const std::map<std::string, Poly>& assignments) const;

    /// Formal derivative with respect to one symbol.
    Poly derivative(const std::string& sym) const;

    /// Polynomial coefficient of sym^k (the returned value does not involve sym).
    Poly coefficient_of(const std::string& sym, int k) const;

    int degree_in(const std::string& sym) const;
    bool contains_symbol(const std::string& sym) const;
    std::set<std::string> symbols() const;

    /// Canonical text: terms joined by " + ", each "coeff * sym^e * ...".
    std::string str() const;
    Json to_json() const;
    static Poly from_json(const Json& j);

private:
    void add_term(const Monomial& m, const Rational& c);
    std::map<Monomial, Rational> terms_;
};

inline Poly operator*(const Poly& a, const Rational& c) { return a.scaled(c); }
inline Poly operator*(const Rational& c, const Poly& a) { return a.scaled(c); }

}  // namespace tubedse

#endif
