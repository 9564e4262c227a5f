#ifndef TUBEDSE_RATIONAL_HPP
#define TUBEDSE_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tubedse {

/// Exact rational number over arbitrary-precision integers.
/// Always held in reduced form with positive denominator.
class Rational {
public:
    Rational() : v_(0) {}
    Rational(long n) : v_(n) {}  // NOLINT: implicit by design, matches integer literals
    Rational(long num, long den);
    explicit Rational(mpq_class v);

    /// Parses "n" or "n/d" (d > 0 after reduction).
    static Rational parse(const std::string& s);

    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }

    bool is_zero() const { return sgn(v_) == 0; }
    bool is_one() const { return v_ == 1; }
    bool is_integer() const { return v_.get_den() == 1; }
    int sign() const { return sgn(v_); }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o);

    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
    friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
    friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }

    /// "n" when integral, otherwise "n/d".
    std::string str() const;

private:
    mpq_class v_;
};

/// a(a-1)...(a-k+1); empty product for k = 0.
Rational falling_factorial(const Rational& a, int k);

/// Componentwise falling factorials multiplied together.
/// Throws std::invalid_argument when the lengths differ.
Rational falling_factorial(const std::vector<Rational>& mu, const std::vector<int>& k);

/// Integer falling factorial a(a-1)...(a-k+1).
long long falling_factorial_int(long long a, int k);

/// Generalized binomial coefficient mu over k = mu^(falling k) / k!.
Rational rational_binomial(const Rational& mu, int k);

long long factorial(int n);

/// (|alpha|)! / prod(alpha_i!) as an exact integer value.
Rational multinomial(const std::vector<int>& alpha);

}  // namespace tubedse

#endif
