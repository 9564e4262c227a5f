#include "tubedse/rational.hpp"

namespace tubedse {

Rational::Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    v_.canonicalize();
}

Rational::Rational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

Rational Rational::parse(const std::string& s) {
    const auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(mpq_class(mpz_class(s)));
        mpz_class num(s.substr(0, slash));
        mpz_class den(s.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("rational: zero denominator");
        mpq_class q(num);
        q /= mpq_class(den);
        return Rational(q);
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument("rational: cannot parse '" + s + "'");
    }
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::invalid_argument("rational: division by zero");
    v_ /= o.v_;
    return *this;
}

std::string Rational::str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
}

Rational falling_factorial(const Rational& a, int k) {
    Rational r = 1;
    for (int j = 0; j < k; ++j) r *= a - Rational(j);
    return r;
}

Rational falling_factorial(const std::vector<Rational>& mu, const std::vector<int>& k) {
    if (mu.size() != k.size())
        throw std::invalid_argument("falling_factorial: component length mismatch");
    Rational r = 1;
    for (std::size_t i = 0; i < mu.size(); ++i) {
        if (k[i] < 0) throw std::invalid_argument("falling_factorial: negative exponent");
        r *= falling_factorial(mu[i], k[i]);
    }
    return r;
}

long long falling_factorial_int(long long a, int k) {
    long long r = 1;
    for (int j = 0; j < k; ++j) r *= a - j;
    return r;
}

Rational rational_binomial(const Rational& mu, int k) {
    return falling_factorial(mu, k) / Rational(factorial(k));
}

long long factorial(int n) {
    long long r = 1;
    for (int j = 2; j <= n; ++j) r *= j;
    return r;
}

Rational multinomial(const std::vector<int>& alpha) {
    int total = 0;
    for (int a : alpha) total += a;
    mpz_class num;
    mpz_fac_ui(num.get_mpz_t(), static_cast<unsigned long>(total));
    mpz_class den = 1;
    for (int a : alpha) {
        mpz_class f;
        mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(a));
        den *= f;
    }
    return Rational(mpq_class(num) / mpq_class(den));
}

}  // namespace tubedse
