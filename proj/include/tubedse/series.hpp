#ifndef TUBEDSE_SERIES_HPP
#define TUBEDSE_SERIES_HPP

#include <stdexcept>
#include <vector>

#include "tubedse/rational.hpp"

namespace tubedse {

/// Power series in x truncated at a fixed order, with coefficients in a
/// commutative ring R (default-constructed R is the ring zero; R provides
/// +, *, scaled(Rational), is_zero(), one(), ==).
///
/// Truncation is part of the value: arithmetic between different truncations
/// is an error rather than a silent cut to the minimum.
template <class R>
class TruncSeries {
public:
    explicit TruncSeries(int truncation)
        : coeffs_(static_cast<std::size_t>(check_trunc(truncation)) + 1) {}

    static TruncSeries one(int truncation) {
        TruncSeries s(truncation);
        s.coeffs_[0] = R::one();
        return s;
    }

    int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }

    const R& at(int n) const { return coeffs_.at(static_cast<std::size_t>(n)); }
    R& at(int n) { return coeffs_.at(static_cast<std::size_t>(n)); }

    bool is_zero() const {
        for (const auto& c : coeffs_)
            if (!c.is_zero()) return false;
        return true;
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        return a.coeffs_ == b.coeffs_;
    }
    friend bool operator!=(const TruncSeries& a, const TruncSeries& b) { return !(a == b); }

    TruncSeries operator-() const {
        TruncSeries r(truncation());
        for (int n = 0; n <= truncation(); ++n) r.coeffs_[n] = at(n).scaled(Rational(-1));
        return r;
    }

    TruncSeries& operator+=(const TruncSeries& o) {
        require_same(o);
        for (int n = 0; n <= truncation(); ++n) coeffs_[n] = coeffs_[n] + o.coeffs_[n];
        return *this;
    }
    TruncSeries& operator-=(const TruncSeries& o) { return *this += -o; }

    friend TruncSeries operator+(TruncSeries a, const TruncSeries& b) { return a += b; }
    friend TruncSeries operator-(TruncSeries a, const TruncSeries& b) { return a -= b; }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.require_same(b);
        TruncSeries r(a.truncation());
        for (int i = 0; i <= a.truncation(); ++i) {
            if (a.at(i).is_zero()) continue;
            for (int j = 0; i + j <= a.truncation(); ++j) {
                if (b.at(j).is_zero()) continue;
                r.coeffs_[i + j] = r.coeffs_[i + j] + a.at(i) * b.at(j);
            }
        }
        return r;
    }

    TruncSeries scaled(const Rational& c) const {
        TruncSeries r(truncation());
        for (int n = 0; n <= truncation(); ++n) r.coeffs_[n] = at(n).scaled(c);
        return r;
    }

    /// Coefficientwise multiplication by a ring element.
    TruncSeries scaled_by(const R& c) const {
        TruncSeries r(truncation());
        for (int n = 0; n <= truncation(); ++n) r.coeffs_[n] = at(n) * c;
        return r;
    }

    /// Copy cut down to a smaller truncation.
    TruncSeries truncated(int m) const {
        if (m < 0 || m > truncation()) throw std::invalid_argument("series: bad truncation cut");
        TruncSeries r(m);
        for (int n = 0; n <= m; ++n) r.coeffs_[n] = at(n);
        return r;
    }

    /// Multiplication by x^k at the same truncation (top orders fall off).
    TruncSeries shifted_up(int k) const {
        TruncSeries r(truncation());
        for (int n = 0; n + k <= truncation(); ++n) r.coeffs_[n + k] = at(n);
        return r;
    }

    /// d/dx; the result is only defined through one order less.
    TruncSeries derivative_x() const {
        if (truncation() == 0) throw std::invalid_argument("series: derivative of order-0 series");
        TruncSeries r(truncation() - 1);
        for (int n = 0; n + 1 <= truncation(); ++n) r.coeffs_[n] = at(n + 1).scaled(Rational(n + 1));
        return r;
    }

    /// d/dx kept at the same truncation with the unknown top coefficient
    /// zeroed; valid inside products with factors of x-valuation >= 1.
    TruncSeries derivative_x_padded() const {
        TruncSeries r(truncation());
        for (int n = 0; n + 1 <= truncation(); ++n) r.coeffs_[n] = at(n + 1).scaled(Rational(n + 1));
        return r;
    }

    /// f^mu for rational mu via the binomial series; requires [x^0]f = 1.
    TruncSeries pow_rational(const Rational& mu) const {
        if (!(at(0) == R::one()))
            throw std::invalid_argument("series: rational power needs unit constant term");
        const int N = truncation();
        TruncSeries g = *this;
        g.coeffs_[0] = R();
        TruncSeries r = one(N);
        TruncSeries gk = one(N);
        for (int k = 1; k <= N; ++k) {
            gk = gk * g;
            r += gk.scaled(rational_binomial(mu, k));
        }
        return r;
    }

private:
    static int check_trunc(int t) {
        if (t < 0) throw std::invalid_argument("series: negative truncation");
        return t;
    }
    void require_same(const TruncSeries& o) const {
        if (truncation() != o.truncation())
            throw std::invalid_argument("series: truncation mismatch");
    }

    std::vector<R> coeffs_;
};

template <class R>
TruncSeries<R> series_mul(const TruncSeries<R>& f, const TruncSeries<R>& g) {
    return f * g;
}

template <class R>
TruncSeries<R> series_pow_rational(const TruncSeries<R>& f, const Rational& mu) {
    return f.pow_rational(mu);
}

}  // namespace tubedse

#endif
