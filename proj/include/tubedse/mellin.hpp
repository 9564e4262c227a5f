#ifndef TUBEDSE_MELLIN_HPP
#define TUBEDSE_MELLIN_HPP

#include <map>
#include <random>
#include <string>
#include <vector>

#include "tubedse/poly.hpp"

namespace tubedse {

/// Coefficient data of one primitive's integro-differential operator, indexed
/// by exponent vectors over the primitive's insertion places and stored in
/// the multinomial convention: the raw series coefficient of rho^alpha is
/// multinomial(|alpha|, alpha) * coeff(alpha).
///
/// Two modes:
///  - symbolic: unset coefficients materialize as fresh symbols up to
///    max_order; lookups beyond max_order are an error (nothing was
///    materialized there),
///  - explicit (finite support): unset coefficients are exactly zero at any
///    order.
///
/// A boring series depends on alpha only through |alpha|.
class MellinSeries {
public:
    MellinSeries() = default;
    MellinSeries(std::string primitiveLabel, std::vector<std::string> places, int maxOrder,
                 bool boring = false, bool symbolic = true);

    const std::string& primitive() const { return label_; }
    const std::vector<std::string>& places() const { return places_; }
    int max_order() const { return max_order_; }
    bool boring() const { return boring_; }
    bool symbolic() const { return symbolic_; }

    /// Re-materializes the symbolic default up to a new order (no-op when
    /// already deep enough or when the series has finite support).
    void require_order(int order);

    Poly coeff(const std::vector<int>& alpha) const;
    Poly raw_coeff(const std::vector<int>& alpha) const;

    void set_coeff(const std::vector<int>& alpha, Poly value);

    /// Binds every coefficient with |alpha| <= max_order to a value drawn
    /// from the fixed rational sample set; the series becomes explicit.
    void bind_random(std::mt19937_64& rng);

    static std::string default_symbol(const std::string& label, const std::vector<int>& alpha,
                                      bool boring);

    /// Fixed table the random binder draws from.
    static const std::vector<Rational>& random_sample_set();

    Json to_json() const;
    static MellinSeries from_json(const Json& j, const std::string& label,
                                  const std::vector<std::string>& places, int defaultOrder);

private:
    void check_alpha(const std::vector<int>& alpha) const;
    std::vector<int> storage_key(const std::vector<int>& alpha) const;

    std::string label_;
    std::vector<std::string> places_;
    int max_order_ = 0;
    bool boring_ = false;
    bool symbolic_ = true;
    std::map<std::vector<int>, Poly> coeffs_;
};

/// All alpha over `arity` places with |alpha| <= maxTotal, lexicographic.
std::vector<std::vector<int>> exponent_vectors_up_to(int arity, int maxTotal);

}  // namespace tubedse

#endif
