#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

namespace cyclo {

/// Dense integer polynomial or truncated power series.
///
/// A value is either EXACT (a finite polynomial, trailing coefficient
/// nonzero) or known modulo x^K. Truncated values store exactly K
/// coefficients; exact values are trimmed. Arithmetic on two truncated
/// operands propagates the order min(K1, K2); mixing exact and truncated
/// yields truncated. Coefficients are arbitrary-precision integers and all
/// operations are exact.
class CoeffSeries {
  public:
    CoeffSeries() = default;  // exact zero polynomial

    static CoeffSeries exact(std::vector<mpz_class> coeffs);
    static CoeffSeries truncated(std::vector<mpz_class> coeffs, std::size_t order);
    static CoeffSeries constant_trunc(const mpz_class& c, std::size_t order);
    static CoeffSeries one_exact();

    bool is_exact() const { return !order_.has_value(); }
    std::optional<std::size_t> order() const { return order_; }

    /// Coefficient of x^i (zero beyond the stored length).
    const mpz_class& at(std::size_t i) const;
    std::size_t stored_size() const { return coeffs_.size(); }
    const std::vector<mpz_class>& coeffs() const { return coeffs_; }
    std::vector<mpz_class>& mutable_coeffs() { return coeffs_; }

    bool is_zero() const;
    /// Degree of an exact nonzero polynomial.
    std::size_t degree() const;

    friend bool operator==(const CoeffSeries& a, const CoeffSeries& b) = default;

  private:
    std::vector<mpz_class> coeffs_;
    std::optional<std::size_t> order_;
};

/// S * (1 - x^d) when sign = +1, S / (1 - x^d) when sign = -1; one dense
/// pass either way. Division requires a truncated operand.
CoeffSeries mul_binomial(const CoeffSeries& s, std::uint64_t d, int sign);

/// (A * B) mod x^k. Zero coefficients of the sparser operand are skipped,
/// so products against few-term polynomials stay linear in k.
CoeffSeries mul_trunc(const CoeffSeries& a, const CoeffSeries& b, std::size_t k);

/// Exact product; truncated operands propagate the min order.
CoeffSeries mul(const CoeffSeries& a, const CoeffSeries& b);

/// B with A * B ≡ 1 (mod x^k); the constant term of A must be a unit (+-1).
CoeffSeries inverse_trunc(const CoeffSeries& a, std::size_t k);

/// Exact quotient of exact polynomials; a nonzero remainder is rejected.
CoeffSeries poly_divide_exact(const CoeffSeries& a, const CoeffSeries& b);

/// Largest |coefficient| (the height). Zero for an empty polynomial.
mpz_class max_abs_coeff(const CoeffSeries& s);

}  // namespace cyclo
