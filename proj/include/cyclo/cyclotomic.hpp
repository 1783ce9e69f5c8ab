#pragma once

#include <cstdint>
#include <vector>

#include "cyclo/arith.hpp"
#include "cyclo/series.hpp"

namespace cyclo {

/// Selects between forward coefficients a(n,k) of Phi_n and inverse
/// coefficients c(n,k) of the Taylor series of 1/Phi_n.
enum class CoefficientKind { Forward, Inverse };

inline constexpr std::uint64_t kDefaultDegreeBudget = 1'000'000;

/// All divisors d of f.value with d < bound, ascending. Generated from the
/// factorization with pruning, never by scanning.
std::vector<std::uint64_t> divisors_below(const PrimeFactorization& f, std::uint64_t bound);

/// Phi_n as an exact polynomial of degree phi(n), via ascending divisor
/// recursion and exact division of x^n - 1. This is the slow oracle path;
/// the truncated Moebius product below is the independent fast path.
CoeffSeries cyclotomic_exact(std::uint64_t n, std::uint64_t degree_budget = kDefaultDegreeBudget);

/// Phi_n mod x^K as the Moebius product over divisors d < K of the
/// squarefree kernel, with non-squarefree n first reduced through
/// Phi_n(x) = Phi_kappa(n)(x^(n/kappa(n))). Never materializes the full
/// polynomial.
CoeffSeries cyclotomic_trunc(const PrimeFactorization& f, std::size_t k);

/// 1/Phi_n mod x^K, same mechanism with negated exponents.
CoeffSeries inverse_cyclotomic_trunc(const PrimeFactorization& f, std::size_t k);

/// Coefficient of x^k in Phi_n; zero beyond phi(n).
mpz_class a_coeff(const PrimeFactorization& f, const mpz_class& k,
                  std::uint64_t degree_budget = kDefaultDegreeBudget);
mpz_class a_coeff(std::uint64_t n, std::uint64_t k,
                  std::uint64_t degree_budget = kDefaultDegreeBudget);

/// Coefficient of x^k in 1/Phi_n; k is first reduced modulo n, so point
/// queries stay cheap no matter how large k or n get.
mpz_class c_coeff(const PrimeFactorization& f, const mpz_class& k,
                  std::uint64_t degree_budget = kDefaultDegreeBudget);
mpz_class c_coeff(std::uint64_t n, std::uint64_t k,
                  std::uint64_t degree_budget = kDefaultDegreeBudget);

}  // namespace cyclo
