#include "cyclo/cyclotomic.hpp"

#include <algorithm>
#include <map>

namespace cyclo {

namespace {

struct DivisorTerm {
    std::uint64_t d;
    unsigned omega;  // number of prime factors of d
};

// Squarefree divisors of the kernel below `bound`, with their prime counts.
std::vector<DivisorTerm> kernel_divisors_below(const PrimeFactorization& f, std::uint64_t bound) {
    std::vector<DivisorTerm> out;
    if (bound <= 1) return out;
    out.push_back({1, 0});
    for (const PrimePower& pp : f.factors) {
        std::size_t cur = out.size();
        for (std::size_t i = 0; i < cur; ++i) {
            unsigned __int128 v = static_cast<unsigned __int128>(out[i].d) * pp.prime;
            if (v < bound) out.push_back({static_cast<std::uint64_t>(v), out[i].omega + 1});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const DivisorTerm& a, const DivisorTerm& b) { return a.d < b.d; });
    return out;
}

// prod over divisors d < K of the squarefree kernel of (1 - x^d)^(+-mu(n/d)).
CoeffSeries moebius_product_trunc(const PrimeFactorization& kernel, std::size_t k, bool inverse) {
    const unsigned total = kernel.omega();
    CoeffSeries s = CoeffSeries::constant_trunc(1, k);
    std::uint64_t bound = k < static_cast<std::size_t>(UINT64_MAX) ? k : UINT64_MAX;
    for (const DivisorTerm& term : kernel_divisors_below(kernel, bound)) {
        int mu = ((total - term.omega) % 2 == 0) ? 1 : -1;
        s = mul_binomial(s, term.d, inverse ? -mu : mu);
    }
    return s;
}

PrimeFactorization kernel_of(const PrimeFactorization& f) {
    PrimeFactorization k;
    k.value = radical(f);
    k.factors.reserve(f.factors.size());
    for (const PrimePower& pp : f.factors) k.factors.push_back({pp.prime, 1});
    return k;
}

// Spreads base's coefficient j to index j*e, truncated at k.
CoeffSeries stretch_series(const CoeffSeries& base, std::size_t e, std::size_t k) {
    std::vector<mpz_class> out(k);
    for (std::size_t j = 0; j < base.stored_size(); ++j) {
        if (j > (k - 1) / e) break;
        out[j * e] = base.at(j);
    }
    return CoeffSeries::truncated(std::move(out), k);
}

CoeffSeries trunc_impl(const PrimeFactorization& f, std::size_t k, bool inverse) {
    if (k == 0) throw std::invalid_argument("cyclotomic_trunc: order must be positive");
    if (f.value == 1) {
        // Phi_1 = x - 1; its inverse series is -(1 + x + x^2 + ...).
        std::vector<mpz_class> v(k);
        if (inverse) {
            for (auto& c : v) c = -1;
        } else {
            v[0] = -1;
            if (k > 1) v[1] = 1;
        }
        return CoeffSeries::truncated(std::move(v), k);
    }
    PrimeFactorization kernel = kernel_of(f);
    mpz_class e = f.value / kernel.value;
    if (e == 1) return moebius_product_trunc(kernel, k, inverse);
    // Only the constant term of Phi_kappa(x^e) survives below x^k.
    if (e >= static_cast<unsigned long>(k)) return CoeffSeries::constant_trunc(1, k);
    std::size_t ee = static_cast<std::size_t>(e.get_ui());
    std::size_t kk = (k - 1) / ee + 1;
    return stretch_series(moebius_product_trunc(kernel, kk, inverse), ee, k);
}

void check_point_budget(const mpz_class& index, std::uint64_t degree_budget) {
    if (index + 1 > mpz_from_u64(degree_budget))
        throw budget_error("coefficient query exceeds the degree budget");
}

}  // namespace

std::vector<std::uint64_t> divisors_below(const PrimeFactorization& f, std::uint64_t bound) {
    std::vector<std::uint64_t> out;
    if (bound <= 1) return out;
    out.push_back(1);
    for (const PrimePower& pp : f.factors) {
        std::size_t cur = out.size();
        for (std::size_t i = 0; i < cur; ++i) {
            unsigned __int128 v = out[i];
            for (unsigned j = 0; j < pp.exponent; ++j) {
                v *= pp.prime;
                if (v >= bound) break;
                out.push_back(static_cast<std::uint64_t>(v));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

CoeffSeries cyclotomic_exact(std::uint64_t n, std::uint64_t degree_budget) {
    if (n == 0) throw std::invalid_argument("cyclotomic_exact: n must be positive");
    PrimeFactorization f = factorize(n);
    if (euler_phi(f) > mpz_from_u64(degree_budget))
        throw budget_error("cyclotomic_exact: degree budget exceeded");
    std::vector<std::uint64_t> divs = divisors_below(f, UINT64_MAX);
    std::map<std::uint64_t, CoeffSeries> memo;
    for (std::uint64_t d : divs) {
        // x^d - 1 over the product of Phi_e for proper divisors e of d.
        std::vector<mpz_class> xd(d + 1);
        xd[0] = -1;
        xd[d] = 1;
        CoeffSeries acc = CoeffSeries::one_exact();
        for (const auto& [e, phi_e] : memo)
            if (e < d && d % e == 0) acc = mul(acc, phi_e);
        memo[d] = poly_divide_exact(CoeffSeries::exact(std::move(xd)), acc);
    }
    return memo[n];
}

CoeffSeries cyclotomic_trunc(const PrimeFactorization& f, std::size_t k) {
    return trunc_impl(f, k, false);
}

CoeffSeries inverse_cyclotomic_trunc(const PrimeFactorization& f, std::size_t k) {
    return trunc_impl(f, k, true);
}

mpz_class a_coeff(const PrimeFactorization& f, const mpz_class& k, std::uint64_t degree_budget) {
    if (k < 0) throw std::invalid_argument("a_coeff: k must be nonnegative");
    if (k > euler_phi(f)) return 0;
    check_point_budget(k, degree_budget);
    std::size_t ku = static_cast<std::size_t>(k.get_ui());
    return cyclotomic_trunc(f, ku + 1).at(ku);
}

mpz_class a_coeff(std::uint64_t n, std::uint64_t k, std::uint64_t degree_budget) {
    return a_coeff(factorize(n), mpz_from_u64(k), degree_budget);
}

mpz_class c_coeff(const PrimeFactorization& f, const mpz_class& k, std::uint64_t degree_budget) {
    if (k < 0) throw std::invalid_argument("c_coeff: k must be nonnegative");
    mpz_class kr = k % f.value;  // value only depends on k mod n
    check_point_budget(kr, degree_budget);
    std::size_t ku = static_cast<std::size_t>(kr.get_ui());
    return inverse_cyclotomic_trunc(f, ku + 1).at(ku);
}

mpz_class c_coeff(std::uint64_t n, std::uint64_t k, std::uint64_t degree_budget) {
    return c_coeff(factorize(n), mpz_from_u64(k), degree_budget);
}

}  // namespace cyclo
