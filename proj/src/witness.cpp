#include "cyclo/witness.hpp"

#include <algorithm>
#include <numeric>

namespace cyclo {

namespace {

// Like target_to_count, but correct for an even kernel. When 2 | m the
// inverse series of Phi_m has c(m, 2) = 0 rather than 1, so the low branch
// lands on -T instead of 1 - T and z = 0 must go through the high branch.
std::pair<std::uint64_t, TargetBranch> target_plan(long long z, bool kernel_even) {
    if (!kernel_even) return target_to_count(z);
    if (z < 0) {
        std::uint64_t mag = static_cast<std::uint64_t>(-(z + 1)) + 1;
        return {mag, TargetBranch::Low};
    }
    return {static_cast<std::uint64_t>(z) + 1, TargetBranch::High};
}

std::uint64_t radical_u64(const PrimeFactorization& f) {
    std::uint64_t r = 1;
    for (const PrimePower& pp : f.factors) r = checked_mul_u64(r, pp.prime);
    return r;
}

// Everything verify needs beyond the certificate fields themselves.
struct StructuralData {
    ProgressionReduction red;
    PrimeFactorization m_red_fact;
    PrimeFactorization reduced;  // factorization of m_reduced * m1
    std::uint64_t stretch = 1;
    std::uint64_t k_red = 0;
};

bool check_structure(const WitnessCertificate& c, StructuralData& out) {
    const ProgressionSpec& spec = c.original;
    if (spec.s == 0 || spec.t >= spec.s || spec.m == 0) return false;
    out.red = reduce_progression(spec.s, spec.t);
    const std::uint64_t sp = out.red.s_prime;
    const std::uint64_t composed = checked_mul_u64(spec.m, out.red.g);

    if (c.m_reduced <= 1) return false;
    out.m_red_fact = factorize(c.m_reduced);
    if (!out.m_red_fact.is_squarefree() || mobius(out.m_red_fact) != 1) return false;
    if (c.q3 != out.m_red_fact.factors[0].prime) return false;
    if (c.q4 != out.m_red_fact.factors[1].prime) return false;

    // m_reduced must extend the kernel of the composed multiplier by odd
    // primes ≡ 1 (mod s') only.
    PrimeFactorization comp_fact = factorize(composed);
    for (const PrimePower& pp : comp_fact.factors)
        if (!out.m_red_fact.contains_prime(pp.prime)) return false;
    for (const PrimePower& pp : out.m_red_fact.factors) {
        if (comp_fact.contains_prime(pp.prime)) continue;
        if (pp.prime == 2) return false;
        if (pp.prime % sp != 1 % sp) return false;
    }

    const auto [want_count, branch] = target_plan(c.target, c.q3 == 2);
    if (c.prime_count != want_count || c.prime_count == 0) return false;

    // Window shape and contents.
    if (c.window.count != c.prime_count) return false;
    if (c.window.modulus != checked_mul_u64(c.m_reduced, sp)) return false;
    if (c.window.residue != 1 % c.window.modulus) return false;
    if (!c.window.valid()) return false;
    if (c.window.base < checked_mul_u64(8, c.q4)) return false;
    const std::uint64_t p1 = c.window.primes.front();
    const std::uint64_t pT = c.window.primes.back();

    if (!is_prime(c.q1)) return false;
    if (c.q1 <= checked_mul_u64(2, p1)) return false;
    if (c.q1 % sp != out.red.r % sp) return false;
    if (out.m_red_fact.contains_prime(c.q1)) return false;

    const bool want_q2 = (c.kind == CoefficientKind::Forward) ? (c.prime_count % 2 == 1)
                                                              : (c.prime_count % 2 == 0);
    if (want_q2 != c.q2.has_value()) return false;
    if (c.q2) {
        if (!is_prime(*c.q2)) return false;
        if (*c.q2 <= c.q1) return false;
        if (*c.q2 % sp != 1 % sp) return false;
        if (out.m_red_fact.contains_prime(*c.q2)) return false;
    }

    // m1 as the stated product, with the Moebius parity the kind demands.
    mpz_class m1 = 1;
    for (std::uint64_t p : c.window.primes) m1 *= mpz_from_u64(p);
    m1 *= mpz_from_u64(c.q1);
    if (c.q2) m1 *= mpz_from_u64(*c.q2);
    if (m1 != c.m1) return false;
    const std::size_t omega_m1 = c.prime_count + 1 + (c.q2 ? 1 : 0);
    const int mu_m1 = (omega_m1 % 2 == 0) ? 1 : -1;
    if (c.kind == CoefficientKind::Forward && mu_m1 != -1) return false;
    if (c.kind == CoefficientKind::Inverse && mu_m1 != 1) return false;

    mpz_class m_red_z = mpz_from_u64(c.m_reduced);
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), c.m1.get_mpz_t(), m_red_z.get_mpz_t());
    if (g != 1) return false;
    if (c.m1 % mpz_from_u64(sp) != mpz_from_u64(out.red.r)) return false;
    if (c.m1 < mpz_from_u64(sp) + mpz_from_u64(out.red.r)) return false;

    out.stretch = composed / radical_u64(comp_fact);
    const std::uint64_t k_step = (branch == TargetBranch::Low) ? 1 : c.q4;
    if (k_step > UINT64_MAX - pT) return false;
    out.k_red = pT + k_step;
    if (out.k_red >= checked_mul_u64(2, p1)) return false;
    if (c.k != mpz_from_u64(out.stretch) * mpz_from_u64(out.k_red)) return false;

    if (c.n != mpz_from_u64(out.stretch) * m_red_z * c.m1) return false;

    // n must sit in the requested progression: n = m * (s*j + t), j >= 1.
    mpz_class m_z = mpz_from_u64(spec.m);
    if (c.n % m_z != 0) return false;
    mpz_class w = c.n / m_z;
    if (w % mpz_from_u64(spec.s) != mpz_from_u64(spec.t)) return false;
    if (w < mpz_from_u64(spec.s) + mpz_from_u64(spec.t)) return false;

    // Factorization of the squarefree core m_reduced * m1 from the parts.
    std::vector<PrimePower> parts;
    for (const PrimePower& pp : out.m_red_fact.factors) parts.push_back({pp.prime, 1});
    for (std::uint64_t p : c.window.primes) parts.push_back({p, 1});
    parts.push_back({c.q1, 1});
    if (c.q2) parts.push_back({*c.q2, 1});
    out.reduced = PrimeFactorization::from_parts(std::move(parts));
    if (out.reduced.value != m_red_z * c.m1) return false;

    return true;
}

}  // namespace

ProgressionReduction reduce_progression(std::uint64_t s, std::uint64_t t) {
    if (s == 0 || t >= s) throw std::invalid_argument("reduce_progression: requires s > t >= 0");
    std::uint64_t g = std::gcd(s, t);  // gcd(s, 0) = s
    return {g, s / g, t / g};
}

std::uint64_t prepare_multiplier(std::uint64_t m, std::uint64_t s_prime,
                                 const SearchLimits& limits) {
    if (m == 0 || s_prime == 0)
        throw std::invalid_argument("prepare_multiplier: arguments must be positive");
    PrimeFactorization f = factorize(m);
    std::uint64_t result = radical_u64(f);
    int needed = (result == 1) ? 2 : (f.omega() % 2 == 0 ? 0 : 1);
    std::uint64_t lower = 2;  // starting above 2 keeps every fresh prime odd
    for (int i = 0; i < needed; ++i) {
        std::uint64_t p = next_prime_in_ap(lower, s_prime, 1 % s_prime, f, limits);
        result = checked_mul_u64(result, p);
        lower = p;
    }
    return result;
}

std::pair<std::uint64_t, TargetBranch> target_to_count(long long z) {
    if (z <= 0) {
        std::uint64_t mag = (z == 0) ? 0 : static_cast<std::uint64_t>(-(z + 1)) + 1;
        return {mag + 1, TargetBranch::Low};
    }
    return {static_cast<std::uint64_t>(z) + 1, TargetBranch::High};
}

WitnessCertificate build_witness(const ProgressionSpec& spec, long long z, CoefficientKind kind,
                                 const SearchLimits& limits) {
    if (spec.s == 0 || spec.t >= spec.s || spec.m == 0)
        throw std::invalid_argument("build_witness: requires s > t >= 0 and m >= 1");
    const ProgressionReduction red = reduce_progression(spec.s, spec.t);
    const std::uint64_t composed = checked_mul_u64(spec.m, red.g);
    const std::uint64_t m_red = prepare_multiplier(composed, red.s_prime, limits);
    const PrimeFactorization mf = factorize(m_red);
    const std::uint64_t q3 = mf.factors[0].prime;
    const std::uint64_t q4 = mf.factors[1].prime;

    const auto [count, branch] = target_plan(z, q3 == 2);
    const std::uint64_t window_modulus = checked_mul_u64(m_red, red.s_prime);
    const std::uint64_t floor =
        std::max({checked_mul_u64(8, q4), q4 + 2, std::uint64_t{16}});
    PrimeWindow window = find_prime_window(count, window_modulus, floor, limits);
    const std::uint64_t p1 = window.primes.front();
    const std::uint64_t pT = window.primes.back();

    const std::uint64_t q1 =
        next_prime_in_ap(checked_mul_u64(2, p1), red.s_prime, red.r, mf, limits);
    const bool want_q2 =
        (kind == CoefficientKind::Forward) ? (count % 2 == 1) : (count % 2 == 0);
    std::optional<std::uint64_t> q2;
    if (want_q2) q2 = next_prime_in_ap(q1, red.s_prime, 1 % red.s_prime, mf, limits);

    mpz_class m1 = 1;
    for (std::uint64_t p : window.primes) m1 *= mpz_from_u64(p);
    m1 *= mpz_from_u64(q1);
    if (q2) m1 *= mpz_from_u64(*q2);

    const std::uint64_t stretch = composed / radical_u64(factorize(composed));
    const std::uint64_t k_red = (branch == TargetBranch::Low) ? pT + 1 : pT + q4;

    WitnessCertificate cert;
    cert.kind = kind;
    cert.target = z;
    cert.original = spec;
    cert.m_reduced = m_red;
    cert.prime_count = count;
    cert.window = std::move(window);
    cert.q1 = q1;
    cert.q2 = q2;
    cert.q3 = q3;
    cert.q4 = q4;
    cert.m1 = m1;
    cert.n = mpz_from_u64(stretch) * mpz_from_u64(m_red) * m1;
    cert.k = mpz_from_u64(stretch) * mpz_from_u64(k_red);

    StructuralData sd;
    if (!check_structure(cert, sd))
        throw std::logic_error("build_witness: assembled certificate violates its invariants");
    return cert;
}

std::pair<bool, mpz_class> verify_certificate(const WitnessCertificate& cert) {
    StructuralData sd;
    try {
        if (!check_structure(cert, sd)) return {false, 0};

        const std::uint64_t p1 = cert.window.primes.front();
        const std::size_t order = 2 * static_cast<std::size_t>(p1);
        CoeffSeries series = (cert.kind == CoefficientKind::Forward)
                                 ? cyclotomic_trunc(sd.reduced, order)
                                 : inverse_cyclotomic_trunc(sd.reduced, order);
        mpz_class computed = series.at(sd.k_red);

        // Truncated congruence: Phi (or 1/Phi) of the witness against
        // (1/Phi_m) * (1 - mu(m) * sum_j x^{p_j}) mod x^{2 p_1}.
        CoeffSeries inv_m = inverse_cyclotomic_trunc(sd.m_red_fact, order);
        std::vector<mpz_class> sparse(order);
        sparse[0] = 1;
        for (std::uint64_t p : cert.window.primes) sparse[p] -= 1;
        CoeffSeries rhs = mul_trunc(inv_m, CoeffSeries::truncated(std::move(sparse), order), order);
        const bool congruent = (series == rhs);

        const bool ok = congruent && computed == mpz_class(cert.target);
        return {ok, computed};
    } catch (const std::exception&) {
        return {false, 0};
    }
}

mpz_class eq3_predict(std::uint64_t m, std::uint64_t prime_count, std::uint64_t k,
                      std::span<const std::uint64_t> p_list) {
    if (m == 0) throw std::invalid_argument("eq3_predict: m must be positive");
    if (p_list.empty()) throw std::invalid_argument("eq3_predict: empty prime list");
    PrimeFactorization f = factorize(m);
    int mu = mobius(f);
    if (mu == 0) throw std::invalid_argument("eq3_predict: m must be squarefree");
    for (std::uint64_t p : p_list)
        if (p % m != 1 % m)
            throw std::invalid_argument("eq3_predict: every p_j must be 1 mod m");
    const std::uint64_t p1 = p_list.front();
    const std::uint64_t pT = p_list.back();
    if (k < pT || k >= checked_mul_u64(2, p1))
        throw std::invalid_argument("eq3_predict: k outside [p_T, 2*p_1)");
    mpz_class ck = c_coeff(f, mpz_from_u64(k));
    mpz_class ck1 = c_coeff(f, mpz_from_u64(k - 1));
    return ck - mpz_class(mu) * mpz_from_u64(prime_count) * ck1;
}

}  // namespace cyclo
