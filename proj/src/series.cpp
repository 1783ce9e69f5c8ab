#include "cyclo/series.hpp"

#include <algorithm>
#include <stdexcept>

namespace cyclo {

namespace {

const mpz_class kZero = 0;

void trim(std::vector<mpz_class>& v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
}

std::size_t count_nonzero(const std::vector<mpz_class>& v, std::size_t upto) {
    std::size_t n = 0;
    for (std::size_t i = 0; i < std::min(upto, v.size()); ++i)
        if (v[i] != 0) ++n;
    return n;
}

}  // namespace

CoeffSeries CoeffSeries::exact(std::vector<mpz_class> coeffs) {
    CoeffSeries s;
    trim(coeffs);
    s.coeffs_ = std::move(coeffs);
    return s;
}

CoeffSeries CoeffSeries::truncated(std::vector<mpz_class> coeffs, std::size_t order) {
    if (order == 0) throw std::invalid_argument("CoeffSeries: truncation order must be positive");
    CoeffSeries s;
    coeffs.resize(order);
    s.coeffs_ = std::move(coeffs);
    s.order_ = order;
    return s;
}

CoeffSeries CoeffSeries::constant_trunc(const mpz_class& c, std::size_t order) {
    std::vector<mpz_class> v(1, c);
    return truncated(std::move(v), order);
}

CoeffSeries CoeffSeries::one_exact() { return exact({mpz_class(1)}); }

const mpz_class& CoeffSeries::at(std::size_t i) const {
    return i < coeffs_.size() ? coeffs_[i] : kZero;
}

bool CoeffSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const mpz_class& c) { return c == 0; });
}

std::size_t CoeffSeries::degree() const {
    if (!is_exact()) throw std::logic_error("CoeffSeries::degree: series is truncated");
    if (coeffs_.empty()) throw std::logic_error("CoeffSeries::degree: zero polynomial");
    return coeffs_.size() - 1;
}

CoeffSeries mul_binomial(const CoeffSeries& s, std::uint64_t d, int sign) {
    if (d == 0) throw std::invalid_argument("mul_binomial: d must be positive");
    if (sign != 1 && sign != -1) throw std::invalid_argument("mul_binomial: sign must be +-1");

    if (sign == 1) {
        if (s.is_exact()) {
            if (s.is_zero()) return CoeffSeries();
            std::vector<mpz_class> out(s.stored_size() + d);
            for (std::size_t i = 0; i < s.stored_size(); ++i) {
                out[i] += s.coeffs()[i];
                out[i + d] -= s.coeffs()[i];
            }
            return CoeffSeries::exact(std::move(out));
        }
        std::size_t k = *s.order();
        std::vector<mpz_class> out(k);
        for (std::size_t i = 0; i < k; ++i) {
            out[i] = s.at(i);
            if (i >= d) out[i] -= s.at(i - d);
        }
        return CoeffSeries::truncated(std::move(out), k);
    }

    if (s.is_exact())
        throw std::invalid_argument("mul_binomial: division by (1 - x^d) needs a truncated series");
    std::size_t k = *s.order();
    std::vector<mpz_class> out(k);
    for (std::size_t i = 0; i < k; ++i) {
        out[i] = s.at(i);
        if (i >= d) out[i] += out[i - d];
    }
    return CoeffSeries::truncated(std::move(out), k);
}

namespace {

// Shared accumulation kernel: out += a * b, indices below bound.
void accumulate_product(const std::vector<mpz_class>& a, const std::vector<mpz_class>& b,
                        std::vector<mpz_class>& out, std::size_t bound) {
    // Iterate the operand with fewer nonzero terms on the outside so that
    // few-term factors cost O(terms * bound) instead of O(bound^2).
    const bool a_outer = count_nonzero(a, bound) <= count_nonzero(b, bound);
    const std::vector<mpz_class>& outer = a_outer ? a : b;
    const std::vector<mpz_class>& inner = a_outer ? b : a;
    for (std::size_t i = 0; i < std::min(outer.size(), bound); ++i) {
        if (outer[i] == 0) continue;
        std::size_t jmax = std::min(inner.size(), bound - i);
        for (std::size_t j = 0; j < jmax; ++j) {
            if (inner[j] == 0) continue;
            mpz_addmul(out[i + j].get_mpz_t(), outer[i].get_mpz_t(), inner[j].get_mpz_t());
        }
    }
}

}  // namespace

CoeffSeries mul_trunc(const CoeffSeries& a, const CoeffSeries& b, std::size_t k) {
    if (k == 0) throw std::invalid_argument("mul_trunc: truncation order must be positive");
    std::size_t eff = k;
    if (a.order()) eff = std::min(eff, *a.order());
    if (b.order()) eff = std::min(eff, *b.order());
    std::vector<mpz_class> out(eff);
    accumulate_product(a.coeffs(), b.coeffs(), out, eff);
    return CoeffSeries::truncated(std::move(out), eff);
}

CoeffSeries mul(const CoeffSeries& a, const CoeffSeries& b) {
    if (a.is_exact() && b.is_exact()) {
        if (a.is_zero() || b.is_zero()) return CoeffSeries();
        std::vector<mpz_class> out(a.stored_size() + b.stored_size() - 1);
        accumulate_product(a.coeffs(), b.coeffs(), out, out.size());
        return CoeffSeries::exact(std::move(out));
    }
    std::size_t eff = SIZE_MAX;
    if (a.order()) eff = std::min(eff, *a.order());
    if (b.order()) eff = std::min(eff, *b.order());
    return mul_trunc(a, b, eff);
}

CoeffSeries inverse_trunc(const CoeffSeries& a, std::size_t k) {
    if (k == 0) throw std::invalid_argument("inverse_trunc: truncation order must be positive");
    const mpz_class& a0 = a.at(0);
    if (a0 != 1 && a0 != -1)
        throw std::invalid_argument("inverse_trunc: constant term must be a unit");
    std::size_t eff = a.order() ? std::min(k, *a.order()) : k;
    std::vector<mpz_class> out(eff);
    out[0] = a0;
    mpz_class acc;
    for (std::size_t i = 1; i < eff; ++i) {
        acc = 0;
        std::size_t jmax = std::min(i, a.stored_size() - 1);
        for (std::size_t j = 1; j <= jmax; ++j) {
            if (a.at(j) == 0) continue;
            mpz_addmul(acc.get_mpz_t(), a.at(j).get_mpz_t(), out[i - j].get_mpz_t());
        }
        out[i] = (a0 == 1) ? -acc : acc;
    }
    return CoeffSeries::truncated(std::move(out), eff);
}

CoeffSeries poly_divide_exact(const CoeffSeries& a, const CoeffSeries& b) {
    if (!a.is_exact() || !b.is_exact())
        throw std::invalid_argument("poly_divide_exact: operands must be exact polynomials");
    if (b.is_zero()) throw std::invalid_argument("poly_divide_exact: division by zero");
    if (a.is_zero()) return CoeffSeries();
    std::vector<mpz_class> rem = a.coeffs();
    const std::vector<mpz_class>& div = b.coeffs();
    if (rem.size() < div.size())
        throw std::domain_error("poly_divide_exact: nonzero remainder");
    const mpz_class& lead = div.back();
    std::size_t qn = rem.size() - div.size() + 1;
    std::vector<mpz_class> q(qn);
    mpz_class t;
    for (std::size_t i = qn; i-- > 0;) {
        mpz_class& top = rem[i + div.size() - 1];
        if (top == 0) continue;
        if (!mpz_divisible_p(top.get_mpz_t(), lead.get_mpz_t()))
            throw std::domain_error("poly_divide_exact: nonzero remainder");
        t = top / lead;
        q[i] = t;
        for (std::size_t j = 0; j < div.size(); ++j)
            mpz_submul(rem[i + j].get_mpz_t(), t.get_mpz_t(), div[j].get_mpz_t());
    }
    for (const mpz_class& c : rem)
        if (c != 0) throw std::domain_error("poly_divide_exact: nonzero remainder");
    return CoeffSeries::exact(std::move(q));
}

mpz_class max_abs_coeff(const CoeffSeries& s) {
    mpz_class best = 0;
    mpz_class a;
    for (const mpz_class& c : s.coeffs()) {
        a = abs(c);
        if (a > best) best = a;
    }
    return best;
}

}  // namespace cyclo
