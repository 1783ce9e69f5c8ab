#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cyclo/arith.hpp"
#include "cyclo/cert_json.hpp"
#include "cyclo/cyclotomic.hpp"
#include "cyclo/series.hpp"
#include "cyclo/witness.hpp"

namespace {

// Exit codes are a total function of the outcome class (see README):
// 0 success, 2 usage error, 3 search/degree budget exceeded,
// 4 verification or internal-invariant failure, 5 I/O failure.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;
constexpr int kExitVerify = 4;
constexpr int kExitIo = 5;

struct BudgetFlags {
    std::uint64_t degree_budget = cyclo::kDefaultDegreeBudget;
    std::uint64_t retries = cyclo::SearchLimits{}.window_retries;
    std::uint64_t scan_cap = cyclo::SearchLimits{}.scan_cap;

    cyclo::SearchLimits limits() const { return {retries, scan_cap}; }
};

void add_budget_flags(CLI::App* cmd, BudgetFlags& b) {
    cmd->add_option("--degree-budget", b.degree_budget, "Max truncation/degree allocated");
    cmd->add_option("--retries", b.retries, "Max geometric window retries");
    cmd->add_option("--scan-cap", b.scan_cap, "Max candidates per prime scan");
}

// Full Phi_n as an exact polynomial via the truncated Moebius product.
cyclo::CoeffSeries full_poly(std::uint64_t n, std::uint64_t degree_budget) {
    cyclo::PrimeFactorization f = cyclo::factorize(n);
    mpz_class phi = cyclo::euler_phi(f);
    if (phi + 1 > cyclo::mpz_from_u64(degree_budget))
        throw cyclo::budget_error("degree budget exceeded");
    std::size_t order = static_cast<std::size_t>(phi.get_ui()) + 1;
    std::vector<mpz_class> coeffs = cyclo::cyclotomic_trunc(f, order).coeffs();
    return cyclo::CoeffSeries::exact(std::move(coeffs));
}

int cmd_poly(std::uint64_t n, std::uint64_t limit, bool json, const BudgetFlags& budget) {
    cyclo::PrimeFactorization f = cyclo::factorize(n);
    mpz_class phi = cyclo::euler_phi(f);
    mpz_class full_order = phi + 1;
    mpz_class order_z = full_order;
    if (limit > 0 && cyclo::mpz_from_u64(limit) < order_z) order_z = cyclo::mpz_from_u64(limit);
    if (order_z > cyclo::mpz_from_u64(budget.degree_budget))
        throw cyclo::budget_error("poly: degree budget exceeded (raise --degree-budget or pass --limit)");
    std::size_t order = static_cast<std::size_t>(order_z.get_ui());
    cyclo::CoeffSeries s = cyclo::cyclotomic_trunc(f, order);
    if (json) {
        nlohmann::json out;
        out["n"] = std::to_string(n);
        nlohmann::json coeffs = nlohmann::json::array();
        for (std::size_t i = 0; i < order; ++i) coeffs.push_back(s.at(i).get_str());
        out["coeffs"] = std::move(coeffs);
        std::cout << out.dump() << "\n";
    } else {
        for (std::size_t i = 0; i < order; ++i) {
            if (i) std::cout << ' ';
            std::cout << i << ':' << s.at(i).get_str();
        }
        std::cout << "\n";
    }
    return kExitOk;
}

int cmd_coeff(std::uint64_t n, std::uint64_t k, cyclo::CoefficientKind kind, bool json,
              const BudgetFlags& budget) {
    cyclo::PrimeFactorization f = cyclo::factorize(n);
    mpz_class value = (kind == cyclo::CoefficientKind::Forward)
                          ? cyclo::a_coeff(f, cyclo::mpz_from_u64(k), budget.degree_budget)
                          : cyclo::c_coeff(f, cyclo::mpz_from_u64(k), budget.degree_budget);
    if (json) {
        nlohmann::json out;
        out["n"] = std::to_string(n);
        out["k"] = std::to_string(k);
        out["kind"] = cyclo::kind_to_string(kind);
        out["value"] = value.get_str();
        std::cout << out.dump() << "\n";
    } else {
        std::cout << value.get_str() << "\n";
    }
    return kExitOk;
}

void print_certificate_text(const cyclo::WitnessCertificate& cert) {
    std::cout << "kind: " << cyclo::kind_to_string(cert.kind) << "\n";
    std::cout << "target: " << cert.target << "\n";
    std::cout << "progression: s=" << cert.original.s << " t=" << cert.original.t
              << " m=" << cert.original.m << "\n";
    std::cout << "m_reduced: " << cert.m_reduced << "\n";
    std::cout << "T: " << cert.prime_count << "\n";
    std::cout << "window_base: " << cert.window.base << "\n";
    std::cout << "primes:";
    for (std::uint64_t p : cert.window.primes) std::cout << ' ' << p;
    std::cout << "\n";
    std::cout << "q1: " << cert.q1 << "\n";
    if (cert.q2)
        std::cout << "q2: " << *cert.q2 << "\n";
    else
        std::cout << "q2: none\n";
    std::cout << "q3: " << cert.q3 << "\n";
    std::cout << "q4: " << cert.q4 << "\n";
    std::cout << "m1: " << cert.m1.get_str() << "\n";
    std::cout << "n: " << cert.n.get_str() << "\n";
    std::cout << "k: " << cert.k.get_str() << "\n";
    std::cout << "computed: " << cert.computed.get_str() << "\n";
    std::cout << "verified: " << (cert.verified ? "yes" : "no") << "\n";
}

int cmd_witness(std::uint64_t s, std::uint64_t t, long long z, cyclo::CoefficientKind kind,
                std::uint64_t m, bool verify, bool json, const BudgetFlags& budget) {
    cyclo::ProgressionSpec spec{s, t, m};
    cyclo::WitnessCertificate cert = cyclo::build_witness(spec, z, kind, budget.limits());
    bool ok = true;
    if (verify) {
        auto [good, computed] = cyclo::verify_certificate(cert);
        cert.verified = good;
        cert.computed = computed;
        ok = good && computed == mpz_class(cert.target);
    }
    if (json)
        std::cout << cyclo::certificate_to_json(cert).dump(2) << "\n";
    else
        print_certificate_text(cert);
    if (verify && !ok) {
        std::cerr << "error: constructed certificate failed verification\n";
        return kExitVerify;
    }
    return kExitOk;
}

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

SuiteResult check_divisor_product(std::uint64_t max_n, std::uint64_t degree_budget) {
    SuiteResult r{"divisor_product", true, ""};
    for (std::uint64_t n = 2; n <= max_n; ++n) {
        cyclo::CoeffSeries acc = cyclo::CoeffSeries::one_exact();
        for (std::uint64_t d : cyclo::divisors_below(cyclo::factorize(n), n + 1))
            acc = cyclo::mul(acc, full_poly(d, degree_budget));
        std::vector<mpz_class> want(n + 1);
        want[0] = -1;
        want[n] = 1;
        if (acc != cyclo::CoeffSeries::exact(std::move(want))) {
            r.pass = false;
            r.detail = "product over divisors differs from x^n - 1 at n = " + std::to_string(n);
            return r;
        }
    }
    r.detail = "prod_{d|n} Phi_d = x^n - 1 for n <= " + std::to_string(max_n);
    return r;
}

SuiteResult check_palindromy(std::uint64_t max_n, std::uint64_t degree_budget) {
    SuiteResult r{"palindromy", true, ""};
    for (std::uint64_t n = 2; n <= max_n; ++n) {
        cyclo::CoeffSeries s = full_poly(n, degree_budget);
        std::size_t deg = s.degree();
        for (std::size_t k = 0; k <= deg / 2; ++k)
            if (s.at(k) != s.at(deg - k)) {
                r.pass = false;
                r.detail = "a(n,k) != a(n,phi-k) at n = " + std::to_string(n);
                return r;
            }
    }
    r.detail = "coefficients palindromic for 2 <= n <= " + std::to_string(max_n);
    return r;
}

SuiteResult check_height_forward(std::uint64_t max_n, std::uint64_t degree_budget) {
    SuiteResult r{"height_forward", true, ""};
    std::uint64_t first_tall = 0;
    mpz_class first_height = 0;
    for (std::uint64_t n = 2; n <= max_n; ++n) {
        mpz_class h = cyclo::max_abs_coeff(full_poly(n, degree_budget));
        if (h > 1) {
            first_tall = n;
            first_height = h;
            break;
        }
    }
    if (first_tall != 0 && first_tall < 105) {
        r.pass = false;
        r.detail = "height bound |a| <= 1 broke before n = 105, at n = " + std::to_string(first_tall);
    } else if (max_n >= 105 && first_tall != 105) {
        r.pass = false;
        r.detail = "expected the first |a| > 1 at n = 105";
    } else if (first_tall == 0) {
        r.detail = "|a(n,k)| <= 1 for all n <= " + std::to_string(max_n);
    } else {
        r.detail = "|a(n,k)| <= 1 below n = 105; first height " + first_height.get_str() +
                   " at n = " + std::to_string(first_tall);
    }
    return r;
}

SuiteResult check_height_inverse(std::uint64_t max_n, std::uint64_t degree_budget) {
    SuiteResult r{"height_inverse", true, ""};
    std::uint64_t first_tall = 0;
    mpz_class first_height = 0;
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        if (n + 1 > degree_budget) throw cyclo::budget_error("check: degree budget exceeded");
        cyclo::CoeffSeries s = cyclo::inverse_cyclotomic_trunc(
            cyclo::factorize(n), static_cast<std::size_t>(n));
        mpz_class h = cyclo::max_abs_coeff(s);
        if (h > 1) {
            first_tall = n;
            first_height = h;
            break;
        }
    }
    if (first_tall != 0 && first_tall < 561) {
        r.pass = false;
        r.detail = "height bound |c| <= 1 broke before n = 561, at n = " + std::to_string(first_tall);
    } else if (max_n >= 561 && first_tall != 561) {
        r.pass = false;
        r.detail = "expected the first |c| > 1 at n = 561";
    } else if (first_tall == 0) {
        r.detail = "|c(n,k)| <= 1 for all n <= " + std::to_string(max_n);
    } else {
        r.detail = "|c(n,k)| <= 1 below n = 561; first height " + first_height.get_str() +
                   " at n = " + std::to_string(first_tall);
    }
    return r;
}

SuiteResult check_migotti(std::uint64_t max_n, std::uint64_t degree_budget) {
    SuiteResult r{"migotti", true, ""};
    std::uint64_t pairs = 0;
    for (std::uint64_t p = 2; p * p <= max_n; ++p) {
        if (!cyclo::is_prime(p)) continue;
        for (std::uint64_t q = p + 1; p * q <= max_n; ++q) {
            if (!cyclo::is_prime(q)) continue;
            ++pairs;
            if (cyclo::max_abs_coeff(full_poly(p * q, degree_budget)) > 1) {
                r.pass = false;
                r.detail = "|a(pq,k)| > 1 at pq = " + std::to_string(p * q);
                return r;
            }
        }
    }
    r.detail = "all a(pq,k) in {0,+-1} across " + std::to_string(pairs) + " semiprimes";
    return r;
}

SuiteResult check_periodicity(std::uint64_t max_n, std::uint64_t degree_budget) {
    SuiteResult r{"periodicity", true, ""};
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        if (4 * n + 1 > degree_budget) throw cyclo::budget_error("check: degree budget exceeded");
        cyclo::CoeffSeries s = cyclo::inverse_cyclotomic_trunc(
            cyclo::factorize(n), static_cast<std::size_t>(4 * n + 1));
        for (std::uint64_t k = 0; k <= 4 * n; ++k)
            if (s.at(k) != s.at(k % n)) {
                r.pass = false;
                r.detail = "c(n,k) != c(n,k mod n) at n = " + std::to_string(n) +
                           ", k = " + std::to_string(k);
                return r;
            }
    }
    r.detail = "c(n,k) = c(n,k mod n) for n <= " + std::to_string(max_n) + ", k <= 4n";
    return r;
}

int cmd_check(std::uint64_t max_n, bool json, const BudgetFlags& budget) {
    if (max_n < 2) throw std::invalid_argument("check: --max-n must be at least 2");
    std::vector<SuiteResult> suites;
    suites.push_back(check_divisor_product(max_n, budget.degree_budget));
    suites.push_back(check_palindromy(max_n, budget.degree_budget));
    suites.push_back(check_height_forward(max_n, budget.degree_budget));
    suites.push_back(check_height_inverse(max_n, budget.degree_budget));
    suites.push_back(check_migotti(max_n, budget.degree_budget));
    suites.push_back(check_periodicity(max_n, budget.degree_budget));
    bool all = std::all_of(suites.begin(), suites.end(),
                           [](const SuiteResult& s) { return s.pass; });
    if (json) {
        nlohmann::json out;
        out["max_n"] = std::to_string(max_n);
        nlohmann::json arr = nlohmann::json::array();
        for (const SuiteResult& s : suites)
            arr.push_back({{"name", s.name}, {"pass", s.pass}, {"detail", s.detail}});
        out["suites"] = std::move(arr);
        out["all_pass"] = all;
        std::cout << out.dump(2) << "\n";
    } else {
        for (const SuiteResult& s : suites)
            std::cout << (s.pass ? "PASS " : "FAIL ") << s.name << ": " << s.detail << "\n";
        std::cout << (all ? "all suites passed" : "some suites FAILED") << "\n";
    }
    return all ? kExitOk : kExitVerify;
}

int cmd_table(std::uint64_t s, std::uint64_t t, std::uint64_t count, std::uint64_t k_limit,
              cyclo::CoefficientKind kind, const std::string& out_path, bool json,
              const BudgetFlags& budget) {
    if (s == 0 || t >= s) throw std::invalid_argument("table: requires s > t >= 0");
    if (count == 0) throw std::invalid_argument("table: --count must be at least 1");
    if (k_limit == 0) throw std::invalid_argument("table: --k-limit must be at least 1");
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path);
        if (!file) {
            std::cerr << "error: cannot open " << out_path << " for writing\n";
            return kExitIo;
        }
        out = &file;
    }
    for (std::uint64_t i = 1; i <= count; ++i) {
        std::uint64_t n = cyclo::checked_mul_u64(s, i) + t;
        cyclo::PrimeFactorization f = cyclo::factorize(n);
        for (std::uint64_t k = 0; k < k_limit; ++k) {
            mpz_class value = (kind == cyclo::CoefficientKind::Forward)
                                  ? cyclo::a_coeff(f, cyclo::mpz_from_u64(k), budget.degree_budget)
                                  : cyclo::c_coeff(f, cyclo::mpz_from_u64(k), budget.degree_budget);
            if (json) {
                nlohmann::json row;
                row["n"] = std::to_string(n);
                row["k"] = std::to_string(k);
                row["kind"] = cyclo::kind_to_string(kind);
                row["value"] = value.get_str();
                *out << row.dump() << "\n";
            } else {
                *out << n << ' ' << k << ' ' << value.get_str() << "\n";
            }
        }
    }
    out->flush();
    if (!*out) {
        std::cerr << "error: write failure\n";
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact cyclotomic coefficient queries and constructive witness certificates"};
    app.require_subcommand(1);

    // poly
    auto* poly = app.add_subcommand("poly", "Print coefficients of Phi_n");
    std::uint64_t poly_n = 1;
    std::uint64_t poly_limit = 0;
    bool poly_json = false;
    BudgetFlags poly_budget;
    poly->add_option("-n,--n", poly_n, "Index n")->required();
    poly->add_option("--limit", poly_limit, "Truncate output below this power");
    poly->add_flag("--json", poly_json, "JSON output");
    add_budget_flags(poly, poly_budget);

    // coeff
    auto* coeff = app.add_subcommand("coeff", "Print a single coefficient a(n,k) or c(n,k)");
    std::uint64_t coeff_n = 1, coeff_k = 0;
    std::string coeff_kind = "a";
    bool coeff_json = false;
    BudgetFlags coeff_budget;
    coeff->add_option("-n,--n", coeff_n, "Index n")->required();
    coeff->add_option("-k,--k", coeff_k, "Coefficient position")->required();
    coeff->add_option("--kind", coeff_kind, "a (forward) or c (inverse)")
        ->check(CLI::IsMember({"a", "c"}));
    coeff->add_flag("--json", coeff_json, "JSON output");
    add_budget_flags(coeff, coeff_budget);

    // witness
    auto* witness = app.add_subcommand("witness", "Construct and verify a coefficient witness");
    std::uint64_t wit_s = 1, wit_t = 0, wit_m = 1;
    long long wit_z = 0;
    std::string wit_kind = "a";
    bool wit_no_verify = false, wit_json = false;
    BudgetFlags wit_budget;
    witness->add_option("-s,--s", wit_s, "Progression modulus")->required();
    witness->add_option("-t,--t", wit_t, "Progression residue")->required();
    witness->add_option("-z,--target", wit_z, "Target coefficient value")->required();
    witness->add_option("--kind", wit_kind, "a (forward) or c (inverse)")
        ->check(CLI::IsMember({"a", "c"}));
    witness->add_option("--m", wit_m, "Extra multiplier on the progression");
    witness->add_flag("--no-verify", wit_no_verify, "Skip independent verification");
    witness->add_flag("--json", wit_json, "JSON output");
    add_budget_flags(witness, wit_budget);

    // check
    auto* check = app.add_subcommand("check", "Run the invariant sweeps up to a bound");
    std::uint64_t check_max_n = 2;
    bool check_json = false;
    BudgetFlags check_budget;
    check->add_option("--max-n", check_max_n, "Upper bound for the sweeps")->required();
    check->add_flag("--json", check_json, "JSON output");
    add_budget_flags(check, check_budget);

    // table
    auto* table = app.add_subcommand("table", "Tabulate coefficients along a progression");
    std::uint64_t tab_s = 1, tab_t = 0, tab_count = 1, tab_klimit = 1;
    std::string tab_kind = "a", tab_out;
    bool tab_json = false;
    BudgetFlags tab_budget;
    table->add_option("-s,--s", tab_s, "Progression modulus")->required();
    table->add_option("-t,--t", tab_t, "Progression residue")->required();
    table->add_option("--count", tab_count, "Number of progression terms")->required();
    table->add_option("--k-limit", tab_klimit, "Coefficient positions per term")->required();
    table->add_option("--kind", tab_kind, "a (forward) or c (inverse)")
        ->check(CLI::IsMember({"a", "c"}));
    table->add_option("--out", tab_out, "Write rows to this file instead of stdout");
    table->add_flag("--json", tab_json, "JSON-lines output");
    add_budget_flags(table, tab_budget);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    auto guarded = [](auto&& body) -> int {
        try {
            return body();
        } catch (const cyclo::budget_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitBudget;
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::overflow_error& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        } catch (const std::logic_error& e) {
            std::cerr << "internal error: " << e.what() << "\n";
            return kExitVerify;
        } catch (const std::exception& e) {
            std::cerr << "error: " << e.what() << "\n";
            return kExitUsage;
        }
    };

    if (poly->parsed())
        return guarded([&] { return cmd_poly(poly_n, poly_limit, poly_json, poly_budget); });
    if (coeff->parsed())
        return guarded([&] {
            return cmd_coeff(coeff_n, coeff_k, cyclo::kind_from_string(coeff_kind), coeff_json,
                             coeff_budget);
        });
    if (witness->parsed())
        return guarded([&] {
            return cmd_witness(wit_s, wit_t, wit_z, cyclo::kind_from_string(wit_kind), wit_m,
                               !wit_no_verify, wit_json, wit_budget);
        });
    if (check->parsed())
        return guarded([&] { return cmd_check(check_max_n, check_json, check_budget); });
    if (table->parsed())
        return guarded([&] {
            return cmd_table(tab_s, tab_t, tab_count, tab_klimit,
                             cyclo::kind_from_string(tab_kind), tab_out, tab_json, tab_budget);
        });
    return kExitUsage;
}
