#include "cyclo/cert_json.hpp"

#include <charconv>

namespace cyclo {

namespace {

std::string u64_str(std::uint64_t v) { return std::to_string(v); }

std::uint64_t parse_u64(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw std::invalid_argument(std::string("certificate: missing string field ") + key);
    const std::string& s = j[key].get_ref<const std::string&>();
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("certificate: bad integer in ") + key);
    return v;
}

long long parse_i64(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw std::invalid_argument(std::string("certificate: missing string field ") + key);
    const std::string& s = j[key].get_ref<const std::string&>();
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::invalid_argument(std::string("certificate: bad integer in ") + key);
    return v;
}

mpz_class parse_mpz(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_string())
        throw std::invalid_argument(std::string("certificate: missing string field ") + key);
    try {
        return mpz_class(j[key].get_ref<const std::string&>());
    } catch (const std::invalid_argument&) {
        throw std::invalid_argument(std::string("certificate: bad integer in ") + key);
    }
}

}  // namespace

std::string kind_to_string(CoefficientKind kind) {
    return kind == CoefficientKind::Forward ? "a" : "c";
}

CoefficientKind kind_from_string(const std::string& s) {
    if (s == "a") return CoefficientKind::Forward;
    if (s == "c") return CoefficientKind::Inverse;
    throw std::invalid_argument("kind must be \"a\" or \"c\"");
}

nlohmann::json certificate_to_json(const WitnessCertificate& cert) {
    nlohmann::json j;
    j["kind"] = kind_to_string(cert.kind);
    j["target"] = std::to_string(cert.target);
    j["s"] = u64_str(cert.original.s);
    j["t"] = u64_str(cert.original.t);
    j["m"] = u64_str(cert.original.m);
    j["m_reduced"] = u64_str(cert.m_reduced);
    j["T"] = u64_str(cert.prime_count);
    j["window_base"] = u64_str(cert.window.base);
    nlohmann::json primes = nlohmann::json::array();
    for (std::uint64_t p : cert.window.primes) primes.push_back(u64_str(p));
    j["primes"] = std::move(primes);
    j["q1"] = u64_str(cert.q1);
    j["q2"] = cert.q2 ? nlohmann::json(u64_str(*cert.q2)) : nlohmann::json(nullptr);
    j["q3"] = u64_str(cert.q3);
    j["q4"] = u64_str(cert.q4);
    j["m1"] = cert.m1.get_str();
    j["n"] = cert.n.get_str();
    j["k"] = cert.k.get_str();
    j["computed"] = cert.computed.get_str();
    j["verified"] = cert.verified;
    return j;
}

WitnessCertificate certificate_from_json(const nlohmann::json& j) {
    WitnessCertificate cert;
    if (!j.contains("kind") || !j["kind"].is_string())
        throw std::invalid_argument("certificate: missing kind");
    cert.kind = kind_from_string(j["kind"].get<std::string>());
    cert.target = parse_i64(j, "target");
    cert.original.s = parse_u64(j, "s");
    cert.original.t = parse_u64(j, "t");
    cert.original.m = parse_u64(j, "m");
    cert.m_reduced = parse_u64(j, "m_reduced");
    cert.prime_count = parse_u64(j, "T");
    cert.window.base = parse_u64(j, "window_base");
    if (!j.contains("primes") || !j["primes"].is_array())
        throw std::invalid_argument("certificate: missing primes array");
    for (const auto& entry : j["primes"]) {
        if (!entry.is_string()) throw std::invalid_argument("certificate: bad primes entry");
        const std::string& s = entry.get_ref<const std::string&>();
        std::uint64_t v = 0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size())
            throw std::invalid_argument("certificate: bad primes entry");
        cert.window.primes.push_back(v);
    }
    cert.window.count = cert.prime_count;
    // Window modulus and residue are not carried on the wire; they are
    // implied by m_reduced and the reduction of (s, t).
    if (cert.m_reduced == 0) throw std::invalid_argument("certificate: m_reduced must be positive");
    ProgressionReduction red = reduce_progression(cert.original.s, cert.original.t);
    cert.window.modulus = checked_mul_u64(cert.m_reduced, red.s_prime);
    cert.window.residue = 1 % cert.window.modulus;
    cert.q1 = parse_u64(j, "q1");
    if (!j.contains("q2")) throw std::invalid_argument("certificate: missing q2");
    if (!j["q2"].is_null()) cert.q2 = parse_u64(j, "q2");
    cert.q3 = parse_u64(j, "q3");
    cert.q4 = parse_u64(j, "q4");
    cert.m1 = parse_mpz(j, "m1");
    cert.n = parse_mpz(j, "n");
    cert.k = parse_mpz(j, "k");
    cert.computed = parse_mpz(j, "computed");
    if (!j.contains("verified") || !j["verified"].is_boolean())
        throw std::invalid_argument("certificate: missing verified flag");
    cert.verified = j["verified"].get<bool>();
    return cert;
}

}  // namespace cyclo
