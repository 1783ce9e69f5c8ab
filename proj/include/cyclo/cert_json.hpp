#pragma once

#include <string>

#include <json.hpp>

#include "cyclo/witness.hpp"

namespace cyclo {

/// Certificate wire format. Every integer is carried as a decimal string so
/// that consumers without 64-bit (or bignum) integers cannot silently lose
/// precision; n routinely exceeds 2^53.
nlohmann::json certificate_to_json(const WitnessCertificate& cert);

/// Parses the wire format back into a certificate. Throws
/// std::invalid_argument on missing keys or malformed numbers; the result
/// still has to pass verify_certificate to mean anything.
WitnessCertificate certificate_from_json(const nlohmann::json& j);

std::string kind_to_string(CoefficientKind kind);
CoefficientKind kind_from_string(const std::string& s);

}  // namespace cyclo
