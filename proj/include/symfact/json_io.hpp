#pragma once

// JSON encodings shared by the library and the CLI.
//
//   matrix:       {"rows": n, "cols": n, "data": [[re, im], ...]}   row-major
//   certificate:  {"target": matrix, "factors": [matrix...], "method": str,
//                  "residual": x, "tol": {...}}
//   obstruction:  {"kind": str, "target": matrix, "excluded_length": n | "all",
//                  "evidence": {...}[, "base_point": label]}
//   field:        {"points": [labels], "fiber_dim": n, "values": {label: matrix}}
//
// Every parse error is reported as SchemaError carrying a field path.

#include "symfact/centerfun.hpp"
#include "symfact/certkit.hpp"
#include "symfact/factor.hpp"
#include "symfact/obstruct.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace symfact {

using Json = nlohmann::json;

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j, const std::string& path = "$");

Json tolerance_to_json(const Tolerance& tol);
Tolerance tolerance_from_json(const Json& j, const std::string& path = "$");

Json certificate_to_json(const FactorizationCertificate& cert);
FactorizationCertificate certificate_from_json(const Json& j, const std::string& path = "$");

Json obstruction_to_json(const ObstructionCertificate& obs);
ObstructionCertificate obstruction_from_json(const Json& j, const std::string& path = "$");

Json report_to_json(const VerificationReport& report);
Json membership_to_json(const MembershipReport& report);

Json field_to_json(const MatrixField& f);
MatrixField field_from_json(const Json& j, const std::string& path = "$");

// Text helpers; parse failures (truncated input, NaN tokens, ...) become
// SchemaError at path "$".
Json parse_json(std::string_view text);
std::string dump_json(const Json& j);

std::string serialize(const FactorizationCertificate& cert);
std::string serialize(const ObstructionCertificate& obs);
std::string serialize(const VerificationReport& report);
FactorizationCertificate deserialize_certificate(std::string_view text);
ObstructionCertificate deserialize_obstruction(std::string_view text);

}  // namespace symfact
