#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "odeco/eigen_enum.hpp"
#include "odeco/symtensor.hpp"

namespace odeco {

/// Malformed interchange file; the message names the offending field.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Coords { T, U };

/// {"n", "d", "coords": "t"|"u", "entries": [{"index": [...], "value": x}, ...]}
/// Every degree-d index is written; on read, omitted indices are zero.
nlohmann::json tensor_to_json(const SymTensor& t, Coords coords = Coords::T);
SymTensor tensor_from_json(const nlohmann::json& j);

/// {"n", "d", "lambdas": [...], "basis": [row-major k*n values]}
nlohmann::json decomp_to_json(const OrthoDecomp& dec, int d);
/// Returns the decomposition and its order d.
std::pair<OrthoDecomp, int> decomp_from_json(const nlohmann::json& j);

/// {"n", "d", "expected_count", "eigenpairs": [{"re", "im", "lambda_re",
/// "lambda_im", "residual", "support", "eta_exponents"}, ...], "nullspace_basis"}
nlohmann::json eigen_report_to_json(const EigenEnumeration& e, int n, int d);
EigenEnumeration eigen_report_from_json(const nlohmann::json& j);

nlohmann::json read_json_file(const std::filesystem::path& path);
void write_json_file(const std::filesystem::path& path, const nlohmann::json& j);

}  // namespace odeco
