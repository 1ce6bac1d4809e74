#pragma once

// JSON forms of matrices, codes, signal sets and reports. Objects use sorted
// keys and shortest round-trip number formatting, so a dump/parse/dump cycle
// is byte-identical.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "stbc/bound.hpp"
#include "stbc/codes.hpp"
#include "stbc/gain.hpp"

namespace stbc {

using json = nlohmann::json;

/// File could not be read or written.
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr const char* kLibraryVersion = "1.0.0";

json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json code_to_json(const LinearDispersionCode& code);
LinearDispersionCode code_from_json(const json& j);

struct LabeledSignalSet {
  SignalSet set;
  std::optional<std::vector<std::uint32_t>> bit_labels;
};
json signal_set_to_json(const SignalSet& s, const std::vector<std::uint32_t>* bit_labels = nullptr);
/// Accepts an object with "points" or a bare [[re, im], ...] array. Points
/// are kept as stored (normalization is recorded, not reapplied).
LabeledSignalSet signal_set_from_json(const json& j);

json classification_to_json(const CodeClassification& c);
json max_family_to_json(const MaxFamilyResult& r);
json claims_to_json(const ClaimsReport& r);

/// library version plus the fixed conventions used by every computation.
json metadata(std::optional<std::uint64_t> seed = std::nullopt);

/// Canonical text: 2-space indent, trailing newline.
std::string dump(const json& j);

json read_json_file(const std::string& path);
/// path "-" or empty writes to standard output.
void write_text(const std::string& path, const std::string& text);

}  // namespace stbc
