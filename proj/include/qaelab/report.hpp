#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

namespace qaelab {

using ordered_json = nlohmann::ordered_json;

inline constexpr int kReportSchemaVersion = 1;

// One reproduced quantity or property check.
struct ReproEntry {
  int criterion = 0;  // acceptance criterion this entry belongs to
  std::string name;
  std::optional<double> paper_value;
  double computed_value = 0.0;
  std::optional<double> tolerance;  // |computed - paper| <= tolerance when set
  double relative_error = 0.0;
  bool pass = false;
  bool statistical = false;  // skipped under --skip statistical
  double runtime_seconds = 0.0;
  std::string detail;
};

struct ReproReport {
  int schema_version = kReportSchemaVersion;
  std::uint64_t seed = 0;
  bool skip_statistical = false;
  std::vector<ReproEntry> entries;

  bool all_passed() const;
  ordered_json to_json() const;
};

// Serialization with stable field ordering.
void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);
void emit_json(const ordered_json& value, const std::string& path);

// RFC-4180-style CSV: fields containing comma, quote, CR or LF are quoted
// and embedded quotes doubled. Each row gets a trailing CRLF.
std::string csv_escape(const std::string& field);
std::string to_csv(const std::vector<std::vector<std::string>>& rows);
void emit_csv(const std::vector<std::vector<std::string>>& rows, const std::string& path);

// Minimal JSON-Schema subset checker (type / required / properties / items);
// returns an error description or nullopt when the value conforms.
std::optional<std::string> validate_schema(const nlohmann::json& value,
                                           const nlohmann::json& schema);

// Data directory resolution: explicit override, then QAELAB_DATA_DIR, then
// the source tree default baked in at build time.
std::string data_dir(const std::string& override_path = "");

// Output path resolution: relative paths are placed under QAELAB_OUT_DIR
// when that variable is set.
std::string resolve_output_path(const std::string& path);

}  // namespace qaelab
