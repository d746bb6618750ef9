#include "qaelab/report.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qaelab {

bool ReproReport::all_passed() const {
  for (const ReproEntry& e : entries)
    if (!e.pass) return false;
  return true;
}

ordered_json ReproReport::to_json() const {
  ordered_json j;
  j["schema_version"] = schema_version;
  j["seed"] = seed;
  j["skip_statistical"] = skip_statistical;
  j["all_passed"] = all_passed();
  j["entries"] = ordered_json::array();
  for (const ReproEntry& e : entries) {
    ordered_json item;
    item["criterion"] = e.criterion;
    item["name"] = e.name;
    if (e.paper_value)
      item["paper_value"] = *e.paper_value;
    else
      item["paper_value"] = nullptr;
    item["computed_value"] = e.computed_value;
    if (e.tolerance)
      item["tolerance"] = *e.tolerance;
    else
      item["tolerance"] = nullptr;
    item["relative_error"] = e.relative_error;
    item["pass"] = e.pass;
    item["statistical"] = e.statistical;
    item["runtime_seconds"] = e.runtime_seconds;
    item["detail"] = e.detail;
    j["entries"].push_back(std::move(item));
  }
  return j;
}

void write_text_file(const std::string& path, const std::string& content) {
  const std::filesystem::path p(path);
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void emit_json(const ordered_json& value, const std::string& path) {
  write_text_file(path, value.dump(2) + "\n");
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string to_csv(const std::vector<std::vector<std::string>>& rows) {
  std::string out;
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      if (k) out += ',';
      out += csv_escape(row[k]);
    }
    out += "\r\n";
  }
  return out;
}

void emit_csv(const std::vector<std::vector<std::string>>& rows, const std::string& path) {
  write_text_file(path, to_csv(rows));
}

namespace {

bool type_matches(const nlohmann::json& value, const std::string& type) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "number") return value.is_number();
  if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

}  // namespace

std::optional<std::string> validate_schema(const nlohmann::json& value,
                                           const nlohmann::json& schema) {
  if (schema.contains("type")) {
    const auto& t = schema["type"];
    bool ok = false;
    if (t.is_string()) {
      ok = type_matches(value, t.get<std::string>());
    } else if (t.is_array()) {
      for (const auto& alt : t)
        if (type_matches(value, alt.get<std::string>())) ok = true;
    }
    if (!ok) return "type mismatch, expected " + t.dump() + " got " + value.dump();
  }
  if (value.is_object()) {
    if (schema.contains("required")) {
      for (const auto& key : schema["required"])
        if (!value.contains(key.get<std::string>()))
          return "missing required key: " + key.get<std::string>();
    }
    if (schema.contains("properties")) {
      for (const auto& [key, sub] : schema["properties"].items()) {
        if (!value.contains(key)) continue;
        if (auto err = validate_schema(value.at(key), sub))
          return key + ": " + *err;
      }
    }
  }
  if (value.is_array() && schema.contains("items")) {
    for (std::size_t k = 0; k < value.size(); ++k)
      if (auto err = validate_schema(value[k], schema["items"]))
        return "[" + std::to_string(k) + "]: " + *err;
  }
  return std::nullopt;
}

std::string data_dir(const std::string& override_path) {
  if (!override_path.empty()) return override_path;
  if (const char* env = std::getenv("QAELAB_DATA_DIR"); env && *env) return env;
  return QAELAB_SOURCE_DATA_DIR;
}

std::string resolve_output_path(const std::string& path) {
  const std::filesystem::path p(path);
  if (p.is_absolute()) return path;
  if (const char* env = std::getenv("QAELAB_OUT_DIR"); env && *env)
    return (std::filesystem::path(env) / p).string();
  return path;
}

}  // namespace qaelab
