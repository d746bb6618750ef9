#include <cstdio>
#include <filesystem>

#include "doctest.h"
#include "qaelab/mlqae.hpp"
#include "qaelab/report.hpp"
#include "test_support.hpp"

using namespace qaelab;

TEST_SUITE_BEGIN("report");

TEST_CASE("csv quoting follows the usual rules") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("with,comma") == "\"with,comma\"");
  CHECK(csv_escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_escape("line\nbreak") == "\"line\nbreak\"");
  CHECK(to_csv({{"a", "b"}, {"1", "x,y"}}) == "a,b\r\n1,\"x,y\"\r\n");
}

TEST_CASE("histogram csv has one row per bitstring plus header") {
  const std::map<std::string, std::int64_t> histogram{{"00", 3}, {"01", 5}, {"11", 8}};
  std::vector<std::vector<std::string>> rows{{"reading", "count"}};
  for (const auto& [bits, count] : histogram) rows.push_back({bits, std::to_string(count)});
  const std::string text = to_csv(rows);
  std::size_t lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == histogram.size() + 1);
}

TEST_CASE("json emission is deterministic and round-trips") {
  const std::vector<ShotRecord> records{{0, 1024, 248}, {1, 1024, 1024}};
  const std::string once = records_to_json_text(records);
  const std::string twice = records_to_json_text(records);
  CHECK(once == twice);
  CHECK(records_from_json_text(once) == records);

  const MLEResult fit = mle_estimate(records, 5000);
  ordered_json j{{"theta_hat", fit.theta_hat},
                 {"amplitude_hat", fit.amplitude_hat},
                 {"grid_points", fit.grid_points},
                 {"log_likelihood_at_max", fit.log_likelihood_at_max}};
  const nlohmann::json parsed = nlohmann::json::parse(j.dump());
  CHECK(parsed["theta_hat"].get<double>() == fit.theta_hat);  // lossless doubles
  CHECK(parsed["log_likelihood_at_max"].get<double>() == fit.log_likelihood_at_max);
}

TEST_CASE("file emission round-trips through the filesystem") {
  const std::string path =
      (std::filesystem::temp_directory_path() / "qaelab_report_test.json").string();
  ordered_json j{{"alpha", 1}, {"beta", "two"}};
  emit_json(j, path);
  CHECK(nlohmann::json::parse(read_text_file(path)) == nlohmann::json(j));
  std::remove(path.c_str());
}

TEST_CASE("repro report validates against the shipped schema") {
  ReproReport report;
  report.seed = 7;
  ReproEntry entry;
  entry.criterion = 1;
  entry.name = "example";
  entry.paper_value = 0.524;
  entry.computed_value = 0.5241;
  entry.tolerance = 0.001;
  entry.relative_error = 1.9e-4;
  entry.pass = true;
  entry.runtime_seconds = 0.01;
  report.entries.push_back(entry);
  ReproEntry property = entry;
  property.name = "property";
  property.paper_value.reset();
  property.tolerance.reset();
  report.entries.push_back(property);

  const nlohmann::json schema =
      nlohmann::json::parse(read_text_file(data_dir() + "/schema/repro_report.schema.json"));
  const nlohmann::json value = nlohmann::json::parse(report.to_json().dump());
  CHECK(!validate_schema(value, schema).has_value());

  nlohmann::json broken = value;
  broken.erase("entries");
  CHECK(validate_schema(broken, schema).has_value());

  nlohmann::json wrong_type = value;
  wrong_type["entries"][0]["pass"] = "yes";
  CHECK(validate_schema(wrong_type, schema).has_value());
}

TEST_CASE("data dir resolution prefers the explicit override") {
  CHECK(data_dir("/tmp/override") == "/tmp/override");
  CHECK(data_dir().find("data") != std::string::npos);
}

TEST_CASE("output paths pass through when absolute") {
  CHECK(resolve_output_path("/tmp/x.json") == "/tmp/x.json");
}

TEST_SUITE_END();
