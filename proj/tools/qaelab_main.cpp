#include <cstdio>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qaelab/cqae.hpp"
#include "qaelab/mci.hpp"
#include "qaelab/mlqae.hpp"
#include "qaelab/noise.hpp"
#include "qaelab/repro.hpp"
#include "qaelab/transpile.hpp"

namespace {

using namespace qaelab;

std::vector<std::string> split_commas(const std::string& text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) {
      if (start < text.size()) out.push_back(text.substr(start));
      break;
    }
    if (comma > start) out.push_back(text.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

ProblemSpec parse_instance(int qubits, const std::string& good) {
  return ProblemSpec::from_bitstrings(qubits, split_commas(good));
}

void write_output(const ordered_json& value,
                  const std::vector<std::vector<std::string>>& csv_rows,
                  const std::string& out, const std::string& format) {
  if (out.empty()) return;
  const std::string path = resolve_output_path(out);
  if (format == "csv")
    emit_csv(csv_rows, path);
  else
    emit_json(value, path);
  std::cout << "wrote " << path << "\n";
}

std::vector<std::vector<std::string>> kv_rows(const ordered_json& value) {
  std::vector<std::vector<std::string>> rows{{"key", "value"}};
  for (const auto& [key, v] : value.items())
    rows.push_back({key, v.is_string() ? v.get<std::string>() : v.dump()});
  return rows;
}

ordered_json records_json(const std::vector<ShotRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const ShotRecord& rec : records)
    arr.push_back({{"power", rec.power}, {"shots", rec.shots}, {"hits", rec.hits}});
  return arr;
}

ordered_json mle_json(const MLEResult& fit) {
  return ordered_json{{"theta_hat", fit.theta_hat},
                      {"amplitude_hat", fit.amplitude_hat},
                      {"grid_points", fit.grid_points},
                      {"log_likelihood_at_max", fit.log_likelihood_at_max}};
}

int run_mci_cmd(const std::string& fn, std::int64_t samples, std::uint64_t seed,
                const std::string& out, const std::string& format) {
  const MCIResult result = hit_or_miss(integrand_by_name(fn), samples, seed);
  ordered_json j{{"fn", fn},
                 {"samples", result.samples},
                 {"hits", result.hits},
                 {"estimate", result.estimate},
                 {"box_volume", result.box_volume},
                 {"seed", seed}};
  std::cout << j.dump(2) << "\n";
  write_output(j, kv_rows(j), out, format);
  return 0;
}

int run_cqae_cmd(int qubits, const std::string& good, int ancillae, std::int64_t shots,
                 std::uint64_t seed, bool exact, const std::string& out,
                 const std::string& format) {
  CQAEConfig config;
  config.spec = parse_instance(qubits, good);
  config.ancillae = ancillae;
  config.shots = shots;
  config.seed = seed;
  config.exact = exact;
  const CQAEResult result = run_cqae(config);

  ordered_json j{{"qubits", qubits},
                 {"good", good},
                 {"ancillae", ancillae},
                 {"exact", exact},
                 {"theta_estimate", result.theta_estimate},
                 {"amplitude_estimate", result.amplitude_estimate}};
  std::vector<std::vector<std::string>> rows;
  if (exact) {
    j["distribution"] = result.exact_distribution;
    rows.push_back({"reading", "probability"});
    for (std::size_t y = 0; y < result.exact_distribution.size(); ++y)
      rows.push_back({bitstring(y, ancillae), std::to_string(result.exact_distribution[y])});
  } else {
    j["shots"] = shots;
    j["seed"] = seed;
    j["histogram"] = result.histogram;
    rows.push_back({"reading", "count"});
    for (const auto& [bits, count] : result.histogram)
      rows.push_back({bits, std::to_string(count)});
  }
  std::cout << j.dump(2) << "\n";
  write_output(j, rows, out, format);
  return 0;
}

int run_mlqae_cmd(int qubits, const std::string& good, int circuits, const std::string& kind,
                  std::int64_t shots, std::uint64_t seed, int grid, const std::string& noise,
                  const std::string& calibrations, const std::string& data,
                  const std::string& out, const std::string& format) {
  const ProblemSpec spec = parse_instance(qubits, good);
  const Schedule schedule = build_schedule(schedule_kind_from_name(kind), circuits);

  std::vector<ShotRecord> records;
  if (noise.empty()) {
    records = run_mlqae(spec, schedule, shots, seed);
  } else {
    const auto [preset, scale] = parse_noise_spec(noise);
    const std::string calib =
        calibrations.empty() ? data_dir(data) + "/noise/calibrations.json" : calibrations;
    records = repro::run_mlqae_noisy(spec, schedule, shots, seed,
                                     noise_preset(preset, scale, calib));
  }
  const MLEResult fit = mle_estimate(records, grid);

  ordered_json j{{"qubits", qubits},
                 {"good", good},
                 {"kind", kind},
                 {"shots_per_circuit", shots},
                 {"seed", seed},
                 {"query_count", query_count(schedule)},
                 {"records", records_json(records)},
                 {"mle", mle_json(fit)}};
  if (!noise.empty()) j["noise"] = noise;
  std::vector<std::vector<std::string>> rows{{"power", "shots", "hits"}};
  for (const ShotRecord& rec : records)
    rows.push_back({std::to_string(rec.power), std::to_string(rec.shots),
                    std::to_string(rec.hits)});
  std::cout << j.dump(2) << "\n";
  write_output(j, rows, out, format);
  return 0;
}

int run_fit_cmd(const std::string& records_path, int grid, const std::string& out,
                const std::string& format) {
  const std::vector<ShotRecord> records = load_records(records_path);
  const MLEResult fit = mle_estimate(records, grid);
  ordered_json j{{"records_file", records_path},
                 {"records", records_json(records)},
                 {"mle", mle_json(fit)}};
  std::cout << j.dump(2) << "\n";
  write_output(j, kv_rows(mle_json(fit)), out, format);
  return 0;
}

int run_transpile_cmd(const std::string& in, const std::string& map_arg,
                      const std::string& report_path) {
  const Circuit circuit = load_circuit(in);
  const Circuit lowered = lower(circuit);

  ordered_json j{{"input", in},
                 {"logical_depth", depth(circuit)},
                 {"lowered_depth", depth(lowered)}};
  if (!map_arg.empty()) {
    CouplingMap map;
    if (map_arg == "ibmqx2")
      map = CouplingMap::ibmqx2();
    else if (map_arg == "vigo")
      map = CouplingMap::vigo();
    else
      map = CouplingMap::load(map_arg);
    const LoweredCircuit routed = route(lowered, map);
    j["map"] = map.name;
    j["depth"] = routed.depth;
    j["swaps"] = routed.swaps_inserted;
    j["gate_counts"] = routed.gate_counts;
    j["initial_layout"] = routed.initial_layout;
    j["final_layout"] = routed.final_layout;
  } else {
    j["depth"] = depth(lowered);
    j["swaps"] = 0;
    j["gate_counts"] = gate_counts(lowered);
  }
  std::cout << j.dump(2) << "\n";
  if (!report_path.empty()) {
    emit_json(j, resolve_output_path(report_path));
    std::cout << "wrote " << resolve_output_path(report_path) << "\n";
  }
  return 0;
}

int run_repro_cmd(std::uint64_t seed, const std::string& skip, const std::string& data,
                  const std::string& out) {
  repro::Options options;
  options.seed = seed;
  options.skip_statistical = skip == "statistical";
  options.data_dir_override = data;
  const ReproReport report = repro::run_paper_repro(options);

  std::map<int, std::pair<bool, int>> by_criterion;
  for (const ReproEntry& e : report.entries) {
    auto& [ok, count] = by_criterion.try_emplace(e.criterion, true, 0).first->second;
    ok = ok && e.pass;
    count += 1;
  }
  for (const auto& [criterion, status] : by_criterion)
    std::printf("[%s] criterion %2d  (%d checks)\n", status.first ? "PASS" : "FAIL",
                criterion, status.second);
  for (const ReproEntry& e : report.entries)
    if (!e.pass)
      std::printf("       FAILED %s: computed %.6g %s\n", e.name.c_str(), e.computed_value,
                  e.detail.c_str());

  if (!out.empty()) {
    emit_json(report.to_json(), resolve_output_path(out));
    std::cout << "wrote " << resolve_output_path(out) << "\n";
  }
  return report.all_passed() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"quantum amplitude estimation laboratory"};
  app.require_subcommand(1);

  std::string good = "01", fn = "sinpi", kind = "eis", out, format = "json";
  std::string records_path, in_path, map_arg, report_path, noise, calibrations, data, skip;
  int qubits = 2, ancillae = 1, circuits = 4, grid = 20000;
  std::int64_t samples = 100000, shots = 1024;
  std::uint64_t seed = 0;
  bool exact = false;

  auto* mci_cmd = app.add_subcommand("mci", "classical hit-or-miss Monte Carlo integration");
  mci_cmd->add_option("--fn", fn, "integrand: sinpi|linear|const1");
  mci_cmd->add_option("--samples", samples)->check(CLI::PositiveNumber);
  mci_cmd->add_option("--seed", seed)->required();
  mci_cmd->add_option("--out", out);
  mci_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* cqae_cmd = app.add_subcommand("cqae", "phase-estimation amplitude estimation");
  cqae_cmd->add_option("--qubits", qubits)->required();
  cqae_cmd->add_option("--good", good, "comma-separated good bitstrings, msb left");
  cqae_cmd->add_option("--ancillae", ancillae)->check(CLI::PositiveNumber);
  cqae_cmd->add_option("--shots", shots)->check(CLI::PositiveNumber);
  auto* cqae_seed = cqae_cmd->add_option("--seed", seed);
  cqae_cmd->add_flag("--exact", exact, "exact ancilla distribution, no sampling");
  cqae_cmd->add_option("--out", out);
  cqae_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* ml_cmd = app.add_subcommand("mlqae", "maximum-likelihood amplitude estimation");
  ml_cmd->add_option("--qubits", qubits)->required();
  ml_cmd->add_option("--good", good);
  ml_cmd->add_option("--circuits", circuits)->check(CLI::PositiveNumber);
  ml_cmd->add_option("--kind", kind)->check(CLI::IsMember({"eis", "lis"}));
  ml_cmd->add_option("--shots", shots)->check(CLI::PositiveNumber);
  ml_cmd->add_option("--seed", seed)->required();
  ml_cmd->add_option("--grid", grid)->check(CLI::PositiveNumber);
  ml_cmd->add_option("--noise", noise, "noise preset[:scale]");
  ml_cmd->add_option("--calibrations", calibrations);
  ml_cmd->add_option("--data", data, "data directory override");
  ml_cmd->add_option("--out", out);
  ml_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* fit_cmd = app.add_subcommand("mlqae-fit", "post-process externally supplied counts");
  fit_cmd->add_option("--records", records_path)->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--grid", grid)->check(CLI::PositiveNumber);
  fit_cmd->add_option("--out", out);
  fit_cmd->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  auto* tr_cmd = app.add_subcommand("transpile", "lower and route a circuit file");
  tr_cmd->add_option("--in", in_path)->required()->check(CLI::ExistingFile);
  tr_cmd->add_option("--map", map_arg, "coupling map JSON path, or ibmqx2|vigo");
  tr_cmd->add_option("--report", report_path, "write the report JSON here");

  auto* repro_cmd = app.add_subcommand("paper-repro", "run the full reproduction suite");
  repro_cmd->add_option("--seed", seed)->required();
  repro_cmd->add_option("--skip", skip, "skip a check class: statistical");
  repro_cmd->add_option("--data", data);
  repro_cmd->add_option("--out", out);

  CLI11_PARSE(app, argc, argv);

  try {
    if (mci_cmd->parsed()) return run_mci_cmd(fn, samples, seed, out, format);
    if (cqae_cmd->parsed()) {
      if (!exact && cqae_seed->count() == 0)
        throw CLI::ValidationError("--seed is required unless --exact is given");
      return run_cqae_cmd(qubits, good, ancillae, shots, seed, exact, out, format);
    }
    if (ml_cmd->parsed())
      return run_mlqae_cmd(qubits, good, circuits, kind, shots, seed, grid, noise,
                           calibrations, data, out, format);
    if (fit_cmd->parsed()) return run_fit_cmd(records_path, grid, out, format);
    if (tr_cmd->parsed()) return run_transpile_cmd(in_path, map_arg, report_path);
    if (repro_cmd->parsed()) return run_repro_cmd(seed, skip, data, out);
  } catch (const CLI::ValidationError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
