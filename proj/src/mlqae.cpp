#include "qaelab/mlqae.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "qaelab/rng.hpp"

namespace qaelab {

namespace {
constexpr double kPi = std::numbers::pi;
}

ScheduleKind schedule_kind_from_name(std::string_view name) {
  if (name == "lis" || name == "LIS") return ScheduleKind::LIS;
  if (name == "eis" || name == "EIS") return ScheduleKind::EIS;
  throw std::invalid_argument("unknown schedule kind: " + std::string(name));
}

std::string_view schedule_kind_name(ScheduleKind kind) {
  return kind == ScheduleKind::LIS ? "lis" : "eis";
}

Schedule build_schedule(ScheduleKind kind, int num_circuits) {
  if (num_circuits < 1) throw std::invalid_argument("need at least one circuit");
  Schedule schedule{kind, num_circuits, {}};
  schedule.powers.reserve(num_circuits);
  for (int k = 0; k < num_circuits; ++k) {
    if (k == 0)
      schedule.powers.push_back(0);  // bare A
    else
      schedule.powers.push_back(kind == ScheduleKind::EIS ? 1 << (k - 1) : k);
  }
  return schedule;
}

std::int64_t query_count(const Schedule& schedule) {
  std::int64_t total = 0;
  for (int p : schedule.powers) total += p;
  return total;
}

std::vector<ShotRecord> run_mlqae(const ProblemSpec& spec, const Schedule& schedule,
                                  std::int64_t shots_per_circuit, std::uint64_t seed) {
  const AOperator a_op = build_a(spec);
  const GroverOperator q_op = build_q(a_op);
  const std::vector<int> flag{a_op.flag_qubit()};

  std::vector<ShotRecord> records;
  records.reserve(schedule.powers.size());
  CounterRng base(seed);
  for (std::size_t k = 0; k < schedule.powers.size(); ++k) {
    const StateVector state = apply_q_power(a_op, q_op, schedule.powers[k]);
    // One independent stream per circuit index: order of execution or
    // parallel fan-out cannot change the counts.
    const std::uint64_t circuit_seed = base.substream(k).next_u64();
    const MeasurementRecord rec = sample(state, flag, shots_per_circuit, circuit_seed);
    ShotRecord record;
    record.power = schedule.powers[k];
    record.shots = shots_per_circuit;
    if (const auto it = rec.counts.find("1"); it != rec.counts.end()) record.hits = it->second;
    records.push_back(record);
  }
  return records;
}

std::vector<double> mlqae_exact_probabilities(const ProblemSpec& spec,
                                              const Schedule& schedule) {
  const AOperator a_op = build_a(spec);
  const GroverOperator q_op = build_q(a_op);
  std::vector<double> probs;
  probs.reserve(schedule.powers.size());
  for (int power : schedule.powers) {
    const StateVector state = apply_q_power(a_op, q_op, power);
    probs.push_back(probability_of(state, a_op.flag_qubit(), 1));
  }
  return probs;
}

double log_likelihood(double theta, const std::vector<ShotRecord>& records) {
  double total = 0.0;
  for (const ShotRecord& rec : records) {
    const double angle = (2.0 * rec.power + 1.0) * theta;
    if (rec.hits > 0) total += 2.0 * rec.hits * std::log(std::abs(std::sin(angle)));
    if (rec.shots - rec.hits > 0)
      total += 2.0 * (rec.shots - rec.hits) * std::log(std::abs(std::cos(angle)));
  }
  return total;
}

MLEResult mle_estimate(const std::vector<ShotRecord>& records, int grid_points) {
  if (records.empty()) throw std::invalid_argument("no shot records");
  if (grid_points < 2) throw std::invalid_argument("grid needs at least 2 points");
  for (const ShotRecord& rec : records)
    if (rec.hits < 0 || rec.hits > rec.shots || rec.shots < 1)
      throw std::invalid_argument("invalid shot record");

  const double eps = 1.0 / grid_points;
  const double lo = eps;
  const double hi = kPi / 2.0 - eps;
  const double step = (hi - lo) / (grid_points - 1);

  double best = -std::numeric_limits<double>::infinity();
  int best_index = -1;
  for (int i = 0; i < grid_points; ++i) {
    const double theta = lo + i * step;
    const double value = log_likelihood(theta, records);
    // Non-finite values are rejected grid points, not errors.
    if (std::isfinite(value) && value > best) {
      best = value;
      best_index = i;
    }
  }
  if (best_index < 0)
    throw std::logic_error("likelihood non-finite on the whole clamped grid");

  MLEResult result;
  result.theta_hat = lo + best_index * step;
  const double s = std::sin(result.theta_hat);
  result.amplitude_hat = s * s;
  result.grid_points = grid_points;
  result.log_likelihood_at_max = best;
  return result;
}

std::vector<ShotRecord> records_from_json_text(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  if (!j.is_array()) throw std::invalid_argument("records file must hold a JSON array");
  std::vector<ShotRecord> records;
  for (const auto& item : j) {
    ShotRecord rec;
    rec.power = item.at("power").get<int>();
    rec.shots = item.at("shots").get<std::int64_t>();
    rec.hits = item.at("hits").get<std::int64_t>();
    if (rec.hits < 0 || rec.hits > rec.shots)
      throw std::invalid_argument("record hits outside [0, shots]");
    records.push_back(rec);
  }
  return records;
}

std::string records_to_json_text(const std::vector<ShotRecord>& records) {
  nlohmann::ordered_json j = nlohmann::ordered_json::array();
  for (const ShotRecord& rec : records)
    j.push_back({{"power", rec.power}, {"shots", rec.shots}, {"hits", rec.hits}});
  return j.dump(2) + "\n";
}

std::vector<ShotRecord> load_records(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open records file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return records_from_json_text(os.str());
}

}  // namespace qaelab
