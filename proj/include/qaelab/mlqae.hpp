#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qaelab/qaa.hpp"

namespace qaelab {

enum class ScheduleKind { LIS, EIS };

ScheduleKind schedule_kind_from_name(std::string_view name);
std::string_view schedule_kind_name(ScheduleKind kind);

// Q-power per circuit. powers[0] = 0 always (bare A); EIS doubles from 1,
// LIS counts up.
struct Schedule {
  ScheduleKind kind = ScheduleKind::EIS;
  int num_circuits = 1;
  std::vector<int> powers;
};

struct ShotRecord {
  int power = 0;           // m_k
  std::int64_t shots = 0;  // N_k
  std::int64_t hits = 0;   // h_k, flag measured |1>

  bool operator==(const ShotRecord&) const = default;
};

struct MLEResult {
  double theta_hat = 0.0;
  double amplitude_hat = 0.0;  // sin^2(theta_hat)
  int grid_points = 0;
  double log_likelihood_at_max = 0.0;
};

Schedule build_schedule(ScheduleKind kind, int num_circuits);

// Sum of Q powers. EIS with n circuits totals 2^(n-1) - 1.
std::int64_t query_count(const Schedule& schedule);

// Simulates each Q^{m_k} A circuit on n+1 qubits and samples the flag qubit
// shots_per_circuit times; RNG stream per circuit derives from (seed, k).
std::vector<ShotRecord> run_mlqae(const ProblemSpec& spec, const Schedule& schedule,
                                  std::int64_t shots_per_circuit, std::uint64_t seed);

// Exact flag probabilities sin^2((2 m_k + 1) theta), one per schedule entry.
std::vector<double> mlqae_exact_probabilities(const ProblemSpec& spec,
                                              const Schedule& schedule);

// Sum over records of 2 h ln|sin((2m+1)theta)| + 2 (N-h) ln|cos((2m+1)theta)|.
// Terms with a zero coefficient are skipped; otherwise a vanishing sine or
// cosine yields -inf, which the grid search treats as a rejected point.
double log_likelihood(double theta, const std::vector<ShotRecord>& records);

// Exhaustive search over grid_points angles evenly spaced (endpoints
// included) on [eps, pi/2 - eps] with eps = 1/grid_points; ties broken toward
// the smaller angle.
MLEResult mle_estimate(const std::vector<ShotRecord>& records, int grid_points = 20000);

// JSON array of {power, shots, hits}.
std::vector<ShotRecord> records_from_json_text(const std::string& text);
std::string records_to_json_text(const std::vector<ShotRecord>& records);
std::vector<ShotRecord> load_records(const std::string& path);

}  // namespace qaelab
