#pragma once

#include <cstdint>
#include <string>

#include "qaelab/mlqae.hpp"
#include "qaelab/noise.hpp"
#include "qaelab/report.hpp"
#include "qaelab/rng.hpp"

namespace qaelab::repro {

struct Options {
  std::uint64_t seed = 20200328;
  bool skip_statistical = false;
  std::string data_dir_override;  // empty -> default resolution
};

// Runs every reproduction check and returns the per-entry report. Entries
// are grouped by acceptance criterion number (1..11).
ReproReport run_paper_repro(const Options& options);

// MLQAE with the schedule circuits lowered to basis gates and executed under
// the noise model; used by the degradation studies.
std::vector<ShotRecord> run_mlqae_noisy(const ProblemSpec& spec, const Schedule& schedule,
                                        std::int64_t shots_per_circuit, std::uint64_t seed,
                                        const NoiseModel& model);

// Seeded random circuit over the full gate vocabulary; shared by the
// equivalence sweeps and the tests.
Circuit random_circuit(CounterRng& rng, int num_qubits, int num_gates);

}  // namespace qaelab::repro
