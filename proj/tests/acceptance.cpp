// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Criteria 10 and 11 are statistical sweeps; --skip-statistical
// omits them (the reproduction driver then marks them as skipped).

#include <cstdio>
#include <cstring>
#include <map>
#include <string>
#include <vector>

#include "qaelab/repro.hpp"

namespace {

const std::map<int, const char*> kCriteria = {
    {1, "MLE reproduction, simulator counts (theta 0.524, a 0.2504)"},
    {2, "MLE reproduction, IBMQX2 counts (theta 0.795, a 0.509)"},
    {3, "MLE reproduction, VIGO counts (theta 0.780, a 0.494)"},
    {4, "Amplification law P = sin^2((2m+1) theta)"},
    {5, "EIS query count equals the phase-estimation controlled-Q count"},
    {6, "Depth accounting: affine law 4/15/26/48 and growth properties"},
    {7, "Lowering/routing unitary equivalence on 100 random circuits"},
    {8, "Multi-controlled NOT modes (basic: 2 ancillae, shallower)"},
    {9, "Phase-estimation readout: on-grid deterministic, off-grid bracketing"},
    {10, "Classical Monte Carlo baseline, sin(pi x) seed sweep"},
    {11, "Noise degradation monotone in scale"},
};

}  // namespace

int main(int argc, char** argv) {
  qaelab::repro::Options options;
  options.seed = 20200328;
  for (int k = 1; k < argc; ++k) {
    if (std::strcmp(argv[k], "--skip-statistical") == 0) options.skip_statistical = true;
    if (std::strcmp(argv[k], "--seed") == 0 && k + 1 < argc)
      options.seed = std::strtoull(argv[++k], nullptr, 10);
  }

  const qaelab::ReproReport report = qaelab::repro::run_paper_repro(options);

  bool all_ok = true;
  for (const auto& [criterion, title] : kCriteria) {
    int checks = 0;
    bool ok = true;
    double runtime = 0.0;
    for (const qaelab::ReproEntry& entry : report.entries) {
      if (entry.criterion != criterion) continue;
      ++checks;
      ok = ok && entry.pass;
      runtime += entry.runtime_seconds;
    }
    if (checks == 0) {
      std::printf("[SKIP] criterion %2d: %s\n", criterion, title);
      continue;
    }
    std::printf("[%s] criterion %2d: %s  (%d checks, %.2f s)\n", ok ? "PASS" : "FAIL",
                criterion, title, checks, runtime);
    all_ok = all_ok && ok;
  }

  for (const qaelab::ReproEntry& entry : report.entries) {
    if (entry.pass) continue;
    std::printf("  FAILED %s: computed %.9g", entry.name.c_str(), entry.computed_value);
    if (entry.paper_value)
      std::printf(" (paper %.9g, tolerance %.3g)", *entry.paper_value,
                  entry.tolerance.value_or(0.0));
    if (!entry.detail.empty()) std::printf("  [%s]", entry.detail.c_str());
    std::printf("\n");
  }

  return all_ok ? 0 : 1;
}
