#include "qaelab/mci.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qaelab/rng.hpp"

namespace qaelab {

namespace {
constexpr double kPi = std::numbers::pi;
// Chunked sampling: chunk c draws from substream (seed, c), so a parallel
// split over chunks reproduces the sequential result.
constexpr std::int64_t kChunk = 1 << 16;
}  // namespace

MCIResult hit_or_miss(const IntegrandPair& pair, std::int64_t samples, std::uint64_t seed) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  if (!pair.f) throw std::invalid_argument("integrand f missing");
  if (pair.bounds.empty()) throw std::invalid_argument("empty domain");
  double volume = pair.range_bounds[1] - pair.range_bounds[0];
  for (const auto& [lo, hi] : pair.bounds) volume *= hi - lo;
  if (!(volume > 0.0)) throw std::invalid_argument("degenerate sampling box");

  const auto g = pair.g ? pair.g
                        : [](const std::vector<double>&) { return 0.0; };

  CounterRng base(seed);
  const std::size_t dims = pair.bounds.size();
  std::vector<double> x(dims);
  std::int64_t hits = 0;
  for (std::int64_t start = 0; start < samples; start += kChunk) {
    CounterRng rng = base.substream(static_cast<std::uint64_t>(start / kChunk));
    const std::int64_t end = std::min(samples, start + kChunk);
    for (std::int64_t s = start; s < end; ++s) {
      for (std::size_t d = 0; d < dims; ++d) {
        const auto& [lo, hi] = pair.bounds[d];
        x[d] = lo + (hi - lo) * rng.next_double();
      }
      const double y = pair.range_bounds[0] +
                       (pair.range_bounds[1] - pair.range_bounds[0]) * rng.next_double();
      // Strict inequalities: boundary samples count as misses.
      if (y < pair.f(x) && y > g(x)) ++hits;
    }
  }

  MCIResult result;
  result.samples = samples;
  result.hits = hits;
  result.box_volume = volume;
  result.estimate = volume * static_cast<double>(hits) / static_cast<double>(samples);
  return result;
}

double amplitude_as_counting(const ProblemSpec& spec) {
  // Count good states the classical way and tie out against the quantum a.
  std::uint64_t count = 0;
  for (std::uint64_t x = 0; x < spec.domain_size(); ++x)
    if (spec.good_states.contains(x)) ++count;
  const double ratio = static_cast<double>(count) / static_cast<double>(spec.domain_size());
  if (ratio != spec.amplitude())
    throw std::logic_error("counting ratio disagrees with amplitude");
  return ratio;
}

IntegrandPair sinpi_integrand() {
  IntegrandPair pair;
  pair.f = [](const std::vector<double>& x) { return std::sin(kPi * x[0]); };
  pair.bounds = {{0.0, 1.0}};
  pair.range_bounds = {0.0, 1.0};
  return pair;
}

IntegrandPair linear_integrand() {
  IntegrandPair pair;
  pair.f = [](const std::vector<double>& x) { return x[0]; };
  pair.bounds = {{0.0, 1.0}};
  pair.range_bounds = {0.0, 1.0};
  return pair;
}

IntegrandPair constant_integrand(double value) {
  IntegrandPair pair;
  pair.f = [value](const std::vector<double>&) { return value; };
  pair.bounds = {{0.0, 1.0}};
  pair.range_bounds = {0.0, 1.0};
  return pair;
}

IntegrandPair table_integrand(std::vector<std::array<double, 2>> points,
                              std::array<double, 2> range_bounds) {
  if (points.size() < 2) throw std::invalid_argument("table needs at least 2 points");
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a[0] < b[0]; });
  IntegrandPair pair;
  pair.bounds = {{points.front()[0], points.back()[0]}};
  pair.range_bounds = range_bounds;
  pair.f = [pts = std::move(points)](const std::vector<double>& x) {
    const double v = x[0];
    if (v <= pts.front()[0]) return pts.front()[1];
    if (v >= pts.back()[0]) return pts.back()[1];
    for (std::size_t k = 1; k < pts.size(); ++k) {
      if (v <= pts[k][0]) {
        const double w = (v - pts[k - 1][0]) / (pts[k][0] - pts[k - 1][0]);
        return pts[k - 1][1] + w * (pts[k][1] - pts[k - 1][1]);
      }
    }
    return pts.back()[1];
  };
  return pair;
}

IntegrandPair integrand_by_name(const std::string& name) {
  if (name == "sinpi") return sinpi_integrand();
  if (name == "linear") return linear_integrand();
  if (name == "const1") return constant_integrand(1.0);
  throw std::invalid_argument("unknown integrand: " + name);
}

}  // namespace qaelab
