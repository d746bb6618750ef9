#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qaelab/qaa.hpp"

namespace qaelab {

// Hit-or-miss integrand: the integral of f - g over the box `bounds`, with
// samples drawn from bounds x range_bounds. Callers assert f > g on the
// domain; range_bounds must bracket f - g.
struct IntegrandPair {
  std::function<double(const std::vector<double>&)> f;
  std::function<double(const std::vector<double>&)> g;  // defaults to 0
  std::vector<std::array<double, 2>> bounds;            // per-dimension [lo, hi]
  std::array<double, 2> range_bounds{0.0, 1.0};
};

struct MCIResult {
  std::int64_t samples = 0;
  std::int64_t hits = 0;
  double estimate = 0.0;  // (hits/samples) * box_volume
  double box_volume = 0.0;
};

// Uniform samples over bounds x range_bounds; a sample is a hit iff
// g(x) < x_last < f(x) (strict; boundary samples count as misses).
MCIResult hit_or_miss(const IntegrandPair& pair, std::int64_t samples, std::uint64_t seed);

// k/N for the instance: the counting view of the quantum amplitude a.
double amplitude_as_counting(const ProblemSpec& spec);

// Built-in integrands.
IntegrandPair sinpi_integrand();                 // sin(pi x) on [0,1], range [0,1]
IntegrandPair linear_integrand();                // f(x) = x on [0,1], range [0,1]
IntegrandPair constant_integrand(double value);  // f == value on [0,1], range [0,1]
// Piecewise-linear interpolation through (x, y) points sorted by x.
IntegrandPair table_integrand(std::vector<std::array<double, 2>> points,
                              std::array<double, 2> range_bounds);

IntegrandPair integrand_by_name(const std::string& name);

}  // namespace qaelab
