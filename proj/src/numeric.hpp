#pragma once
// Small numerical helpers shared across modules: adaptive quadrature and
// deterministic integer/seed utilities. No external deps.

#include <cstdint>
#include <functional>

namespace dphist {

// Adaptive Simpson on [a,b]. The interval is pre-split into `panels` equal
// panels before refinement so narrow features away from the midpoint are not
// missed; each panel is then refined recursively until the local Richardson
// error estimate is below its share of `tol` (absolute).
double integrate(const std::function<double(double)>& f, double a, double b,
                 double tol, int panels = 32);

// splitmix64: cheap seed scrambler, used to derive independent streams.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace dphist
