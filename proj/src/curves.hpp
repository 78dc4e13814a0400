#pragma once

#include <string>

#include "common.hpp"
#include "softedge.hpp"

namespace bd::curves {

// Uniform grid a:b:step (inclusive of b up to rounding).
std::vector<double> make_grid(double lo, double hi, double step);

// Evaluate a density curve for the given method on `grid` (already in the
// coordinate of `scaling`). Monte Carlo uses (seed, draws); edge methods use
// `kq`. Grid evaluation parallelizes over points; results are independent of
// the thread count.
DensityCurve evaluate(const EnsembleSpec& spec, Method method, Scaling scaling, const std::vector<double>& grid,
                      const softedge::KQuadConfig& kq, std::uint64_t seed, long draws, int threads,
                      bool expert_any_beta = false);

// L1 distance via trapezoid weights on the shared grid.
double metric_l1(const std::vector<double>& grid, const std::vector<double>& a, const std::vector<double>& b);
double metric_linf(const std::vector<double>& a, const std::vector<double>& b);

// Strict interior local maxima, refined by a parabolic fit of the triple.
std::vector<double> peak_locations(const std::vector<double>& grid, const std::vector<double>& v);

// Greedy nearest pairing of two peak lists; returns |delta| per matched pair.
std::vector<double> peak_deltas(const std::vector<double>& ref, const std::vector<double>& other);

std::string to_csv(const DensityCurve& c);
std::string to_json(const DensityCurve& c);

std::string scaling_name(Scaling s);
std::string method_name(Method m);
Scaling scaling_from_name(const std::string& s);
Method method_from_name(const std::string& s);

// Natural scaling for a (family, method) pair when the user does not pick one.
Scaling default_scaling(const EnsembleSpec& spec, Method m);

}  // namespace bd::curves
