#pragma once

#include <cstdint>
#include <functional>
#include <vector>

namespace bd::num {

// Gauss-Legendre nodes/weights on [-1,1], cached per order.
const std::vector<double>& gauss_nodes(int order);
const std::vector<double>& gauss_weights(int order);

// 1D quadrature rule assembled from composite Gauss panels.
struct Rule1D {
  std::vector<double> x;
  std::vector<double> w;
  void append_panel(double a, double b, int order);
};

// Composite rule on [lo,hi] with panels of width <= max_width; panel borders
// are forced at each point of `breaks` that falls inside the interval.
Rule1D composite_rule(double lo, double hi, const std::vector<double>& breaks, double max_width, int order);

// Adaptive Gauss-Kronrod (G7,K15) to requested absolute/relative tolerance.
double adaptive_gk(const std::function<double(double)>& f, double lo, double hi, double abs_tol, double rel_tol,
                   int max_depth = 60);

// Deterministic order-independent reduction: pairwise summation.
double pairwise_sum(const double* v, std::size_t n);

// splitmix64, used to derive scrambling seeds and per-chunk RNG streams.
std::uint64_t splitmix64(std::uint64_t& state);
std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b);

// Sobol sequence, dimensions <= 6 (direction numbers embedded), with an
// XOR digital shift derived from `seed` as scrambling.
class Sobol {
public:
  Sobol(int dim, std::uint64_t seed);
  // Fill pt[0..dim) with the idx-th point (idx >= 0); random access.
  void point(std::uint64_t idx, double* pt) const;
  int dim() const { return dim_; }

private:
  int dim_;
  std::uint32_t dirs_[6][32];
  std::uint32_t shift_[6];
};

}  // namespace bd::num
