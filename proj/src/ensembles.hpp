#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "common.hpp"

namespace bd::ensembles {

// mt19937_64 with explicit uniform/normal/gamma transforms so that the
// stream is the same on every platform (std distributions are not).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform();            // (0,1)
  double normal();             // N(0,1), polar method with cache
  double gamma(double shape);  // Gamma(shape, 1), shape > 0
  double chi(double k);        // chi_k = sqrt(Gamma(k/2, scale 2))

private:
  std::mt19937_64 eng_;
  bool have_cached_ = false;
  double cached_ = 0.0;
};

struct SymTridiagonal {
  std::vector<double> diag;
  std::vector<double> offdiag;  // size diag.size()-1
};

SymTridiagonal sample_hermite_tridiag(const EnsembleSpec& spec, Rng& rng);
SymTridiagonal sample_laguerre_tridiag(const EnsembleSpec& spec, Rng& rng);

// All eigenvalues, ascending. Implicit-shift QL, eigenvalues only, with a
// Sturm bisection fallback if the iteration cap is hit.
std::vector<double> tridiag_eigenvalues(const SymTridiagonal& t);

struct Histogram {
  std::vector<double> edges;       // size bins+1, strictly increasing
  std::vector<std::int64_t> counts;  // size bins
  std::int64_t total_draws = 0;
  std::int64_t clipped = 0;  // eigenvalues outside [edges.front., edges.back)
  Scaling scaling = Scaling::Raw;

  void accumulate(double x);
  void merge(const Histogram& other);
};

// Bin edges centered on a uniform grid (bin i covers grid[i] +- step/2).
std::vector<double> grid_centered_edges(const std::vector<double>& grid);

// Freedman-Diaconis width from a pilot sample, frozen thereafter.
std::vector<double> freedman_diaconis_edges(std::vector<double> pilot, double lo, double hi);

// Map a physical eigenvalue into the scaled coordinate of `scaling`.
double scale_eigenvalue(const EnsembleSpec& spec, Scaling scaling, double lambda);

// Density normalization: histogram count -> density value on the scaled axis.
// Bulk scalings estimate the order-one limiting curves (integral 1), raw and
// edge scalings keep total mass N.
double density_factor(const EnsembleSpec& spec, Scaling scaling);

// Draws `draws` matrices, bins scaled eigenvalues; deterministic for fixed
// (seed, spec, draws, edges): work is split into fixed 1024-draw chunks with
// per-chunk derived RNG streams, independent of `threads`.
Histogram mc_histogram(const EnsembleSpec& spec, Scaling scaling, std::vector<double> edges, std::uint64_t seed,
                       long draws, int threads);

// Histogram -> DensityCurve on bin centers.
DensityCurve empirical_density(const EnsembleSpec& spec, const Histogram& h);

}  // namespace bd::ensembles
