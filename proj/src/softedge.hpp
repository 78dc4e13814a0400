#pragma once

#include <cstdint>

#include "common.hpp"

namespace bd::softedge {

enum class KMethod { Auto = 0, NestedGauss = 1, QuasiMonteCarlo = 2 };
enum class KContour { SingleRay = 0, TwoRay = 1 };

// Contour and quadrature parameters for K_{n,beta}(x).
struct KQuadConfig {
  double ray_angle = 1.0471975511965976;  // pi/3
  double truncation = 0.0;                // arclength cutoff; 0 = auto (tail < 1e-12 of peak)
  KMethod method = KMethod::Auto;
  long points = 0;                        // node budget; 0 = per-n default
  double shift = -1.0;                    // contour through this real point; <0 = auto max(0, sqrt(x))
  std::uint64_t seed = 20050901;          // QMC scrambling seed
  double tol_imag = 1e-6;                 // max |Im|/|Re| residue

  void validate() const;
};

// Default window in which k_integral is considered trustworthy; outside it
// callers should use the asymptotic operations.
constexpr double kRightSwitch = 5.0;
constexpr double kLeftSwitch = -8.0;

// K_{n,beta}(x) through the ordered-contour representation.
double k_integral(int n, double beta, double x, const KQuadConfig& cfg = {},
                  KContour contour = KContour::SingleRay);

// K_{n,2}(x) = -n! det[Ai^{(i+j-2)}(x)].
double k_det_beta2(int n, double x);

// sigma(x) = C_beta K_{beta,beta}(x); beta=2 always routes through the
// determinant, beta in {4,6} through quadrature with asymptotic hand-off
// beyond the switch points.
double soft_edge_density(double beta, double x, const KQuadConfig& cfg = {},
                         double right_switch = kRightSwitch, double left_switch = kLeftSwitch);

// Leading right asymptote of K_{beta,beta}(x); valid for x >= 1.
double k_asym_right(double beta, double x);

// Oscillatory left asymptote, returned on the sigma scale; valid for x <= -2.
double k_asym_left(double beta, double x);

struct EdgeCoord {
  double x_edge;    // edge-scaled coordinate
  double jacobian;  // multiply rho(X_physical) by this to land on the sigma scale
};
EdgeCoord edge_coordinate(const EnsembleSpec& spec, double x_physical);

}  // namespace bd::softedge
