#include "bulk.hpp"

#include <cmath>
#include <limits>

#include "specfun.hpp"

namespace bd::bulk {

namespace {
constexpr double kPi = 3.14159265358979323846;

void check_beta(const EnsembleSpec& spec, bool any_beta) {
  if (any_beta)
    require(spec.beta > 0.0, ErrCode::Domain, "bulk: beta must be > 0");
  else
    spec.require_formula_beta();
}

double gamma_ratio_product(double beta, int k) {
  double lg = 0.0;
  for (int j = 1; j <= k; ++j)
    lg += specfun::log_gamma(1.0 + 2.0 * j / beta) - specfun::log_gamma(1.0 + 2.0 * (j - k) / beta);
  return std::exp(lg);
}

}  // namespace

double wigner_density(double x) {
  if (x <= -1.0 || x >= 1.0) return 0.0;
  return (2.0 / kPi) * std::sqrt(1.0 - x * x);
}

double mp_density(double x) {
  if (x == 0.0) return std::numeric_limits<double>::infinity();  // integrable divergence
  if (x < 0.0 || x >= 1.0) return 0.0;
  return (2.0 / kPi) * std::sqrt(1.0 / x - 1.0);
}

double wigner_cdf(double x) {
  require(x >= -1.0 && x <= 1.0, ErrCode::Domain, "wigner_cdf: x must lie in [-1,1]");
  return 1.0 + 0.5 * x * wigner_density(x) - std::acos(x) / kPi;
}

double mp_cdf(double x) {
  require(x >= 0.0 && x <= 1.0, ErrCode::Domain, "mp_cdf: x must lie in [0,1]");
  if (x == 0.0) return 0.0;
  // arccos(sqrt(x)) rather than the printed arccos(x); see the derivative test
  return 1.0 + x * mp_density(x) - (2.0 / kPi) * std::acos(std::sqrt(x));
}

int correction_terms(double beta) { return static_cast<int>(std::floor(std::sqrt(beta / 2.0))); }

double hermite_amplitude_k(int n, double beta, int k, double x) {
  double rho = wigner_density(x);
  double base = kPi * kPi * kPi * rho * rho * rho * n;
  return 2.0 * gamma_ratio_product(beta, k) * std::pow(base, -2.0 * k * k / beta);
}

double hermite_phase_k(int n, double beta, int k, double x) {
  double phi = (1.0 - 2.0 / beta) * std::asin(x);
  return 2.0 * kPi * k * n * wigner_cdf(x) + k * phi;
}

double laguerre_amplitude_k(int n, double beta, int k, double x) {
  double rho = mp_density(x);
  double base = 2.0 * kPi * kPi * kPi * x * x * rho * rho * rho * n;
  return 2.0 * gamma_ratio_product(beta, k) * std::pow(base, -2.0 * k * k / beta);
}

double laguerre_phase_k(int n, double beta, double a, int k, double x) {
  double phi = (1.0 - 2.0 / beta) * kPi / 2.0 - 2.0 * a * std::acos(std::sqrt(x));
  return 2.0 * kPi * k * n * mp_cdf(x) + k * phi;
}

double hermite_density(const EnsembleSpec& spec, double x, bool any_beta) {
  require(spec.family == Family::Hermite, ErrCode::Domain, "bulk::hermite_density: Hermite spec required");
  check_beta(spec, any_beta);
  require(std::abs(x) <= kHermiteGuard, ErrCode::Domain,
          "bulk::hermite_density: |x| exceeds the bulk guard band; use the softedge module");
  double r = 1.0;
  for (int k = 1; k <= correction_terms(spec.beta); ++k) {
    double sign = (k % 2 ? -1.0 : 1.0);
    r += sign * hermite_amplitude_k(spec.n, spec.beta, k, x) * std::cos(hermite_phase_k(spec.n, spec.beta, k, x));
  }
  return wigner_density(x) * r;
}

double laguerre_density(const EnsembleSpec& spec, double x, bool any_beta) {
  require(spec.family == Family::Laguerre, ErrCode::Domain, "bulk::laguerre_density: Laguerre spec required");
  check_beta(spec, any_beta);
  require(x >= kLaguerreGuardLo && x <= kLaguerreGuardHi, ErrCode::Domain,
          "bulk::laguerre_density: x outside the bulk guard band [0.005, 0.995]");
  double r = 1.0;
  for (int k = 1; k <= correction_terms(spec.beta); ++k) {
    double sign = (k % 2 ? -1.0 : 1.0);
    r += sign * laguerre_amplitude_k(spec.n, spec.beta, k, x) *
         std::cos(laguerre_phase_k(spec.n, spec.beta, spec.a, k, x));
  }
  return mp_density(x) * r;
}

}  // namespace bd::bulk
