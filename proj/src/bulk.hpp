#pragma once

#include "common.hpp"

namespace bd::bulk {

// Wigner semicircle density (2/pi) sqrt(1-x^2) on (-1,1).
double wigner_density(double x);
// c=1 Marchenko-Pastur density (2/pi) sqrt(1/x - 1) on (0,1); +inf at x = 0.
double mp_density(double x);

// Cumulative distributions; domain errors outside the closed support.
double wigner_cdf(double x);
double mp_cdf(double x);

// Oscillatory correction factor r_{N,beta}(x), split into per-k amplitude
// and phase so tests can pin the envelope independently of the cosine.
double hermite_amplitude_k(int n, double beta, int k, double x);
double hermite_phase_k(int n, double beta, int k, double x);
double laguerre_amplitude_k(int n, double beta, int k, double x);
double laguerre_phase_k(int n, double beta, double a, int k, double x);

// Number of oscillatory terms retained: floor(sqrt(beta/2)).
int correction_terms(double beta);

// Bulk-scaled densities rho_W(x) r_{N,beta}(x) and rho_MP(x) r_{N,beta}(x).
// The guard band keeps |x| <= 0.995 (Hermite) / x in [0.005, 0.995]
// (Laguerre); outside it the edge module applies. `any_beta` skips the
// even-integer check (no accuracy claim).
double hermite_density(const EnsembleSpec& spec, double x, bool any_beta = false);
double laguerre_density(const EnsembleSpec& spec, double x, bool any_beta = false);

constexpr double kHermiteGuard = 0.995;
constexpr double kLaguerreGuardLo = 0.005;
constexpr double kLaguerreGuardHi = 0.995;

}  // namespace bd::bulk
