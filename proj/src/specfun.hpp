#pragma once

#include "common.hpp"

namespace bd::specfun {

struct AiryResult {
  double ai;
  double aip;
};

// ln Gamma(z), z > 0.
double log_gamma(double z);

// Airy Ai and Ai' on the real line.
AiryResult airy_ai(double x);

// Gamma_{n,beta} = pi^{n/2} 2^{-n(n-1)/beta} prod_{j=2}^n Gamma(1+2j/beta)/Gamma(1+2/beta),
// with Gamma_{0,beta} = 1 (empty integral).
double gamma_n_beta(int n, double beta);

// G_{beta,N-1}/G_{beta,N} evaluated exactly in log space.
double hermite_norm_ratio(int n, double beta);
// Same ratio with Gamma(1+N beta/2) replaced by its Stirling form; test target.
double hermite_norm_ratio_stirling(int n, double beta);

// W_{a,beta,N-1}/W_{a,beta,N}.
double laguerre_norm_ratio(const EnsembleSpec& spec);

// C_beta, the prefactor mapping K_{beta,beta} to the soft-edge density.
double soft_edge_prefactor(double beta);

namespace detail {
// Exposed for the switch-point overlap tests.
AiryResult airy_series(double x);
AiryResult airy_asym_right(double x);
AiryResult airy_asym_left(double x);
constexpr double kAirySwitchRight = 7.8;
constexpr double kAirySwitchLeft = -7.6;
}  // namespace detail

}  // namespace bd::specfun
