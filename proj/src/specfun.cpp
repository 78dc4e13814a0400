#include "specfun.hpp"

#include <cmath>

#include "dd.hpp"

namespace bd::specfun {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kLn2Pi = 1.8378770664093454836;

// Ai(0) and -Ai'(0) as double-double constants.
const dd kC1{0.3550280538878172, 2.05233632436212e-17};
const dd kC2{0.2588194037928068, -2.522243111610832e-17};
const dd kTwoPiDD{6.283185307179586, 2.4492935982947064e-16};
const dd kQuarterPiDD{0.7853981633974483, 3.061616997868383e-17};

// u_k / v_k coefficients of the Airy asymptotic expansions.
struct AsymCoeffs {
  double u[26];
  double v[26];
  AsymCoeffs() {
    u[0] = 1.0;
    v[0] = 1.0;
    for (int k = 1; k <= 25; ++k) {
      u[k] = u[k - 1] * (6.0 * k - 1.0) * (6.0 * k - 3.0) * (6.0 * k - 5.0) / (216.0 * k * (2.0 * k - 1.0));
      v[k] = u[k] * (6.0 * k + 1.0) / (1.0 - 6.0 * k);
    }
  }
};
const AsymCoeffs kAsym;

// sqrt in double-double: one Newton refinement of the double estimate.
dd dd_sqrt(dd a) {
  double y = std::sqrt(a.hi);
  dd yd{y};
  return (yd + a / yd) * dd{0.5};
}

// zeta = (2/3) x^{3/2} for x > 0, in double-double.
dd dd_zeta(double x) {
  dd xd{x};
  dd s = dd_sqrt(xd);
  return xd * s * dd{2.0} / dd{3.0};
}

}  // namespace

double log_gamma(double z) {
  require(z > 0.0, ErrCode::Domain, "log_gamma: z must be > 0");
  int sign = 0;
  return ::lgamma_r(z, &sign);
}

namespace detail {

AiryResult airy_series(double x) {
  dd x3 = dd{x} * dd{x} * dd{x};
  dd f{1.0}, g{x}, fp{0.0}, gp{1.0};
  dd tf{1.0}, tg{x}, tfp = dd{0.5} * dd{x} * dd{x}, tgp{1.0};
  for (int k = 1; k <= 220; ++k) {
    tf = tf * x3 / dd{(3.0 * k - 1.0) * (3.0 * k)};
    tg = tg * x3 / dd{(3.0 * k) * (3.0 * k + 1.0)};
    if (k >= 2) tfp = tfp * x3 / dd{(3.0 * k - 3.0) * (3.0 * k - 1.0)};
    tgp = tgp * x3 / dd{(3.0 * k - 2.0) * (3.0 * k)};
    f = f + tf;
    g = g + tg;
    fp = fp + tfp;
    gp = gp + tgp;
    double mag = std::abs(tf.hi) + std::abs(tg.hi) + std::abs(tfp.hi) + std::abs(tgp.hi);
    double ref = std::abs(f.hi) + std::abs(g.hi) + 1.0;
    if (mag < 1e-36 * ref) break;
  }
  dd ai = kC1 * f - kC2 * g;
  dd aip = kC1 * fp - kC2 * gp;
  return {ai.to_double(), aip.to_double()};
}

AiryResult airy_asym_right(double x) {
  dd zeta = dd_zeta(x);
  double z = zeta.to_double();
  double su = 0.0, sv = 0.0, term_u = 1.0, term_v = 1.0;
  double prev = 1e300;
  for (int k = 0; k <= 25; ++k) {
    double tu = kAsym.u[k] * term_u;
    double tv = kAsym.v[k] * term_v;
    if (std::abs(tu) > prev) break;  // divergent tail reached
    su += (k % 2 ? -tu : tu);
    sv += (k % 2 ? -tv : tv);
    prev = std::abs(tu);
    term_u /= z;
    term_v /= z;
    if (prev < 1e-19) break;
  }
  double expz = std::exp(-zeta.hi) * (1.0 - zeta.lo);
  double x14 = std::pow(x, 0.25);
  double c = 0.5 / std::sqrt(kPi);
  return {c * expz / x14 * su, -c * x14 * expz * sv};
}

AiryResult airy_asym_left(double x) {
  double zpos = -x;
  dd zeta = dd_zeta(zpos);
  double z = zeta.to_double();
  // phase = zeta - pi/4 reduced mod 2 pi in double-double
  dd ph = zeta - kQuarterPiDD;
  double m = std::floor(ph.to_double() / (2.0 * kPi));
  dd red = ph - kTwoPiDD * dd{m};
  double phase = red.to_double();
  double cp = std::cos(phase), sp = std::sin(phase);
  double pe = 0.0, po = 0.0, qe = 0.0, qo = 0.0;
  double zpow = 1.0;
  double prev = 1e300;
  for (int k = 0; k <= 25; ++k) {
    double tu = kAsym.u[k] * zpow;
    double tv = kAsym.v[k] * zpow;
    if (std::abs(tu) > prev) break;
    prev = std::abs(tu);
    int q = k / 2;
    double sgn = (q % 2 ? -1.0 : 1.0);
    if (k % 2 == 0) {
      pe += sgn * tu;
      qe += sgn * tv;
    } else {
      po += sgn * tu;
      qo += sgn * tv;
    }
    zpow /= z;
    if (prev < 1e-19) break;
  }
  double x14 = std::pow(zpos, 0.25);
  double c = 1.0 / std::sqrt(kPi);
  double ai = c / x14 * (cp * pe + sp * po);
  double aip = c * x14 * (sp * qe - cp * qo);
  return {ai, aip};
}

}  // namespace detail

AiryResult airy_ai(double x) {
  require(std::isfinite(x), ErrCode::Domain, "airy_ai: x must be finite");
  if (x >= detail::kAirySwitchRight) return detail::airy_asym_right(x);
  if (x <= detail::kAirySwitchLeft) return detail::airy_asym_left(x);
  return detail::airy_series(x);
}

double gamma_n_beta(int n, double beta) {
  require(n >= 0, ErrCode::Domain, "gamma_n_beta: n must be >= 0");
  require(beta > 0.0, ErrCode::Domain, "gamma_n_beta: beta must be > 0");
  if (n == 0) return 1.0;
  double lg = 0.5 * n * std::log(kPi) - (static_cast<double>(n) * (n - 1) / beta) * std::log(2.0);
  for (int j = 2; j <= n; ++j) lg += log_gamma(1.0 + 2.0 * j / beta) - log_gamma(1.0 + 2.0 / beta);
  return std::exp(lg);
}

double hermite_norm_ratio(int n, double beta) {
  require(n >= 1, ErrCode::Domain, "hermite_norm_ratio: N must be >= 1");
  require(beta > 0.0 && beta == std::floor(beta) && static_cast<long>(beta) % 2 == 0, ErrCode::Domain,
          "hermite_norm_ratio: beta must be a positive even integer");
  double lg = -0.5 * kLn2Pi + (0.5 + beta * (n - 1) / 2.0) * std::log(beta) + log_gamma(1.0 + beta / 2.0) -
              log_gamma(1.0 + n * beta / 2.0);
  return std::exp(lg);
}

double hermite_norm_ratio_stirling(int n, double beta) {
  require(n >= 1, ErrCode::Domain, "hermite_norm_ratio_stirling: N >= 1");
  double nb2 = n * beta / 2.0;
  double lg_stirling = 0.5 * kLn2Pi - nb2 + (nb2 + 0.5) * std::log(nb2);
  double lg = -0.5 * kLn2Pi + (0.5 + beta * (n - 1) / 2.0) * std::log(beta) + log_gamma(1.0 + beta / 2.0) -
              lg_stirling;
  return std::exp(lg);
}

double laguerre_norm_ratio(const EnsembleSpec& spec) {
  require(spec.family == Family::Laguerre, ErrCode::Domain, "laguerre_norm_ratio: Laguerre spec required");
  require(spec.a >= 0.0, ErrCode::Domain, "laguerre_norm_ratio: a must be >= 0");
  int n = spec.n;
  double beta = spec.beta, a = spec.a;
  double lg = (a * beta / 2.0 + 1.0 + beta * (n - 1)) * std::log(beta / 2.0) + log_gamma(1.0 + beta / 2.0) -
              log_gamma(1.0 + n * beta / 2.0) - log_gamma(1.0 + (a + n - 1) * beta / 2.0);
  return std::exp(lg);
}

double soft_edge_prefactor(double beta) {
  require(beta >= 2.0 && beta == std::floor(beta) && static_cast<long>(beta) % 2 == 0, ErrCode::Domain,
          "soft_edge_prefactor: beta must be a positive even integer");
  int b = static_cast<int>(beta);
  double lg = -std::log(2.0 * kPi) + (beta / 2.0) * std::log(4.0 * kPi / beta) + log_gamma(1.0 + beta / 2.0);
  for (int j = 2; j <= b; ++j) lg -= log_gamma(1.0 + 2.0 * j / beta) - log_gamma(1.0 + 2.0 / beta);
  return std::exp(lg);
}

}  // namespace bd::specfun
