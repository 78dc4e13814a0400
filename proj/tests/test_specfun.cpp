#include <cmath>

#include "doctest.h"
#include "numutil.hpp"
#include "specfun.hpp"

using namespace bd;
using specfun::airy_ai;
using specfun::gamma_n_beta;
using specfun::log_gamma;

namespace {
constexpr double kPi = 3.14159265358979323846;

// reference values computed with 40-digit arithmetic
struct AiryRef {
  double x, ai, aip;
};
const AiryRef kAiryTable[] = {
    {-20.0, -0.1764061270779846895902, 0.8928628567364712383984},
    {-15.5, -0.1664479540904197673882, 0.9049379354302121995067},
    {-12.0, -0.06655517505437312947419, 1.023110453367970729896},
    {-9.0, -0.02213372154734140367417, -0.9756639809263315947127},
    {-7.5, 0.3217757163806478752673, 0.3188095066985545962101},
    {-7.4, 0.341323752232338641093, 0.07027632364326595231734},
    {-5.0, 0.350761009024114319788, 0.3271928185544431367949},
    {-1.0, 0.5355608832923521187995, -0.01016056711664520939505},
    {0.0, 0.3550280538878172392601, -0.2588194037928067984052},
    {0.5, 0.2316936064808334897691, -0.224910532664683893136},
    {1.0, 0.1352924163128814155241, -0.1591474412967932127875},
    {2.0, 0.03492413042327437913532, -0.053090384433653631704},
    {4.0, 0.0009515638512048018736215, -0.001958640950204178900138},
    {4.5, 0.0003302503235143089836587, -0.0007178665675575088886936},
    {6.0, 0.000009947694360252889570239, -0.00002476520039703495475418},
    {7.9, 6.239640097283940478679e-8, -1.772995832943035274388e-7},
    {8.0, 4.692207616099231625649e-8, -1.341439297906786574291e-7},
    {8.1, 3.522435623573567885007e-8, -1.013097203266083405193e-7},
    {12.0, 1.393184688875360839049e-13, -4.854736554985308462994e-13},
    {16.0, 4.156888828917024394748e-20, -1.669188676838180955916e-19},
    {20.0, 1.691672868670540313554e-27, -7.586391625748354960515e-27},
};
}  // namespace

TEST_CASE("log_gamma anchors") {
  CHECK(log_gamma(1.0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_gamma(5.0) == doctest::Approx(3.178053830347945619647).epsilon(1e-14));
  CHECK(log_gamma(0.5) == doctest::Approx(0.5723649429247000870717).epsilon(1e-14));
  // extended-precision reference points across the required range
  CHECK(log_gamma(1e-3) == doctest::Approx(6.907178885383853682512).epsilon(1e-14));
  CHECK(log_gamma(12.7) == doctest::Approx(19.23304317957008868998).epsilon(1e-14));
  CHECK(log_gamma(1e6) == doctest::Approx(12815504.56914761165998).epsilon(1e-14));
  CHECK_THROWS_AS(log_gamma(0.0), Error);
  CHECK_THROWS_AS(log_gamma(-2.5), Error);
}

TEST_CASE("log_gamma Gauss multiplication identity") {
  for (int n : {2, 3}) {
    for (double z : {0.3, 1.7, 4.2}) {
      double lhs = 0.0;
      for (int j = 0; j < n; ++j) lhs += log_gamma(z + static_cast<double>(j) / n);
      double rhs = 0.5 * (n - 1) * std::log(2.0 * kPi) + (0.5 - n * z) * std::log(static_cast<double>(n)) +
                   log_gamma(n * z);
      CHECK(std::abs(lhs - rhs) <= 1e-10);
    }
  }
}

TEST_CASE("airy against high-precision table") {
  for (const auto& r : kAiryTable) {
    auto v = airy_ai(r.x);
    double tol_ai = std::max(1e-10 * std::abs(r.ai), 1e-14);
    double tol_aip = std::max(1e-10 * std::abs(r.aip), 1e-14);
    CHECK(std::abs(v.ai - r.ai) <= tol_ai);
    CHECK(std::abs(v.aip - r.aip) <= tol_aip);
  }
}

TEST_CASE("airy near a zero: absolute accuracy") {
  // first zero of Ai is at -2.33810741045976703849...
  auto v = airy_ai(-2.33810741045976703849);
  CHECK(std::abs(v.ai) <= 1e-14);
  CHECK(v.aip == doctest::Approx(0.7012108227206913624907).epsilon(1e-12));
}

TEST_CASE("airy switch-point overlap") {
  using namespace specfun::detail;
  for (double x : {kAirySwitchRight - 0.05, kAirySwitchRight, kAirySwitchRight + 0.05}) {
    auto s = airy_series(x);
    auto a = airy_asym_right(x);
    CHECK(std::abs(s.ai - a.ai) <= 1e-10 * std::abs(a.ai));
    CHECK(std::abs(s.aip - a.aip) <= 1e-10 * std::abs(a.aip));
  }
  for (double x : {kAirySwitchLeft - 0.05, kAirySwitchLeft, kAirySwitchLeft + 0.05}) {
    auto s = airy_series(x);
    auto a = airy_asym_left(x);
    CHECK(std::abs(s.ai - a.ai) <= 1e-10);
    CHECK(std::abs(s.aip - a.aip) <= 1e-10);
  }
}

TEST_CASE("airy ODE residual from central differences") {
  const double h = 1e-4;
  for (double x = -19.0; x <= 19.0; x += 0.37) {
    double aipp = (airy_ai(x + h).aip - airy_ai(x - h).aip) / (2.0 * h);
    CHECK(std::abs(aipp - x * airy_ai(x).ai) <= 1e-6);
  }
}

TEST_CASE("gamma_n_beta closed forms") {
  CHECK(gamma_n_beta(0, 2.0) == doctest::Approx(1.0));
  for (double beta : {2.0, 4.0, 6.0, 10.0})
    CHECK(gamma_n_beta(1, beta) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-14));
  CHECK(gamma_n_beta(2, 2.0) == doctest::Approx(kPi).epsilon(1e-13));
  CHECK(gamma_n_beta(2, 4.0) == doctest::Approx(std::sqrt(2.0 * kPi)).epsilon(1e-13));
  CHECK_THROWS_AS(gamma_n_beta(2, 0.0), Error);
  CHECK_THROWS_AS(gamma_n_beta(-1, 2.0), Error);
}

TEST_CASE("gamma_n_beta against the 2-D Gaussian quadrature oracle") {
  // Gamma_{2,beta} = int int e^{-u^2-v^2} |u-v|^{4/beta}
  for (double beta : {2.0, 4.0}) {
    auto inner = [&](double u) {
      return num::adaptive_gk([&](double v) { return std::exp(-v * v) * std::pow(std::abs(u - v), 4.0 / beta); },
                              -7.5, 7.5, 1e-12, 1e-12);
    };
    double oracle =
        num::adaptive_gk([&](double u) { return std::exp(-u * u) * inner(u); }, -7.5, 7.5, 1e-11, 1e-11);
    CHECK(gamma_n_beta(2, beta) == doctest::Approx(oracle).epsilon(2e-7));
  }
}

TEST_CASE("gamma_n_beta(n,2) two evaluation routes") {
  // direct product pi^{n/2} 2^{-n(n-1)/2} prod_{j=2}^n j!
  for (int n = 0; n <= 8; ++n) {
    double direct = std::pow(kPi, 0.5 * n) * std::pow(2.0, -0.5 * n * (n - 1));
    double fact = 1.0;
    for (int j = 2; j <= n; ++j) {
      fact *= j;
      direct *= fact / 1.0;
    }
    double got = gamma_n_beta(n, 2.0);
    CHECK(std::abs(got - direct) <= 1e-12 * std::abs(direct));
  }
}

TEST_CASE("hermite_norm_ratio") {
  CHECK(specfun::hermite_norm_ratio(1, 2.0) == doctest::Approx(1.0 / std::sqrt(kPi)).epsilon(1e-14));
  for (double beta : {2.0, 4.0, 6.0, 8.0})
    CHECK(specfun::hermite_norm_ratio(1, beta) == doctest::Approx(std::sqrt(beta / (2.0 * kPi))).epsilon(1e-14));
  CHECK_THROWS_AS(specfun::hermite_norm_ratio(2, 3.0), Error);
  CHECK_THROWS_AS(specfun::hermite_norm_ratio(0, 2.0), Error);
}

TEST_CASE("hermite_norm_ratio vs Stirling form at N=50") {
  double exact = specfun::hermite_norm_ratio(50, 2.0);
  double stirling = specfun::hermite_norm_ratio_stirling(50, 2.0);
  CHECK(std::abs(exact / stirling - 1.0) <= 0.01);
  // and the 1+O(1/N) trend
  double r20 = std::abs(specfun::hermite_norm_ratio(20, 2.0) / specfun::hermite_norm_ratio_stirling(20, 2.0) - 1.0);
  double r80 = std::abs(specfun::hermite_norm_ratio(80, 2.0) / specfun::hermite_norm_ratio_stirling(80, 2.0) - 1.0);
  CHECK(r80 < r20);
}

TEST_CASE("laguerre_norm_ratio") {
  CHECK(specfun::laguerre_norm_ratio({Family::Laguerre, 1, 2.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(specfun::laguerre_norm_ratio({Family::Laguerre, 1, 2.0, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(specfun::laguerre_norm_ratio({Family::Hermite, 1, 2.0, 0.0}), Error);
}

TEST_CASE("soft_edge_prefactor") {
  CHECK(specfun::soft_edge_prefactor(2.0) == doctest::Approx(0.5).epsilon(1e-13));
  CHECK(specfun::soft_edge_prefactor(4.0) == doctest::Approx(0.8224670334241132182362).epsilon(1e-12));
  CHECK(specfun::soft_edge_prefactor(6.0) == doctest::Approx(1.540157922467261490546).epsilon(1e-12));
  for (double b : {2.0, 4.0, 6.0, 8.0}) CHECK(specfun::soft_edge_prefactor(b) > 0.0);
  CHECK_THROWS_AS(specfun::soft_edge_prefactor(3.0), Error);
  CHECK_THROWS_AS(specfun::soft_edge_prefactor(0.0), Error);
}

TEST_CASE("prefactor universality identity") {
  // C_beta Gamma_{beta/2,beta}^2 binom(beta,beta/2) / pi^beta = 1/pi,
  // the coefficient of sqrt|x| in the left asymptote
  for (int b : {2, 4, 6, 8}) {
    double beta = b;
    double binom = std::exp(log_gamma(beta + 1.0) - 2.0 * log_gamma(beta / 2.0 + 1.0));
    double g = gamma_n_beta(b / 2, beta);
    double v = specfun::soft_edge_prefactor(beta) * g * g * binom / std::pow(kPi, beta);
    CHECK(v == doctest::Approx(1.0 / kPi).epsilon(1e-12));
  }
}

TEST_CASE("norm ratios are deterministic pure functions") {
  CHECK(specfun::hermite_norm_ratio(7, 6.0) == specfun::hermite_norm_ratio(7, 6.0));
  EnsembleSpec s{Family::Laguerre, 4, 6.0, 1.0};
  CHECK(specfun::laguerre_norm_ratio(s) == specfun::laguerre_norm_ratio(s));
  CHECK(gamma_n_beta(5, 6.0) == gamma_n_beta(5, 6.0));
}
