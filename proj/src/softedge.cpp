#include "softedge.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <vector>

#include "numutil.hpp"
#include "specfun.hpp"

namespace bd::softedge {

namespace {

constexpr double kPi = 3.14159265358979323846;
using cplx = std::complex<double>;

void check_even_beta(double beta, const char* who) {
  require(beta >= 2.0 && beta == std::floor(beta) && static_cast<long>(beta) % 2 == 0, ErrCode::Domain,
          std::string(who) + ": beta must be a positive even integer");
}

double ln_factorial(int n) { return specfun::log_gamma(n + 1.0); }

// Branch normalization for the ordered principal-branch contour product:
// rotate by exp(i*chi), chi = (-2 pi P / beta) mod pi with P = n(n-1)/2.
// Exactly 1 whenever n = beta or beta = 2; fixed against the K_{n,2}
// determinant anchor and the reality sentinel.
double branch_chi(int n, int beta_int) {
  long p2 = static_cast<long>(n) * (n - 1);  // 2P
  long rem = ((-p2) % beta_int + beta_int) % beta_int;
  return kPi * static_cast<double>(rem) / static_cast<double>(beta_int);
}

// ---- contours -------------------------------------------------------------

struct Panel {
  double a, b;
  std::vector<double> t;   // parameter nodes
  std::vector<double> w;   // parameter weights
  std::vector<cplx> val;   // cached exp(g(v)-m) * v'(t)
  std::vector<cplx> v;     // cached v(t)
};

// Piecewise-linear contour in the complex plane, parametrized by a real
// ordering coordinate. `map` returns position and derivative at s.
struct Contour {
  double s_lo, s_hi;
  std::vector<double> breaks;
  virtual ~Contour() = default;
  virtual void map(double s, cplx* v, cplx* dv) const = 0;
};

struct SingleRayContour final : Contour {
  double theta, shift, T;
  SingleRayContour(double theta_, double shift_, double T_) : theta(theta_), shift(shift_), T(T_) {
    s_lo = -T;
    s_hi = T;
    breaks = {0.0};
  }
  void map(double s, cplx* v, cplx* dv) const override {
    cplx dir = s >= 0.0 ? std::polar(1.0, theta) : -std::polar(1.0, -theta);
    *v = shift + std::abs(s) * std::polar(1.0, s >= 0.0 ? theta : -theta);
    *dv = dir;
  }
};

// A_1 followed by A_{-1}: in along e^{i pi/3}, left above the axis to -L,
// down across the cut region, back right below the axis, out along
// e^{-i pi/3}. Conjugation-symmetric about the midpoint.
struct TwoRayContour final : Contour {
  double theta, h, L, Tray;
  double s1, s2, s3, s4, s5;  // cumulative segment ends
  TwoRayContour(double theta_, double h_, double L_, double Tray_) : theta(theta_), h(h_), L(L_), Tray(Tray_) {
    double seg1 = Tray, seg2 = L, seg3 = 2 * h, seg4 = L, seg5 = Tray;
    double total = seg1 + seg2 + seg3 + seg4 + seg5;
    s_lo = -total / 2;
    s_hi = total / 2;
    s1 = s_lo + seg1;
    s2 = s1 + seg2;
    s3 = s2 + seg3;
    s4 = s3 + seg4;
    s5 = s4 + seg5;
    breaks = {s1, s2, s3, s4};
  }
  void map(double s, cplx* v, cplx* dv) const override {
    const cplx j_up(0.0, h), j_dn(0.0, -h);
    if (s < s1) {  // incoming upper ray toward i h
      cplx dir = -std::polar(1.0, theta);
      *v = j_up + (s1 - s) * std::polar(1.0, theta);
      *dv = dir;
    } else if (s < s2) {  // upper horizontal, heading left
      *v = j_up - cplx(s - s1, 0.0);
      *dv = cplx(-1.0, 0.0);
    } else if (s < s3) {  // vertical joint at Re = -L
      *v = cplx(-L, h - (s - s2));
      *dv = cplx(0.0, -1.0);
    } else if (s < s4) {  // lower horizontal, heading right
      *v = cplx(-L + (s - s3), -h);
      *dv = cplx(1.0, 0.0);
    } else {  // outgoing lower ray
      *v = j_dn + (s - s4) * std::polar(1.0, -theta);
      *dv = std::polar(1.0, -theta);
    }
  }
};

cplx phase_g(cplx v, double x) { return v * v * v / 3.0 - x * v; }

// Peak of Re g along the contour and the auto truncation radius.
struct PeakInfo {
  double m;       // max Re g
  double radius;  // |s| beyond which tail < 1e-12 of peak (single-ray)
};

PeakInfo scan_peak(const Contour& c, double x) {
  PeakInfo out{-1e300, 0.0};
  const int steps = 2400;
  std::vector<double> re(steps + 1);
  for (int i = 0; i <= steps; ++i) {
    double s = c.s_lo + (c.s_hi - c.s_lo) * i / steps;
    cplx v, dv;
    c.map(s, &v, &dv);
    re[i] = phase_g(v, x).real();
    out.m = std::max(out.m, re[i]);
  }
  double cut = out.m - 27.7;  // ln(1e12)
  double radius = 0.0;
  for (int i = 0; i <= steps; ++i) {
    if (re[i] > cut) {
      double s = c.s_lo + (c.s_hi - c.s_lo) * i / steps;
      radius = std::max(radius, std::abs(s));
    }
  }
  out.radius = radius;
  return out;
}

double auto_truncation(double x, double theta, double shift) {
  // grow until the tail criterion stabilizes
  double T = 6.0;
  for (int it = 0; it < 6; ++it) {
    SingleRayContour c(theta, shift, T);
    PeakInfo p = scan_peak(c, x);
    if (p.radius < T * 0.92) return std::max(4.0, p.radius * 1.08 + 0.25);
    T *= 1.5;
  }
  return T;
}

std::vector<Panel> build_panels(const Contour& c, double x, double m, double max_width, int order) {
  std::vector<double> bp{c.s_lo, c.s_hi};
  for (double b : c.breaks)
    if (b > c.s_lo && b < c.s_hi) bp.push_back(b);
  std::sort(bp.begin(), bp.end());

  const auto& gx = num::gauss_nodes(order);
  const auto& gw = num::gauss_weights(order);
  std::vector<Panel> panels;
  for (std::size_t s = 0; s + 1 < bp.size(); ++s) {
    double a = bp[s], b = bp[s + 1];
    if (b - a < 1e-14) continue;
    int np = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
    double h = (b - a) / np;
    for (int q = 0; q < np; ++q) {
      Panel p;
      p.a = a + q * h;
      p.b = a + (q + 1) * h;
      double mid = 0.5 * (p.a + p.b), half = 0.5 * (p.b - p.a);
      p.t.resize(order);
      p.w.resize(order);
      p.v.resize(order);
      p.val.resize(order);
      for (int i = 0; i < order; ++i) {
        p.t[i] = mid + half * gx[i];
        p.w[i] = half * gw[i];
        cplx v, dv;
        c.map(p.t[i], &v, &dv);
        p.v[i] = v;
        p.val[i] = std::exp(phase_g(v, x) - m) * dv;
      }
      panels.push_back(std::move(p));
    }
  }
  return panels;
}

// pair power (v_ahead - v_behind)^{4/beta}, principal branch
inline cplx pair_pow(cplx diff, int beta_int, double expo) {
  if (beta_int == 2) return diff * diff;
  if (beta_int == 4) return diff;
  return std::pow(diff, expo);
}

// ---- nested ordered Gauss (n <= 3) ---------------------------------------

struct NestedCtx {
  const Contour* contour;
  double x, m;
  int n, beta_int;
  double expo;
  int order;
  const std::vector<Panel>* panels;
};

// integrate over t_level < upper (upper inside panel `pidx`), with the outer
// values fixed; returns sum over ordered tail
// Sum over nodes t < upper of w * val * prod_pairs(outer - v), recursing for
// deeper ordered variables. `upper` lies inside panel `pidx`.
cplx nested_below(const NestedCtx& ctx, int level, int pidx, double upper, std::vector<cplx>& outer_v) {
  cplx total = 0.0;
  const auto& panels = *ctx.panels;
  auto handle_node = [&](double t, cplx v, cplx val, double w, int panel_idx) {
    cplx c = val;
    for (const cplx& ov : outer_v) c *= pair_pow(ov - v, ctx.beta_int, ctx.expo);
    if (level == ctx.n - 1) {
      total += w * c;
    } else {
      outer_v.push_back(v);
      total += w * c * nested_below(ctx, level + 1, panel_idx, t, outer_v);
      outer_v.pop_back();
    }
  };
  for (int q = 0; q < pidx; ++q) {
    const Panel& p = panels[q];
    for (std::size_t i = 0; i < p.t.size(); ++i) handle_node(p.t[i], p.v[i], p.val[i], p.w[i], q);
  }
  const Panel& pp = panels[pidx];
  if (upper > pp.a + 1e-15) {
    const auto& gx = num::gauss_nodes(ctx.order);
    const auto& gw = num::gauss_weights(ctx.order);
    double mid = 0.5 * (pp.a + upper), half = 0.5 * (upper - pp.a);
    for (int i = 0; i < ctx.order; ++i) {
      double t = mid + half * gx[i];
      cplx v, dv;
      ctx.contour->map(t, &v, &dv);
      cplx val = std::exp(phase_g(v, ctx.x) - ctx.m) * dv;
      handle_node(t, v, val, half * gw[i], pidx);
    }
  }
  return total;
}

cplx nested_ordered_integral(const Contour& c, double x, double m, int n, int beta_int, int order, double width) {
  NestedCtx ctx;
  std::vector<Panel> panels = build_panels(c, x, m, width, order);
  ctx.contour = &c;
  ctx.x = x;
  ctx.m = m;
  ctx.n = n;
  ctx.beta_int = beta_int;
  ctx.expo = 4.0 / beta_int;
  ctx.order = order;
  ctx.panels = &panels;

  cplx total = 0.0;
  std::vector<cplx> outer;
  for (int q = 0; q < static_cast<int>(panels.size()); ++q) {
    const Panel& p = panels[q];
    for (std::size_t i = 0; i < p.t.size(); ++i) {
      if (n == 1) {
        total += p.w[i] * p.val[i];
      } else {
        outer.assign(1, p.v[i]);
        total += p.w[i] * p.val[i] * nested_below(ctx, 1, q, p.t[i], outer);
      }
    }
  }
  return total;
}

// ---- sorted QMC (n >= 4, or on request) -----------------------------------

cplx qmc_ordered_integral(const Contour& c, double x, double m, int n, int beta_int, long points,
                          std::uint64_t seed) {
  // antithetic pairs (u, 1-u) keep the accumulated value on the symmetry line
  const double expo = 4.0 / beta_int;
  num::Sobol sobol(n, seed);
  const long pairs = points / 2;
  const long chunk = 4096;
  std::vector<double> re_parts, im_parts;
  double u[6], t[6];
  cplx vs[6];
  for (long base = 0; base < pairs; base += chunk) {
    long hi = std::min(base + chunk, pairs);
    cplx acc = 0.0;
    for (long idx = base; idx < hi; ++idx) {
      sobol.point(static_cast<std::uint64_t>(idx), u);
      for (int anti = 0; anti < 2; ++anti) {
        for (int d = 0; d < n; ++d) {
          double ud = anti ? 1.0 - u[d] : u[d];
          t[d] = c.s_lo + (c.s_hi - c.s_lo) * ud;
        }
        std::sort(t, t + n, std::greater<>());
        cplx f = 1.0;
        for (int d = 0; d < n; ++d) {
          cplx v, dv;
          c.map(t[d], &v, &dv);
          vs[d] = v;
          f *= std::exp(phase_g(v, x) - m) * dv;
        }
        for (int k = 0; k < n; ++k)
          for (int l = k + 1; l < n; ++l) f *= pair_pow(vs[k] - vs[l], beta_int, expo);
        acc += f;
      }
    }
    re_parts.push_back(acc.real());
    im_parts.push_back(acc.imag());
  }
  double re = num::pairwise_sum(re_parts.data(), re_parts.size());
  double im = num::pairwise_sum(im_parts.data(), im_parts.size());
  double vol = std::pow(c.s_hi - c.s_lo, n);
  double count = static_cast<double>(2 * pairs);
  // cube mean * vol = n! * ordered integral
  double ln_fact = ln_factorial(n);
  cplx cube(re / count, im / count);
  return cube * vol * std::exp(-ln_fact);
}

}  // namespace

void KQuadConfig::validate() const {
  require(ray_angle > kPi / 6.0 && ray_angle < kPi / 2.0, ErrCode::Invalid,
          "KQuadConfig: ray_angle must lie in (pi/6, pi/2)");
  require(truncation >= 0.0, ErrCode::Invalid, "KQuadConfig: truncation must be >= 0");
  require(points >= 0, ErrCode::Invalid, "KQuadConfig: points must be >= 0");
  require(tol_imag > 0.0, ErrCode::Invalid, "KQuadConfig: tol_imag must be > 0");
}

double k_integral(int n, double beta, double x, const KQuadConfig& cfg, KContour contour) {
  require(n >= 1, ErrCode::Domain, "k_integral: n must be >= 1");
  require(n <= 6, ErrCode::Budget, "k_integral: n > 6 exceeds the quadrature budget");
  check_even_beta(beta, "k_integral");
  cfg.validate();
  require(x >= kLeftSwitch - 1e-12 && x <= kRightSwitch + 1e-12, ErrCode::Domain,
          "k_integral: x outside the quadrature window; use the asymptotic operations");
  const int beta_int = static_cast<int>(beta);

  double shift = cfg.shift >= 0.0 ? cfg.shift : std::max(0.0, x > 0.0 ? std::sqrt(x) : 0.0);
  double T = cfg.truncation > 0.0 ? cfg.truncation : auto_truncation(x, cfg.ray_angle, shift);

  KMethod method = cfg.method;
  if (method == KMethod::Auto) method = n <= 3 ? KMethod::NestedGauss : KMethod::QuasiMonteCarlo;

  std::unique_ptr<Contour> c;
  if (contour == KContour::SingleRay) {
    c = std::make_unique<SingleRayContour>(cfg.ray_angle, shift, T);
  } else {
    double h = 0.5;
    double L = std::max(4.5, std::pow(3.0 * (28.0 + std::abs(x) * T), 1.0 / 3.0));
    c = std::make_unique<TwoRayContour>(cfg.ray_angle, h, L, T);
  }
  PeakInfo peak = scan_peak(*c, x);

  cplx ordered;
  double ln_fact = ln_factorial(n);
  if (method == KMethod::NestedGauss) {
    int order = n <= 2 ? 16 : 12;
    double span = c->s_hi - c->s_lo;
    double width = n <= 2 ? 0.5 : 0.8;
    if (cfg.points > 0) width = std::max(0.05, span * order / static_cast<double>(cfg.points));
    ordered = nested_ordered_integral(*c, x, peak.m, n, beta_int, order, width);
  } else {
    long pts = cfg.points > 0 ? cfg.points : (n <= 4 ? 1500000L : 2000000L);
    std::uint64_t seed = num::hash_mix(cfg.seed, static_cast<std::uint64_t>(std::llround(x * 4096.0)) + 0x5bd1e995ULL);
    ordered = qmc_ordered_integral(*c, x, peak.m, n, beta_int, pts, seed);
  }

  // K = -(n!/(2 pi i)^n) e^{i chi} e^{n m} * ordered ; two-ray carries the
  // lemma's (-1)^{n+1} relative to the single-ray -1.
  double chi = branch_chi(n, beta_int);
  cplx rot = std::polar(1.0, contour == KContour::SingleRay ? chi : -chi);
  cplx inv_2pii = std::pow(cplx(0.0, 2.0 * kPi), -n);
  double sign = contour == KContour::SingleRay ? -1.0 : ((n % 2 == 0) ? -1.0 : 1.0);
  cplx k = sign * std::exp(ln_fact + n * peak.m) * inv_2pii * rot * ordered;

  require(std::abs(k.imag()) <= cfg.tol_imag * std::abs(k.real()) + 1e-300, ErrCode::Contour,
          "k_integral: imaginary residue " + std::to_string(k.imag()) + " exceeds tol_imag * |Re| = " +
              std::to_string(cfg.tol_imag * std::abs(k.real())) + " (branch/contour sentinel)");
  return k.real();
}

double k_det_beta2(int n, double x) {
  require(n >= 1, ErrCode::Domain, "k_det_beta2: n must be >= 1");
  specfun::AiryResult ai = specfun::airy_ai(x);
  // Ai^{(k)} via y'' = x y:  y^{(k+2)} = x y^{(k)} + k y^{(k-1)}
  std::vector<long double> d(std::max(2 * n - 1, 2));
  d[0] = ai.ai;
  d[1] = ai.aip;
  for (int k = 0; k + 2 <= 2 * n - 2; ++k)
    d[k + 2] = static_cast<long double>(x) * d[k] + (k > 0 ? static_cast<long double>(k) * d[k - 1] : 0.0L);

  std::vector<std::vector<long double>> mat(n, std::vector<long double>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mat[i][j] = d[i + j];

  long double det = 1.0L;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(static_cast<double>(mat[r][col])) > std::abs(static_cast<double>(mat[piv][col]))) piv = r;
    if (mat[piv][col] == 0.0L) return 0.0;
    if (piv != col) {
      std::swap(mat[piv], mat[col]);
      det = -det;
    }
    det *= mat[col][col];
    for (int r = col + 1; r < n; ++r) {
      long double f = mat[r][col] / mat[col][col];
      for (int cc = col; cc < n; ++cc) mat[r][cc] -= f * mat[col][cc];
    }
  }
  double nf = std::exp(ln_factorial(n));
  return static_cast<double>(-nf * det);
}

double k_asym_right(double beta, double x) {
  check_even_beta(beta, "k_asym_right");
  require(x >= 1.0, ErrCode::Domain, "k_asym_right: asymptote invalid for x < 1");
  int b = static_cast<int>(beta);
  double lg = std::log(specfun::gamma_n_beta(b, beta)) - beta * std::log(2.0 * kPi) -
              (2.0 * beta / 3.0) * std::pow(x, 1.5) - (0.75 * beta - 0.5) * std::log(x);
  return std::exp(lg);
}

double k_asym_left(double beta, double x) {
  check_even_beta(beta, "k_asym_left");
  require(x <= -2.0, ErrCode::Domain, "k_asym_left: asymptote invalid for x > -2");
  int b = static_cast<int>(beta);
  double ax = -x;
  // sigma = C_beta Gamma_{b/2,b}^2 binom(b, b/2) / pi^b * sqrt|x| * k_{x,beta}
  double ln_pref = std::log(specfun::soft_edge_prefactor(beta)) + 2.0 * std::log(specfun::gamma_n_beta(b / 2, beta)) +
                   ln_factorial(b) - 2.0 * ln_factorial(b / 2) - beta * std::log(kPi);
  double k_sum = 1.0;
  int kmax = static_cast<int>(std::floor(std::sqrt(beta / 2.0)));
  for (int k = 1; k <= kmax; ++k) {
    double lg = 0.0;
    for (int j = 1; j <= k; ++j)
      lg += specfun::log_gamma(1.0 + 2.0 * j / beta) - specfun::log_gamma(1.0 + 2.0 * (j - k) / beta);
    double amp = 2.0 * std::exp(lg) * std::pow(2.0, -6.0 * k * k / beta) * std::pow(ax, -3.0 * k * k / beta);
    double phase = (4.0 * k / 3.0) * std::pow(ax, 1.5) - (kPi / 2.0) * k * (1.0 - 2.0 / beta);
    double sign = (k % 2 ? -1.0 : 1.0);
    k_sum += sign * amp * std::cos(phase);
  }
  return std::exp(ln_pref) * std::sqrt(ax) * k_sum;
}

double soft_edge_density(double beta, double x, const KQuadConfig& cfg, double right_switch, double left_switch) {
  check_even_beta(beta, "soft_edge_density");
  int b = static_cast<int>(beta);
  require(b == 2 || b == 4 || b == 6, ErrCode::Budget, "soft_edge_density: beta must be one of {2,4,6}");
  double c_beta = specfun::soft_edge_prefactor(beta);
  if (b == 2) return c_beta * k_det_beta2(2, x);  // machine-precision path
  if (x > right_switch) return c_beta * k_asym_right(beta, x);
  if (x < left_switch) return k_asym_left(beta, x);
  return c_beta * k_integral(b, beta, x, cfg);
}

EdgeCoord edge_coordinate(const EnsembleSpec& spec, double x_physical) {
  double n = static_cast<double>(spec.n);
  if (spec.family == Family::Hermite) {
    double scale = std::sqrt(2.0) * std::pow(n, 1.0 / 6.0);
    return {(x_physical - std::sqrt(2.0 * n)) * scale, 1.0 / scale};
  }
  double scale = 2.0 * std::cbrt(2.0 * n);
  return {(x_physical - 4.0 * n) / scale, scale};
}

}  // namespace bd::softedge
