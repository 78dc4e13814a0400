#include "numutil.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "common.hpp"

namespace bd::num {

namespace {

struct GaussRule {
  std::vector<double> x, w;
};

// Newton iteration on P_n; nodes are symmetric, computed once per order.
GaussRule make_gauss(int n) {
  GaussRule r;
  r.x.resize(n);
  r.w.resize(n);
  constexpr double kPi = 3.14159265358979323846;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = -x;
    r.x[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    r.w[i] = w;
    r.w[n - 1 - i] = w;
  }
  return r;
}

const GaussRule& cached_gauss(int order) {
  static std::mutex mu;
  static std::map<int, GaussRule> cache;
  std::lock_guard lk(mu);
  auto it = cache.find(order);
  if (it == cache.end()) it = cache.emplace(order, make_gauss(order)).first;
  return it->second;
}

}  // namespace

const std::vector<double>& gauss_nodes(int order) { return cached_gauss(order).x; }
const std::vector<double>& gauss_weights(int order) { return cached_gauss(order).w; }

void Rule1D::append_panel(double a, double b, int order) {
  const auto& gx = gauss_nodes(order);
  const auto& gw = gauss_weights(order);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < order; ++i) {
    x.push_back(mid + half * gx[i]);
    w.push_back(half * gw[i]);
  }
}

Rule1D composite_rule(double lo, double hi, const std::vector<double>& breaks, double max_width, int order) {
  require(hi > lo, ErrCode::Invalid, "composite_rule: empty interval");
  std::vector<double> bp{lo, hi};
  for (double b : breaks)
    if (b > lo && b < hi) bp.push_back(b);
  std::sort(bp.begin(), bp.end());
  Rule1D rule;
  for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
    double a = bp[i], b = bp[i + 1];
    if (b - a < 1e-14) continue;
    int np = std::max(1, static_cast<int>(std::ceil((b - a) / max_width)));
    double h = (b - a) / np;
    for (int p = 0; p < np; ++p) rule.append_panel(a + p * h, a + (p + 1) * h, order);
  }
  return rule;
}

namespace {

// G7,K15 node/weight pairs (positive half; symmetric).
constexpr double kKx[8] = {0.0,
                           0.2077849550078985,
                           0.4058451513773972,
                           0.5860872354676911,
                           0.7415311855993945,
                           0.8648644233597691,
                           0.9491079123427585,
                           0.9914553711208126};
constexpr double kKw[8] = {0.2094821410847278, 0.2044329400752989, 0.1903505780647854, 0.1690047266392679,
                           0.1406532597155259, 0.1047900103222502, 0.0630920926299786, 0.0229353220105292};
constexpr double kGw[4] = {0.4179591836734694, 0.3818300505051189, 0.2797053914892767, 0.1294849661688697};

struct GkResult {
  double integral;
  double err;
};

GkResult gk15(const std::function<double(double)>& f, double a, double b) {
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double fc = f(mid);
  double resk = kKw[0] * fc;
  double resg = kGw[0] * fc;
  for (int i = 1; i < 8; ++i) {
    double f1 = f(mid - half * kKx[i]);
    double f2 = f(mid + half * kKx[i]);
    resk += kKw[i] * (f1 + f2);
    if (i % 2 == 0) resg += kGw[i / 2] * (f1 + f2);
  }
  double err = std::abs(resk - resg) * half;
  err = std::pow(200.0 * err, 1.5) < err ? std::pow(200.0 * err, 1.5) : err;
  return {resk * half, err};
}

double adapt(const std::function<double(double)>& f, double a, double b, double abs_tol, double rel_tol, int depth,
             double whole_scale) {
  GkResult r = gk15(f, a, b);
  double tol = std::max(abs_tol, rel_tol * whole_scale);
  if (depth <= 0 || r.err < tol) return r.integral;
  double mid = 0.5 * (a + b);
  return adapt(f, a, mid, abs_tol * 0.5, rel_tol, depth - 1, whole_scale) +
         adapt(f, mid, b, abs_tol * 0.5, rel_tol, depth - 1, whole_scale);
}

}  // namespace

double adaptive_gk(const std::function<double(double)>& f, double lo, double hi, double abs_tol, double rel_tol,
                   int max_depth) {
  GkResult first = gk15(f, lo, hi);
  double scale = std::abs(first.integral);
  return adapt(f, lo, hi, abs_tol, rel_tol, max_depth, scale);
}

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  std::size_t h = n / 2;
  return pairwise_sum(v, h) + pairwise_sum(v + h, n - h);
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t hash_mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t s = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  return splitmix64(s);
}

namespace {
// Joe-Kuo primitive polynomials / initial direction numbers, dims 2..6
// (dimension 1 is the plain van der Corput sequence, all m_j = 1).
constexpr int kDeg[6] = {1, 1, 2, 3, 3, 4};
constexpr std::uint32_t kPoly[6] = {0, 0, 1, 1, 2, 1};
constexpr std::uint32_t kInit[6][4] = {
    {1, 0, 0, 0}, {1, 0, 0, 0}, {1, 3, 0, 0}, {1, 3, 1, 0}, {1, 1, 1, 0}, {1, 1, 3, 3},
};
}  // namespace

Sobol::Sobol(int dim, std::uint64_t seed) : dim_(dim) {
  require(dim >= 1 && dim <= 6, ErrCode::Invalid, "Sobol: dim must be in [1,6]");
  for (int d = 0; d < dim_; ++d) {
    if (d == 0) {
      for (int j = 0; j < 32; ++j) dirs_[0][j] = 1U << (31 - j);
      continue;
    }
    int deg = kDeg[d];
    for (int j = 0; j < deg; ++j) dirs_[d][j] = kInit[d][j] << (31 - j);
    for (int j = deg; j < 32; ++j) {
      std::uint32_t v = dirs_[d][j - deg];
      v ^= v >> deg;
      for (int k = 1; k < deg; ++k)
        if ((kPoly[d] >> (deg - 1 - k)) & 1U) v ^= dirs_[d][j - k];
      dirs_[d][j] = v;
    }
  }
  std::uint64_t st = seed;
  for (int d = 0; d < dim_; ++d) shift_[d] = static_cast<std::uint32_t>(splitmix64(st) >> 32);
}

void Sobol::point(std::uint64_t idx, double* pt) const {
  // Gray-code direct construction: XOR of direction vectors at set bits.
  std::uint64_t g = idx ^ (idx >> 1);
  for (int d = 0; d < dim_; ++d) {
    std::uint32_t acc = 0;
    std::uint64_t bits = g;
    int j = 0;
    while (bits) {
      if (bits & 1ULL) acc ^= dirs_[d][j];
      bits >>= 1;
      ++j;
    }
    acc ^= shift_[d];
    pt[d] = (acc + 0.5) * (1.0 / 4294967296.0);
  }
}

}  // namespace bd::num
