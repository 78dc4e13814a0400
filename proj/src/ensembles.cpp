#include "ensembles.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "numutil.hpp"

namespace bd::ensembles {

namespace {
constexpr double kTwo53 = 9007199254740992.0;  // 2^53
}

double Rng::uniform() {
  // 53-bit mantissa in (0,1): never returns 0
  std::uint64_t r = eng_();
  return (static_cast<double>(r >> 11) + 0.5) / kTwo53;
}

double Rng::normal() {
  if (have_cached_) {
    have_cached_ = false;
    return cached_;
  }
  // Marsaglia polar method
  for (;;) {
    double u = 2.0 * uniform() - 1.0;
    double v = 2.0 * uniform() - 1.0;
    double s = u * u + v * v;
    if (s >= 1.0 || s == 0.0) continue;
    double f = std::sqrt(-2.0 * std::log(s) / s);
    cached_ = v * f;
    have_cached_ = true;
    return u * f;
  }
}

double Rng::gamma(double shape) {
  require(shape > 0.0, ErrCode::Domain, "Rng::gamma: shape must be > 0");
  if (shape < 1.0) {
    // boost: Gamma(a) = Gamma(a+1) * U^{1/a}
    double g = gamma(shape + 1.0);
    double u = uniform();
    return g * std::pow(u, 1.0 / shape);
  }
  // Marsaglia-Tsang
  double d = shape - 1.0 / 3.0;
  double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double t = 1.0 + c * x;
    if (t <= 0.0) continue;
    double v = t * t * t;
    double u = uniform();
    double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::chi(double k) {
  require(k > 0.0, ErrCode::Domain, "chi_sample: degrees of freedom must be > 0");
  return std::sqrt(2.0 * gamma(0.5 * k));
}

SymTridiagonal sample_hermite_tridiag(const EnsembleSpec& spec, Rng& rng) {
  require(spec.family == Family::Hermite, ErrCode::Domain, "sample_hermite_tridiag: Hermite spec required");
  const int n = spec.n;
  const double beta = spec.beta;
  SymTridiagonal t;
  t.diag.resize(n);
  t.offdiag.resize(n - 1);
  double ds = 1.0 / std::sqrt(beta);
  // Off-diagonal chi variates carry an extra 1/sqrt(2); this is what makes
  // the N=2 eigenvalue law reproduce the e^{-beta W} weight exactly.
  double os = 1.0 / std::sqrt(2.0 * beta);
  for (int i = 0; i < n; ++i) t.diag[i] = rng.normal() * ds;
  for (int j = 0; j < n - 1; ++j) t.offdiag[j] = rng.chi((n - 1 - j) * beta) * os;
  return t;
}

SymTridiagonal sample_laguerre_tridiag(const EnsembleSpec& spec, Rng& rng) {
  require(spec.family == Family::Laguerre, ErrCode::Domain, "sample_laguerre_tridiag: Laguerre spec required");
  require(spec.a >= 0.0, ErrCode::Domain, "sample_laguerre_tridiag: a must be >= 0");
  const int n = spec.n;
  const double beta = spec.beta;
  const double p = spec.dof_p();
  double s = 1.0 / std::sqrt(beta);
  // bidiagonal B: diagonal chi_{(P-j+1) beta}, superdiagonal chi_{(N-j) beta}
  std::vector<double> bd(n), bs(n > 1 ? n - 1 : 0);
  for (int j = 0; j < n; ++j) bd[j] = rng.chi((p - j) * beta) * s;
  for (int j = 0; j + 1 < n; ++j) bs[j] = rng.chi((n - 1 - j) * beta) * s;
  // L = B^T B assembled in tridiagonal form
  SymTridiagonal t;
  t.diag.resize(n);
  t.offdiag.resize(n - 1);
  t.diag[0] = bd[0] * bd[0];
  for (int j = 1; j < n; ++j) t.diag[j] = bd[j] * bd[j] + bs[j - 1] * bs[j - 1];
  for (int j = 0; j + 1 < n; ++j) t.offdiag[j] = bd[j] * bs[j];
  return t;
}

namespace {

// Sturm count: number of eigenvalues < x.
int sturm_count(const std::vector<double>& d, const std::vector<double>& e, double x) {
  int count = 0;
  double q = d[0] - x;
  if (q < 0.0) ++count;
  for (std::size_t i = 1; i < d.size(); ++i) {
    double e2 = e[i - 1] * e[i - 1];
    if (q == 0.0) q = 1e-300;
    q = d[i] - x - e2 / q;
    if (q < 0.0) ++count;
  }
  return count;
}

std::vector<double> sturm_bisection(const std::vector<double>& d, const std::vector<double>& e) {
  const int n = static_cast<int>(d.size());
  double lo = d[0], hi = d[0];
  for (int i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::abs(e[i - 1]);
    if (i < n - 1) r += std::abs(e[i]);
    lo = std::min(lo, d[i] - r);
    hi = std::max(hi, d[i] + r);
  }
  double span = hi - lo + 1e-30;
  lo -= 1e-12 * span;
  hi += 1e-12 * span;
  std::vector<double> out(n);
  for (int k = 0; k < n; ++k) {
    double a = lo, b = hi;
    for (int it = 0; it < 120; ++it) {
      double mid = 0.5 * (a + b);
      if (sturm_count(d, e, mid) <= k)
        a = mid;
      else
        b = mid;
      if (b - a <= 1e-15 * std::max(1.0, std::abs(a) + std::abs(b))) break;
    }
    out[k] = 0.5 * (a + b);
  }
  return out;
}

}  // namespace

std::vector<double> tridiag_eigenvalues(const SymTridiagonal& t) {
  const int n = static_cast<int>(t.diag.size());
  require(n >= 1, ErrCode::Invalid, "tridiag_eigenvalues: empty matrix");
  require(static_cast<int>(t.offdiag.size()) == n - 1, ErrCode::Invalid,
          "tridiag_eigenvalues: offdiag size must be N-1");
  for (double v : t.diag) require(std::isfinite(v), ErrCode::Invalid, "tridiag_eigenvalues: non-finite entry");
  for (double v : t.offdiag) require(std::isfinite(v), ErrCode::Invalid, "tridiag_eigenvalues: non-finite entry");

  std::vector<double> d = t.diag;
  std::vector<double> e = t.offdiag;
  e.push_back(0.0);

  // implicit-shift QL, eigenvalues only
  for (int l = 0; l < n; ++l) {
    int iter = 0;
    for (;;) {
      int m = l;
      for (; m < n - 1; ++m) {
        double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-17 * dd) break;
      }
      if (m == l) break;
      if (++iter > 30) {
        // cap breached: fall back to bisection on the original matrix
        return sturm_bisection(t.diag, t.offdiag);
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      bool underflow = false;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  std::sort(d.begin(), d.end());
  return d;
}

void Histogram::accumulate(double x) {
  if (x < edges.front() || x >= edges.back()) {
    ++clipped;
    return;
  }
  auto it = std::upper_bound(edges.begin(), edges.end(), x);
  std::size_t idx = static_cast<std::size_t>(it - edges.begin()) - 1;
  if (idx < counts.size()) ++counts[idx];
}

void Histogram::merge(const Histogram& other) {
  require(edges == other.edges, ErrCode::Invalid, "Histogram::merge: edge mismatch");
  for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
  total_draws += other.total_draws;
  clipped += other.clipped;
}

std::vector<double> grid_centered_edges(const std::vector<double>& grid) {
  require(grid.size() >= 2, ErrCode::Invalid, "grid_centered_edges: need at least 2 grid points");
  std::vector<double> edges(grid.size() + 1);
  for (std::size_t i = 1; i < grid.size(); ++i) edges[i] = 0.5 * (grid[i - 1] + grid[i]);
  edges[0] = grid.front() - 0.5 * (grid[1] - grid[0]);
  edges[grid.size()] = grid.back() + 0.5 * (grid[grid.size() - 1] - grid[grid.size() - 2]);
  return edges;
}

std::vector<double> freedman_diaconis_edges(std::vector<double> pilot, double lo, double hi) {
  require(!pilot.empty() && hi > lo, ErrCode::Invalid, "freedman_diaconis_edges: bad inputs");
  std::sort(pilot.begin(), pilot.end());
  auto quant = [&](double q) {
    double pos = q * (pilot.size() - 1);
    std::size_t i = static_cast<std::size_t>(pos);
    double f = pos - i;
    return i + 1 < pilot.size() ? pilot[i] * (1 - f) + pilot[i + 1] * f : pilot[i];
  };
  double iqr = quant(0.75) - quant(0.25);
  double width = 2.0 * iqr / std::cbrt(static_cast<double>(pilot.size()));
  if (width <= 0.0) width = (hi - lo) / 64.0;
  int bins = std::max(8, static_cast<int>(std::ceil((hi - lo) / width)));
  bins = std::min(bins, 4096);
  std::vector<double> edges(bins + 1);
  for (int i = 0; i <= bins; ++i) edges[i] = lo + (hi - lo) * i / bins;
  return edges;
}

double scale_eigenvalue(const EnsembleSpec& spec, Scaling scaling, double lambda) {
  double n = static_cast<double>(spec.n);
  switch (scaling) {
    case Scaling::Raw:
      return lambda;
    case Scaling::BulkHermite:
      return lambda / std::sqrt(2.0 * n);
    case Scaling::BulkLaguerre:
      return lambda / (4.0 * n);
    case Scaling::EdgeHermite:
      return (lambda - std::sqrt(2.0 * n)) * std::sqrt(2.0) * std::pow(n, 1.0 / 6.0);
    case Scaling::EdgeLaguerre:
      return (lambda - 4.0 * n) / (2.0 * std::cbrt(2.0 * n));
  }
  throw Error(ErrCode::Invalid, "scale_eigenvalue: bad scaling");
}

double density_factor(const EnsembleSpec& spec, Scaling scaling) {
  // count/(draws*width) estimates the scaled-eigenvalue density (mass N);
  // the bulk limit curves of Eqs.-(6)/(7) type carry mass 1.
  switch (scaling) {
    case Scaling::BulkHermite:
    case Scaling::BulkLaguerre:
      return 1.0 / static_cast<double>(spec.n);
    default:
      return 1.0;
  }
}

Histogram mc_histogram(const EnsembleSpec& spec, Scaling scaling, std::vector<double> edges, std::uint64_t seed,
                       long draws, int threads) {
  require(draws >= 1, ErrCode::Domain, "mc_histogram: draws must be >= 1");
  require(edges.size() >= 2, ErrCode::Invalid, "mc_histogram: need at least one bin");
  for (std::size_t i = 1; i < edges.size(); ++i)
    require(edges[i] > edges[i - 1], ErrCode::Invalid, "mc_histogram: edges must be strictly increasing");

  const long kChunk = 1024;
  const long nchunks = (draws + kChunk - 1) / kChunk;
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, static_cast<int>(std::min<long>(nchunks, 256))));

  auto run_chunk = [&](long chunk_idx, Histogram& h) {
    Rng rng(num::hash_mix(seed, static_cast<std::uint64_t>(chunk_idx) + 0x9e3779b9ULL));
    long lo = chunk_idx * kChunk;
    long hi = std::min(lo + kChunk, draws);
    for (long i = lo; i < hi; ++i) {
      SymTridiagonal t = spec.family == Family::Hermite ? sample_hermite_tridiag(spec, rng)
                                                        : sample_laguerre_tridiag(spec, rng);
      for (double lam : tridiag_eigenvalues(t)) h.accumulate(scale_eigenvalue(spec, scaling, lam));
      ++h.total_draws;
    }
  };

  std::vector<Histogram> partial(nchunks);
  for (auto& h : partial) {
    h.edges = edges;
    h.counts.assign(edges.size() - 1, 0);
    h.scaling = scaling;
  }

  if (threads == 1) {
    for (long cidx = 0; cidx < nchunks; ++cidx) run_chunk(cidx, partial[cidx]);
  } else {
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          long cidx = next.fetch_add(1);
          if (cidx >= nchunks) return;
          run_chunk(cidx, partial[cidx]);
        }
      });
    }
    for (auto& th : pool) th.join();
  }

  Histogram out;
  out.edges = std::move(edges);
  out.counts.assign(out.edges.size() - 1, 0);
  out.scaling = scaling;
  for (const auto& h : partial) out.merge(h);
  return out;
}

DensityCurve empirical_density(const EnsembleSpec& spec, const Histogram& h) {
  require(h.total_draws >= 1, ErrCode::Domain, "empirical_density: no samples");
  DensityCurve curve;
  curve.spec = spec;
  curve.scaling = h.scaling;
  curve.method = Method::MonteCarlo;
  curve.samples = h.total_draws;
  double factor = density_factor(spec, h.scaling);
  for (std::size_t i = 0; i + 1 < h.edges.size(); ++i) {
    double width = h.edges[i + 1] - h.edges[i];
    curve.grid.push_back(0.5 * (h.edges[i] + h.edges[i + 1]));
    curve.values.push_back(factor * static_cast<double>(h.counts[i]) /
                           (static_cast<double>(h.total_draws) * width));
  }
  curve.validate();
  return curve;
}

}  // namespace bd::ensembles
