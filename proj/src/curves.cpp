#include "curves.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "bulk.hpp"
#include "ensembles.hpp"
#include "symop.hpp"

namespace bd::curves {

namespace {

// X(u) physical coordinate and F(u) density factor with curve(u) = F * rho(X).
struct CoordMap {
  double x;
  double factor;
};

CoordMap coord_map(const EnsembleSpec& spec, Scaling scaling, double u) {
  double n = static_cast<double>(spec.n);
  switch (scaling) {
    case Scaling::Raw:
      return {u, 1.0};
    case Scaling::BulkHermite:
      return {std::sqrt(2.0 * n) * u, std::sqrt(2.0 / n)};
    case Scaling::BulkLaguerre:
      return {4.0 * n * u, 4.0};
    case Scaling::EdgeHermite: {
      double s = std::sqrt(2.0) * std::pow(n, 1.0 / 6.0);
      return {std::sqrt(2.0 * n) + u / s, 1.0 / s};
    }
    case Scaling::EdgeLaguerre: {
      double s = 2.0 * std::cbrt(2.0 * n);
      return {4.0 * n + s * u, s};
    }
  }
  throw Error(ErrCode::Invalid, "coord_map: bad scaling");
}

double eval_exact(const EnsembleSpec& spec, Scaling scaling, double u) {
  CoordMap cm = coord_map(spec, scaling, u);
  if (spec.family == Family::Laguerre) {
    if (cm.x <= 0.0) return 0.0;  // outside the support
    return cm.factor * symop::exact_laguerre_density(spec, cm.x);
  }
  return cm.factor * symop::exact_hermite_density(spec, cm.x);
}

double eval_bulk(const EnsembleSpec& spec, Scaling scaling, double u, bool any_beta) {
  double n = static_cast<double>(spec.n);
  if (spec.family == Family::Hermite) {
    double y, back;
    if (scaling == Scaling::BulkHermite) {
      y = u;
      back = 1.0;
    } else if (scaling == Scaling::Raw) {
      y = u / std::sqrt(2.0 * n);
      back = std::sqrt(n / 2.0);
    } else {
      throw Error(ErrCode::Invalid, "bulk method supports raw or bulk scaling only");
    }
    return back * bulk::hermite_density(spec, y, any_beta);
  }
  double y, back;
  if (scaling == Scaling::BulkLaguerre) {
    y = u;
    back = 1.0;
  } else if (scaling == Scaling::Raw) {
    y = u / (4.0 * n);
    back = 0.25;
  } else {
    throw Error(ErrCode::Invalid, "bulk method supports raw or bulk scaling only");
  }
  return back * bulk::laguerre_density(spec, y, any_beta);
}

double eval_edge(const EnsembleSpec& spec, Scaling scaling, double u, const softedge::KQuadConfig& kq) {
  if (scaling == Scaling::EdgeHermite || scaling == Scaling::EdgeLaguerre) {
    // the sigma scale is family-universal; both pipelines land here
    return softedge::soft_edge_density(spec.beta, u, kq);
  }
  if (scaling == Scaling::Raw) {
    softedge::EdgeCoord ec = softedge::edge_coordinate(spec, u);
    return softedge::soft_edge_density(spec.beta, ec.x_edge, kq) * ec.jacobian;
  }
  throw Error(ErrCode::Invalid, "edge method supports raw or edge scaling only");
}

}  // namespace

std::vector<double> make_grid(double lo, double hi, double step) {
  require(step > 0.0 && hi > lo, ErrCode::Invalid, "make_grid: need hi > lo and step > 0");
  long n = std::lround((hi - lo) / step);
  require(n >= 1 && n <= 4000000, ErrCode::Invalid, "make_grid: bad point count");
  std::vector<double> g(n + 1);
  for (long i = 0; i <= n; ++i) g[i] = lo + step * static_cast<double>(i);
  return g;
}

DensityCurve evaluate(const EnsembleSpec& spec, Method method, Scaling scaling, const std::vector<double>& grid,
                      const softedge::KQuadConfig& kq, std::uint64_t seed, long draws, int threads,
                      bool expert_any_beta) {
  DensityCurve curve;
  curve.spec = spec;
  curve.method = method;
  curve.scaling = scaling;
  curve.grid = grid;
  curve.values.assign(grid.size(), 0.0);

  if (method == Method::MonteCarlo) {
    ensembles::Histogram h =
        ensembles::mc_histogram(spec, scaling, ensembles::grid_centered_edges(grid), seed, draws, threads);
    DensityCurve emp = ensembles::empirical_density(spec, h);
    curve.values = emp.values;
    curve.seed = seed;
    curve.samples = draws;
    curve.validate();
    return curve;
  }

  if (method == Method::Exact) (void)symop::rectangular_unipoly(spec);  // build once, share across threads

  auto eval_one = [&](double u) -> double {
    switch (method) {
      case Method::Exact:
        return eval_exact(spec, scaling, u);
      case Method::Bulk:
        return eval_bulk(spec, scaling, u, expert_any_beta);
      case Method::Edge:
        return eval_edge(spec, scaling, u, kq);
      default:
        throw Error(ErrCode::Internal, "evaluate: unhandled method");
    }
  };

  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(grid.size())));
  if (threads == 1 || method != Method::Edge) {
    for (std::size_t i = 0; i < grid.size(); ++i) curve.values[i] = eval_one(grid[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr err;
    std::mutex err_mu;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&]() {
        for (;;) {
          std::size_t i = next.fetch_add(1);
          if (i >= grid.size()) return;
          try {
            curve.values[i] = eval_one(grid[i]);
          } catch (...) {
            std::lock_guard lk(err_mu);
            if (!err) err = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
  }
  curve.validate();
  return curve;
}

double metric_l1(const std::vector<double>& grid, const std::vector<double>& a, const std::vector<double>& b) {
  require(grid.size() == a.size() && a.size() == b.size() && grid.size() >= 2, ErrCode::Invalid,
          "metric_l1: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
    double da = std::abs(a[i] - b[i]);
    double db = std::abs(a[i + 1] - b[i + 1]);
    s += 0.5 * (da + db) * (grid[i + 1] - grid[i]);
  }
  return s;
}

double metric_linf(const std::vector<double>& a, const std::vector<double>& b) {
  require(a.size() == b.size(), ErrCode::Invalid, "metric_linf: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s = std::max(s, std::abs(a[i] - b[i]));
  return s;
}

std::vector<double> peak_locations(const std::vector<double>& grid, const std::vector<double>& v) {
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < v.size(); ++i) {
    if (v[i] > v[i - 1] && v[i] > v[i + 1]) {
      double denom = v[i - 1] - 2.0 * v[i] + v[i + 1];
      double shift = denom != 0.0 ? 0.5 * (v[i - 1] - v[i + 1]) / denom : 0.0;
      double h = 0.5 * (grid[i + 1] - grid[i - 1]);
      out.push_back(grid[i] + shift * h);
    }
  }
  return out;
}

std::vector<double> peak_deltas(const std::vector<double>& ref, const std::vector<double>& other) {
  std::vector<double> out;
  for (double p : ref) {
    double best = std::numeric_limits<double>::infinity();
    for (double q : other) best = std::min(best, std::abs(p - q));
    if (!other.empty()) out.push_back(best);
  }
  return out;
}

namespace {
std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
}  // namespace

std::string to_csv(const DensityCurve& c) {
  std::ostringstream os;
  os << "x,density\n";
  for (std::size_t i = 0; i < c.grid.size(); ++i) os << fmt12(c.grid[i]) << ',' << fmt12(c.values[i]) << '\n';
  return os.str();
}

std::string to_json(const DensityCurve& c) {
  std::ostringstream os;
  os << "{\"schema\":1,\"spec\":{\"family\":\"" << (c.spec.family == Family::Hermite ? "hermite" : "laguerre")
     << "\",\"n\":" << c.spec.n << ",\"beta\":" << fmt12(c.spec.beta) << ",\"a\":" << fmt12(c.spec.a) << "},"
     << "\"method\":\"" << method_name(c.method) << "\",\"scaling\":\"" << scaling_name(c.scaling) << "\"";
  if (c.method == Method::MonteCarlo) os << ",\"seed\":" << c.seed << ",\"samples\":" << c.samples;
  os << ",\"grid\":[";
  for (std::size_t i = 0; i < c.grid.size(); ++i) os << (i ? "," : "") << fmt12(c.grid[i]);
  os << "],\"values\":[";
  for (std::size_t i = 0; i < c.values.size(); ++i) os << (i ? "," : "") << fmt12(c.values[i]);
  os << "]}";
  return os.str();
}

std::string scaling_name(Scaling s) {
  switch (s) {
    case Scaling::Raw:
      return "raw";
    case Scaling::BulkHermite:
      return "bulk-hermite";
    case Scaling::BulkLaguerre:
      return "bulk-laguerre";
    case Scaling::EdgeHermite:
      return "edge-hermite";
    case Scaling::EdgeLaguerre:
      return "edge-laguerre";
  }
  return "?";
}

std::string method_name(Method m) {
  switch (m) {
    case Method::Exact:
      return "exact";
    case Method::Bulk:
      return "bulk";
    case Method::Edge:
      return "edge";
    case Method::MonteCarlo:
      return "mc";
  }
  return "?";
}

Scaling scaling_from_name(const std::string& s) {
  if (s == "raw") return Scaling::Raw;
  if (s == "bulk-hermite") return Scaling::BulkHermite;
  if (s == "bulk-laguerre") return Scaling::BulkLaguerre;
  if (s == "edge-hermite") return Scaling::EdgeHermite;
  if (s == "edge-laguerre") return Scaling::EdgeLaguerre;
  throw Error(ErrCode::Invalid, "unknown scaling: " + s);
}

Method method_from_name(const std::string& s) {
  if (s == "exact") return Method::Exact;
  if (s == "bulk") return Method::Bulk;
  if (s == "edge") return Method::Edge;
  if (s == "mc") return Method::MonteCarlo;
  throw Error(ErrCode::Invalid, "unknown method: " + s);
}

Scaling default_scaling(const EnsembleSpec& spec, Method m) {
  bool hermite = spec.family == Family::Hermite;
  switch (m) {
    case Method::Bulk:
      return hermite ? Scaling::BulkHermite : Scaling::BulkLaguerre;
    case Method::Edge:
      return hermite ? Scaling::EdgeHermite : Scaling::EdgeLaguerre;
    default:
      return Scaling::Raw;
  }
}

}  // namespace bd::curves
