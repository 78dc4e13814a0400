#include "betadens.h"

#include <cstring>
#include <new>
#include <string>

#include "bulk.hpp"
#include "common.hpp"
#include "curves.hpp"
#include "ensembles.hpp"
#include "softedge.hpp"
#include "specfun.hpp"
#include "symop.hpp"

#include "json.hpp"

namespace {

thread_local std::string t_last_error;

int set_error(bd::ErrCode code, const char* what) {
  t_last_error = what ? what : "";
  return static_cast<int>(code);
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    fn();
    t_last_error.clear();
    return BD_OK;
  } catch (const bd::Error& e) {
    return set_error(e.code(), e.what());
  } catch (const std::bad_alloc& e) {
    return set_error(bd::ErrCode::NoMem, e.what());
  } catch (const std::exception& e) {
    return set_error(bd::ErrCode::Internal, e.what());
  }
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

bd::Scaling to_scaling(int s) {
  bd::require(s >= 0 && s <= 4, bd::ErrCode::Invalid, "bad scaling id");
  return static_cast<bd::Scaling>(s);
}

bd::Method to_method(int m) {
  bd::require(m >= 0 && m <= 3, bd::ErrCode::Invalid, "bad method id");
  return static_cast<bd::Method>(m);
}

bd::softedge::KQuadConfig to_kquad(const bd_kquad* cfg) {
  bd::softedge::KQuadConfig kq;
  if (!cfg) return kq;
  kq.ray_angle = cfg->ray_angle;
  kq.truncation = cfg->truncation;
  bd::require(cfg->method >= 0 && cfg->method <= 2, bd::ErrCode::Invalid, "bad kquad method");
  kq.method = static_cast<bd::softedge::KMethod>(cfg->method);
  kq.points = cfg->points;
  kq.shift = cfg->shift;
  kq.seed = cfg->seed;
  kq.tol_imag = cfg->tol_imag;
  return kq;
}

}  // namespace

struct bd_spec {
  bd::EnsembleSpec spec;
};

struct bd_rng {
  bd::ensembles::Rng rng;
};

extern "C" {

const char* bd_strerror(int status) {
  switch (status) {
    case BD_OK:
      return "ok";
    case BD_ERR_DOMAIN:
      return "domain error";
    case BD_ERR_INVALID:
      return "invalid argument";
    case BD_ERR_BUDGET:
      return "budget exceeded";
    case BD_ERR_CONTOUR:
      return "contour/branch sentinel";
    case BD_ERR_NUMERIC:
      return "numeric failure";
    case BD_ERR_NOMEM:
      return "out of memory";
    case BD_ERR_IO:
      return "io error";
    default:
      return "internal error";
  }
}

const char* bd_last_error(void) { return t_last_error.c_str(); }

const char* bd_version(void) { return "1.0.0"; }

void bd_string_free(char* s) { delete[] s; }

int bd_spec_create(int family, int n, double beta, double a, bd_spec** out) {
  return guarded([&] {
    bd::require(out != nullptr, bd::ErrCode::Invalid, "out must not be null");
    bd::require(family == BD_FAMILY_HERMITE || family == BD_FAMILY_LAGUERRE, bd::ErrCode::Invalid, "bad family");
    auto fam = family == BD_FAMILY_HERMITE ? bd::Family::Hermite : bd::Family::Laguerre;
    *out = new bd_spec{bd::EnsembleSpec(fam, n, beta, a)};
  });
}

void bd_spec_free(bd_spec* spec) { delete spec; }

int bd_log_gamma(double z, double* out) {
  return guarded([&] { *out = bd::specfun::log_gamma(z); });
}

int bd_airy_ai(double x, double* ai, double* aip) {
  return guarded([&] {
    auto r = bd::specfun::airy_ai(x);
    if (ai) *ai = r.ai;
    if (aip) *aip = r.aip;
  });
}

int bd_gamma_n_beta(int n, double beta, double* out) {
  return guarded([&] { *out = bd::specfun::gamma_n_beta(n, beta); });
}

int bd_hermite_norm_ratio(int n, double beta, double* out) {
  return guarded([&] { *out = bd::specfun::hermite_norm_ratio(n, beta); });
}

int bd_laguerre_norm_ratio(const bd_spec* spec, double* out) {
  return guarded([&] { *out = bd::specfun::laguerre_norm_ratio(spec->spec); });
}

int bd_soft_edge_prefactor(double beta, double* out) {
  return guarded([&] { *out = bd::specfun::soft_edge_prefactor(beta); });
}

int bd_wigner_density(double x, double* out) {
  return guarded([&] { *out = bd::bulk::wigner_density(x); });
}

int bd_mp_density(double x, double* out) {
  return guarded([&] { *out = bd::bulk::mp_density(x); });
}

int bd_wigner_cdf(double x, double* out) {
  return guarded([&] { *out = bd::bulk::wigner_cdf(x); });
}

int bd_mp_cdf(double x, double* out) {
  return guarded([&] { *out = bd::bulk::mp_cdf(x); });
}

int bd_density_exact(const bd_spec* spec, const double* xs, size_t count, double* out) {
  return guarded([&] {
    for (size_t i = 0; i < count; ++i)
      out[i] = spec->spec.family == bd::Family::Hermite ? bd::symop::exact_hermite_density(spec->spec, xs[i])
                                                        : bd::symop::exact_laguerre_density(spec->spec, xs[i]);
  });
}

int bd_density_bulk(const bd_spec* spec, const double* xs, size_t count, int expert_any_beta, double* out) {
  return guarded([&] {
    for (size_t i = 0; i < count; ++i)
      out[i] = spec->spec.family == bd::Family::Hermite
                   ? bd::bulk::hermite_density(spec->spec, xs[i], expert_any_beta != 0)
                   : bd::bulk::laguerre_density(spec->spec, xs[i], expert_any_beta != 0);
  });
}

int bd_unipoly_json(const bd_spec* spec, char** out) {
  return guarded([&] { *out = dup_string(bd::symop::unipoly_json(spec->spec)); });
}

void bd_kquad_defaults(bd_kquad* cfg) {
  bd::softedge::KQuadConfig kq;
  cfg->ray_angle = kq.ray_angle;
  cfg->truncation = kq.truncation;
  cfg->method = static_cast<int>(kq.method);
  cfg->points = kq.points;
  cfg->shift = kq.shift;
  cfg->seed = kq.seed;
  cfg->tol_imag = kq.tol_imag;
}

int bd_kquad_from_json(const char* json, bd_kquad* cfg) {
  return guarded([&] {
    bd::require(json && cfg, bd::ErrCode::Invalid, "null argument");
    bd_kquad_defaults(cfg);
    nlohmann::json j = nlohmann::json::parse(json, nullptr, false);
    bd::require(!j.is_discarded() && j.is_object(), bd::ErrCode::Invalid, "kquad config: malformed JSON");
    if (j.contains("ray_angle")) cfg->ray_angle = j["ray_angle"].get<double>();
    if (j.contains("truncation")) cfg->truncation = j["truncation"].get<double>();
    if (j.contains("method")) {
      std::string m = j["method"].get<std::string>();
      if (m == "auto")
        cfg->method = 0;
      else if (m == "nested-gauss")
        cfg->method = 1;
      else if (m == "qmc")
        cfg->method = 2;
      else
        bd::require(false, bd::ErrCode::Invalid, "kquad config: unknown method " + m);
    }
    if (j.contains("points")) cfg->points = j["points"].get<long>();
    if (j.contains("shift")) cfg->shift = j["shift"].get<double>();
    if (j.contains("seed")) cfg->seed = j["seed"].get<uint64_t>();
    if (j.contains("tol_imag")) cfg->tol_imag = j["tol_imag"].get<double>();
    to_kquad(cfg).validate();
  });
}

int bd_kquad_to_json(const bd_kquad* cfg, char** out) {
  return guarded([&] {
    bd::require(cfg && out, bd::ErrCode::Invalid, "null argument");
    const char* names[] = {"auto", "nested-gauss", "qmc"};
    bd::require(cfg->method >= 0 && cfg->method <= 2, bd::ErrCode::Invalid, "bad kquad method");
    nlohmann::json j{{"ray_angle", cfg->ray_angle}, {"truncation", cfg->truncation},
                     {"method", names[cfg->method]}, {"points", cfg->points},
                     {"shift", cfg->shift},          {"seed", cfg->seed},
                     {"tol_imag", cfg->tol_imag}};
    *out = dup_string(j.dump());
  });
}

int bd_k_integral(int n, double beta, double x, const bd_kquad* cfg, int contour, double* out) {
  return guarded([&] {
    bd::require(contour == 0 || contour == 1, bd::ErrCode::Invalid, "bad contour id");
    *out = bd::softedge::k_integral(n, beta, x, to_kquad(cfg),
                                    contour == 0 ? bd::softedge::KContour::SingleRay
                                                 : bd::softedge::KContour::TwoRay);
  });
}

int bd_k_det_beta2(int n, double x, double* out) {
  return guarded([&] { *out = bd::softedge::k_det_beta2(n, x); });
}

int bd_soft_edge_density(double beta, const double* xs, size_t count, const bd_kquad* cfg, double* out) {
  return guarded([&] {
    auto kq = to_kquad(cfg);
    for (size_t i = 0; i < count; ++i) out[i] = bd::softedge::soft_edge_density(beta, xs[i], kq);
  });
}

int bd_k_asym_right(double beta, double x, double* out) {
  return guarded([&] { *out = bd::softedge::k_asym_right(beta, x); });
}

int bd_k_asym_left(double beta, double x, double* out) {
  return guarded([&] { *out = bd::softedge::k_asym_left(beta, x); });
}

int bd_edge_coordinate(const bd_spec* spec, double x_physical, double* x_edge, double* jacobian) {
  return guarded([&] {
    auto ec = bd::softedge::edge_coordinate(spec->spec, x_physical);
    if (x_edge) *x_edge = ec.x_edge;
    if (jacobian) *jacobian = ec.jacobian;
  });
}

int bd_rng_create(uint64_t seed, bd_rng** out) {
  return guarded([&] { *out = new bd_rng{bd::ensembles::Rng(seed)}; });
}

void bd_rng_free(bd_rng* rng) { delete rng; }

int bd_chi_sample(bd_rng* rng, double k, double* out) {
  return guarded([&] { *out = rng->rng.chi(k); });
}

int bd_sample_hermite_tridiag(bd_rng* rng, const bd_spec* spec, double* diag, double* offdiag) {
  return guarded([&] {
    auto t = bd::ensembles::sample_hermite_tridiag(spec->spec, rng->rng);
    std::memcpy(diag, t.diag.data(), t.diag.size() * sizeof(double));
    if (!t.offdiag.empty()) std::memcpy(offdiag, t.offdiag.data(), t.offdiag.size() * sizeof(double));
  });
}

int bd_sample_laguerre_tridiag(bd_rng* rng, const bd_spec* spec, double* diag, double* offdiag) {
  return guarded([&] {
    auto t = bd::ensembles::sample_laguerre_tridiag(spec->spec, rng->rng);
    std::memcpy(diag, t.diag.data(), t.diag.size() * sizeof(double));
    if (!t.offdiag.empty()) std::memcpy(offdiag, t.offdiag.data(), t.offdiag.size() * sizeof(double));
  });
}

int bd_tridiag_eigenvalues(const double* diag, const double* offdiag, int n, double* evals) {
  return guarded([&] {
    bd::ensembles::SymTridiagonal t;
    t.diag.assign(diag, diag + n);
    if (n > 1) t.offdiag.assign(offdiag, offdiag + n - 1);
    auto ev = bd::ensembles::tridiag_eigenvalues(t);
    std::memcpy(evals, ev.data(), ev.size() * sizeof(double));
  });
}

int bd_mc_density(const bd_spec* spec, int scaling, uint64_t seed, long draws, int threads, const double* grid,
                  size_t count, double* out) {
  return guarded([&] {
    std::vector<double> g(grid, grid + count);
    auto curve = bd::curves::evaluate(spec->spec, bd::Method::MonteCarlo, to_scaling(scaling), g, {}, seed, draws,
                                      threads);
    std::memcpy(out, curve.values.data(), curve.values.size() * sizeof(double));
  });
}

int bd_curve_evaluate(const bd_spec* spec, int method, int scaling, const double* grid, size_t count,
                      const bd_kquad* cfg, uint64_t seed, long draws, int threads, int expert_any_beta, double* out) {
  return guarded([&] {
    std::vector<double> g(grid, grid + count);
    auto curve = bd::curves::evaluate(spec->spec, to_method(method), to_scaling(scaling), g, to_kquad(cfg), seed,
                                      draws, threads, expert_any_beta != 0);
    std::memcpy(out, curve.values.data(), curve.values.size() * sizeof(double));
  });
}

namespace {

bd::DensityCurve assemble_curve(const bd_spec* spec, int method, int scaling, uint64_t seed, long samples,
                                const double* grid, const double* values, size_t count) {
  bd::DensityCurve c;
  c.spec = spec->spec;
  c.method = to_method(method);
  c.scaling = to_scaling(scaling);
  c.seed = seed;
  c.samples = samples;
  c.grid.assign(grid, grid + count);
  c.values.assign(values, values + count);
  c.validate();
  return c;
}

}  // namespace

int bd_curve_csv(const bd_spec* spec, int method, int scaling, uint64_t seed, long samples, const double* grid,
                 const double* values, size_t count, char** out) {
  return guarded(
      [&] { *out = dup_string(bd::curves::to_csv(assemble_curve(spec, method, scaling, seed, samples, grid, values, count))); });
}

int bd_curve_json(const bd_spec* spec, int method, int scaling, uint64_t seed, long samples, const double* grid,
                  const double* values, size_t count, char** out) {
  return guarded(
      [&] { *out = dup_string(bd::curves::to_json(assemble_curve(spec, method, scaling, seed, samples, grid, values, count))); });
}

int bd_metric_l1(const double* grid, const double* a, const double* b, size_t count, double* out) {
  return guarded([&] {
    std::vector<double> g(grid, grid + count), va(a, a + count), vb(b, b + count);
    *out = bd::curves::metric_l1(g, va, vb);
  });
}

int bd_metric_linf(const double* a, const double* b, size_t count, double* out) {
  return guarded([&] {
    std::vector<double> va(a, a + count), vb(b, b + count);
    *out = bd::curves::metric_linf(va, vb);
  });
}

int bd_peaks(const double* grid, const double* values, size_t count, double* locs, size_t cap, size_t* found) {
  return guarded([&] {
    std::vector<double> g(grid, grid + count), v(values, values + count);
    auto p = bd::curves::peak_locations(g, v);
    if (found) *found = p.size();
    for (size_t i = 0; i < p.size() && i < cap; ++i) locs[i] = p[i];
  });
}

}  // extern "C"
