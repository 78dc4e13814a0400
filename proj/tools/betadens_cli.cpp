// betadens: density curves and cross-method comparison reports for the
// Hermite and Laguerre beta-ensembles. Exit codes: 0 success / assertions
// pass, 1 tolerance assertion failed, 2 usage or domain error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "betadens.h"
#include "json.hpp"

namespace {

struct GridSpec {
  double lo = 0.0, hi = 0.0, step = 0.0;
};

GridSpec parse_grid(const std::string& s) {
  GridSpec g;
  char c1 = 0, c2 = 0;
  if (std::sscanf(s.c_str(), "%lf%c%lf%c%lf", &g.lo, &c1, &g.hi, &c2, &g.step) != 5 || c1 != ':' || c2 != ':')
    throw CLI::ValidationError("--grid", "expected lo:hi:step");
  if (g.step <= 0.0 || g.hi <= g.lo) throw CLI::ValidationError("--grid", "need hi > lo and step > 0");
  return g;
}

std::vector<double> make_grid(const GridSpec& g) {
  long n = std::lround((g.hi - g.lo) / g.step);
  std::vector<double> grid(n + 1);
  for (long i = 0; i <= n; ++i) grid[i] = g.lo + g.step * static_cast<double>(i);
  return grid;
}

int family_id(const std::string& f) {
  if (f == "hermite") return BD_FAMILY_HERMITE;
  if (f == "laguerre") return BD_FAMILY_LAGUERRE;
  throw CLI::ValidationError("--family", "must be hermite or laguerre");
}

int method_id(const std::string& m) {
  if (m == "exact") return BD_METHOD_EXACT;
  if (m == "bulk") return BD_METHOD_BULK;
  if (m == "edge") return BD_METHOD_EDGE;
  if (m == "mc") return BD_METHOD_MC;
  throw CLI::ValidationError("--method", "must be one of exact|bulk|edge|mc");
}

int scaling_id(const std::string& s) {
  if (s == "raw") return BD_SCALING_RAW;
  if (s == "bulk-hermite") return BD_SCALING_BULK_HERMITE;
  if (s == "bulk-laguerre") return BD_SCALING_BULK_LAGUERRE;
  if (s == "edge-hermite") return BD_SCALING_EDGE_HERMITE;
  if (s == "edge-laguerre") return BD_SCALING_EDGE_LAGUERRE;
  throw CLI::ValidationError("--scaling", "unknown scaling " + s);
}

std::string scaling_str(int s) {
  const char* names[] = {"raw", "bulk-hermite", "bulk-laguerre", "edge-hermite", "edge-laguerre"};
  return names[s];
}

int default_scaling_for(int family, int method) {
  bool hermite = family == BD_FAMILY_HERMITE;
  if (method == BD_METHOD_BULK) return hermite ? BD_SCALING_BULK_HERMITE : BD_SCALING_BULK_LAGUERRE;
  if (method == BD_METHOD_EDGE) return hermite ? BD_SCALING_EDGE_HERMITE : BD_SCALING_EDGE_LAGUERRE;
  return BD_SCALING_RAW;
}

int default_threads() {
  const char* env = std::getenv("BETADENS_THREADS");
  if (!env) return 0;
  int t = std::atoi(env);
  return t > 0 ? t : 0;
}

[[noreturn]] void die(int code, const std::string& what) {
  std::cerr << "error: code=" << bd_strerror(code) << " msg=" << what << "\n";
  std::exit(2);
}

void check(int rc) {
  if (rc != BD_OK) die(rc, bd_last_error());
}

void write_file(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) die(BD_ERR_IO, "cannot open " + path);
  os << body;
}

struct SpecHandle {
  bd_spec* p = nullptr;
  ~SpecHandle() { bd_spec_free(p); }
};

// Options shared by both subcommands.
struct CommonOpts {
  std::string family = "hermite";
  int n = 1;
  double beta = 2.0;
  double a = 0.0;
  std::string grid;
  std::string scaling;
  std::uint64_t seed = 42;
  long samples = 100000;
  int threads = default_threads();
  bool expert_beta = false;
  std::string kquad_json_path;
  bd_kquad kq;
};

void add_common(CLI::App* cmd, CommonOpts& o) {
  bd_kquad_defaults(&o.kq);
  static std::string config_sink;
  cmd->add_option("--config", config_sink, "JSON file whose keys stand in for unset long flags");
  cmd->add_option("--family", o.family, "ensemble family: hermite | laguerre")->required();
  cmd->add_option("--n", o.n, "matrix size N >= 1")->required();
  cmd->add_option("--beta", o.beta, "Dyson index (positive even integer for exact/bulk/edge formulas)")->required();
  cmd->add_option("--a", o.a, "Laguerre parameter a >= 0 (ignored for hermite=0)");
  cmd->add_option("--grid", o.grid, "evaluation grid lo:hi:step in the chosen scaling")->required();
  cmd->add_option("--scaling", o.scaling, "raw | bulk-hermite | bulk-laguerre | edge-hermite | edge-laguerre");
  cmd->add_option("--seed", o.seed, "Monte Carlo seed");
  cmd->add_option("--samples", o.samples, "Monte Carlo draws");
  cmd->add_option("--threads", o.threads, "worker cap (default: BETADENS_THREADS env or hardware)");
  cmd->add_flag("--expert-beta", o.expert_beta, "evaluate bulk formulas at non-even beta (no accuracy claim)");
  cmd->add_option("--kquad-config", o.kquad_json_path, "JSON file with the K-quadrature config block");
  cmd->add_option("--kq-ray-angle", o.kq.ray_angle, "contour ray angle, in (pi/6, pi/2); default pi/3");
  cmd->add_option("--kq-truncation", o.kq.truncation, "contour arclength cutoff (0 = auto, tail < 1e-12 of peak)");
  cmd->add_option("--kq-points", o.kq.points, "quadrature node/point budget (0 = per-n default)");
  cmd->add_option("--kq-shift", o.kq.shift, "contour shift through a real point (<0 = auto max(0,sqrt(x)))");
  cmd->add_option("--kq-seed", o.kq.seed, "QMC scrambling seed");
  cmd->add_option("--kq-tol-imag", o.kq.tol_imag, "max |Im|/|Re| residue before the contour sentinel fires");
  cmd->add_option_function<std::string>(
      "--kq-method",
      [&o](const std::string& m) {
        if (m == "auto")
          o.kq.method = 0;
        else if (m == "nested-gauss")
          o.kq.method = 1;
        else if (m == "qmc")
          o.kq.method = 2;
        else
          throw CLI::ValidationError("--kq-method", "must be auto | nested-gauss | qmc");
      },
      "auto | nested-gauss | qmc (default: nested-gauss for n<=3, qmc beyond)");
}

void finish_common(CommonOpts& o) {
  if (!o.kquad_json_path.empty()) {
    std::ifstream is(o.kquad_json_path);
    if (!is) die(BD_ERR_IO, "cannot read " + o.kquad_json_path);
    std::stringstream ss;
    ss << is.rdbuf();
    check(bd_kquad_from_json(ss.str().c_str(), &o.kq));
  }
}

nlohmann::json curve_values_json(const std::vector<double>& v) {
  nlohmann::json arr = nlohmann::json::array();
  char buf[40];
  for (double x : v) {
    std::snprintf(buf, sizeof buf, "%.12g", x);
    arr.push_back(std::stod(buf));
  }
  return arr;
}

int run_density(CommonOpts& o, const std::string& method_s, const std::string& out_path, const std::string& format,
                const std::string& dump_coeffs) {
  finish_common(o);
  int method = method_id(method_s);
  int fam = family_id(o.family);
  int scaling = o.scaling.empty() ? default_scaling_for(fam, method) : scaling_id(o.scaling);

  SpecHandle spec;
  check(bd_spec_create(fam, o.n, o.beta, fam == BD_FAMILY_HERMITE ? 0.0 : o.a, &spec.p));

  std::vector<double> grid = make_grid(parse_grid(o.grid));
  std::vector<double> values(grid.size());
  check(bd_curve_evaluate(spec.p, method, scaling, grid.data(), grid.size(), &o.kq, o.seed, o.samples, o.threads,
                          o.expert_beta ? 1 : 0, values.data()));

  if (!dump_coeffs.empty()) {
    char* js = nullptr;
    check(bd_unipoly_json(spec.p, &js));
    write_file(dump_coeffs, std::string(js) + "\n");
    bd_string_free(js);
  }

  bool json = format == "json" || (format.empty() && out_path.size() > 5 && out_path.substr(out_path.size() - 5) == ".json");
  char* body = nullptr;
  if (json)
    check(bd_curve_json(spec.p, method, scaling, o.seed, method == BD_METHOD_MC ? o.samples : 0, grid.data(),
                        values.data(), grid.size(), &body));
  else
    check(bd_curve_csv(spec.p, method, scaling, o.seed, method == BD_METHOD_MC ? o.samples : 0, grid.data(),
                       values.data(), grid.size(), &body));
  write_file(out_path, body);
  bd_string_free(body);
  return 0;
}

int run_compare(CommonOpts& o, const std::string& methods_s, const std::string& report_path, double assert_l1,
                double assert_linf, double assert_peak_delta) {
  finish_common(o);
  int fam = family_id(o.family);
  std::vector<int> methods;
  std::vector<std::string> method_names;
  std::stringstream ss(methods_s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    methods.push_back(method_id(tok));
    method_names.push_back(tok);
  }
  if (methods.size() < 2) die(BD_ERR_INVALID, "compare needs at least two methods");

  int scaling;
  if (!o.scaling.empty()) {
    scaling = scaling_id(o.scaling);
  } else {
    scaling = BD_SCALING_RAW;
    for (int m : methods)
      if (m == BD_METHOD_BULK) scaling = default_scaling_for(fam, BD_METHOD_BULK);
    if (scaling == BD_SCALING_RAW)
      for (int m : methods)
        if (m == BD_METHOD_EDGE) scaling = default_scaling_for(fam, BD_METHOD_EDGE);
  }

  SpecHandle spec;
  check(bd_spec_create(fam, o.n, o.beta, fam == BD_FAMILY_HERMITE ? 0.0 : o.a, &spec.p));
  std::vector<double> grid = make_grid(parse_grid(o.grid));

  std::vector<std::vector<double>> curves;
  for (int m : methods) {
    std::vector<double> v(grid.size());
    check(bd_curve_evaluate(spec.p, m, scaling, grid.data(), grid.size(), &o.kq, o.seed, o.samples, o.threads,
                            o.expert_beta ? 1 : 0, v.data()));
    curves.push_back(std::move(v));
  }

  nlohmann::json report;
  report["schema"] = 1;
  report["spec"] = {{"family", o.family}, {"n", o.n}, {"beta", o.beta}, {"a", fam == BD_FAMILY_HERMITE ? 0.0 : o.a}};
  report["scaling"] = scaling_str(scaling);
  report["methods"] = method_names;
  report["grid"] = curve_values_json(grid);
  report["curves"] = nlohmann::json::object();
  for (std::size_t i = 0; i < methods.size(); ++i) report["curves"][method_names[i]] = curve_values_json(curves[i]);
  if (std::count(methods.begin(), methods.end(), BD_METHOD_MC)) {
    report["seed"] = o.seed;
    report["samples"] = o.samples;
  }

  nlohmann::json metrics = nlohmann::json::object();
  std::vector<std::vector<double>> peaks;
  for (std::size_t i = 0; i < methods.size(); ++i) {
    std::vector<double> locs(grid.size());
    std::size_t found = 0;
    check(bd_peaks(grid.data(), curves[i].data(), grid.size(), locs.data(), locs.size(), &found));
    locs.resize(found);
    peaks.push_back(locs);
    metrics["peak_count"][method_names[i]] = found;
  }
  bool breach = false;
  std::string breach_msg;
  for (std::size_t i = 1; i < methods.size(); ++i) {
    double l1 = 0.0, linf = 0.0;
    check(bd_metric_l1(grid.data(), curves[0].data(), curves[i].data(), grid.size(), &l1));
    check(bd_metric_linf(curves[0].data(), curves[i].data(), grid.size(), &linf));
    std::string key = method_names[0] + "_vs_" + method_names[i];
    metrics["l1"][key] = l1;
    metrics["linf"][key] = linf;
    nlohmann::json deltas = nlohmann::json::array();
    double max_delta = 0.0;
    for (double p : peaks[0]) {
      double best = -1.0;
      for (double q : peaks[i])
        if (best < 0.0 || std::abs(p - q) < best) best = std::abs(p - q);
      if (best >= 0.0) {
        deltas.push_back(best);
        max_delta = std::max(max_delta, best);
      }
    }
    metrics["peak_location_deltas"][key] = deltas;
    if (assert_l1 > 0.0 && l1 > assert_l1) {
      breach = true;
      breach_msg = "l1[" + key + "] = " + std::to_string(l1) + " > " + std::to_string(assert_l1);
    }
    if (assert_linf > 0.0 && linf > assert_linf) {
      breach = true;
      breach_msg = "linf[" + key + "] = " + std::to_string(linf) + " > " + std::to_string(assert_linf);
    }
    if (assert_peak_delta > 0.0 && max_delta > assert_peak_delta) {
      breach = true;
      breach_msg = "peak_location_deltas[" + key + "] max = " + std::to_string(max_delta) + " > " +
                   std::to_string(assert_peak_delta);
    }
  }
  report["metrics"] = metrics;
  report["assertions_passed"] = !breach;

  write_file(report_path, report.dump(1) + "\n");
  if (breach) {
    std::cerr << "tolerance breach: " << breach_msg << "\n";
    return 1;
  }
  return 0;
}

}  // namespace

namespace {

// `--config file.json` supplies defaults for any long flag not given on the
// command line: {"family":"hermite","n":7,...}. Explicit flags win.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::string cfg_path;
  for (std::size_t i = 0; i + 1 < args.size(); ++i)
    if (args[i] == "--config") cfg_path = args[i + 1];
  if (cfg_path.empty()) return args;
  std::ifstream is(cfg_path);
  if (!is) die(BD_ERR_IO, "cannot read config " + cfg_path);
  nlohmann::json j = nlohmann::json::parse(is, nullptr, false);
  if (j.is_discarded() || !j.is_object()) die(BD_ERR_INVALID, "config must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string flag = "--" + it.key();
    if (std::find(args.begin(), args.end(), flag) != args.end()) continue;
    args.push_back(flag);
    if (it.value().is_boolean()) {
      if (!it.value().get<bool>()) args.pop_back();
      continue;
    }
    args.push_back(it.value().is_string() ? it.value().get<std::string>() : it.value().dump());
  }
  return args;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"betadens: eigenvalue densities of Hermite/Laguerre beta-ensembles, four ways"};
  app.require_subcommand(1);

  CommonOpts dopts, copts;
  std::string method_s = "exact", out_path, format, dump_coeffs;
  auto* density = app.add_subcommand("density", "compute one density curve and write CSV/JSON");
  add_common(density, dopts);
  density->add_option("--method", method_s, "exact | bulk | edge | mc")->required();
  density->add_option("--out", out_path, "output path ('-' or empty = stdout)");
  density->add_option("--format", format, "csv | json (default: by file suffix, else csv)");
  density->add_option("--dump-coeffs", dump_coeffs, "also dump the exact-fraction unipoly JSON to this path");

  std::string methods_s, report_path;
  double assert_l1 = 0.0, assert_linf = 0.0, assert_peak_delta = 0.0;
  auto* compare = app.add_subcommand("compare", "evaluate several methods on one grid and report metrics");
  add_common(compare, copts);
  compare->add_option("--methods", methods_s, "comma-separated list, first entry is the reference")->required();
  compare->add_option("--report", report_path, "report JSON path ('-' or empty = stdout)");
  compare->add_option("--assert-l1", assert_l1, "fail (exit 1) if any L1 distance exceeds this");
  compare->add_option("--assert-linf", assert_linf, "fail (exit 1) if any Linf distance exceeds this");
  compare->add_option("--assert-peak-delta", assert_peak_delta, "fail (exit 1) if any matched peak moves further");

  std::vector<std::string> args = expand_config(argc, argv);
  std::vector<char*> cargv;
  std::string prog = argv[0];
  cargv.push_back(prog.data());
  for (auto& s : args) cargv.push_back(s.data());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (density->parsed()) return run_density(dopts, method_s, out_path, format, dump_coeffs);
    return run_compare(copts, methods_s, report_path, assert_l1, assert_linf, assert_peak_delta);
  } catch (const CLI::Error& e) {
    std::cerr << "error: code=invalid msg=" << e.what() << "\n";
    return 2;
  }
}
