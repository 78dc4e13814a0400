#include <cmath>

#include "bulk.hpp"
#include "curves.hpp"
#include "doctest.h"
#include "symop.hpp"

using namespace bd;
using namespace bd::curves;

TEST_CASE("make_grid") {
  auto g = make_grid(-1.0, 1.0, 0.5);
  REQUIRE(g.size() == 5);
  CHECK(g.front() == -1.0);
  CHECK(g.back() == 1.0);
  CHECK_THROWS_AS(make_grid(1.0, -1.0, 0.5), Error);
}

TEST_CASE("exact curve in bulk scaling matches the raw density transform") {
  EnsembleSpec s{Family::Hermite, 3, 2.0, 0.0};
  auto grid = make_grid(-0.9, 0.9, 0.1);
  auto c = evaluate(s, Method::Exact, Scaling::BulkHermite, grid, {}, 0, 0, 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double u = grid[i];
    double want = std::sqrt(2.0 / 3.0) * symop::exact_hermite_density(s, std::sqrt(6.0) * u);
    CHECK(c.values[i] == doctest::Approx(want).epsilon(1e-13));
  }
}

TEST_CASE("edge curves are family-universal on the sigma scale") {
  auto grid = make_grid(-4.0, 1.0, 0.25);
  EnsembleSpec h{Family::Hermite, 9, 2.0, 0.0};
  EnsembleSpec l{Family::Laguerre, 5, 2.0, 1.0};
  auto ch = evaluate(h, Method::Edge, Scaling::EdgeHermite, grid, {}, 0, 0, 1);
  auto cl = evaluate(l, Method::Edge, Scaling::EdgeLaguerre, grid, {}, 0, 0, 1);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(ch.values[i] == cl.values[i]);  // bitwise identical
}

TEST_CASE("monte carlo curve through the generic evaluator") {
  EnsembleSpec s{Family::Hermite, 2, 2.0, 0.0};
  auto grid = make_grid(-3.0, 3.0, 0.25);
  auto c = evaluate(s, Method::MonteCarlo, Scaling::Raw, grid, {}, 123, 20000, 0);
  double mass = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) mass += c.values[i] * 0.25;
  CHECK(mass == doctest::Approx(2.0).epsilon(0.02));  // curve carries mass N
}

TEST_CASE("metrics") {
  std::vector<double> g{0.0, 1.0, 2.0};
  std::vector<double> a{0.0, 1.0, 0.0};
  std::vector<double> b{0.0, 0.0, 0.0};
  CHECK(metric_l1(g, a, b) == doctest::Approx(1.0));
  CHECK(metric_linf(a, b) == doctest::Approx(1.0));
}

TEST_CASE("peak detection with parabolic refinement") {
  auto grid = make_grid(-2.0, 2.0, 0.01);
  std::vector<double> v(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    v[i] = std::exp(-8.0 * (grid[i] - 0.503) * (grid[i] - 0.503)) +
           0.5 * std::exp(-8.0 * (grid[i] + 1.197) * (grid[i] + 1.197));
  auto peaks = peak_locations(grid, v);
  REQUIRE(peaks.size() == 2);
  CHECK(std::abs(peaks[0] + 1.197) <= 2e-3);
  CHECK(std::abs(peaks[1] - 0.503) <= 2e-3);
  auto deltas = peak_deltas({-1.197, 0.503}, peaks);
  for (double d : deltas) CHECK(d <= 2e-3);
}

TEST_CASE("CSV format: header, LF endings, 12 significant digits") {
  DensityCurve c;
  c.spec = EnsembleSpec{Family::Hermite, 2, 2.0, 0.0};
  c.grid = {0.0, 0.123456789012345};
  c.values = {1.0 / 3.0, 2.0e-7};
  std::string csv = to_csv(c);
  CHECK(csv == "x,density\n0,0.333333333333\n0.123456789012,2e-07\n");
}

TEST_CASE("JSON and CSV encodings agree to the printed precision") {
  EnsembleSpec s{Family::Hermite, 3, 2.0, 0.0};
  auto grid = make_grid(-1.0, 1.0, 0.5);
  auto c = evaluate(s, Method::Exact, Scaling::BulkHermite, grid, {}, 0, 0, 1);
  std::string csv = to_csv(c);
  std::string json = to_json(c);
  // parse both back and compare the value fields
  std::vector<double> from_csv;
  std::size_t pos = csv.find('\n') + 1;
  while (pos < csv.size()) {
    std::size_t comma = csv.find(',', pos);
    std::size_t eol = csv.find('\n', comma);
    from_csv.push_back(std::stod(csv.substr(comma + 1, eol - comma - 1)));
    pos = eol + 1;
  }
  std::vector<double> from_json;
  std::size_t vs = json.find("\"values\":[") + 10;
  std::size_t ve = json.find(']', vs);
  std::string body = json.substr(vs, ve - vs);
  std::size_t p = 0;
  while (p < body.size()) {
    std::size_t q = body.find(',', p);
    if (q == std::string::npos) q = body.size();
    from_json.push_back(std::stod(body.substr(p, q - p)));
    p = q + 1;
  }
  REQUIRE(from_csv.size() == from_json.size());
  for (std::size_t i = 0; i < from_csv.size(); ++i)
    CHECK(from_csv[i] == from_json[i]);  // both carry %.12g, so bitwise equal after parsing
  CHECK(json.find("\"schema\":1") != std::string::npos);
}

TEST_CASE("name round trips") {
  for (auto m : {Method::Exact, Method::Bulk, Method::Edge, Method::MonteCarlo})
    CHECK(method_from_name(method_name(m)) == m);
  for (auto s : {Scaling::Raw, Scaling::BulkHermite, Scaling::BulkLaguerre, Scaling::EdgeHermite,
                 Scaling::EdgeLaguerre})
    CHECK(scaling_from_name(scaling_name(s)) == s);
  CHECK_THROWS_AS(method_from_name("nope"), Error);
}

TEST_CASE("default scalings") {
  EnsembleSpec h{Family::Hermite, 4, 2.0, 0.0};
  EnsembleSpec l{Family::Laguerre, 4, 2.0, 0.0};
  CHECK(default_scaling(h, Method::Bulk) == Scaling::BulkHermite);
  CHECK(default_scaling(l, Method::Bulk) == Scaling::BulkLaguerre);
  CHECK(default_scaling(h, Method::Edge) == Scaling::EdgeHermite);
  CHECK(default_scaling(l, Method::Edge) == Scaling::EdgeLaguerre);
  CHECK(default_scaling(h, Method::Exact) == Scaling::Raw);
}
