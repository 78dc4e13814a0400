#include <cmath>
#include <string>
#include <vector>

#include "betadens.h"
#include "doctest.h"

namespace {
constexpr double kSqrtPi = 1.7724538509055160273;
}

TEST_CASE("c api: spec lifecycle and validation") {
  bd_spec* s = nullptr;
  REQUIRE(bd_spec_create(BD_FAMILY_HERMITE, 3, 2.0, 0.0, &s) == BD_OK);
  bd_spec_free(s);
  CHECK(bd_spec_create(BD_FAMILY_HERMITE, 0, 2.0, 0.0, &s) == BD_ERR_DOMAIN);
  CHECK(bd_spec_create(BD_FAMILY_HERMITE, 2, 2.0, 1.0, &s) == BD_ERR_DOMAIN);  // a != 0 for Hermite
  CHECK(std::string(bd_last_error()).size() > 0);
  CHECK(bd_spec_create(7, 2, 2.0, 0.0, &s) == BD_ERR_INVALID);
}

TEST_CASE("c api: scalar functions") {
  double v = 0.0, vp = 0.0;
  REQUIRE(bd_log_gamma(5.0, &v) == BD_OK);
  CHECK(v == doctest::Approx(std::log(24.0)).epsilon(1e-14));
  CHECK(bd_log_gamma(-1.0, &v) == BD_ERR_DOMAIN);
  REQUIRE(bd_airy_ai(0.0, &v, &vp) == BD_OK);
  CHECK(v == doctest::Approx(0.3550280538878172).epsilon(1e-13));
  CHECK(vp == doctest::Approx(-0.2588194037928068).epsilon(1e-13));
  REQUIRE(bd_gamma_n_beta(2, 4.0, &v) == BD_OK);
  CHECK(v == doctest::Approx(std::sqrt(2.0 * M_PI)).epsilon(1e-13));
  REQUIRE(bd_soft_edge_prefactor(2.0, &v) == BD_OK);
  CHECK(v == doctest::Approx(0.5).epsilon(1e-13));
}

TEST_CASE("c api: exact density and unipoly dump") {
  bd_spec* s = nullptr;
  REQUIRE(bd_spec_create(BD_FAMILY_HERMITE, 2, 2.0, 0.0, &s) == BD_OK);
  double xs[3] = {-1.0, 0.0, 1.0};
  double out[3];
  REQUIRE(bd_density_exact(s, xs, 3, out) == BD_OK);
  CHECK(out[1] == doctest::Approx(1.0 / kSqrtPi).epsilon(1e-12));
  CHECK(out[0] == doctest::Approx(out[2]).epsilon(1e-13));

  char* js = nullptr;
  REQUIRE(bd_unipoly_json(s, &js) == BD_OK);
  CHECK(std::string(js).find("\"1/2\"") != std::string::npos);
  bd_string_free(js);
  bd_spec_free(s);
}

TEST_CASE("c api: budget error code surfaces") {
  bd_spec* s = nullptr;
  REQUIRE(bd_spec_create(BD_FAMILY_HERMITE, 26, 2.0, 0.0, &s) == BD_OK);
  double x = 0.0, out = 0.0;
  CHECK(bd_density_exact(s, &x, 1, &out) == BD_ERR_BUDGET);
  bd_spec_free(s);
}

TEST_CASE("c api: kquad JSON round trip") {
  bd_kquad cfg;
  bd_kquad_defaults(&cfg);
  CHECK(cfg.tol_imag == doctest::Approx(1e-6));
  char* js = nullptr;
  REQUIRE(bd_kquad_to_json(&cfg, &js) == BD_OK);
  bd_kquad back;
  REQUIRE(bd_kquad_from_json(js, &back) == BD_OK);
  CHECK(back.ray_angle == cfg.ray_angle);
  CHECK(back.points == cfg.points);
  bd_string_free(js);
  REQUIRE(bd_kquad_from_json("{\"method\":\"qmc\",\"points\":5000}", &back) == BD_OK);
  CHECK(back.method == 2);
  CHECK(back.points == 5000);
  CHECK(bd_kquad_from_json("not json", &back) == BD_ERR_INVALID);
  CHECK(bd_kquad_from_json("{\"ray_angle\":0.1}", &back) == BD_ERR_INVALID);
}

TEST_CASE("c api: k integrals and edge functions") {
  double v = 0.0;
  REQUIRE(bd_k_det_beta2(2, 0.0, &v) == BD_OK);
  CHECK(v == doctest::Approx(0.1339749675593279).epsilon(1e-12));
  REQUIRE(bd_k_integral(1, 6.0, 0.0, nullptr, BD_CONTOUR_SINGLE_RAY, &v) == BD_OK);
  CHECK(v == doctest::Approx(-0.3550280538878172).epsilon(1e-8));
  CHECK(bd_k_integral(7, 2.0, 0.0, nullptr, BD_CONTOUR_SINGLE_RAY, &v) == BD_ERR_BUDGET);
  double xs[2] = {-1.0, 0.5};
  double out[2];
  REQUIRE(bd_soft_edge_density(2.0, xs, 2, nullptr, out) == BD_OK);
  CHECK(out[0] > 0.0);
  REQUIRE(bd_k_asym_right(2.0, 4.0, &v) == BD_OK);
  CHECK(v == doctest::Approx(4.637198332409214e-7).epsilon(1e-12));
  CHECK(bd_k_asym_left(2.0, -1.0, &v) == BD_ERR_DOMAIN);

  bd_spec* s = nullptr;
  REQUIRE(bd_spec_create(BD_FAMILY_HERMITE, 8, 2.0, 0.0, &s) == BD_OK);
  double xe = 0.0, jac = 0.0;
  REQUIRE(bd_edge_coordinate(s, 4.0, &xe, &jac) == BD_OK);
  CHECK(xe == doctest::Approx(0.0).epsilon(1e-13));
  bd_spec_free(s);
}

TEST_CASE("c api: sampling and eigenvalues") {
  bd_rng* rng = nullptr;
  REQUIRE(bd_rng_create(2024, &rng) == BD_OK);
  double chi = 0.0;
  REQUIRE(bd_chi_sample(rng, 2.0, &chi) == BD_OK);
  CHECK(chi > 0.0);
  CHECK(bd_chi_sample(rng, -1.0, &chi) == BD_ERR_DOMAIN);

  bd_spec* s = nullptr;
  REQUIRE(bd_spec_create(BD_FAMILY_LAGUERRE, 4, 6.0, 1.0, &s) == BD_OK);
  double diag[4], off[3];
  REQUIRE(bd_sample_laguerre_tridiag(rng, s, diag, off) == BD_OK);
  double ev[4];
  REQUIRE(bd_tridiag_eigenvalues(diag, off, 4, ev) == BD_OK);
  CHECK(ev[0] >= -1e-12);
  CHECK(ev[0] <= ev[3]);
  bd_spec_free(s);
  bd_rng_free(rng);
}

TEST_CASE("c api: mc density determinism across thread counts") {
  bd_spec* s = nullptr;
  REQUIRE(bd_spec_create(BD_FAMILY_HERMITE, 4, 2.0, 0.0, &s) == BD_OK);
  std::vector<double> grid;
  for (double x = -4.0; x <= 4.0 + 1e-12; x += 0.25) grid.push_back(x);
  std::vector<double> a(grid.size()), b(grid.size());
  REQUIRE(bd_mc_density(s, BD_SCALING_RAW, 99, 4000, 1, grid.data(), grid.size(), a.data()) == BD_OK);
  REQUIRE(bd_mc_density(s, BD_SCALING_RAW, 99, 4000, 3, grid.data(), grid.size(), b.data()) == BD_OK);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(a[i] == b[i]);
  bd_spec_free(s);
}

TEST_CASE("c api: curve serialization and metrics") {
  bd_spec* s = nullptr;
  REQUIRE(bd_spec_create(BD_FAMILY_HERMITE, 1, 2.0, 0.0, &s) == BD_OK);  // Gaussian: single peak at 0
  std::vector<double> grid{-1.0, 0.0, 1.0};
  std::vector<double> vals(3);
  REQUIRE(bd_curve_evaluate(s, BD_METHOD_EXACT, BD_SCALING_RAW, grid.data(), 3, nullptr, 0, 0, 1, 0, vals.data()) ==
          BD_OK);
  char* csv = nullptr;
  REQUIRE(bd_curve_csv(s, BD_METHOD_EXACT, BD_SCALING_RAW, 0, 0, grid.data(), vals.data(), 3, &csv) == BD_OK);
  CHECK(std::string(csv).rfind("x,density\n", 0) == 0);
  bd_string_free(csv);
  char* js = nullptr;
  REQUIRE(bd_curve_json(s, BD_METHOD_EXACT, BD_SCALING_RAW, 0, 0, grid.data(), vals.data(), 3, &js) == BD_OK);
  CHECK(std::string(js).find("\"schema\":1") != std::string::npos);
  bd_string_free(js);

  double l1 = 0.0, linf = 0.0;
  std::vector<double> zero(3, 0.0);
  REQUIRE(bd_metric_l1(grid.data(), vals.data(), zero.data(), 3, &l1) == BD_OK);
  REQUIRE(bd_metric_linf(vals.data(), zero.data(), 3, &linf) == BD_OK);
  CHECK(l1 > 0.0);
  CHECK(linf == doctest::Approx(vals[1]));

  size_t found = 0;
  double locs[4];
  REQUIRE(bd_peaks(grid.data(), vals.data(), 3, locs, 4, &found) == BD_OK);
  CHECK(found == 1);
  bd_spec_free(s);
}
