#include "symop.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <sstream>

#include "specfun.hpp"

namespace bd::symop {

namespace {
const Rational kZero(0);
}

MultiPoly::MultiPoly(int nvars) : nvars_(nvars) {
  require(nvars >= 1 && nvars <= kMaxVars, ErrCode::Invalid, "MultiPoly: nvars out of range");
}

void MultiPoly::add_term(const ExpKey& key, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(key, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MultiPoly::add_scaled(const MultiPoly& other, const Rational& c) {
  require(nvars_ == other.nvars_, ErrCode::Invalid, "MultiPoly: nvars mismatch");
  if (c == 0) return;
  for (const auto& [k, v] : other.terms_) add_term(k, v * c);
}

bool MultiPoly::operator==(const MultiPoly& o) const { return nvars_ == o.nvars_ && terms_ == o.terms_; }

int MultiPoly::total_degree() const {
  int deg = -1;
  for (const auto& [k, v] : terms_) {
    int d = 0;
    for (int i = 0; i < nvars_; ++i) d += k.e[i];
    deg = std::max(deg, d);
  }
  return deg;
}

Rational MultiPoly::coefficient_sum() const {
  Rational s = 0;
  for (const auto& [k, v] : terms_) s += v;
  return s;
}

bool MultiPoly::is_symmetric() const {
  for (int i = 0; i + 1 < nvars_; ++i) {
    for (const auto& [k, v] : terms_) {
      if (k.e[i] == k.e[i + 1]) continue;
      ExpKey sw = k;
      std::swap(sw.e[i], sw.e[i + 1]);
      auto it = terms_.find(sw);
      if (it == terms_.end() || it->second != v) return false;
    }
  }
  return true;
}

MultiPoly MultiPoly::rectangular_monomial(int nvars, int n) {
  require(n >= 0 && n <= 255, ErrCode::Invalid, "rectangular_monomial: exponent out of range");
  MultiPoly p(nvars);
  ExpKey k;
  for (int i = 0; i < nvars; ++i) k.e[i] = static_cast<std::uint8_t>(n);
  p.add_term(k, Rational(1));
  return p;
}

MultiPoly MultiPoly::monomial_symmetric(int nvars, std::vector<int> lambda) {
  require(static_cast<int>(lambda.size()) <= nvars, ErrCode::Invalid, "monomial_symmetric: too many parts");
  lambda.resize(nvars, 0);
  std::sort(lambda.begin(), lambda.end());
  MultiPoly p(nvars);
  do {
    ExpKey k;
    for (int i = 0; i < nvars; ++i) k.e[i] = static_cast<std::uint8_t>(lambda[i]);
    p.add_term(k, Rational(1));
  } while (std::next_permutation(lambda.begin(), lambda.end()));
  return p;
}

MultiPoly apply_Ek(const MultiPoly& p, int k) {
  require(k >= 0, ErrCode::Domain, "apply_Ek: k must be >= 0");
  MultiPoly out(p.nvars());
  for (const auto& [key, c] : p.terms()) {
    for (int i = 0; i < p.nvars(); ++i) {
      int ei = key.e[i];
      if (ei == 0) continue;
      ExpKey nk = key;
      nk.e[i] = static_cast<std::uint8_t>(ei - 1 + k);
      out.add_term(nk, c * ei);
    }
  }
  return out;
}

namespace {

// Quotient of q by (x_i - x_j); throws on a nonzero remainder.
MultiPoly divide_exact(const MultiPoly& q, int vi, int vj) {
  MultiPoly quotient(q.nvars());
  if (q.empty()) return quotient;

  int maxdeg = 0;
  for (const auto& [k, c] : q.terms()) maxdeg = std::max(maxdeg, static_cast<int>(k.e[vi]));
  std::vector<std::vector<std::pair<ExpKey, const Rational*>>> buckets(maxdeg + 1);
  for (const auto& [k, c] : q.terms()) buckets[k.e[vi]].push_back({k, &c});

  // r_{m-1} = c_m + x_j * r_m, processed top degree down.
  MultiPoly::TermMap carry;
  for (int m = maxdeg; m >= 1; --m) {
    MultiPoly::TermMap next;
    for (const auto& [k, cp] : buckets[m]) {
      ExpKey nk = k;
      nk.e[vi] = static_cast<std::uint8_t>(m - 1);
      auto [it, ins] = next.try_emplace(nk, *cp);
      if (!ins) it->second += *cp;
    }
    for (const auto& [k, c] : carry) {
      ExpKey nk = k;
      nk.e[vi] = static_cast<std::uint8_t>(m - 1);
      nk.e[vj] = static_cast<std::uint8_t>(nk.e[vj] + 1);
      auto [it, ins] = next.try_emplace(nk, c);
      if (!ins) it->second += c;
    }
    for (auto it = next.begin(); it != next.end();) {
      if (it->second == 0)
        it = next.erase(it);
      else
        ++it;
    }
    for (const auto& [k, c] : next) quotient.add_term(k, c);
    carry = std::move(next);
  }

  // remainder = c_0 + x_j * r_0 must vanish identically
  MultiPoly::TermMap rem;
  for (const auto& [k, cp] : buckets[0]) {
    auto [it, ins] = rem.try_emplace(k, *cp);
    if (!ins) it->second += *cp;
  }
  for (const auto& [k, c] : carry) {
    ExpKey nk = k;
    nk.e[vj] = static_cast<std::uint8_t>(nk.e[vj] + 1);
    auto [it, ins] = rem.try_emplace(nk, c);
    if (!ins) it->second += c;
  }
  for (const auto& [k, c] : rem)
    require(c == 0, ErrCode::Numeric, "apply_Dk: nonzero remainder in exact pairwise division");
  return quotient;
}

}  // namespace

MultiPoly apply_Dk(const MultiPoly& p, int k, const Rational& alpha) {
  require(k >= 0, ErrCode::Domain, "apply_Dk: k must be >= 0");
  require(alpha > 0, ErrCode::Domain, "apply_Dk: alpha must be > 0");
  require(p.is_symmetric(), ErrCode::Domain, "apply_Dk: input polynomial violates the symmetry precondition");
  const int nv = p.nvars();
  MultiPoly out(nv);

  // sum_i x_i^k d_i^2
  for (const auto& [key, c] : p.terms()) {
    for (int i = 0; i < nv; ++i) {
      int ei = key.e[i];
      long f = static_cast<long>(ei) * (ei - 1);
      if (f == 0) continue;
      ExpKey nk = key;
      nk.e[i] = static_cast<std::uint8_t>(ei - 2 + k);
      out.add_term(nk, c * f);
    }
  }
  if (nv == 1) return out;

  // Pairwise part. p is symmetric, so the (i,j) quotient is the permutation
  // image of the (0,1) quotient; divide once and remap per pair.
  MultiPoly q(nv);
  for (const auto& [key, c] : p.terms()) {
    if (key.e[0] > 0) {
      ExpKey nk = key;
      nk.e[0] = static_cast<std::uint8_t>(key.e[0] - 1 + k);
      q.add_term(nk, c * key.e[0]);
    }
    if (key.e[1] > 0) {
      ExpKey nk = key;
      nk.e[1] = static_cast<std::uint8_t>(key.e[1] - 1 + k);
      q.add_term(nk, -c * key.e[1]);
    }
  }
  MultiPoly r01 = divide_exact(q, 0, 1);
  {
    Rational two_over_alpha = Rational(2) / alpha;
    MultiPoly scaled(nv);
    scaled.add_scaled(r01, two_over_alpha);
    r01 = std::move(scaled);
  }

  for (int i = 0; i < nv; ++i) {
    for (int j = i + 1; j < nv; ++j) {
      // permutation image: slot 0 -> i, slot 1 -> j, remaining slots in order
      std::array<int, kMaxVars> perm{};
      perm[0] = i;
      perm[1] = j;
      int next = 2;
      for (int v = 0; v < nv; ++v)
        if (v != i && v != j) perm[next++] = v;
      for (const auto& [key, c] : r01.terms()) {
        ExpKey nk{};
        for (int v = 0; v < nv; ++v) nk.e[perm[v]] = key.e[v];
        out.add_term(nk, c);
      }
    }
  }
  return out;
}

UniPoly::UniPoly(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void UniPoly::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  cd_.resize(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) cd_[i] = coeffs_[i].get_d();
}

UniPoly UniPoly::from_equal_args(const MultiPoly& p) {
  std::vector<Rational> c;
  for (const auto& [k, v] : p.terms()) {
    int d = 0;
    for (int i = 0; i < p.nvars(); ++i) d += k.e[i];
    if (d >= static_cast<int>(c.size())) c.resize(d + 1, Rational(0));
    c[d] += v;
  }
  return UniPoly(std::move(c));
}

double UniPoly::evaluate(double x) const {
  if (cd_.empty()) return 0.0;
  // compensated Horner: error-free transformations of each step
  double s = cd_.back();
  double comp = 0.0;
  for (int i = static_cast<int>(cd_.size()) - 2; i >= 0; --i) {
    double p = s * x;
    double pe = std::fma(s, x, -p);
    double t = p + cd_[i];
    double z = t - p;
    double te = (p - (t - z)) + (cd_[i] - z);
    s = t;
    comp = comp * x + (pe + te);
  }
  return s + comp;
}

std::string UniPoly::to_json() const {
  std::ostringstream os;
  os << "{\"degree\":" << degree() << ",\"coeffs\":[";
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i) os << ",";
    os << '"' << coeffs_[i].get_num().get_str() << '/' << coeffs_[i].get_den().get_str() << '"';
  }
  os << "]}";
  return os.str();
}

namespace {

void check_budget(const EnsembleSpec& spec) {
  spec.require_formula_beta();
  long total = static_cast<long>(spec.beta) * (spec.n - 1);
  require(total <= kDegreeBudget, ErrCode::Budget,
          "symbolic stage refused: beta*(N-1) = " + std::to_string(total) + " exceeds budget " +
              std::to_string(kDegreeBudget));
}

UniPoly build_hermite_unipoly(int n, int beta) {
  Rational alpha(beta, 2);
  alpha.canonicalize();
  MultiPoly p = MultiPoly::rectangular_monomial(beta, n - 1);
  const int top = beta * (n - 1);
  std::vector<Rational> coeffs(top + 1, Rational(0));
  Rational fac(1);
  for (int m = 0; m <= beta * (n - 1) / 2; ++m) {
    if (m > 0) {
      p = apply_Dk(p, 0, alpha);
      fac *= Rational(-1, 4 * m);
    }
    if (p.empty()) break;
    coeffs[top - 2 * m] = fac * p.coefficient_sum();
  }
  return UniPoly(std::move(coeffs));
}

UniPoly build_laguerre_unipoly(int n, int beta, const Rational& a) {
  Rational alpha(beta, 2);
  alpha.canonicalize();
  // series operator D_1^{(beta/2)} + (a + 2/beta) E_0; the E_0 coefficient
  // is pinned by the N=2 normalization checks
  Rational two_over_beta(2, beta);
  two_over_beta.canonicalize();
  const Rational e0_coeff = a + two_over_beta;
  MultiPoly p = MultiPoly::rectangular_monomial(beta, n - 1);
  const int top = beta * (n - 1);
  std::vector<Rational> coeffs(top + 1, Rational(0));
  Rational fac(1);
  for (int m = 0; m <= top; ++m) {
    if (m > 0) {
      MultiPoly d1 = apply_Dk(p, 1, alpha);
      MultiPoly e0 = apply_Ek(p, 0);
      d1.add_scaled(e0, e0_coeff);
      p = std::move(d1);
      fac *= Rational(-1, m);
    }
    if (p.empty()) break;
    coeffs[top - m] = fac * p.coefficient_sum();
  }
  return UniPoly(std::move(coeffs));
}

struct MemoKey {
  int family;
  int n;
  int beta;
  std::string a;  // canonical rational string
  bool operator<(const MemoKey& o) const {
    return std::tie(family, n, beta, a) < std::tie(o.family, o.n, o.beta, o.a);
  }
};

std::mutex g_memo_mu;
std::map<MemoKey, std::shared_ptr<const UniPoly>> g_memo;

}  // namespace

std::shared_ptr<const UniPoly> rectangular_unipoly(const EnsembleSpec& spec) {
  check_budget(spec);
  Rational a(spec.a);  // binary doubles are exact rationals
  a.canonicalize();
  MemoKey key{spec.family == Family::Hermite ? 0 : 1, spec.n, spec.beta_int(), a.get_str()};
  {
    std::lock_guard lk(g_memo_mu);
    auto it = g_memo.find(key);
    if (it != g_memo.end()) return it->second;
  }
  auto result = std::make_shared<UniPoly>(spec.family == Family::Hermite
                                              ? build_hermite_unipoly(spec.n, spec.beta_int())
                                              : build_laguerre_unipoly(spec.n, spec.beta_int(), a));
  std::lock_guard lk(g_memo_mu);
  auto [it, ins] = g_memo.emplace(key, std::move(result));
  return it->second;
}

MultiPoly hermite_series_multipoly(int n, int beta) {
  Rational alpha(beta, 2);
  alpha.canonicalize();
  MultiPoly p = MultiPoly::rectangular_monomial(beta, n - 1);
  MultiPoly series = p;
  Rational fac(1);
  for (int m = 1; m <= beta * (n - 1) / 2; ++m) {
    p = apply_Dk(p, 0, alpha);
    fac *= Rational(-1, 4 * m);
    series.add_scaled(p, fac);
    if (p.empty()) break;
  }
  return series;
}

double exact_hermite_density(const EnsembleSpec& spec, double x) {
  require(spec.family == Family::Hermite, ErrCode::Domain, "exact_hermite_density: Hermite spec required");
  auto poly = rectangular_unipoly(spec);
  double logpre = std::log(static_cast<double>(spec.n)) +
                  std::log(specfun::hermite_norm_ratio(spec.n, spec.beta)) - spec.beta * x * x / 2.0;
  return std::exp(logpre) * poly->evaluate(x);
}

double exact_laguerre_density(const EnsembleSpec& spec, double x) {
  require(spec.family == Family::Laguerre, ErrCode::Domain, "exact_laguerre_density: Laguerre spec required");
  require(x > 0.0, ErrCode::Domain, "exact_laguerre_density: x must be > 0");
  auto poly = rectangular_unipoly(spec);
  double logpre = std::log(static_cast<double>(spec.n)) + std::log(specfun::laguerre_norm_ratio(spec)) +
                  (spec.a * spec.beta / 2.0) * std::log(x) - spec.beta * x / 2.0;
  return std::exp(logpre) * poly->evaluate(x);
}

std::string unipoly_json(const EnsembleSpec& spec) {
  auto poly = rectangular_unipoly(spec);
  std::ostringstream os;
  os << "{\"family\":\"" << (spec.family == Family::Hermite ? "hermite" : "laguerre") << "\",\"n\":" << spec.n
     << ",\"beta\":" << spec.beta_int() << ",\"a\":" << spec.a << ",\"unipoly\":" << poly->to_json() << "}";
  return os.str();
}

}  // namespace bd::symop
