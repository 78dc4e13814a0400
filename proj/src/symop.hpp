#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "common.hpp"

namespace bd::symop {

using Rational = mpq_class;

constexpr int kMaxVars = 16;
// Largest total degree the symbolic stage accepts: beta*(N-1) <= 48.
constexpr int kDegreeBudget = 48;

// Exponent vector packed into 16 bytes; hashable, cheap to permute.
struct ExpKey {
  std::array<std::uint8_t, kMaxVars> e{};
  bool operator==(const ExpKey& o) const { return e == o.e; }
};

struct ExpKeyHash {
  std::size_t operator()(const ExpKey& k) const {
    std::uint64_t a, b;
    __builtin_memcpy(&a, k.e.data(), 8);
    __builtin_memcpy(&b, k.e.data() + 8, 8);
    std::uint64_t h = a * 0x9e3779b97f4a7c15ULL;
    h ^= b + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xbf58476d1ce4e5b9ULL;
    return static_cast<std::size_t>(h ^ (h >> 29));
  }
};

// Sparse multivariate polynomial with exact rational coefficients.
class MultiPoly {
public:
  using TermMap = std::unordered_map<ExpKey, Rational, ExpKeyHash>;

  explicit MultiPoly(int nvars);

  int nvars() const { return nvars_; }
  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  void add_term(const ExpKey& key, const Rational& c);
  void add_scaled(const MultiPoly& other, const Rational& c);
  bool operator==(const MultiPoly& o) const;

  int total_degree() const;  // -1 for the zero polynomial
  Rational coefficient_sum() const;

  // True iff invariant under every adjacent-variable transposition.
  bool is_symmetric() const;

  // x_1^n ... x_k^n in `nvars` variables (k = nvars).
  static MultiPoly rectangular_monomial(int nvars, int n);
  // Monomial symmetric polynomial m_lambda (sum over distinct permutations).
  static MultiPoly monomial_symmetric(int nvars, std::vector<int> lambda);

private:
  int nvars_;
  TermMap terms_;
};

// E_k = sum_i x_i^k d/dx_i.
MultiPoly apply_Ek(const MultiPoly& p, int k);

// D_k^{(alpha)} = sum_i x_i^k d^2/dx_i^2
//              + (2/alpha) sum_{i<j} (x_i - x_j)^{-1} (x_i^k d_i - x_j^k d_j).
// Requires p symmetric; the pairwise numerators divide exactly by (x_i - x_j).
MultiPoly apply_Dk(const MultiPoly& p, int k, const Rational& alpha);

// Univariate specialization at x_1 = ... = x_n = x; exact coefficients,
// dense by ascending degree, trailing zeros trimmed.
class UniPoly {
public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs);

  static UniPoly from_equal_args(const MultiPoly& p);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return coeffs_; }
  const std::vector<double>& coeffs_double() const { return cd_; }

  // Evaluation with compensated Horner on the double image of the coefficients.
  double evaluate(double x) const;

  std::string to_json() const;  // {"degree":d,"coeffs":["p/q",...]}

private:
  void trim();
  std::vector<Rational> coeffs_;
  std::vector<double> cd_;
};

// The operator-exponential series applied to the rectangular monomial,
// specialized at equal arguments. Memoized per spec.
std::shared_ptr<const UniPoly> rectangular_unipoly(const EnsembleSpec& spec);

// Multivariate Hermite series (kept multivariate; test support for the
// eigenoperator relation).
MultiPoly hermite_series_multipoly(int n, int beta);

double exact_hermite_density(const EnsembleSpec& spec, double x);
double exact_laguerre_density(const EnsembleSpec& spec, double x);

std::string unipoly_json(const EnsembleSpec& spec);

}  // namespace bd::symop
