#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace bd {

enum class Family { Hermite, Laguerre };

enum class Scaling { Raw, BulkHermite, BulkLaguerre, EdgeHermite, EdgeLaguerre };

enum class Method { Exact, Bulk, Edge, MonteCarlo };

// Error taxonomy shared by the C++ core and the C API layer.
enum class ErrCode {
  Ok = 0,
  Domain = 1,      // argument outside the operation's domain
  Invalid = 2,     // malformed input / config
  Budget = 3,      // complexity guardrail tripped
  Contour = 4,     // branch/contour sentinel (imaginary residue) tripped
  Numeric = 5,     // iteration failed to converge / internal consistency
  NoMem = 6,
  Io = 7,
  Internal = 8,
};

class Error : public std::runtime_error {
public:
  Error(ErrCode code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
  ErrCode code() const noexcept { return code_; }

private:
  ErrCode code_;
};

inline void require(bool cond, ErrCode code, const std::string& msg) {
  if (!cond) throw Error(code, msg);
}

// (family, N, beta, a): the single source of truth for every density.
// beta is validated per consumer: formula modules demand a positive even
// integer, samplers accept any beta > 0.
struct EnsembleSpec {
  Family family = Family::Hermite;
  int n = 1;          // matrix size N
  double beta = 2.0;  // Dyson index
  double a = 0.0;     // Laguerre parameter; must be 0 for Hermite

  EnsembleSpec() = default;
  EnsembleSpec(Family f, int n_, double beta_, double a_ = 0.0) : family(f), n(n_), beta(beta_), a(a_) {
    require(n >= 1, ErrCode::Domain, "EnsembleSpec: N must be >= 1");
    require(beta > 0.0, ErrCode::Domain, "EnsembleSpec: beta must be > 0");
    require(a >= 0.0, ErrCode::Domain, "EnsembleSpec: a must be >= 0");
    require(!(family == Family::Hermite && a != 0.0), ErrCode::Domain,
            "EnsembleSpec: a must be 0 for the Hermite family");
  }

  // Jack parameter alpha = 2/beta.
  double jack_alpha() const { return 2.0 / beta; }
  // Laguerre degrees of freedom P = a + N - 1 + 2/beta.
  double dof_p() const { return a + n - 1 + 2.0 / beta; }

  bool beta_is_even_integer() const {
    double r = beta / 2.0;
    return r > 0.0 && r == static_cast<double>(static_cast<long>(r));
  }
  int beta_int() const { return static_cast<int>(beta); }

  void require_formula_beta() const {
    require(beta_is_even_integer() && beta >= 2.0, ErrCode::Domain,
            "this operation requires beta to be a positive even integer");
  }
};

struct DensityCurve {
  std::vector<double> grid;    // strictly increasing
  std::vector<double> values;  // same length as grid
  Scaling scaling = Scaling::Raw;
  Method method = Method::Exact;
  EnsembleSpec spec;
  std::uint64_t seed = 0;  // Monte Carlo only
  long samples = 0;        // Monte Carlo only

  void validate() const {
    require(grid.size() == values.size(), ErrCode::Invalid, "DensityCurve: grid/value size mismatch");
    for (std::size_t i = 1; i < grid.size(); ++i)
      require(grid[i] > grid[i - 1], ErrCode::Invalid, "DensityCurve: grid must be strictly increasing");
  }
};

}  // namespace bd
