#pragma once

#include <vector>

#include "specrad/exponent_sum.hpp"
#include "specrad/numeric.hpp"

namespace specrad {

// Nonnegative (quasi-)homogeneous map F: R^{n+1} -> R^{n+1}; coordinate i is
// a sum of monomials z^a with ||a||_1 = d-1 and positive coefficients.
struct MonomialMap {
  int n_plus_1 = 0;
  Rational degree_minus_1;  // d - 1, positive rational
  struct Monomial {
    std::vector<Rational> exponent;  // length n+1, nonnegative, ||.||_1 = d-1
    Rational coeff;                  // > 0
  };
  std::vector<std::vector<Monomial>> coords;  // per coordinate, non-empty
  bool quasi = false;                         // any non-integral exponent

  MonomialMap(int np1, Rational dm1, std::vector<std::vector<Monomial>> c);
};

// Nonnegative d-form as a monomial list; ||a||_1 = d, coefficients > 0.
struct NonnegForm {
  int n_plus_1 = 0;
  Rational degree;  // d >= 2 (rational in the quasi case)
  struct Monomial {
    std::vector<Rational> exponent;
    Rational coeff;
  };
  std::vector<Monomial> monomials;

  NonnegForm(int np1, Rational d, std::vector<Monomial> ms);
};

struct UniformHypergraph {
  int n_plus_1 = 0;
  int d = 0;  // uniformity
  struct Edge {
    std::vector<int> vertices;  // d distinct vertices in [0, n+1)
    Rational weight;            // > 0
  };
  std::vector<Edge> edges;

  UniformHypergraph(int np1, int uniformity, std::vector<Edge> es);
};

struct SpectralResult {
  Real rho;
  std::vector<Real> eigvec;  // positive, ||u||_d = 1 by default
  Rational eps;              // requested relative tolerance
  Real cw_lower;             // Collatz-Wielandt bracket at eigvec
  Real cw_upper;
  Rational rho_lower;        // certified rational bracket of rho
  Rational rho_upper;
  long iterations = 0;
  bool quasi = false;
  std::vector<int> dropped_vars;  // variables absent from every monomial
};

// Digraph with edge i->j iff dF_i/dz_j > 0 on the positive orthant.
std::vector<std::vector<int>> dependency_digraph(const MonomialMap& F);
bool is_weakly_irreducible(const MonomialMap& F);

// log rho(F) = f_min of this instance (restriction x_{n+1} = 0).
MaxLogSumExp reduce_to_f(const MonomialMap& F);

SpectralResult spectral_radius(const MonomialMap& F, const Rational& eps);

// F = (1/d) grad g.
MonomialMap grad_map(const NonnegForm& g);

// Split g by the variable-interaction graph; mu_d(g) = max over components.
std::vector<NonnegForm> connected_components(const NonnegForm& g);

SpectralResult mu_d(const NonnegForm& g, const Rational& eps);

// mu_p(g) for p >= d+1 via the quasi-homogeneous lift and alpha_{d,p}.
Real mu_p_lifted(const NonnegForm& g, const Rational& p, const Rational& eps);

// alpha_{d,p} = max_{t in [0,1]} t^{p-d} (1 - t^p)^{d/p}.
Real alpha_dp(const Rational& d, const Rational& p);

SpectralResult hypergraph_rho(const UniformHypergraph& H, const Rational& eps);

// Largest omega with prod_{i=1}^{d-1}(omega - i) <= rho + eps; upper bound
// on the clique number of a 0/1 hypergraph.
long clique_upper_bound(const UniformHypergraph& H, const Rational& eps);

struct CWBounds {
  Real lower;
  Real upper;
};
CWBounds cw_bounds(const MonomialMap& F, const std::vector<Real>& z);

// F_i evaluated at a positive point (handles rational exponents).
Real eval_map_coord(const MonomialMap& F, int i, const std::vector<Real>& z);

}  // namespace specrad
