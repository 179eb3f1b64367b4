#pragma once

#include <vector>

#include "specrad/exponent_sum.hpp"
#include "specrad/numeric.hpp"
#include "specrad/tensor.hpp"

namespace specrad {

// Brute-force minimization of f = max of log-Laplace branches over a box
// [-box, box]^n on a uniform grid, in double precision.  Intended for
// cross-checking the ellipsoid solver on n <= 3.
struct GridMinResult {
  double value = 0;
  std::vector<double> argmin;
};
GridMinResult grid_minimize_f(const MaxLogSumExp& f, double box,
                              int points_per_axis);

// Brute-force maximization of a nonnegative form over the unit d-sphere
// (z >= 0, ||z||_d = 1), with a projected-gradient polish from the best
// grid point.  Intended for n+1 <= 3.
struct GridMaxResult {
  double value = 0;
  std::vector<double> argmax;
};
GridMaxResult grid_maximize_form(const NonnegForm& g, int points_per_axis);

// Shifted power iteration on a nonnegative matrix map (degree-minus-one 1).
// Uses Collatz-Wielandt ratios of the shifted map as the stopping rule and
// returns rho with a matching eigenvector.  Throws ReducibilityError when
// the dependency digraph is not strongly connected.
struct PowerResult {
  Real rho;
  std::vector<Real> eigvec;
  int iterations = 0;
};
PowerResult power_iteration_matrix(const MonomialMap& F, const Real& tol,
                                   int max_iterations = 100000);

// Shifted tensor power iteration (NQZ-style) for d >= 2: iterates
// z <- normalize((F(z) + z^{d-1})^{1/(d-1)}).  Converges for weakly
// irreducible maps; returns rho and a positive eigenvector.
PowerResult power_iteration_tensor(const MonomialMap& F, const Real& tol,
                                   int max_iterations = 100000);

// Occupation measure on index tuples (i_1,...,i_d), stored densely as a
// (n+1)^d vector in row-major order.
struct OccupationMeasure {
  int n_plus_1 = 0;
  int degree = 0;  // d
  std::vector<Real> mu;

  OccupationMeasure(int n_plus_1_, int degree_);
  size_t flat_index(const std::vector<int>& tuple) const;

  Real total_mass() const;
  // max_i | sum over tuples with i_1 = i  -  sum over tuples with i_2 = i |
  Real balance_defect() const;
  bool is_valid(const Real& tol) const;
};

// Occupation measure of the eigenpair (rho, u) of a homogeneous map F,
// following the matrix construction A = diag(u)^{-(d-2)} DF(u) with left
// Perron vector w normalized by w^T u = 1.  Requires a classical map
// (non-quasi) with strictly positive u.
OccupationMeasure occupation_from_eigenpair(const MonomialMap& F,
                                            const Real& rho,
                                            const std::vector<Real>& u);

// Entropic functional  sum_t mu_t log(f_t / mu-head-conditional), whose
// value at the eigenpair measure equals log rho.  Conventions: terms with
// mu_t = 0 contribute 0.
Real entropic_value(const MonomialMap& F, const OccupationMeasure& mu);

}  // namespace specrad
