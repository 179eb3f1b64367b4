#pragma once

#include <vector>

#include "specrad/exponent_sum.hpp"
#include "specrad/numeric.hpp"

namespace specrad {

// nu = min_{||x||_inf = 1} max_a a^T x over the union of all exponent sets;
// positive exactly when f is coercive. Computed by 2n exact LPs.
Rational compute_nu(const IntegerizedProblem& f);

struct CoercivityCheck {
  bool coercive = false;
  Rational nu;
  // When not coercive: a nonzero x0 with a^T x0 <= 0 for every exponent.
  std::vector<Rational> witness;
};
CoercivityCheck is_coercive(const IntegerizedProblem& f);

// 1/omega with omega = prod_{i<=n} sqrt(||b_i||^2 + 1) over the n
// largest-norm distinct exponents; certified rational lower bound on nu.
Rational hadamard_nu_bound(const IntegerizedProblem& f);

// Constants framing the ellipsoid run over K(f).
struct BoundBundle {
  bool trivial = false;       // f(0) == t_min: f_min = log(trivial_log_arg)
  Rational trivial_log_arg;   // max_j sum of branch-j weights
  Rational nu;                // exact LP value
  Rational nu_hadamard;       // certified lower bound on nu
  Rational t_min;             // rational lower bracket of min log-weight
  Rational f0_upper;          // rational upper bracket of f(0)
  Rational a_f;               // max ell_1 norm of the exponents
  Rational R;                 // box radius, integer by construction
  Rational t_max;
  Rational t_bar;
  Rational R2;                // outer Euclidean radius
};

// Throws CoercivityError (with witness) for non-coercive input.
BoundBundle bound_bundle(const IntegerizedProblem& f);

}  // namespace specrad
