#pragma once

#include <vector>

#include "specrad/coercivity.hpp"
#include "specrad/exponent_sum.hpp"
#include "specrad/numeric.hpp"

namespace specrad {

// Center plus positive-definite shape matrix P: {z : (z-c)^T P^-1 (z-c) <= 1}.
struct Ellipsoid {
  std::vector<Real> center;
  std::vector<std::vector<Real>> shape;
};

enum class SepKind { NearFeasible, Halfspace };

struct SeparationResult {
  SepKind kind = SepKind::NearFeasible;
  // Halfspace normal c (||c||_2 >= 1): phi_c(w) <= phi_c(z) + eps on K(f).
  std::vector<Rational> normal;
};

// Weak separation oracle for K(f) = {(x,t) : f(x) <= t, ||x||_inf <= R,
// t <= t_max}, following the three-way case split on (||y||_inf, s, f(y)).
SeparationResult weak_separation(const IntegerizedProblem& f,
                                 const BoundBundle& bundle,
                                 const std::vector<Rational>& z,
                                 const Rational& eps);

struct MinimizeResult {
  Rational t_star;
  std::vector<Rational> x_star;
  long iterations = 0;
  // log det(shape) after each accepted update (volume-decay diagnostic).
  std::vector<Real> log_det_trace;
};

// Central-cut ellipsoid minimization of the altitude over K(f);
// |t_star - f_min| <= eps, f(x_star) <= t_star + 2 eps.
MinimizeResult minimize_altitude(const IntegerizedProblem& f,
                                 const BoundBundle& bundle,
                                 const Rational& eps);

}  // namespace specrad
