#pragma once

#include <vector>

#include "specrad/numeric.hpp"

namespace specrad {

// One log-Laplace branch: f_A(x) = log sum_a w_a exp(a^T x) with w_a > 0.
// Duplicate exponents are merged at construction by adding their weights.
struct PosExponentSum {
  int n = 0;
  std::vector<std::vector<Rational>> exponents;
  std::vector<Rational> weights;

  PosExponentSum(int dim, std::vector<std::vector<Rational>> exps,
                 std::vector<Rational> wts);
};

Real eval_branch(const PosExponentSum& b, const std::vector<Real>& x);
std::vector<Real> grad_branch(const PosExponentSum& b, const std::vector<Real>& x);

// Value and gradient from one softmax pass.
struct BranchEval {
  Real value;
  std::vector<Real> grad;
};
BranchEval eval_branch_with_grad(const PosExponentSum& b, const std::vector<Real>& x);

// f(x) = max_j f_{A_j}(x) plus cached normalization metadata.
struct MaxLogSumExp {
  int n = 0;
  std::vector<PosExponentSum> branches;
  Rational t_min;  // rational lower bracket of min_j,a log w_a
  Rational a_max;  // exact max ell_1 norm over all exponents

  explicit MaxLogSumExp(std::vector<PosExponentSum> brs);
};

struct FValue {
  Real value;
  std::vector<int> active;  // branches within tau_active of the max
};
FValue eval_f(const MaxLogSumExp& f, const std::vector<Real>& x);

// Integer-scaled form: exponents d1*a, weights d2*w, so that
// f(x) = -log d2 + g(x / d1) for the scaled objective g.
struct IntegerizedProblem {
  MaxLogSumExp base;
  Integer d1;
  Integer d2;

  Rational offset_lower(unsigned bits = 96) const;  // bracket of -log d2
  Rational offset_upper(unsigned bits = 96) const;
};

IntegerizedProblem integerize(const MaxLogSumExp& f);

}  // namespace specrad
