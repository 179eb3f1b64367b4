#include "specrad/exponent_sum.hpp"

#include <algorithm>
#include <map>

#include "specrad/errors.hpp"

namespace specrad {

PosExponentSum::PosExponentSum(int dim, std::vector<std::vector<Rational>> exps,
                               std::vector<Rational> wts)
    : n(dim) {
  if (dim <= 0) throw InputError("ambient dimension must be positive");
  if (exps.empty()) throw InputError("branch needs at least one exponent");
  if (exps.size() != wts.size())
    throw InputError("exponent/weight count mismatch");
  std::map<std::vector<Rational>, Rational> merged;
  for (size_t k = 0; k < exps.size(); ++k) {
    if (static_cast<int>(exps[k].size()) != dim)
      throw InputError("exponent vector has wrong length");
    if (wts[k] <= 0) throw InputError("branch weights must be positive");
    merged[exps[k]] += wts[k];
  }
  for (auto& [a, w] : merged) {
    exponents.push_back(a);
    weights.push_back(w);
  }
}

namespace {

void check_dim(int n, const std::vector<Real>& x) {
  if (static_cast<int>(x.size()) != n)
    throw InputError("evaluation point has wrong dimension");
}

// Shifted softmax pass shared by value and gradient evaluation.
// Returns (value, normalized weights).
std::pair<Real, std::vector<Real>> softmax_pass(const PosExponentSum& b,
                                                const std::vector<Real>& x) {
  const size_t m = b.exponents.size();
  std::vector<Real> score(m);
  for (size_t k = 0; k < m; ++k) {
    Real s = log(to_real(b.weights[k]));
    for (int i = 0; i < b.n; ++i)
      if (b.exponents[k][i] != 0) s += to_real(b.exponents[k][i]) * x[i];
    score[k] = s;
  }
  Real shift = score[0];
  for (size_t k = 1; k < m; ++k)
    if (score[k] > shift) shift = score[k];
  Real total = 0;
  std::vector<Real> w(m);
  for (size_t k = 0; k < m; ++k) {
    w[k] = exp(score[k] - shift);
    total += w[k];
  }
  for (auto& wk : w) wk /= total;
  return {shift + log(total), std::move(w)};
}

}  // namespace

Real eval_branch(const PosExponentSum& b, const std::vector<Real>& x) {
  check_dim(b.n, x);
  return softmax_pass(b, x).first;
}

std::vector<Real> grad_branch(const PosExponentSum& b, const std::vector<Real>& x) {
  return eval_branch_with_grad(b, x).grad;
}

BranchEval eval_branch_with_grad(const PosExponentSum& b, const std::vector<Real>& x) {
  check_dim(b.n, x);
  auto [value, w] = softmax_pass(b, x);
  std::vector<Real> grad(b.n, Real(0));
  for (size_t k = 0; k < b.exponents.size(); ++k)
    for (int i = 0; i < b.n; ++i)
      if (b.exponents[k][i] != 0) grad[i] += w[k] * to_real(b.exponents[k][i]);
  return {value, std::move(grad)};
}

MaxLogSumExp::MaxLogSumExp(std::vector<PosExponentSum> brs)
    : branches(std::move(brs)) {
  if (branches.empty()) throw InputError("need at least one branch");
  n = branches[0].n;
  Rational min_weight;
  bool first = true;
  a_max = 0;
  for (const auto& b : branches) {
    if (b.n != n) throw InputError("branches disagree on dimension");
    for (const auto& w : b.weights) {
      if (first || w < min_weight) min_weight = w;
      first = false;
    }
    for (const auto& a : b.exponents) {
      Rational l1 = 0;
      for (const auto& ai : a) l1 += abs(ai);
      if (l1 > a_max) a_max = l1;
    }
  }
  t_min = log_lower(min_weight);
}

FValue eval_f(const MaxLogSumExp& f, const std::vector<Real>& x) {
  check_dim(f.n, x);
  std::vector<Real> vals(f.branches.size());
  for (size_t j = 0; j < f.branches.size(); ++j) vals[j] = eval_branch(f.branches[j], x);
  Real best = vals[0];
  for (const auto& v : vals)
    if (v > best) best = v;
  // Scale-free tie tolerance: 2^-40 relative to max(1, |f(x)|).
  Real tau = abs(best);
  if (tau < 1) tau = 1;
  tau = ldexp(tau, -40);
  FValue out{best, {}};
  for (size_t j = 0; j < vals.size(); ++j)
    if (best - vals[j] <= tau) out.active.push_back(static_cast<int>(j));
  return out;
}

Rational IntegerizedProblem::offset_lower(unsigned bits) const {
  if (d2 == 1) return 0;
  return -log_upper(Rational(d2), bits);
}

Rational IntegerizedProblem::offset_upper(unsigned bits) const {
  if (d2 == 1) return 0;
  return -log_lower(Rational(d2), bits);
}

IntegerizedProblem integerize(const MaxLogSumExp& f) {
  Integer d1 = 1, d2 = 1;
  for (const auto& b : f.branches) {
    for (const auto& a : b.exponents)
      for (const auto& ai : a) d1 = lcm(d1, denominator(ai));
    for (const auto& w : b.weights) d2 = lcm(d2, denominator(w));
  }
  std::vector<PosExponentSum> scaled;
  scaled.reserve(f.branches.size());
  for (const auto& b : f.branches) {
    std::vector<std::vector<Rational>> exps = b.exponents;
    std::vector<Rational> wts = b.weights;
    for (auto& a : exps)
      for (auto& ai : a) ai *= d1;
    for (auto& w : wts) w *= d2;
    scaled.emplace_back(b.n, std::move(exps), std::move(wts));
  }
  return IntegerizedProblem{MaxLogSumExp(std::move(scaled)), d1, d2};
}

}  // namespace specrad
