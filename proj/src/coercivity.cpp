#include "specrad/coercivity.hpp"

#include <algorithm>
#include <set>

#include "specrad/errors.hpp"
#include "specrad/lp.hpp"

namespace specrad {

namespace {

std::vector<std::vector<Rational>> distinct_exponents(const IntegerizedProblem& f) {
  std::set<std::vector<Rational>> seen;
  for (const auto& b : f.base.branches)
    for (const auto& a : b.exponents) seen.insert(a);
  return {seen.begin(), seen.end()};
}

// min t  s.t.  a^T x <= t for all exponents, x_i = sigma, -1 <= x_j <= 1.
// Variables are (x_1..x_n, t); t is free.
LPResult nu_face_lp(const std::vector<std::vector<Rational>>& exps, int n,
                    int i, int sigma) {
  RationalLP lp;
  lp.objective.assign(n + 1, 0);
  lp.objective[n] = 1;
  lp.lower.assign(n + 1, Rational(-1));
  lp.upper.assign(n + 1, Rational(1));
  lp.lower[i] = lp.upper[i] = Rational(sigma);
  lp.lower[n].reset();
  lp.upper[n].reset();
  for (const auto& a : exps) {
    LPRow row;
    row.coeffs.assign(n + 1, 0);
    for (int k = 0; k < n; ++k) row.coeffs[k] = a[k];
    row.coeffs[n] = -1;
    row.rel = LPRelation::LessEq;
    row.rhs = 0;
    lp.rows.push_back(std::move(row));
  }
  LPResult r = lp_solve(lp);
  if (r.status != LPStatus::Optimal)
    throw InputError("nu LP did not solve to optimality");
  return r;
}

}  // namespace

Rational compute_nu(const IntegerizedProblem& f) {
  return is_coercive(f).nu;
}

CoercivityCheck is_coercive(const IntegerizedProblem& f) {
  const int n = f.base.n;
  auto exps = distinct_exponents(f);
  CoercivityCheck out;
  bool first = true;
  for (int i = 0; i < n; ++i) {
    for (int sigma : {+1, -1}) {
      LPResult r = nu_face_lp(exps, n, i, sigma);
      if (first || r.value < out.nu) {
        out.nu = r.value;
        out.witness.assign(r.point.begin(), r.point.begin() + n);
        first = false;
      }
    }
  }
  out.coercive = out.nu > 0;
  if (out.coercive) out.witness.clear();
  return out;
}

Rational hadamard_nu_bound(const IntegerizedProblem& f) {
  const int n = f.base.n;
  auto exps = distinct_exponents(f);
  std::vector<Rational> sq;
  sq.reserve(exps.size());
  for (const auto& a : exps) {
    Rational s = 0;
    for (const auto& ai : a) s += ai * ai;
    sq.push_back(s);
  }
  std::sort(sq.rbegin(), sq.rend());
  Rational omega_sq = 1;
  for (size_t i = 0; i < std::min<size_t>(n, sq.size()); ++i)
    omega_sq *= sq[i] + 1;
  return 1 / sqrt_upper(omega_sq);
}

BoundBundle bound_bundle(const IntegerizedProblem& f) {
  BoundBundle bb;
  bb.t_min = f.base.t_min;
  bb.a_f = f.base.a_max;

  Rational max_branch_sum = 0;
  Rational min_weight;
  bool first = true;
  for (const auto& b : f.base.branches) {
    Rational s = 0;
    for (const auto& w : b.weights) {
      s += w;
      if (first || w < min_weight) min_weight = w;
      first = false;
    }
    if (s > max_branch_sum) max_branch_sum = s;
  }
  bb.f0_upper = log_upper(max_branch_sum);

  // Trivial case f(0) = t_min (every branch a single term, equal weights):
  // f = log w + max_j a_j^T x, whose infimum is log w exactly when zero
  // lies in the hull of the exponents, i.e. nu >= 0.
  if (max_branch_sum == min_weight) {
    auto cc0 = is_coercive(f);
    if (cc0.nu < 0)
      throw CoercivityError("objective is not coercive", cc0.witness);
    bb.trivial = true;
    bb.trivial_log_arg = max_branch_sum;
    bb.nu = cc0.nu;
    return bb;
  }

  auto cc = is_coercive(f);
  bb.nu = cc.nu;
  if (!cc.coercive)
    throw CoercivityError("objective is not coercive", cc.witness);
  bb.nu_hadamard = hadamard_nu_bound(f);

  // R(f) = (ceil f(0) - floor t_min) * ceil(prod sqrt(||b_k||^2 + 1)).
  auto exps = distinct_exponents(f);
  std::vector<Integer> sq;
  for (const auto& a : exps) {
    Rational s = 0;
    for (const auto& ai : a) s += ai * ai;
    sq.push_back(numerator(s));  // integer exponents: s is integral
  }
  std::sort(sq.rbegin(), sq.rend());
  Integer prod = 1;
  for (size_t i = 0; i < std::min<size_t>(f.base.n, sq.size()); ++i)
    prod *= sq[i] + 1;

  Integer f0_ceil = ceil_rat(bb.f0_upper);
  Integer tmin_floor = floor_rat(bb.t_min);
  bb.R = Rational((f0_ceil - tmin_floor) * ceil_sqrt(prod));
  bb.t_max = Rational(f0_ceil) + (bb.a_f + 1) * bb.R;
  bb.t_bar = Rational(f0_ceil) + (bb.a_f + 1) * bb.R / 2;
  bb.R2 = Rational(ceil_sqrt(Integer(f.base.n + 1))) *
          ((bb.a_f + 1) * bb.R + Rational(f0_ceil - tmin_floor));
  return bb;
}

}  // namespace specrad
