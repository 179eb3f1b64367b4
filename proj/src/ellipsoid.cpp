#include "specrad/ellipsoid.hpp"

#include <cmath>

#include "specrad/errors.hpp"

namespace specrad {

namespace {

struct OracleAnswer {
  SeparationResult sep;
  bool evaluated = false;
  Real f_value;  // f(y), set when the objective was evaluated
};

Rational round_to_grid(const Rational& q, const Integer& denom) {
  // nearest multiple of 1/denom
  return Rational(floor_rat(q * denom + Rational(1, 2)), denom);
}

OracleAnswer separate(const IntegerizedProblem& f, const BoundBundle& bundle,
                      const std::vector<Rational>& z, const Rational& eps) {
  const int n = f.base.n;
  if (static_cast<int>(z.size()) != n + 1)
    throw InputError("separation query has wrong dimension");
  if (eps <= 0) throw InputError("separation precision must be positive");

  OracleAnswer ans;
  // (a) outside the box: coordinate halfspace.
  for (int i = 0; i < n; ++i) {
    if (abs(z[i]) >= bundle.R) {
      ans.sep.kind = SepKind::Halfspace;
      ans.sep.normal.assign(n + 1, 0);
      ans.sep.normal[i] = z[i] > 0 ? 1 : -1;
      return ans;
    }
  }
  // (b1) above the cap: altitude halfspace.
  if (z[n] >= bundle.t_max) {
    ans.sep.kind = SepKind::Halfspace;
    ans.sep.normal.assign(n + 1, 0);
    ans.sep.normal[n] = 1;
    return ans;
  }

  std::vector<Real> y(n);
  for (int i = 0; i < n; ++i) y[i] = to_real(z[i]);
  FValue fv = eval_f(f.base, y);
  ans.evaluated = true;
  ans.f_value = fv.value;

  // (b2) within eps of the graph: near-feasible.
  if (to_real(z[n]) >= fv.value - to_real(eps)) return ans;

  // (b3) below the graph: gradient cut from the lowest active branch,
  // rationalized so that ||grad - e||_1 <= eps / (2 R(f)).
  std::vector<Real> grad =
      eval_branch_with_grad(f.base.branches[fv.active.front()], y).grad;
  Rational needed = Rational(n) * bundle.R / eps;
  long k = 63;
  while ((Integer(1) << k) < ceil_rat(needed)) ++k;
  Integer denom = Integer(1) << (k + 1);
  ans.sep.kind = SepKind::Halfspace;
  ans.sep.normal.assign(n + 1, 0);
  for (int i = 0; i < n; ++i)
    ans.sep.normal[i] = round_to_grid(to_rational(grad[i]), denom);
  ans.sep.normal[n] = -1;
  return ans;
}

bool cholesky_ok(const std::vector<std::vector<Real>>& p,
                 Real* log_det = nullptr) {
  const size_t m = p.size();
  std::vector<std::vector<Real>> l(m, std::vector<Real>(m, Real(0)));
  Real ld = 0;
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      Real s = p[i][j];
      for (size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0) return false;
        l[i][i] = sqrt(s);
        ld += log(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  if (log_det) *log_det = ld;
  return true;
}

}  // namespace

SeparationResult weak_separation(const IntegerizedProblem& f,
                                 const BoundBundle& bundle,
                                 const std::vector<Rational>& z,
                                 const Rational& eps) {
  return separate(f, bundle, z, eps).sep;
}

MinimizeResult minimize_altitude(const IntegerizedProblem& f,
                                 const BoundBundle& bundle,
                                 const Rational& eps) {
  if (eps <= 0) throw InputError("eps must be positive");
  const int n = f.base.n;

  if (bundle.trivial) {
    MinimizeResult out;
    out.t_star = (log_lower(bundle.trivial_log_arg) +
                  log_upper(bundle.trivial_log_arg)) /
                 2;
    out.x_star.assign(n, 0);
    out.iterations = 0;
    return out;
  }

  const int m = n + 1;
  const Rational eps_oracle = eps / 2;
  const Rational eps_term = eps / 2;

  std::vector<Real> center(m, Real(0));
  center[n] = to_real(bundle.t_bar);
  Real r2 = to_real(bundle.R2);
  std::vector<std::vector<Real>> shape(m, std::vector<Real>(m, Real(0)));
  for (int i = 0; i < m; ++i) shape[i][i] = r2 * r2;

  // GLS-style iteration budget.
  Rational inner = bundle.R / 2 < 1 ? bundle.R / 2 : Rational(1);
  double lr = static_cast<double>(
      log(to_real(bundle.R2 * (bundle.a_f + 2) / (eps * inner))));
  long cap = static_cast<long>(2.0 * m * (m + 1) * lr) + 64;

  const Real ratio = Real(m) * Real(m) / (Real(m) * Real(m) - 1);
  std::vector<Real> out_log_det;
  bool jittered = false;
  bool have_best = false;
  Real best_val;
  std::vector<Rational> best_x;

  long it = 0;
  for (; it < cap; ++it) {
    std::vector<Rational> z(m);
    for (int i = 0; i < m; ++i) z[i] = to_rational(center[i]);

    OracleAnswer ans = separate(f, bundle, z, eps_oracle);
    std::vector<Real> g(m, Real(0));
    if (ans.sep.kind == SepKind::NearFeasible) {
      if (!have_best || ans.f_value < best_val) {
        have_best = true;
        best_val = ans.f_value;
        best_x.assign(z.begin(), z.begin() + n);
      }
      g[n] = 1;  // objective cut
    } else {
      for (int i = 0; i < m; ++i) g[i] = to_real(ans.sep.normal[i]);
    }

    // central-cut update
    std::vector<Real> pg(m, Real(0));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) pg[i] += shape[i][j] * g[j];
    Real gpg = 0;
    for (int i = 0; i < m; ++i) gpg += g[i] * pg[i];
    if (!(gpg > 0)) {
      if (jittered)
        throw PrecisionError("ellipsoid lost definiteness; raise --precision");
      Real tr = 0;
      for (int i = 0; i < m; ++i) tr += shape[i][i];
      for (int i = 0; i < m; ++i) shape[i][i] += ldexp(tr, -60);
      jittered = true;
      --it;
      continue;
    }
    Real s = sqrt(gpg);
    for (int i = 0; i < m; ++i) {
      Real d = pg[i] / s;
      center[i] -= d / (m + 1);
      for (int j = 0; j < m; ++j)
        shape[i][j] -= (Real(2) / (m + 1)) * (pg[i] / s) * (pg[j] / s);
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) shape[i][j] *= ratio;
    for (int i = 0; i < m; ++i)
      for (int j = i + 1; j < m; ++j) {
        Real sym = (shape[i][j] + shape[j][i]) / 2;
        shape[i][j] = shape[j][i] = sym;
      }
    Real log_det;
    if (!cholesky_ok(shape, &log_det)) {
      if (jittered)
        throw PrecisionError("ellipsoid lost definiteness; raise --precision");
      Real tr = 0;
      for (int i = 0; i < m; ++i) tr += shape[i][i];
      for (int i = 0; i < m; ++i) shape[i][i] += ldexp(tr, -60);
      jittered = true;
    } else {
      out_log_det.push_back(log_det);
    }

    // the ellipsoid bounds the remaining altitude range from below
    if (have_best) {
      Real lower = center[n] - sqrt(shape[n][n]);
      if (lower >= best_val - to_real(eps_term)) {
        ++it;
        break;
      }
    }
  }

  if (!have_best)
    throw PrecisionError(
        "ellipsoid iteration cap reached without a near-feasible point; "
        "raise --precision");

  MinimizeResult out;
  out.t_star = to_rational(best_val);
  out.x_star = std::move(best_x);
  out.iterations = it;
  out.log_det_trace = std::move(out_log_det);
  return out;
}

}  // namespace specrad
