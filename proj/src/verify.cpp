#include "specrad/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "specrad/errors.hpp"

namespace specrad {

namespace {

double to_double(const Rational& q) { return q.convert_to<double>(); }

// Double-precision evaluation of f = max of log-Laplace branches.
struct DoubleBranches {
  std::vector<std::vector<std::vector<double>>> exps;  // branch -> term -> a
  std::vector<std::vector<double>> logw;

  explicit DoubleBranches(const MaxLogSumExp& f) {
    for (const auto& b : f.branches) {
      std::vector<std::vector<double>> be;
      std::vector<double> bw;
      for (size_t a = 0; a < b.exponents.size(); ++a) {
        std::vector<double> e;
        for (const auto& q : b.exponents[a]) e.push_back(to_double(q));
        be.push_back(std::move(e));
        bw.push_back(std::log(to_double(b.weights[a])));
      }
      exps.push_back(std::move(be));
      logw.push_back(std::move(bw));
    }
  }

  double eval(const std::vector<double>& x) const {
    double best = -1e300;
    for (size_t b = 0; b < exps.size(); ++b) {
      double hi = -1e300;
      std::vector<double> terms(exps[b].size());
      for (size_t a = 0; a < exps[b].size(); ++a) {
        double t = logw[b][a];
        for (size_t i = 0; i < x.size(); ++i) t += exps[b][a][i] * x[i];
        terms[a] = t;
        hi = std::max(hi, t);
      }
      double s = 0;
      for (double t : terms) s += std::exp(t - hi);
      best = std::max(best, hi + std::log(s));
    }
    return best;
  }
};

// z^a in double with the conventions 0^0 = 1 and 0^positive = 0.
double pow_conv(double z, double a) {
  if (a == 0) return 1.0;
  if (z <= 0) return 0.0;
  return std::pow(z, a);
}

double eval_form_double(const NonnegForm& g, const std::vector<double>& z) {
  double s = 0;
  for (const auto& mono : g.monomials) {
    double t = to_double(mono.coeff);
    for (size_t i = 0; i < z.size(); ++i)
      t *= pow_conv(z[i], to_double(mono.exponent[i]));
    s += t;
  }
  return s;
}

std::vector<double> grad_form_double(const NonnegForm& g,
                                     const std::vector<double>& z) {
  std::vector<double> grad(z.size(), 0.0);
  for (const auto& mono : g.monomials) {
    for (size_t j = 0; j < z.size(); ++j) {
      double aj = to_double(mono.exponent[j]);
      if (aj == 0) continue;
      double t = to_double(mono.coeff) * aj * pow_conv(z[j], aj - 1);
      for (size_t i = 0; i < z.size(); ++i)
        if (i != j) t *= pow_conv(z[i], to_double(mono.exponent[i]));
      grad[j] += t;
    }
  }
  return grad;
}

void normalize_d_double(std::vector<double>& z, double d) {
  double s = 0;
  for (double v : z) s += std::pow(std::max(v, 0.0), d);
  if (s <= 0) return;
  double scale = std::pow(s, -1.0 / d);
  for (double& v : z) v = std::max(v, 0.0) * scale;
}

Real pow_pos(const Real& z, const Real& e) {
  if (e == 0) return Real(1);
  return exp(e * log(z));
}

// Symmetric tensor entries of coordinate i: count-vector a (over slots
// 2..d) -> F_{i,a} * prod_k a_k! / (d-1)!.
std::vector<std::map<std::vector<int>, Real>> symmetric_entries(
    const MonomialMap& F, int d) {
  if (F.quasi)
    throw InputError("occupation measures require integral exponents");
  Real fact_dm1 = 1;
  for (int k = 2; k <= d - 1; ++k) fact_dm1 *= k;
  std::vector<std::map<std::vector<int>, Real>> out(F.n_plus_1);
  for (int i = 0; i < F.n_plus_1; ++i) {
    for (const auto& mono : F.coords[i]) {
      std::vector<int> a;
      Real mult = 1;
      for (const auto& q : mono.exponent) {
        int ai = static_cast<int>(numerator(q).convert_to<long>());
        a.push_back(ai);
        for (int k = 2; k <= ai; ++k) mult *= k;
      }
      out[i][a] = to_real(mono.coeff) * mult / fact_dm1;
    }
  }
  return out;
}

// Odometer over tuples in [0, m)^len; returns false when exhausted.
bool next_tuple(std::vector<int>& t, int m) {
  for (int k = static_cast<int>(t.size()) - 1; k >= 0; --k) {
    if (++t[k] < m) return true;
    t[k] = 0;
  }
  return false;
}

}  // namespace

GridMinResult grid_minimize_f(const MaxLogSumExp& f, double box,
                              int points_per_axis) {
  if (f.n > 3) throw InputError("grid_minimize_f supports n <= 3");
  DoubleBranches db(f);
  GridMinResult best;
  best.value = 1e300;
  std::vector<int> idx(f.n, 0);
  std::vector<double> x(f.n, 0.0);
  do {
    for (int i = 0; i < f.n; ++i)
      x[i] = points_per_axis == 1
                 ? 0.0
                 : -box + 2.0 * box * idx[i] / (points_per_axis - 1);
    double v = db.eval(x);
    if (v < best.value) {
      best.value = v;
      best.argmin = x;
    }
  } while (f.n > 0 && next_tuple(idx, points_per_axis));
  if (f.n == 0) {
    best.value = db.eval({});
    best.argmin.clear();
  }
  return best;
}

GridMaxResult grid_maximize_form(const NonnegForm& g, int points_per_axis) {
  const int m = g.n_plus_1;
  if (m > 3) throw InputError("grid_maximize_form supports n+1 <= 3");
  double d = to_double(g.degree);
  GridMaxResult best;
  best.value = -1;
  std::vector<int> idx(m, 0);
  do {
    std::vector<double> z(m);
    double mass = 0;
    for (int i = 0; i < m; ++i) {
      z[i] = static_cast<double>(idx[i]) / (points_per_axis - 1);
      mass += z[i];
    }
    if (mass == 0) continue;
    normalize_d_double(z, d);
    double v = eval_form_double(g, z);
    if (v > best.value) {
      best.value = v;
      best.argmax = z;
    }
  } while (next_tuple(idx, points_per_axis));

  // projected-gradient polish from the best grid point
  std::vector<double> z = best.argmax;
  double step = 1e-2;
  for (int it = 0; it < 200; ++it) {
    auto grad = grad_form_double(g, z);
    for (int i = 0; i < m; ++i) z[i] = std::max(z[i] + step * grad[i], 0.0);
    normalize_d_double(z, d);
    double v = eval_form_double(g, z);
    if (v > best.value) {
      best.value = v;
      best.argmax = z;
    } else {
      z = best.argmax;
      step *= 0.5;
    }
  }
  return best;
}

PowerResult power_iteration_matrix(const MonomialMap& F, const Real& tol,
                                   int max_iterations) {
  if (F.degree_minus_1 != 1)
    throw InputError("power_iteration_matrix requires a degree-2 map");
  if (!is_weakly_irreducible(F))
    throw ReducibilityError("matrix digraph is not strongly connected");
  const int m = F.n_plus_1;
  std::vector<std::vector<Real>> M(m, std::vector<Real>(m, Real(0)));
  for (int i = 0; i < m; ++i)
    for (const auto& mono : F.coords[i])
      for (int j = 0; j < m; ++j)
        if (mono.exponent[j] == 1) M[i][j] += to_real(mono.coeff);

  PowerResult out;
  std::vector<Real> z(m, Real(1));
  for (int it = 0; it < max_iterations; ++it) {
    std::vector<Real> y(m, Real(0));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) y[i] += M[i][j] * z[j];
      y[i] += z[i];  // shift by the identity to damp periodicity
    }
    Real lo = y[0] / z[0], hi = lo;
    for (int i = 1; i < m; ++i) {
      Real r = y[i] / z[i];
      lo = (std::min)(lo, r);
      hi = (std::max)(hi, r);
    }
    out.iterations = it + 1;
    if (hi - lo <= tol * (std::max)(Real(1), hi)) {
      out.rho = (lo + hi) / 2 - 1;
      out.eigvec = z;
      return out;
    }
    Real sup = 0;
    for (const auto& v : y) sup = (std::max)(sup, v);
    for (int i = 0; i < m; ++i) z[i] = y[i] / sup;
  }
  throw PrecisionError("power iteration did not converge");
}

PowerResult power_iteration_tensor(const MonomialMap& F, const Real& tol,
                                   int max_iterations) {
  if (!is_weakly_irreducible(F))
    throw ReducibilityError("map is not weakly irreducible");
  const int m = F.n_plus_1;
  Real dm1 = to_real(F.degree_minus_1);
  if (dm1 < 1) throw InputError("power_iteration_tensor requires d >= 2");
  PowerResult out;
  std::vector<Real> z(m, Real(1));
  for (int it = 0; it < max_iterations; ++it) {
    std::vector<Real> y(m);
    Real lo, hi;
    for (int i = 0; i < m; ++i) {
      Real zi_pow = pow_pos(z[i], dm1);
      y[i] = eval_map_coord(F, i, z) + zi_pow;
      Real r = y[i] / zi_pow;
      if (i == 0) {
        lo = hi = r;
      } else {
        lo = (std::min)(lo, r);
        hi = (std::max)(hi, r);
      }
    }
    out.iterations = it + 1;
    if (hi - lo <= tol * (std::max)(Real(1), hi)) {
      out.rho = (lo + hi) / 2 - 1;
      out.eigvec = z;
      return out;
    }
    Real sup = 0;
    for (int i = 0; i < m; ++i) {
      z[i] = pow_pos(y[i], 1 / dm1);
      sup = (std::max)(sup, z[i]);
    }
    for (int i = 0; i < m; ++i) z[i] /= sup;
  }
  throw PrecisionError("tensor power iteration did not converge");
}

OccupationMeasure::OccupationMeasure(int n_plus_1_, int degree_)
    : n_plus_1(n_plus_1_), degree(degree_) {
  if (n_plus_1 <= 0 || degree < 2)
    throw InputError("occupation measure needs n+1 >= 1, d >= 2");
  size_t size = 1;
  for (int k = 0; k < degree; ++k) size *= static_cast<size_t>(n_plus_1);
  mu.assign(size, Real(0));
}

size_t OccupationMeasure::flat_index(const std::vector<int>& tuple) const {
  size_t idx = 0;
  for (int v : tuple) idx = idx * static_cast<size_t>(n_plus_1) + v;
  return idx;
}

Real OccupationMeasure::total_mass() const {
  Real s = 0;
  for (const auto& v : mu) s += v;
  return s;
}

Real OccupationMeasure::balance_defect() const {
  const size_t m = static_cast<size_t>(n_plus_1);
  size_t tail = mu.size() / m;          // stride of slot 1
  size_t tail2 = tail / m;              // stride of slot 2
  std::vector<Real> m1(m, Real(0)), m2(m, Real(0));
  for (size_t idx = 0; idx < mu.size(); ++idx) {
    m1[idx / tail] += mu[idx];
    m2[(idx / tail2) % m] += mu[idx];
  }
  Real worst = 0;
  for (size_t i = 0; i < m; ++i) {
    Real diff = abs(m1[i] - m2[i]);
    worst = (std::max)(worst, diff);
  }
  return worst;
}

bool OccupationMeasure::is_valid(const Real& tol) const {
  for (const auto& v : mu)
    if (v < 0) return false;
  return abs(total_mass() - 1) <= tol && balance_defect() <= tol;
}

OccupationMeasure occupation_from_eigenpair(const MonomialMap& F,
                                            const Real& rho,
                                            const std::vector<Real>& u) {
  if (denominator(F.degree_minus_1) != 1)
    throw InputError("occupation measures require an integer degree");
  const int d = static_cast<int>(
                    numerator(F.degree_minus_1).convert_to<long>()) + 1;
  const int m = F.n_plus_1;
  for (const auto& ui : u)
    if (ui <= 0) throw InputError("eigenvector must be strictly positive");

  auto entries = symmetric_entries(F, d);

  // A = diag(u)^{-(d-2)} DF(u); left Perron vector by shifted power
  // iteration on A^T, normalized so w^T u = 1.
  std::vector<std::vector<Real>> A(m, std::vector<Real>(m, Real(0)));
  for (int i = 0; i < m; ++i) {
    Real scale = pow_pos(u[i], Real(-(d - 2)));
    for (const auto& mono : F.coords[i]) {
      for (int j = 0; j < m; ++j) {
        Real aj = to_real(mono.exponent[j]);
        if (aj == 0) continue;
        Real t = to_real(mono.coeff) * aj;
        for (int k = 0; k < m; ++k) {
          Real e = to_real(mono.exponent[k]) - (k == j ? 1 : 0);
          t *= pow_pos(u[k], e);
        }
        A[i][j] += scale * t;
      }
    }
  }
  std::vector<Real> w(m, Real(1));
  Real tol = ldexp(Real(1), -static_cast<long>(precision_bits()) + 16);
  // Roundoff can stall the gap above tol; a plateau below 2^-prec/2 is
  // still far tighter than any downstream tolerance and is accepted.
  Real plateau = ldexp(Real(1), -static_cast<long>(precision_bits()) / 2);
  Real best_rel = -1;
  int stall = 0;
  for (int it = 0;; ++it) {
    if (it >= 200000)
      throw PrecisionError("left Perron iteration did not converge");
    std::vector<Real> y(m, Real(0));
    for (int j = 0; j < m; ++j) {
      for (int i = 0; i < m; ++i) y[j] += A[i][j] * w[i];
      y[j] += w[j];
    }
    Real lo = y[0] / w[0], hi = lo, sup = 0;
    for (int j = 0; j < m; ++j) {
      Real r = y[j] / w[j];
      lo = (std::min)(lo, r);
      hi = (std::max)(hi, r);
      sup = (std::max)(sup, y[j]);
    }
    for (int j = 0; j < m; ++j) w[j] = y[j] / sup;
    Real rel = (hi - lo) / hi;
    if (rel <= tol) break;
    if (best_rel < 0 || rel < best_rel) {
      best_rel = rel;
      stall = 0;
    } else if (++stall >= 128) {
      if (best_rel <= plateau) break;
      throw PrecisionError("left Perron iteration did not converge");
    }
  }
  Real dot = 0;
  for (int j = 0; j < m; ++j) dot += w[j] * u[j];
  for (int j = 0; j < m; ++j) w[j] /= dot;

  OccupationMeasure meas(m, d);
  std::vector<int> tail(d - 1, 0);
  do {
    std::vector<int> counts(m, 0);
    Real uprod = 1;
    for (int v : tail) {
      ++counts[v];
      uprod *= u[v];
    }
    for (int i = 0; i < m; ++i) {
      auto it = entries[i].find(counts);
      if (it == entries[i].end()) continue;
      Real mu_t =
          w[i] * pow_pos(u[i], Real(-(d - 2))) * it->second * uprod / rho;
      std::vector<int> tuple;
      tuple.push_back(i);
      tuple.insert(tuple.end(), tail.begin(), tail.end());
      meas.mu[meas.flat_index(tuple)] = mu_t;
    }
  } while (next_tuple(tail, m));
  return meas;
}

Real entropic_value(const MonomialMap& F, const OccupationMeasure& mu) {
  if (denominator(F.degree_minus_1) != 1)
    throw InputError("entropic value requires an integer degree");
  const int d = static_cast<int>(
                    numerator(F.degree_minus_1).convert_to<long>()) + 1;
  const int m = F.n_plus_1;
  if (mu.n_plus_1 != m || mu.degree != d)
    throw InputError("measure shape does not match the map");

  auto entries = symmetric_entries(F, d);
  size_t stride = mu.mu.size() / static_cast<size_t>(m);
  std::vector<Real> head(m, Real(0));
  for (size_t idx = 0; idx < mu.mu.size(); ++idx)
    head[idx / stride] += mu.mu[idx];

  Real total = 0;
  std::vector<int> tail(d - 1, 0);
  do {
    std::vector<int> counts(m, 0);
    for (int v : tail) ++counts[v];
    for (int i = 0; i < m; ++i) {
      std::vector<int> tuple;
      tuple.push_back(i);
      tuple.insert(tuple.end(), tail.begin(), tail.end());
      const Real& mu_t = mu.mu[mu.flat_index(tuple)];
      if (mu_t == 0) continue;
      auto it = entries[i].find(counts);
      if (it == entries[i].end() || it->second <= 0)
        throw InputError("measure charges a zero tensor entry");
      total += mu_t * log(head[i] * it->second / mu_t);
    }
  } while (next_tuple(tail, m));
  return total;
}

}  // namespace specrad
