#include "specrad/tensor.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "specrad/coercivity.hpp"
#include "specrad/ellipsoid.hpp"
#include "specrad/errors.hpp"

namespace specrad {

namespace {

bool any_fractional(const std::vector<Rational>& v) {
  for (const auto& q : v)
    if (denominator(q) != 1) return true;
  return false;
}

// Kosaraju strong connectivity; adj[i] lists successors of i.
bool strongly_connected(const std::vector<std::vector<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  if (n == 0) return false;
  auto reach = [&](const std::vector<std::vector<int>>& g) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g[v])
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
    }
    return count == n;
  };
  if (!reach(adj)) return false;
  std::vector<std::vector<int>> rev(n);
  for (int i = 0; i < n; ++i)
    for (int j : adj[i]) rev[j].push_back(i);
  return reach(rev);
}

Real pow_real(const Real& z, const Rational& q) {
  if (z == 0) return q == 0 ? Real(1) : Real(0);
  if (denominator(q) == 1 && numerator(q) >= 0 && numerator(q) <= 16) {
    Real out = 1;
    for (Integer k = 0; k < numerator(q); ++k) out *= z;
    return out;
  }
  return exp(to_real(q) * log(z));
}

}  // namespace

MonomialMap::MonomialMap(int np1, Rational dm1,
                         std::vector<std::vector<Monomial>> c)
    : n_plus_1(np1), degree_minus_1(std::move(dm1)), coords(std::move(c)) {
  if (np1 <= 0) throw InputError("map dimension must be positive");
  if (degree_minus_1 <= 0) throw InputError("map degree d-1 must be positive");
  if (static_cast<int>(coords.size()) != np1)
    throw InputError("map has wrong coordinate count");
  for (const auto& list : coords) {
    if (list.empty())
      throw InputError("degenerate map: a coordinate has no monomials");
    for (const auto& mono : list) {
      if (static_cast<int>(mono.exponent.size()) != np1)
        throw InputError("map exponent has wrong length");
      Rational l1 = 0;
      for (const auto& e : mono.exponent) {
        if (e < 0) throw InputError("map exponents must be nonnegative");
        l1 += e;
      }
      if (l1 != degree_minus_1)
        throw InputError("map monomial degree differs from d-1");
      if (mono.coeff <= 0) throw InputError("map coefficients must be positive");
      if (any_fractional(mono.exponent)) quasi = true;
    }
  }
}

NonnegForm::NonnegForm(int np1, Rational d, std::vector<Monomial> ms)
    : n_plus_1(np1), degree(std::move(d)), monomials(std::move(ms)) {
  if (np1 <= 0) throw InputError("form dimension must be positive");
  if (degree < 2) throw InputError("form degree must be at least 2");
  if (monomials.empty()) throw InputError("identically-zero form");
  for (const auto& mono : monomials) {
    if (static_cast<int>(mono.exponent.size()) != np1)
      throw InputError("form exponent has wrong length");
    Rational l1 = 0;
    for (const auto& e : mono.exponent) {
      if (e < 0) throw InputError("form exponents must be nonnegative");
      // quasi constraint: each coordinate in {0} or [1, d]
      if (e > 0 && e < 1)
        throw InputError("quasi form exponents must be 0 or >= 1");
      l1 += e;
    }
    if (l1 != degree) throw InputError("form monomial degree differs from d");
    if (mono.coeff <= 0) throw InputError("form coefficients must be positive");
  }
}

UniformHypergraph::UniformHypergraph(int np1, int uniformity,
                                     std::vector<Edge> es)
    : n_plus_1(np1), d(uniformity), edges(std::move(es)) {
  if (np1 <= 0) throw InputError("hypergraph needs at least one vertex");
  if (d < 2 || d > np1) throw InputError("uniformity out of range");
  if (edges.empty()) throw InputError("hypergraph has no edges");
  std::vector<std::vector<int>> seen;
  for (auto& e : edges) {
    if (static_cast<int>(e.vertices.size()) != d)
      throw InputError("edge has wrong cardinality");
    std::sort(e.vertices.begin(), e.vertices.end());
    for (int i = 0; i < d; ++i) {
      if (e.vertices[i] < 0 || e.vertices[i] >= np1)
        throw InputError("edge vertex out of range");
      if (i > 0 && e.vertices[i] == e.vertices[i - 1])
        throw InputError("edge vertices must be distinct");
    }
    if (e.weight <= 0) throw InputError("edge weights must be positive");
    seen.push_back(e.vertices);
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw InputError("duplicate edge");
}

std::vector<std::vector<int>> dependency_digraph(const MonomialMap& F) {
  std::vector<std::vector<int>> adj(F.n_plus_1);
  for (int i = 0; i < F.n_plus_1; ++i) {
    std::vector<char> has(F.n_plus_1, 0);
    for (const auto& mono : F.coords[i])
      for (int j = 0; j < F.n_plus_1; ++j)
        if (mono.exponent[j] > 0) has[j] = 1;
    for (int j = 0; j < F.n_plus_1; ++j)
      if (has[j]) adj[i].push_back(j);
  }
  return adj;
}

bool is_weakly_irreducible(const MonomialMap& F) {
  return strongly_connected(dependency_digraph(F));
}

MaxLogSumExp reduce_to_f(const MonomialMap& F) {
  const int n = F.n_plus_1 - 1;
  if (n < 1)
    throw InputError("reduction needs at least two variables");
  std::vector<PosExponentSum> branches;
  branches.reserve(F.n_plus_1);
  for (int i = 0; i < F.n_plus_1; ++i) {
    std::vector<std::vector<Rational>> exps;
    std::vector<Rational> wts;
    for (const auto& mono : F.coords[i]) {
      std::vector<Rational> a(mono.exponent.begin(), mono.exponent.end() - 1);
      if (i < n) a[i] -= F.degree_minus_1;
      exps.push_back(std::move(a));
      wts.push_back(mono.coeff);
    }
    branches.emplace_back(n, std::move(exps), std::move(wts));
  }
  return MaxLogSumExp(std::move(branches));
}

Real eval_map_coord(const MonomialMap& F, int i, const std::vector<Real>& z) {
  Real s = 0;
  for (const auto& mono : F.coords[i]) {
    Real term = to_real(mono.coeff);
    for (int j = 0; j < F.n_plus_1; ++j)
      if (mono.exponent[j] != 0) term *= pow_real(z[j], mono.exponent[j]);
    s += term;
  }
  return s;
}

CWBounds cw_bounds(const MonomialMap& F, const std::vector<Real>& z) {
  if (static_cast<int>(z.size()) != F.n_plus_1)
    throw InputError("CW point has wrong dimension");
  for (const auto& zi : z)
    if (!(zi > 0)) throw InputError("CW bounds need a strictly positive point");
  CWBounds out{Real(0), Real(0)};
  for (int i = 0; i < F.n_plus_1; ++i) {
    Real ratio = eval_map_coord(F, i, z) / pow_real(z[i], F.degree_minus_1);
    if (i == 0 || ratio < out.lower) out.lower = ratio;
    if (i == 0 || ratio > out.upper) out.upper = ratio;
  }
  return out;
}

namespace {

// Matrix fast path (d = 2): shifted power iteration with CW stopping,
// used only when coercivity certification fails.
SpectralResult matrix_power_fallback(const MonomialMap& F, const Rational& eps) {
  const int m = F.n_plus_1;
  std::vector<std::vector<Real>> A(m, std::vector<Real>(m, Real(0)));
  for (int i = 0; i < m; ++i)
    for (const auto& mono : F.coords[i])
      for (int j = 0; j < m; ++j)
        if (mono.exponent[j] != 0) A[i][j] += to_real(mono.coeff);
  std::vector<Real> z(m, Real(1));
  Real lo = 0, hi = 0;
  long it = 0;
  for (; it < 100000; ++it) {
    std::vector<Real> w(m, Real(0));
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < m; ++j) w[i] += A[i][j] * z[j];
      w[i] += z[i];  // shift by I breaks periodicity
    }
    lo = w[0] / z[0];
    hi = lo;
    for (int i = 1; i < m; ++i) {
      Real r = w[i] / z[i];
      if (r < lo) lo = r;
      if (r > hi) hi = r;
    }
    Real norm = 0;
    for (const auto& wi : w) norm += wi;
    for (int i = 0; i < m; ++i) z[i] = w[i] / norm;
    if (hi - lo <= to_real(eps) * hi / 2) break;
  }
  SpectralResult out;
  out.rho = (lo + hi) / 2 - 1;
  out.eigvec = z;
  Real s = 0;
  for (const auto& zi : z) s += zi * zi;
  s = sqrt(s);
  for (auto& zi : out.eigvec) zi /= s;
  out.eps = eps;
  auto cw = cw_bounds(F, out.eigvec);
  out.cw_lower = cw.lower;
  out.cw_upper = cw.upper;
  out.rho_lower = to_rational(cw.lower);
  out.rho_upper = to_rational(cw.upper);
  out.iterations = it;
  return out;
}

}  // namespace

SpectralResult spectral_radius(const MonomialMap& F, const Rational& eps) {
  if (eps <= 0 || eps > 1) throw InputError("eps must lie in (0, 1]");
  if (!is_weakly_irreducible(F))
    throw ReducibilityError("map is not weakly irreducible");

  SpectralResult out;
  out.eps = eps;
  out.quasi = F.quasi;

  if (F.n_plus_1 == 1) {
    // F_1 = c z^{d-1}: the spectral radius is c itself.
    Rational c = 0;
    for (const auto& mono : F.coords[0]) c += mono.coeff;
    out.rho = to_real(c);
    out.eigvec = {Real(1)};
    out.cw_lower = out.cw_upper = out.rho;
    out.rho_lower = out.rho_upper = c;
    return out;
  }

  MaxLogSumExp f = reduce_to_f(F);
  IntegerizedProblem ip = integerize(f);

  // Relative tolerance eps on rho corresponds to log(1+eps) on log rho.
  Rational eps_log = log_lower(1 + eps);
  Rational eps_solver = eps_log * Rational(15, 16);

  BoundBundle bundle;
  try {
    bundle = bound_bundle(ip);
  } catch (const CoercivityError&) {
    if (F.degree_minus_1 == 1 && !F.quasi) return matrix_power_fallback(F, eps);
    throw;
  }

  MinimizeResult mr = minimize_altitude(ip, bundle, eps_solver);
  out.iterations = mr.iterations;

  Rational off_lo = ip.offset_lower();
  Rational off_hi = ip.offset_upper();
  Rational t_log = (off_lo + off_hi) / 2 + mr.t_star;
  out.rho = exp(to_real(t_log));
  out.rho_lower = exp_lower(t_log - eps_log);
  out.rho_upper = exp_upper(t_log + eps_log);

  // eigenvector: u = exp((x, 0)) in the original scale, ||u||_d = 1
  const int n = f.n;
  std::vector<Real> u(F.n_plus_1);
  for (int i = 0; i < n; ++i) u[i] = exp(to_real(Rational(ip.d1) * mr.x_star[i]));
  u[n] = 1;
  Rational d = F.degree_minus_1 + 1;
  Real sum_d = 0;
  for (const auto& ui : u) sum_d += pow_real(ui, d);
  Real scale = exp(log(sum_d) / to_real(d));
  for (auto& ui : u) ui /= scale;
  out.eigvec = std::move(u);

  auto cw = cw_bounds(F, out.eigvec);
  out.cw_lower = cw.lower;
  out.cw_upper = cw.upper;
  return out;
}

MonomialMap grad_map(const NonnegForm& g) {
  const int m = g.n_plus_1;
  std::vector<std::vector<MonomialMap::Monomial>> coords(m);
  for (const auto& mono : g.monomials) {
    for (int i = 0; i < m; ++i) {
      if (mono.exponent[i] < 1) continue;
      MonomialMap::Monomial dm;
      dm.exponent = mono.exponent;
      dm.exponent[i] -= 1;
      dm.coeff = mono.exponent[i] * mono.coeff / g.degree;
      coords[i].push_back(std::move(dm));
    }
  }
  for (int i = 0; i < m; ++i)
    if (coords[i].empty())
      throw InputError("variable " + std::to_string(i + 1) +
                       " is absent from every monomial");
  return MonomialMap(m, g.degree - 1, std::move(coords));
}

namespace {

// Variable groups linked by shared monomials, in first-seen order.
// Variables absent from every monomial belong to no group.
std::vector<std::vector<int>> component_groups(const NonnegForm& g) {
  const int m = g.n_plus_1;
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  std::vector<char> present(m, 0);
  for (const auto& mono : g.monomials) {
    int first = -1;
    for (int i = 0; i < m; ++i) {
      if (mono.exponent[i] <= 0) continue;
      present[i] = 1;
      if (first < 0)
        first = i;
      else
        parent[find(i)] = find(first);
    }
  }
  std::vector<std::vector<int>> groups;
  std::vector<int> group_of(m, -1);
  for (int i = 0; i < m; ++i) {
    if (!present[i]) continue;
    int r = find(i);
    if (group_of[r] < 0) {
      group_of[r] = static_cast<int>(groups.size());
      groups.emplace_back();
    }
    groups[group_of[r]].push_back(i);
  }
  return groups;
}

NonnegForm subform(const NonnegForm& g, const std::vector<int>& vars) {
  const int m = g.n_plus_1;
  std::vector<int> local(m, -1);
  for (size_t k = 0; k < vars.size(); ++k) local[vars[k]] = static_cast<int>(k);
  std::vector<NonnegForm::Monomial> ms;
  for (const auto& mono : g.monomials) {
    int first = -1;
    for (int i = 0; i < m && first < 0; ++i)
      if (mono.exponent[i] > 0) first = i;
    if (first < 0 || local[first] < 0) continue;
    NonnegForm::Monomial sub;
    sub.exponent.assign(vars.size(), 0);
    for (int i = 0; i < m; ++i)
      if (mono.exponent[i] > 0) sub.exponent[local[i]] = mono.exponent[i];
    sub.coeff = mono.coeff;
    ms.push_back(std::move(sub));
  }
  return NonnegForm(static_cast<int>(vars.size()), g.degree, std::move(ms));
}

}  // namespace

std::vector<NonnegForm> connected_components(const NonnegForm& g) {
  std::vector<NonnegForm> out;
  for (const auto& vars : component_groups(g)) out.push_back(subform(g, vars));
  return out;
}

SpectralResult mu_d(const NonnegForm& g, const Rational& eps) {
  const int m = g.n_plus_1;
  std::vector<char> present(m, 0);
  for (const auto& mono : g.monomials)
    for (int i = 0; i < m; ++i)
      if (mono.exponent[i] > 0) present[i] = 1;

  auto comp_vars = component_groups(g);
  std::vector<NonnegForm> comps;
  for (const auto& vars : comp_vars) comps.push_back(subform(g, vars));

  SpectralResult best;
  bool have = false;
  int best_comp = -1;
  for (size_t c = 0; c < comps.size(); ++c) {
    SpectralResult r;
    if (comps[c].n_plus_1 == 1) {
      // g_c = a * z^d on one variable: mu_d = a at z = 1.
      Rational a = 0;
      for (const auto& mono : comps[c].monomials) a += mono.coeff;
      r.rho = to_real(a);
      r.eigvec = {Real(1)};
      r.eps = eps;
      r.cw_lower = r.cw_upper = r.rho;
      r.rho_lower = r.rho_upper = a;
    } else {
      MonomialMap G = grad_map(comps[c]);
      if (!is_weakly_irreducible(G))
        throw ReducibilityError("component gradient map not weakly irreducible");
      r = spectral_radius(G, eps);
    }
    if (!have || r.rho > best.rho) {
      best = std::move(r);
      best_comp = static_cast<int>(c);
      have = true;
    }
  }
  if (!have) throw InputError("identically-zero form");

  // embed the winning eigenvector; absent variables get coordinate 0
  std::vector<Real> full(m, Real(0));
  const auto& vars = comp_vars[best_comp];
  for (size_t k = 0; k < vars.size(); ++k) full[vars[k]] = best.eigvec[k];
  best.eigvec = std::move(full);
  for (int i = 0; i < m; ++i)
    if (!present[i]) best.dropped_vars.push_back(i);
  return best;
}

Real alpha_dp(const Rational& d, const Rational& p) {
  Real dr = to_real(d), pr = to_real(p);
  Real tstar = exp(log(1 - dr / pr) / pr);
  Real closed = exp((pr - dr) * log(tstar)) *
                exp((dr / pr) * log(1 - exp(pr * log(tstar))));

  // cross-check by golden-section search on [0,1]
  auto val = [&](const Real& t) -> Real {
    if (t <= 0 || t >= 1) return Real(0);
    return exp((pr - dr) * log(t)) * exp((dr / pr) * log(1 - exp(pr * log(t))));
  };
  Real inv_phi = (sqrt(Real(5)) - 1) / 2;
  Real a = 0, b = 1;
  Real c1 = b - inv_phi * (b - a), c2 = a + inv_phi * (b - a);
  for (int i = 0; i < 200; ++i) {
    if (val(c1) < val(c2))
      a = c1;
    else
      b = c2;
    c1 = b - inv_phi * (b - a);
    c2 = a + inv_phi * (b - a);
  }
  Real golden = val((a + b) / 2);
  if (abs(golden - closed) > Real(1e-20))
    throw PrecisionError("alpha_{d,p} closed form disagrees with search");
  return closed;
}

Real mu_p_lifted(const NonnegForm& g, const Rational& p, const Rational& eps) {
  if (p < g.degree + 1)
    throw InputError("mu_p lifting requires p >= d + 1");
  const int m = g.n_plus_1;
  std::vector<NonnegForm::Monomial> lifted;
  lifted.reserve(g.monomials.size());
  for (const auto& mono : g.monomials) {
    NonnegForm::Monomial lm;
    lm.exponent = mono.exponent;
    lm.exponent.push_back(p - g.degree);
    lm.coeff = mono.coeff;
    lifted.push_back(std::move(lm));
  }
  NonnegForm tilde(m + 1, p, std::move(lifted));
  SpectralResult r = mu_d(tilde, eps);
  return r.rho / alpha_dp(g.degree, p);
}

SpectralResult hypergraph_rho(const UniformHypergraph& H, const Rational& eps) {
  Integer dfact = 1;
  for (int i = 2; i <= H.d; ++i) dfact *= i;
  std::vector<NonnegForm::Monomial> ms;
  ms.reserve(H.edges.size());
  for (const auto& e : H.edges) {
    NonnegForm::Monomial mono;
    mono.exponent.assign(H.n_plus_1, 0);
    for (int v : e.vertices) mono.exponent[v] = 1;
    mono.coeff = Rational(dfact) * e.weight;
    ms.push_back(std::move(mono));
  }
  return mu_d(NonnegForm(H.n_plus_1, Rational(H.d), std::move(ms)), eps);
}

long clique_upper_bound(const UniformHypergraph& H, const Rational& eps) {
  for (const auto& e : H.edges)
    if (e.weight != 1)
      throw InputError("clique bound requires a 0/1 hypergraph");
  SpectralResult r = hypergraph_rho(H, eps);
  Rational budget = r.rho_upper + eps;
  long omega = H.d - 1;  // empty product region
  for (;;) {
    Rational prod = 1;
    for (int i = 1; i <= H.d - 1; ++i) prod *= Rational(omega + 1 - i);
    if (prod > budget) break;
    ++omega;
  }
  return omega;
}

}  // namespace specrad
