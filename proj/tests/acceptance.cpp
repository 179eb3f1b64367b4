// Acceptance suite: one PASS/FAIL line per criterion, plus the timing smoke
// check.  Exit code 0 iff every criterion passes.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "specrad/coercivity.hpp"
#include "specrad/ellipsoid.hpp"
#include "specrad/errors.hpp"
#include "specrad/exponent_sum.hpp"
#include "specrad/tensor.hpp"
#include "specrad/verify.hpp"

using namespace specrad;
using clk = std::chrono::steady_clock;

namespace {

double dbl(const Real& r) { return r.convert_to<double>(); }
double dbl(const Rational& q) { return q.convert_to<double>(); }

double seconds_since(clk::time_point t0) {
  return std::chrono::duration<double>(clk::now() - t0).count();
}

UniformHypergraph complete_hypergraph(int m, int d) {
  std::vector<UniformHypergraph::Edge> edges;
  std::vector<int> pick;
  std::function<void(int)> rec = [&](int start) {
    if ((int)pick.size() == d) {
      edges.push_back({pick, Rational(1)});
      return;
    }
    for (int v = start; v < m; ++v) {
      pick.push_back(v);
      rec(v + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return UniformHypergraph(m, d, std::move(edges));
}

MonomialMap cyclic3_map2() {
  std::vector<std::vector<MonomialMap::Monomial>> coords(2);
  coords[0].push_back({{Rational(0), Rational(2)}, Rational(1)});
  coords[1].push_back({{Rational(2), Rational(0)}, Rational(1)});
  return MonomialMap(2, 2, std::move(coords));
}

// Collected (result, eps) pairs for the Collatz-Wielandt criterion.
std::vector<std::pair<SpectralResult, Rational>> g_results;

}  // namespace

int main() {
  int failures = 0;
  auto report = [&](int k, const std::string& desc, bool ok) {
    std::printf("criterion %d (%s): %s\n", k, desc.c_str(),
                ok ? "PASS" : "FAIL");
    std::fflush(stdout);
    if (!ok) ++failures;
  };

  // 1. Closed-form complete-hypergraph values.
  {
    bool ok = true;
    try {
      const std::pair<int, int> cases[] = {{2, 3}, {2, 5}, {3, 3},
                                           {3, 4}, {3, 5}, {4, 5}};
      Rational eps(1, 1000000);
      for (auto [d, m] : cases) {
        auto t0 = clk::now();
        auto r = hypergraph_rho(complete_hypergraph(m, d), eps);
        double elapsed = seconds_since(t0);
        double expect = 1;
        for (int i = 1; i <= d - 1; ++i) expect *= m - i;
        if (std::abs(dbl(r.rho) - expect) > 1e-6) ok = false;
        if (elapsed > 60.0) ok = false;
        g_results.emplace_back(r, eps);
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "criterion 1 exception: %s\n", e.what());
      ok = false;
    }
    report(1, "complete hypergraph closed forms", ok);
  }

  // 2. Matrix consistency against power iteration.
  {
    bool ok = true;
    try {
      std::mt19937 rng(101);
      std::uniform_int_distribution<int> size(2, 10), entry(0, 10);
      Rational eps(1, 2000000);
      for (int trial = 0; trial < 20; ++trial) {
        int m = size(rng);
        std::vector<std::vector<MonomialMap::Monomial>> coords(m);
        for (int i = 0; i < m; ++i)
          for (int j = 0; j < m; ++j) {
            int v = entry(rng);
            if (j == (i + 1) % m && v == 0) v = 1;  // keep it irreducible
            if (v == 0) continue;
            MonomialMap::Monomial mono;
            mono.exponent.assign(m, 0);
            mono.exponent[j] = 1;
            mono.coeff = v;
            coords[i].push_back(std::move(mono));
          }
        MonomialMap A(m, 1, std::move(coords));
        auto solved = spectral_radius(A, eps);
        auto power = power_iteration_matrix(A, Real(1) / 1000000000000LL);
        if (dbl(abs(solved.rho - power.rho)) > 1e-6 * dbl(power.rho))
          ok = false;
        g_results.emplace_back(solved, eps);
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "criterion 2 exception: %s\n", e.what());
      ok = false;
    }
    report(2, "matrix spectral radii match power iteration", ok);
  }

  // 3. Theorem mainthm bracket on random coercive glp instances.
  {
    bool ok = true;
    try {
      std::mt19937 rng(103);
      std::uniform_int_distribution<int> expo(-4, 4), wt(1, 9), nb(1, 2);
      Rational eps(1, 10000);
      int found = 0;
      while (found < 20) {
        int n = 1 + (found % 2);
        std::vector<PosExponentSum> branches;
        int k = nb(rng);
        for (int b = 0; b < k; ++b) {
          std::vector<std::vector<Rational>> es;
          std::vector<Rational> ws;
          for (int a = 0; a < 3; ++a) {
            std::vector<Rational> e(n);
            for (int i = 0; i < n; ++i) e[i] = expo(rng);
            es.push_back(std::move(e));
            ws.push_back(Rational(wt(rng)));
          }
          branches.emplace_back(n, std::move(es), std::move(ws));
        }
        MaxLogSumExp f(std::move(branches));
        auto ip = integerize(f);
        auto cc = is_coercive(ip);
        if (!cc.coercive) continue;
        BoundBundle bb = bound_bundle(ip);
        if (bb.trivial) continue;
        double box = dbl(Rational((bb.f0_upper - bb.t_min) / bb.nu));
        if (box > 6.0) continue;  // keep the grid affordable
        ++found;
        auto sol = minimize_altitude(ip, bb, eps);
        // grid step <= 1/256 over [-box-0.05, box+0.05]^n
        double width = 2 * box + 0.1;
        int points = (int)std::ceil(width * 256) + 1;
        auto grid = grid_minimize_f(f, box + 0.05, points);
        double step = width / (points - 1);
        double grid_err = dbl(bb.a_f) * step / 2;
        double t = dbl(sol.t_star);
        if (t < grid.value - dbl(eps) - grid_err) ok = false;
        if (t > grid.value + dbl(eps) + 1e-9) ok = false;
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "criterion 3 exception: %s\n", e.what());
      ok = false;
    }
    report(3, "glp minimum bracketed against grid oracle", ok);
  }

  // 4. Collatz-Wielandt certificate on every spectral_radius output above.
  {
    bool ok = !g_results.empty();
    for (const auto& [r, eps] : g_results) {
      Real gap = r.cw_upper - r.cw_lower;
      if (dbl(gap) > 3 * dbl(eps) * dbl(r.rho)) ok = false;
    }
    report(4, "Collatz-Wielandt gap <= 3 eps rho", ok);
  }

  // 5. Entropic identity and perturbed feasible measures.
  {
    bool ok = true;
    try {
      std::mt19937 rng(105);
      std::uniform_int_distribution<int> entry(1, 5), numer(1, 3),
          denom(1, 2);
      std::vector<MonomialMap> instances;
      instances.push_back(cyclic3_map2());
      {  // dense positive 3x3 matrix, d = 2
        std::vector<std::vector<MonomialMap::Monomial>> coords(3);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            MonomialMap::Monomial mono;
            mono.exponent.assign(3, 0);
            mono.exponent[j] = 1;
            mono.coeff = entry(rng);
            coords[i].push_back(std::move(mono));
          }
        instances.emplace_back(3, 1, std::move(coords));
      }
      {  // dense cubic map on 3 variables, d = 3
        std::vector<std::vector<MonomialMap::Monomial>> coords(3);
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            for (int k = j; k < 3; ++k) {
              MonomialMap::Monomial mono;
              mono.exponent.assign(3, 0);
              mono.exponent[j] += 1;
              mono.exponent[k] += 1;
              mono.coeff = entry(rng);
              coords[i].push_back(std::move(mono));
            }
        instances.emplace_back(3, 2, std::move(coords));
      }
      Rational eps(1, 1000000);
      for (const auto& F : instances) {
        auto r = spectral_radius(F, eps);
        auto mu = occupation_from_eigenpair(F, r.rho, r.eigvec);
        if (dbl(abs(mu.total_mass() - 1)) > 1e-9) ok = false;
        if (dbl(mu.balance_defect()) > 1e-6) ok = false;
        double logrho = std::log(dbl(r.rho));
        if (std::abs(dbl(entropic_value(F, mu)) - logrho) > 20e-6) ok = false;
        // 10 perturbed feasible measures: eigenpair measures of maps with
        // the same support but rescaled coefficients, mixed with mu.
        for (int p = 0; p < 10; ++p) {
          std::vector<std::vector<MonomialMap::Monomial>> coords(F.n_plus_1);
          for (int i = 0; i < F.n_plus_1; ++i)
            for (const auto& mono : F.coords[i]) {
              MonomialMap::Monomial m2 = mono;
              m2.coeff *= Rational(numer(rng), denom(rng));
              coords[i].push_back(std::move(m2));
            }
          MonomialMap G(F.n_plus_1, F.degree_minus_1, std::move(coords));
          auto pg = power_iteration_tensor(G, Real(1) / 1000000000000LL);
          Real sup = pg.eigvec[0];
          for (const auto& v : pg.eigvec) sup = (std::max)(sup, v);
          std::vector<Real> u;
          for (const auto& v : pg.eigvec) u.push_back(v / sup);
          auto mu2 = occupation_from_eigenpair(G, pg.rho, u);
          OccupationMeasure mix(F.n_plus_1, mu.degree);
          for (size_t t = 0; t < mix.mu.size(); ++t)
            mix.mu[t] = (mu.mu[t] + mu2.mu[t]) / 2;
          if (!mix.is_valid(Real(1) / 1000000)) ok = false;
          if (dbl(entropic_value(F, mix)) > logrho + 20e-6) ok = false;
        }
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "criterion 5 exception: %s\n", e.what());
      ok = false;
    }
    report(5, "entropic identity and perturbed measures", ok);
  }

  // 6. Coercivity machinery: exact rational inequalities and witnesses.
  {
    bool ok = true;
    try {
      std::mt19937 rng(107);
      std::uniform_int_distribution<int> expo(-3, 3), wt(1, 9), dim(1, 4),
          cnt(0, 2);
      int found = 0;
      while (found < 50) {
        int n = dim(rng);
        std::vector<std::vector<Rational>> es;
        std::vector<Rational> ws;
        int m = n + 2 + cnt(rng);
        for (int a = 0; a < m; ++a) {
          std::vector<Rational> e(n);
          for (int i = 0; i < n; ++i) e[i] = expo(rng);
          es.push_back(std::move(e));
          ws.push_back(Rational(wt(rng)));
        }
        MaxLogSumExp f({PosExponentSum(n, std::move(es), std::move(ws))});
        auto ip = integerize(f);
        auto cc = is_coercive(ip);
        if (!cc.coercive) continue;
        auto bb = bound_bundle(ip);
        if (bb.trivial) continue;
        ++found;
        if (!(hadamard_nu_bound(ip) <= compute_nu(ip))) ok = false;
        if (!(bb.R * bb.nu >= bb.f0_upper - bb.t_min)) ok = false;
      }
      // 20 constructed non-coercive instances: all exponents in a closed
      // halfspace {a : a^T v <= 0}.
      for (int trial = 0; trial < 20; ++trial) {
        int n = dim(rng);
        std::vector<Rational> v(n, 0);
        bool nz = false;
        while (!nz) {
          for (int i = 0; i < n; ++i) {
            v[i] = expo(rng);
            if (v[i] != 0) nz = true;
          }
        }
        std::vector<std::vector<Rational>> es;
        std::vector<Rational> ws;
        for (int a = 0; a < n + 2; ++a) {
          std::vector<Rational> e(n);
          Rational dot = 0;
          for (int i = 0; i < n; ++i) {
            e[i] = expo(rng);
            dot += e[i] * v[i];
          }
          if (dot > 0)
            for (int i = 0; i < n; ++i) e[i] = -e[i];
          es.push_back(std::move(e));
          ws.push_back(Rational(wt(rng)));
        }
        MaxLogSumExp f({PosExponentSum(n, es, ws)});
        auto ip = integerize(f);
        auto cc = is_coercive(ip);
        if (cc.coercive) {
          ok = false;
          continue;
        }
        bool witness_nz = false;
        for (const auto& w : cc.witness)
          if (w != 0) witness_nz = true;
        if (!witness_nz) ok = false;
        for (const auto& b : ip.base.branches)
          for (const auto& a : b.exponents) {
            Rational dot = 0;
            for (size_t i = 0; i < a.size(); ++i) dot += a[i] * cc.witness[i];
            if (dot > 0) ok = false;
          }
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "criterion 6 exception: %s\n", e.what());
      ok = false;
    }
    report(6, "coercivity bounds and non-coercive witnesses", ok);
  }

  // 7. mu_p lifting: alpha_{2,4} and mu_4(z1^2).
  {
    bool ok = true;
    try {
      Real a24 = alpha_dp(2, 4);
      if (dbl(abs(a24 - Real(1) / 2)) > 1e-20) ok = false;
      NonnegForm g(1, 2, {{{Rational(2)}, Rational(1)}});
      Real mu4 = mu_p_lifted(g, 4, Rational(1, 1000000));
      if (std::abs(dbl(mu4) - 1.0) > 1e-5) ok = false;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "criterion 7 exception: %s\n", e.what());
      ok = false;
    }
    report(7, "alpha_{2,4} = 1/2 and mu_4(z1^2) = 1", ok);
  }

  // 8. Norm comparison mu_2 <= mu_4 <= 9 mu_2 on random quadratic forms.
  {
    bool ok = true;
    try {
      std::mt19937 rng(109);
      std::uniform_int_distribution<int> coeff(1, 5);
      for (int trial = 0; trial < 10; ++trial) {
        // dense quadratic form on 3 variables (connected, hence the lifted
        // map is weakly irreducible)
        std::vector<NonnegForm::Monomial> ms;
        for (int i = 0; i < 3; ++i)
          for (int j = i; j < 3; ++j) {
            NonnegForm::Monomial mono;
            mono.exponent.assign(3, 0);
            mono.exponent[i] += 1;
            mono.exponent[j] += 1;
            mono.coeff = coeff(rng);
            ms.push_back(std::move(mono));
          }
        NonnegForm g(3, 2, std::move(ms));
        double mu2 = grid_maximize_form(g, 201).value;
        double mu4 = dbl(mu_p_lifted(g, 4, Rational(1, 1000000)));
        if (mu4 < mu2 - 1e-6) ok = false;
        if (mu4 > 9 * mu2 + 1e-6) ok = false;
      }
    } catch (const std::exception& e) {
      std::fprintf(stderr, "criterion 8 exception: %s\n", e.what());
      ok = false;
    }
    report(8, "mu_2 <= mu_4 <= 9 mu_2 on random forms", ok);
  }

  // Smoke check: solve time sub-quadratic in log(1/eps) on a fixed glp
  // instance.  Iteration counts are the deterministic proxy; wall time is
  // reported for reference.
  {
    bool ok = true;
    try {
      std::vector<std::vector<Rational>> es = {
          {1, 0}, {0, 1}, {-1, -1}, {2, -1}};
      MaxLogSumExp f({PosExponentSum(2, es, {1, 2, 3, 1})});
      auto ip = integerize(f);
      auto bb = bound_bundle(ip);
      long iters[3];
      double times[3];
      const Rational epss[3] = {Rational(1, 100), Rational(1, 10000),
                                Rational(1, 1000000)};
      for (int k = 0; k < 3; ++k) {
        auto t0 = clk::now();
        auto sol = minimize_altitude(ip, bb, epss[k]);
        times[k] = seconds_since(t0);
        iters[k] = sol.iterations;
      }
      // log(1/eps) grows by a factor of 3; quadratic growth would give a
      // factor of 9 in work.
      double ratio = (double)iters[2] / (std::max)(iters[0], 1L);
      if (ratio >= 9.0) ok = false;
      std::printf(
          "smoke (sub-quadratic in log(1/eps)): %s  "
          "[iters %ld/%ld/%ld, %.3fs/%.3fs/%.3fs, ratio %.2f]\n",
          ok ? "PASS" : "FAIL", iters[0], iters[1], iters[2], times[0],
          times[1], times[2], ratio);
      if (!ok) ++failures;
    } catch (const std::exception& e) {
      std::fprintf(stderr, "smoke exception: %s\n", e.what());
      std::printf("smoke (sub-quadratic in log(1/eps)): FAIL\n");
      ++failures;
    }
  }

  return failures == 0 ? 0 : 1;
}
