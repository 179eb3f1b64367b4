#include <doctest.h>

#include <cmath>
#include <random>

#include "specrad/coercivity.hpp"
#include "specrad/ellipsoid.hpp"
#include "specrad/errors.hpp"
#include "specrad/tensor.hpp"
#include "specrad/verify.hpp"

using namespace specrad;

namespace {

double dbl(const Real& r) { return r.convert_to<double>(); }

MonomialMap matrix_map(const std::vector<std::vector<int>>& a) {
  int m = static_cast<int>(a.size());
  std::vector<std::vector<MonomialMap::Monomial>> coords(m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      if (a[i][j] == 0) continue;
      MonomialMap::Monomial mono;
      mono.exponent.assign(m, 0);
      mono.exponent[j] = 1;
      mono.coeff = a[i][j];
      coords[i].push_back(std::move(mono));
    }
  return MonomialMap(m, 1, std::move(coords));
}

MonomialMap cyclic3_map2() {
  // d = 3 cyclic map on two variables: F = (z2^2, z1^2)
  std::vector<std::vector<MonomialMap::Monomial>> coords(2);
  coords[0].push_back({{0, 2}, 1});
  coords[1].push_back({{2, 0}, 1});
  return MonomialMap(2, 2, std::move(coords));
}

}  // namespace

TEST_CASE("grid_minimize_f examples") {
  // two-exponent n = 1 instance: minimum log 2 at 0
  MaxLogSumExp f({PosExponentSum(1, {{Rational(1)}, {Rational(-1)}}, {1, 1})});
  auto r = grid_minimize_f(f, 2.0, 513);
  CHECK(r.value == doctest::Approx(std::log(2.0)).epsilon(1e-4));
  CHECK(r.argmin[0] == doctest::Approx(0.0).epsilon(1e-4));

  // constant branch
  MaxLogSumExp c({PosExponentSum(1, {{Rational(0)}}, {Rational(5)})});
  CHECK(grid_minimize_f(c, 3.0, 17).value ==
        doctest::Approx(std::log(5.0)));

  // flat minimum on [-log 3, log 3]: value 0
  MaxLogSumExp k({PosExponentSum(1, {{Rational(0)}}, {Rational(1)}),
                  PosExponentSum(1, {{Rational(-1)}}, {Rational(1, 3)}),
                  PosExponentSum(1, {{Rational(1)}}, {Rational(1, 3)})});
  CHECK(grid_minimize_f(k, 2.0, 257).value == doctest::Approx(0.0));
  CHECK_THROWS_AS(
      grid_minimize_f(MaxLogSumExp({PosExponentSum(
                          4, {{Rational(1), 0, 0, 0}}, {Rational(1)})}),
                      1.0, 3),
      InputError);
}

TEST_CASE("grid_maximize_form examples") {
  // z1^3 -> 1 at e1
  auto g1 = NonnegForm(1, 3, {{{Rational(3)}, Rational(1)}});
  auto r1 = grid_maximize_form(g1, 33);
  CHECK(r1.value == doctest::Approx(1.0).epsilon(1e-6));

  // complete graph on 3 vertices, g = 2 sigma_2: mu_2 = 2
  auto k3 = NonnegForm(
      3, 2,
      {{{1, 1, 0}, 2}, {{1, 0, 1}, 2}, {{0, 1, 1}, 2}});
  CHECK(grid_maximize_form(k3, 41).value == doctest::Approx(2.0).epsilon(1e-4));

  // d = 3 complete on 3 vertices: mu_3 = 2 at 3^{-1/3} * ones
  auto h = NonnegForm(3, 3, {{{1, 1, 1}, 6}});
  auto rh = grid_maximize_form(h, 41);
  CHECK(rh.value == doctest::Approx(2.0).epsilon(1e-4));
  for (double zi : rh.argmax)
    CHECK(zi == doctest::Approx(std::pow(3.0, -1.0 / 3)).epsilon(1e-2));
}

TEST_CASE("power_iteration_matrix") {
  auto r1 = power_iteration_matrix(matrix_map({{0, 1}, {1, 0}}),
                                   Real(1) / 1000000000);
  CHECK(dbl(r1.rho) == doctest::Approx(1.0).epsilon(1e-8));

  CHECK_THROWS_AS(power_iteration_matrix(matrix_map({{1, 0}, {0, 1}}),
                                         Real(1) / 1000),
                  ReducibilityError);

  auto r2 = power_iteration_matrix(matrix_map({{1, 1}, {1, 1}}),
                                   Real(1) / 1000000000);
  CHECK(dbl(r2.rho) == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("power_iteration_tensor matches the solver") {
  auto F = cyclic3_map2();
  auto p = power_iteration_tensor(F, Real(1) / 100000000);
  CHECK(dbl(p.rho) == doctest::Approx(1.0).epsilon(1e-7));
}

TEST_CASE("occupation measure for the d = 2 swap matrix") {
  auto F = matrix_map({{0, 1}, {1, 0}});
  // exact eigenpair: rho = 1, u = (1,1)/sqrt(2) under ||u||_2 = 1
  Real s = 1 / sqrt(Real(2));
  auto mu = occupation_from_eigenpair(F, Real(1), {s, s});
  CHECK(dbl(mu.total_mass()) == doctest::Approx(1.0).epsilon(1e-25));
  CHECK(dbl(mu.balance_defect()) <= 1e-25);
  CHECK(mu.is_valid(Real(1) / 1000000000));
  // mu uniform on {(1,2),(2,1)}
  CHECK(dbl(mu.mu[mu.flat_index({0, 1})]) == doctest::Approx(0.5));
  CHECK(dbl(mu.mu[mu.flat_index({1, 0})]) == doctest::Approx(0.5));
  CHECK(dbl(mu.mu[mu.flat_index({0, 0})]) == 0.0);
  // entropic value log rho = 0
  CHECK(std::abs(dbl(entropic_value(F, mu))) <= 1e-25);
}

TEST_CASE("occupation measure for the cyclic d = 3 map") {
  auto F = cyclic3_map2();
  auto r = spectral_radius(F, Rational(1, 1000000));
  auto mu = occupation_from_eigenpair(F, r.rho, r.eigvec);
  CHECK(dbl(abs(mu.total_mass() - 1)) <= 1e-9);
  CHECK(dbl(mu.balance_defect()) <= 1e-6);
  // support inside supp F: head 0 only with tail (1,1), head 1 with (0,0)
  CHECK(dbl(mu.mu[mu.flat_index({0, 1, 1})]) > 0.0);
  CHECK(dbl(mu.mu[mu.flat_index({1, 0, 0})]) > 0.0);
  CHECK(dbl(mu.mu[mu.flat_index({0, 0, 1})]) == 0.0);
  CHECK(std::abs(dbl(entropic_value(F, mu)) - std::log(dbl(r.rho))) <=
        20e-6);
}

TEST_CASE("perturbed feasible measures never beat log rho") {
  auto F = cyclic3_map2();
  auto r = spectral_radius(F, Rational(1, 1000000));
  auto mu = occupation_from_eigenpair(F, r.rho, r.eigvec);

  // an independent feasible measure: eigenpair of a perturbed-coefficient
  // map with the same support (balance does not involve the coefficients)
  std::vector<std::vector<MonomialMap::Monomial>> coords(2);
  coords[0].push_back({{Rational(0), Rational(2)}, Rational(7, 5)});
  coords[1].push_back({{Rational(2), Rational(0)}, Rational(3, 4)});
  MonomialMap G(2, 2, std::move(coords));
  auto pg = power_iteration_tensor(G, Real(1) / Real(1e25));
  Real sup = (std::max)(pg.eigvec[0], pg.eigvec[1]);
  auto mu2 = occupation_from_eigenpair(G, pg.rho,
                                       {pg.eigvec[0] / sup, pg.eigvec[1] / sup});
  CHECK(mu2.is_valid(Real(1) / 1000000));

  double logrho = std::log(dbl(r.rho));
  for (double w : {0.1, 0.5}) {
    OccupationMeasure mix(2, 3);
    for (size_t t = 0; t < mix.mu.size(); ++t)
      mix.mu[t] = Real(1 - w) * mu.mu[t] + Real(w) * mu2.mu[t];
    CHECK(mix.is_valid(Real(1) / 1000000));
    CHECK(dbl(entropic_value(F, mix)) <= logrho + 20e-6);
  }
}

TEST_CASE("solver agrees with the grid oracle on random coercive glp") {
  std::mt19937 rng(41);
  std::uniform_int_distribution<int> expo(-3, 3), wt(1, 9), nb(1, 2);
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
    double box = ((bb.f0_upper - bb.t_min) / bb.nu).convert_to<double>();
    if (box > 6.0) continue;  // keep the grid affordable
    ++found;
    auto sol = minimize_altitude(ip, bb, eps);
    auto grid = grid_minimize_f(f, box + 0.05, 4 * 256 + 1);
    double grid_err =
        bb.a_f.convert_to<double>() * (2 * box + 0.1) / (4 * 256.0) / 2;
    double t = sol.t_star.convert_to<double>();
    CHECK(t >= grid.value - eps.convert_to<double>() - grid_err);
    CHECK(t <= grid.value + eps.convert_to<double>() + 1e-9);
  }
}

TEST_CASE("mu_d agrees with the form grid oracle") {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> coeff(1, 5), deg(2, 4), pick(0, 2);
  int found = 0;
  while (found < 20) {
    int d = deg(rng);
    // random form on 3 variables with a few monomials
    std::map<std::vector<int>, int> monos;
    for (int t = 0; t < 4; ++t) {
      std::vector<int> e(3, 0);
      for (int k = 0; k < d; ++k) e[pick(rng)] += 1;
      monos[e] += coeff(rng);
    }
    std::vector<NonnegForm::Monomial> ms;
    for (const auto& [e, c] : monos) {
      NonnegForm::Monomial mono;
      mono.exponent.assign(e.begin(), e.end());
      mono.coeff = c;
      ms.push_back(std::move(mono));
    }
    NonnegForm g(3, d, std::move(ms));
    SpectralResult r;
    try {
      r = mu_d(g, Rational(1, 1000000));
    } catch (const ReducibilityError&) {
      continue;
    }
    ++found;
    auto grid = grid_maximize_form(g, 61);
    // mu_d(g) = rho(grad g / d) is the result's rho
    CHECK(std::abs(grid.value - dbl(r.rho)) <= 1e-3 * (1 + grid.value));
  }
}
