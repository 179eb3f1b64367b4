#include <doctest.h>

#include "specrad/errors.hpp"
#include "specrad/lp.hpp"

using namespace specrad;

TEST_CASE("min t subject to t >= 1") {
  RationalLP lp;
  lp.objective = {1};
  lp.rows = {{{-1}, LPRelation::LessEq, Rational(-1)}};  // -t <= -1
  lp.lower = {std::nullopt};
  lp.upper = {std::nullopt};
  auto r = lp_solve(lp);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == Rational(1));
  CHECK(r.point == std::vector<Rational>{1});
}

TEST_CASE("min x with x <= 0 and no lower bound is unbounded") {
  RationalLP lp;
  lp.objective = {1};
  lp.rows = {{{1}, LPRelation::LessEq, Rational(0)}};
  lp.lower = {std::nullopt};
  lp.upper = {std::nullopt};
  CHECK(lp_solve(lp).status == LPStatus::Unbounded);
}

TEST_CASE("min 0 with x <= -1, x >= 0 is infeasible") {
  RationalLP lp;
  lp.objective = {0};
  lp.rows = {{{1}, LPRelation::LessEq, Rational(-1)}};
  lp.lower = {Rational(0)};
  lp.upper = {std::nullopt};
  CHECK(lp_solve(lp).status == LPStatus::Infeasible);
}

TEST_CASE("equality constraints and exact rational optimum") {
  // min x + y  s.t.  x + 2y = 1,  x, y >= 0  -> y = 1/2 optimal
  RationalLP lp;
  lp.objective = {1, 1};
  lp.rows = {{{1, 2}, LPRelation::Eq, Rational(1)}};
  lp.lower = {Rational(0), Rational(0)};
  lp.upper = {std::nullopt, std::nullopt};
  auto r = lp_solve(lp);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == Rational(1, 2));
  CHECK(r.point[0] + 2 * r.point[1] == Rational(1));
}

TEST_CASE("free variables and negative optima") {
  // min t  s.t.  -x - t <= 0,  x - t <= 0,  x = 1 fixed via bounds
  RationalLP lp;
  lp.objective = {0, 1};
  lp.rows = {{{-1, -1}, LPRelation::LessEq, Rational(0)},
             {{1, -1}, LPRelation::LessEq, Rational(0)}};
  lp.lower = {Rational(1), std::nullopt};
  lp.upper = {Rational(1), std::nullopt};
  auto r = lp_solve(lp);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == Rational(1));
}

TEST_CASE("point attains the reported value") {
  // min -2x - 3y  s.t.  x + y <= 4, x <= 2, 0 <= x, y
  RationalLP lp;
  lp.objective = {-2, -3};
  lp.rows = {{{1, 1}, LPRelation::LessEq, Rational(4)}};
  lp.lower = {Rational(0), Rational(0)};
  lp.upper = {Rational(2), std::nullopt};
  auto r = lp_solve(lp);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == Rational(-12));  // x = 0, y = 4
  Rational attained = -2 * r.point[0] - 3 * r.point[1];
  CHECK(attained == r.value);
}

TEST_CASE("malformed LP raises input error") {
  RationalLP lp;
  lp.objective = {1, 1};
  lp.rows = {{{1}, LPRelation::LessEq, Rational(0)}};  // row too short
  lp.lower = {std::nullopt, std::nullopt};
  lp.upper = {std::nullopt, std::nullopt};
  CHECK_THROWS_AS(lp_solve(lp), InputError);
}

TEST_CASE("degenerate ties resolved by Bland's rule terminate") {
  // classic cycling-prone instance; exactness + Bland must terminate
  RationalLP lp;
  lp.objective = {Rational(-3, 4), 150, Rational(-1, 50), 6};
  lp.rows = {
      {{Rational(1, 4), -60, Rational(-1, 25), 9}, LPRelation::LessEq,
       Rational(0)},
      {{Rational(1, 2), -90, Rational(-1, 50), 3}, LPRelation::LessEq,
       Rational(0)},
      {{0, 0, 1, 0}, LPRelation::LessEq, Rational(1)},
  };
  lp.lower.assign(4, Rational(0));
  lp.upper.assign(4, std::nullopt);
  auto r = lp_solve(lp);
  REQUIRE(r.status == LPStatus::Optimal);
  CHECK(r.value == Rational(-1, 20));
}
