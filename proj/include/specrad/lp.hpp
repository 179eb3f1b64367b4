#pragma once

#include <optional>
#include <vector>

#include "specrad/numeric.hpp"

namespace specrad {

enum class LPRelation { LessEq, Eq };

struct LPRow {
  std::vector<Rational> coeffs;
  LPRelation rel = LPRelation::LessEq;
  Rational rhs;
};

// min c^T x  s.t.  rows,  lo_j <= x_j <= hi_j (either bound may be absent).
struct RationalLP {
  std::vector<Rational> objective;
  std::vector<LPRow> rows;
  std::vector<std::optional<Rational>> lower;
  std::vector<std::optional<Rational>> upper;

  size_t num_vars() const { return objective.size(); }
};

enum class LPStatus { Optimal, Unbounded, Infeasible };

struct LPResult {
  LPStatus status = LPStatus::Infeasible;
  Rational value;
  std::vector<Rational> point;
};

// Exact two-phase dense simplex with Bland's anti-cycling rule.
LPResult lp_solve(const RationalLP& lp);

}  // namespace specrad
