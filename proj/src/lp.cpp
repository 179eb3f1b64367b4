#include "specrad/lp.hpp"

#include <algorithm>

#include "specrad/errors.hpp"

namespace specrad {

namespace {

// Dense tableau over nonnegative variables, kept canonical w.r.t. the basis.
struct Tableau {
  size_t m = 0;     // rows
  size_t ncols = 0;
  std::vector<std::vector<Rational>> a;  // m x ncols
  std::vector<Rational> b;               // m, >= 0 throughout
  std::vector<size_t> basis;             // m basic column indices

  void pivot(size_t r, size_t c) {
    Rational p = a[r][c];
    for (auto& v : a[r]) v /= p;
    b[r] /= p;
    for (size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      Rational factor = a[i][c];
      if (factor == 0) continue;
      for (size_t j = 0; j < ncols; ++j)
        if (a[r][j] != 0) a[i][j] -= factor * a[r][j];
      b[i] -= factor * b[r];
    }
    basis[r] = c;
  }

  // Bland's rule simplex over columns [0, limit). Returns false on unbounded.
  bool run(const std::vector<Rational>& cost, size_t limit) {
    for (;;) {
      // reduced costs: c_j - c_B^T a_j
      size_t enter = limit;
      for (size_t j = 0; j < limit; ++j) {
        Rational rc = cost[j];
        for (size_t i = 0; i < m; ++i)
          if (a[i][j] != 0) rc -= cost[basis[i]] * a[i][j];
        if (rc < 0) {
          enter = j;
          break;
        }
      }
      if (enter == limit) return true;
      size_t leave = m;
      Rational best_ratio;
      for (size_t i = 0; i < m; ++i) {
        if (a[i][enter] <= 0) continue;
        Rational ratio = b[i] / a[i][enter];
        if (leave == m || ratio < best_ratio ||
            (ratio == best_ratio && basis[i] < basis[leave])) {
          leave = i;
          best_ratio = ratio;
        }
      }
      if (leave == m) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LPResult lp_solve(const RationalLP& lp) {
  const size_t nv = lp.num_vars();
  if (lp.lower.size() != nv || lp.upper.size() != nv)
    throw InputError("LP bound vectors have wrong length");
  for (const auto& row : lp.rows)
    if (row.coeffs.size() != nv) throw InputError("LP row has wrong length");

  // Map each original variable onto nonnegative internal variables:
  //   x = shift + sign * y   (single column), or x = y+ - y-  (free).
  struct VarMap {
    size_t col;
    int sign;        // +1 or -1
    Rational shift;
    bool split;      // free variable: col holds y+, col+1 holds y-
  };
  std::vector<VarMap> vmap(nv);
  size_t ncols = 0;
  std::vector<LPRow> rows = lp.rows;
  for (size_t j = 0; j < nv; ++j) {
    const auto& lo = lp.lower[j];
    const auto& hi = lp.upper[j];
    if (lo && hi && *hi < *lo) return {LPStatus::Infeasible, 0, {}};
    if (lo) {
      vmap[j] = {ncols++, +1, *lo, false};
      if (hi) {
        LPRow r;
        r.coeffs.assign(nv, 0);
        r.coeffs[j] = 1;
        r.rel = LPRelation::LessEq;
        r.rhs = *hi;
        rows.push_back(std::move(r));
      }
    } else if (hi) {
      vmap[j] = {ncols++, -1, *hi, false};
    } else {
      vmap[j] = {ncols, +1, 0, true};
      ncols += 2;
    }
  }

  const size_t m = rows.size();
  // Count slacks.
  size_t nslack = 0;
  for (const auto& r : rows)
    if (r.rel == LPRelation::LessEq) ++nslack;

  Tableau t;
  t.m = m;
  t.ncols = ncols + nslack + m;  // structural + slack + artificial
  t.a.assign(m, std::vector<Rational>(t.ncols, Rational(0)));
  t.b.assign(m, Rational(0));
  t.basis.assign(m, 0);

  size_t slack_at = ncols;
  for (size_t i = 0; i < m; ++i) {
    Rational rhs = rows[i].rhs;
    for (size_t j = 0; j < nv; ++j) {
      const Rational& c = rows[i].coeffs[j];
      if (c == 0) continue;
      rhs -= c * vmap[j].shift;
      t.a[i][vmap[j].col] += c * vmap[j].sign;
      if (vmap[j].split) t.a[i][vmap[j].col + 1] -= c;
    }
    if (rows[i].rel == LPRelation::LessEq) t.a[i][slack_at++] = 1;
    t.b[i] = rhs;
    if (t.b[i] < 0) {
      for (auto& v : t.a[i]) v = -v;
      t.b[i] = -t.b[i];
    }
  }
  const size_t nreal = ncols + nslack;
  for (size_t i = 0; i < m; ++i) {
    t.a[i][nreal + i] = 1;
    t.basis[i] = nreal + i;
  }

  // Phase 1: minimize the sum of artificials.
  std::vector<Rational> cost1(t.ncols, Rational(0));
  for (size_t i = 0; i < m; ++i) cost1[nreal + i] = 1;
  if (!t.run(cost1, t.ncols))
    throw InputError("phase-1 LP unbounded (malformed problem)");
  Rational phase1 = 0;
  for (size_t i = 0; i < t.m; ++i)
    if (t.basis[i] >= nreal) phase1 += t.b[i];
  if (phase1 > 0) return {LPStatus::Infeasible, 0, {}};

  // Drive leftover zero-level artificials out of the basis; drop rows that
  // are redundant over the real columns.
  for (size_t i = 0; i < t.m;) {
    if (t.basis[i] < nreal) {
      ++i;
      continue;
    }
    size_t c = nreal;
    for (size_t j = 0; j < nreal; ++j)
      if (t.a[i][j] != 0) {
        c = j;
        break;
      }
    if (c < nreal) {
      t.pivot(i, c);
      ++i;
    } else {
      t.a.erase(t.a.begin() + i);
      t.b.erase(t.b.begin() + i);
      t.basis.erase(t.basis.begin() + i);
      --t.m;
    }
  }

  // Phase 2 over the real columns.
  std::vector<Rational> cost2(t.ncols, Rational(0));
  for (size_t j = 0; j < nv; ++j) {
    const Rational& c = lp.objective[j];
    if (c == 0) continue;
    cost2[vmap[j].col] += c * vmap[j].sign;
    if (vmap[j].split) cost2[vmap[j].col + 1] -= c;
  }
  if (!t.run(cost2, nreal)) return {LPStatus::Unbounded, 0, {}};

  std::vector<Rational> y(nreal, Rational(0));
  for (size_t i = 0; i < t.m; ++i)
    if (t.basis[i] < nreal) y[t.basis[i]] = t.b[i];

  LPResult out;
  out.status = LPStatus::Optimal;
  out.point.assign(nv, Rational(0));
  for (size_t j = 0; j < nv; ++j) {
    Rational v = vmap[j].shift + Rational(vmap[j].sign) * y[vmap[j].col];
    if (vmap[j].split) v -= y[vmap[j].col + 1];
    out.point[j] = v;
  }
  out.value = 0;
  for (size_t j = 0; j < nv; ++j) out.value += lp.objective[j] * out.point[j];
  return out;
}

}  // namespace specrad
