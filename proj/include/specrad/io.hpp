#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <variant>

#include "specrad/exponent_sum.hpp"
#include "specrad/tensor.hpp"

namespace specrad {

// One problem per file.  Line-oriented text:
//
//   kind map|form|hypergraph|glp
//   dim <n+1>            (glp: n)
//   degree <d>           (absent for glp)
//   <body lines>
//
// Body lines, 1-based indices, exact rationals ("p/q", integers, decimals):
//   map:        i: a_1 ... a_{n+1} coeff      (coordinate i monomial)
//   form:       a_1 ... a_{n+1} coeff
//   hypergraph: v_1 ... v_d weight
//   glp:        j: a_1 ... a_n weight         (branch j term)
// Blank lines and lines starting with '#' are ignored.
struct ProblemFile {
  std::variant<MonomialMap, NonnegForm, UniformHypergraph, MaxLogSumExp> value;

  const MonomialMap* map() const { return std::get_if<MonomialMap>(&value); }
  const NonnegForm* form() const { return std::get_if<NonnegForm>(&value); }
  const UniformHypergraph* hypergraph() const {
    return std::get_if<UniformHypergraph>(&value);
  }
  const MaxLogSumExp* glp() const { return std::get_if<MaxLogSumExp>(&value); }
};

ProblemFile parse_problem(std::istream& in);
ProblemFile parse_problem_file(const std::string& path);

// 20 significant digits, round-trip stable between runs.
std::string format_real(const Real& v);
std::string format_rational(const Rational& q);

}  // namespace specrad
