#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "specrad/numeric.hpp"

namespace specrad {

// Malformed or unsupported input (dimension mismatch, bad file, p < d+1, ...).
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Map is not weakly irreducible; caller may decompose or reject.
struct ReducibilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Intermediate precision exhausted (ellipsoid drift, iteration cap).
struct PrecisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The objective is not coercive; carries a direction x0 != 0 with
// a^T x0 <= 0 for every exponent a.
struct CoercivityError : std::runtime_error {
  explicit CoercivityError(std::string msg, std::vector<Rational> w)
      : std::runtime_error(std::move(msg)), witness(std::move(w)) {}
  std::vector<Rational> witness;
};

}  // namespace specrad
