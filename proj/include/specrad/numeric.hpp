#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <string>
#include <utility>
#include <vector>

namespace specrad {

// Exact rationals carry every bound-bundle quantity; mpfr floats (variable
// precision, default 128 bits) carry the ellipsoid state and evaluations.
using Rational = boost::multiprecision::mpq_rational;
using Integer = boost::multiprecision::mpz_int;
using Real = boost::multiprecision::mpfr_float;

void set_precision_bits(unsigned bits);
unsigned precision_bits();

Integer floor_rat(const Rational& q);
Integer ceil_rat(const Rational& q);

// Smallest integer s with s*s >= x (x >= 0).
Integer ceil_sqrt(const Integer& x);

// Rational upper bound on sqrt(q), q >= 0, with roughly `bits` of accuracy.
Rational sqrt_upper(const Rational& q, unsigned bits = 96);

// Dyadic rational brackets of log(q), q > 0, via directed mpfr rounding.
Rational log_lower(const Rational& q, unsigned bits = 96);
Rational log_upper(const Rational& q, unsigned bits = 96);

// Dyadic rational brackets of exp(q).
Rational exp_lower(const Rational& q, unsigned bits = 96);
Rational exp_upper(const Rational& q, unsigned bits = 96);

Real to_real(const Rational& q);
// Exact conversion (every finite mpfr value is a dyadic rational).
Rational to_rational(const Real& r);

// Accepts "p/q", integers, and plain decimals like "-1.25".
Rational parse_rational(const std::string& s);

std::string to_decimal_string(const Real& r, int digits = 20);

}  // namespace specrad
