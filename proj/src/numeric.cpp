#include "specrad/numeric.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace specrad {

namespace {
unsigned g_precision_bits = 128;

unsigned bits_to_digits10(unsigned bits) {
  return static_cast<unsigned>(std::ceil(bits * 0.30103)) + 2;
}

// log(q) rounded in direction `rnd` at `bits` of working precision.
Rational log_directed(const Rational& q, unsigned bits, mpfr_rnd_t rnd) {
  if (q <= 0) throw std::domain_error("log of nonpositive rational");
  mpfr_t t;
  mpfr_init2(t, bits);
  mpfr_set_q(t, q.backend().data(), rnd);
  mpfr_log(t, t, rnd);
  mpq_t out;
  mpq_init(out);
  mpfr_get_q(out, t);
  Rational r(out);
  mpq_clear(out);
  mpfr_clear(t);
  return r;
}
}  // namespace

void set_precision_bits(unsigned bits) {
  if (bits < 24 || bits > 4096) throw std::invalid_argument("precision bits out of range");
  g_precision_bits = bits;
  Real::default_precision(bits_to_digits10(bits));
}

unsigned precision_bits() { return g_precision_bits; }

Integer floor_rat(const Rational& q) {
  Integer out;
  mpz_fdiv_q(out.backend().data(), mpq_numref(q.backend().data()),
             mpq_denref(q.backend().data()));
  return out;
}

Integer ceil_rat(const Rational& q) {
  Integer out;
  mpz_cdiv_q(out.backend().data(), mpq_numref(q.backend().data()),
             mpq_denref(q.backend().data()));
  return out;
}

Integer ceil_sqrt(const Integer& x) {
  if (x < 0) throw std::domain_error("ceil_sqrt of negative integer");
  Integer s = sqrt(x);
  if (s * s < x) ++s;
  return s;
}

Rational sqrt_upper(const Rational& q, unsigned bits) {
  if (q < 0) throw std::domain_error("sqrt of negative rational");
  if (q == 0) return 0;
  mpfr_t t;
  mpfr_init2(t, bits);
  mpfr_set_q(t, q.backend().data(), MPFR_RNDU);
  mpfr_sqrt(t, t, MPFR_RNDU);
  mpq_t out;
  mpq_init(out);
  mpfr_get_q(out, t);
  Rational r(out);
  mpq_clear(out);
  mpfr_clear(t);
  return r;
}

Rational log_lower(const Rational& q, unsigned bits) {
  return log_directed(q, bits, MPFR_RNDD);
}

namespace {
Rational exp_directed(const Rational& q, unsigned bits, mpfr_rnd_t rnd) {
  mpfr_t t;
  mpfr_init2(t, bits);
  mpfr_set_q(t, q.backend().data(), rnd);
  mpfr_exp(t, t, rnd);
  mpq_t out;
  mpq_init(out);
  mpfr_get_q(out, t);
  Rational r(out);
  mpq_clear(out);
  mpfr_clear(t);
  return r;
}
}  // namespace

Rational exp_lower(const Rational& q, unsigned bits) {
  return exp_directed(q, bits, MPFR_RNDD);
}

Rational exp_upper(const Rational& q, unsigned bits) {
  return exp_directed(q, bits, MPFR_RNDU);
}

Rational log_upper(const Rational& q, unsigned bits) {
  return log_directed(q, bits, MPFR_RNDU);
}

Real to_real(const Rational& q) { return Real(q); }

Rational to_rational(const Real& r) {
  if (!mpfr_number_p(r.backend().data()))
    throw std::domain_error("cannot convert non-finite real to rational");
  mpq_t out;
  mpq_init(out);
  mpfr_get_q(out, r.backend().data());
  Rational q(out);
  mpq_clear(out);
  return q;
}

Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator: " + s);
    return Rational(num, den);
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rational(Integer(s));
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  size_t frac_len = s.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::invalid_argument("bad rational literal: " + s);
  Integer den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  return Rational(Integer(digits), den);
}

std::string to_decimal_string(const Real& r, int digits) {
  std::ostringstream os;
  os.precision(digits);
  os << r;
  return os.str();
}

}  // namespace specrad
