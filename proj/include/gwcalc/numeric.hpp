#pragma once

// Exact scalar types and the error hierarchy shared by every module.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace gwcalc {

using Integer = mpz_class;
using Rational = mpq_class;

/// Caller supplied something outside an operation's contract.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An invariant that the mathematics guarantees did not hold.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Request lies in a regime the engine refuses to approximate (r > 1).
class UnsupportedError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer ipow(const Integer& base, unsigned long exp) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exp);
  return out;
}

inline Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

inline bool is_integral(const Rational& q) { return q.get_den() == 1; }

}  // namespace gwcalc
