#pragma once

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <type_traits>

#include "tpk/errors.hpp"

namespace tpk {

// Exact scalar type: GMP big rationals.  All exact-mode templates are
// instantiated with this; float mode uses plain double.  mpq_class keeps
// values canonicalized (lowest terms, positive denominator), so operator==
// is a true equality test.
using Rat = mpq_class;

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool isExact = false;
  static double zero() { return 0.0; }
  static double one() { return 1.0; }
  static double abs(double x) { return std::fabs(x); }
  static double toDouble(double x) { return x; }
  static double fromRat(const Rat& q) { return q.get_d(); }
  static double fromLong(long v) { return static_cast<double>(v); }
};

template <>
struct ScalarTraits<Rat> {
  static constexpr bool isExact = true;
  static Rat zero() { return Rat(0); }
  static Rat one() { return Rat(1); }
  static Rat abs(const Rat& x) { return ::abs(x); }
  static double toDouble(const Rat& x) { return x.get_d(); }
  static Rat fromRat(const Rat& q) { return q; }
  static Rat fromLong(long v) { return Rat(v); }
};

template <class S>
inline constexpr bool isExactScalar = ScalarTraits<S>::isExact;

// Parses "2/5", "0.4", "-1.25e-2", "7" into an exact rational.
// Throws ConfigError on anything else.
Rat ratFromString(const std::string& text);

// Converts a double to the rational its shortest round-trip decimal denotes,
// so a config value written as 0.4 means 2/5 exactly rather than the nearest
// binary double.  Non-finite input throws DomainError.
Rat ratFromDouble(double x);

// Decimal rendering used in reports ("2/5 (= 0.4)" style is left to callers).
std::string ratToString(const Rat& q);

}  // namespace tpk
