#pragma once

// Arbitrary-precision rationals (GMP mpq_class) and the traits that let the
// matrix templates run over either exact rationals or doubles.

#include <gmpxx.h>

#include <cmath>
#include <string>
#include <string_view>

#include "tnn/error.hpp"

namespace tnn {

/// Exact rational. Arithmetic results are canonical, but the (num, den) and
/// string constructors are not; use make_rat / parse_rat for those.
using Rat = mpq_class;

inline Rat make_rat(long num, long den) {
  if (den == 0) throw Error(Errc::Parse, "zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

/// Accepts "p", "-p", "p/q", "-p/q" with decimal digits, q != 0.
inline Rat parse_rat(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (c < '0' || c > '9') return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const bool ok = slash == std::string_view::npos
                      ? digits(body)
                      : digits(body.substr(0, slash)) && digits(body.substr(slash + 1));
  if (!ok) throw Error(Errc::Parse, "bad rational \"" + std::string(text) + "\"");
  Rat r;
  r.set_str(std::string(text), 10);
  if (r.get_den() == 0) throw Error(Errc::Parse, "zero denominator in \"" + std::string(text) + "\"");
  r.canonicalize();
  return r;
}

/// Canonical text: "p" for integers, "p/q" otherwise.
inline std::string to_string(const Rat& r) { return r.get_str(10); }

template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<Rat> {
  static constexpr bool exact = true;
  static bool is_zero(const Rat& x) { return sgn(x) == 0; }
  static Rat abs(const Rat& x) { return ::abs(x); }
  static double to_double(const Rat& x) { return x.get_d(); }
};

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static bool is_zero(double x) { return x == 0.0 || !std::isfinite(x); }
  static double abs(double x) { return std::fabs(x); }
  static double to_double(double x) { return x; }
};

}  // namespace tnn
