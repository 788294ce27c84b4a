#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <string_view>

namespace vchain {

using Rational = boost::multiprecision::cpp_rational;

/// Rounds half-to-even at `places` decimals and drops trailing zeros
/// ("-0.052083", "3.25", "3").
std::string format_decimal(const Rational& value, int places = 6);

/// Exact text form: integer or finite decimal when the denominator allows,
/// otherwise "p/q". Always parseable by parse_rational.
std::string format_exact(const Rational& value);

/// Accepts "12", "1.25" and "3/2". No sign, no exponent.
std::optional<Rational> parse_rational(std::string_view text);

double to_double(const Rational& value);

} // namespace vchain
