#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace qmzv {

using Rat = boost::multiprecision::mpq_rational;
using BigInt = boost::multiprecision::mpz_int;

/// Parses "p/q", a decimal ("0.3"), scientific notation ("1e-30") or a plain
/// integer into an exact rational.  Throws Error(syntax_error) on bad input.
Rat parse_rat(std::string_view text);

/// Canonical text form: "p" or "p/q" with q > 0.
std::string rat_str(const Rat& r);

Rat rat_pow(const Rat& base, long exp);

}  // namespace qmzv
