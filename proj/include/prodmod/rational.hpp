#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace prodmod {

using Rational = mpq_class;

// Accepts "a", "a/b" and "-a/b"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

// Always prints "num/den", e.g. "0/1".
std::string to_fraction(const Rational& q);

}  // namespace prodmod
