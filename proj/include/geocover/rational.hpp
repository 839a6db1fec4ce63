#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace geocover {

using Rational = mpq_class;
using BigInt = mpz_class;

// grammar: -?[0-9]+(/[1-9][0-9]*)?
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& q);

std::optional<Rational> rational_sqrt(const Rational& q);

// smallest integer >= q, largest integer <= q
BigInt ceil_of(const Rational& q);
BigInt floor_of(const Rational& q);

} // namespace geocover
