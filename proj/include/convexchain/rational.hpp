#pragma once

#include <gmpxx.h>

#include <string>

namespace convexchain {

using BigInt = mpz_class;
using Rational = mpq_class;

// Always "numerator/denominator", also for integers ("1/1", "0/1").
std::string to_string(const Rational& q);

// Accepts "p/q" or a bare integer; the result is canonicalized.
Rational rational_from_string(const std::string& text);

double to_double(const Rational& q);

}  // namespace convexchain
