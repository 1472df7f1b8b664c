#pragma once

#include <gmpxx.h>

#include <string>

namespace cha {

// Exact scalars. mpq_class keeps values in lowest terms with a positive
// denominator after every arithmetic operation.
using Integer = mpz_class;
using Rational = mpq_class;

inline std::string to_string(const Integer& value) { return value.get_str(); }

inline std::string to_string(const Rational& value) { return value.get_str(); }

inline bool is_integral(const Rational& value) { return value.get_den() == 1; }

inline int sign(const Integer& value) { return sgn(value); }

inline int sign(const Rational& value) { return sgn(value); }

}  // namespace cha
