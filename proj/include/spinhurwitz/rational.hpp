#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace spinhurwitz {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline Rational make_rational(const Integer& num, const Integer& den)
{
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational rational_from_strings(const std::string& num, const std::string& den)
{
    return make_rational(Integer(num), Integer(den));
}

Integer factorial(long n);
Integer binomial(long n, long k);

/// r^e for a signed exponent; r must be nonzero when e < 0.
Rational pow(const Rational& r, long e);

} // namespace spinhurwitz
