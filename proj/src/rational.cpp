#include "spinhurwitz/rational.hpp"

namespace spinhurwitz {

Integer factorial(long n)
{
    if (n < 0) throw Error("factorial of negative integer");
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), static_cast<unsigned long>(n));
    return r;
}

Integer binomial(long n, long k)
{
    if (k < 0 || n < 0 || k > n) return 0;
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

Rational pow(const Rational& r, long e)
{
    if (e < 0) {
        if (r == 0) throw Error("zero raised to a negative power");
        return pow(Rational(1) / r, -e);
    }
    Rational num;
    mpz_pow_ui(num.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<unsigned long>(e));
    mpz_pow_ui(num.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<unsigned long>(e));
    return num;
}

} // namespace spinhurwitz
