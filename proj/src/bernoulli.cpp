#include "spinhurwitz/bernoulli.hpp"

#include <mutex>
#include <vector>

namespace spinhurwitz {

namespace {

// Bernoulli numbers from sum_{j<=m} binom(m+1, j) B_j = 0, cached.
class BernoulliTable {
public:
    Rational get(long k)
    {
        std::lock_guard<std::mutex> lock(mutex_);
        while (static_cast<long>(table_.size()) <= k) {
            const long m = static_cast<long>(table_.size());
            if (m == 0) {
                table_.emplace_back(1);
                continue;
            }
            Rational acc = 0;
            for (long j = 0; j < m; ++j) acc += Rational(binomial(m + 1, j)) * table_[j];
            Rational b = -acc / Rational(m + 1);
            b.canonicalize();
            table_.push_back(b);
        }
        return table_[k];
    }

private:
    std::mutex mutex_;
    std::vector<Rational> table_;
};

BernoulliTable& table()
{
    static BernoulliTable t;
    return t;
}

} // namespace

Rational bernoulli(long k)
{
    if (k < 0) throw Error("bernoulli: negative index");
    return table().get(k);
}

Rational kernel_coeff(KernelKind kind, long j)
{
    if (j < 0) throw Error("kernel_coeff: negative index");
    switch (kind) {
    case KernelKind::z_over_zeta: {
        // (2^{1-2j} - 1) B_{2j} / (2j)!
        Rational two_pow = pow(Rational(2), 1 - 2 * j);
        Rational r = (two_pow - 1) * bernoulli(2 * j) / Rational(factorial(2 * j));
        r.canonicalize();
        return r;
    }
    case KernelKind::zeta_over_w: {
        Rational r(Integer(1), Integer(factorial(2 * j + 1)) * pow(Rational(4), j).get_num());
        r.canonicalize();
        return r;
    }
    }
    return 0;
}

} // namespace spinhurwitz
