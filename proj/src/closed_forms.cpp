#include "spinhurwitz/closed_forms.hpp"

#include <algorithm>
#include <set>

namespace spinhurwitz {

USeries useries_mul(const USeries& a, const USeries& b)
{
    const std::size_t n = std::min(a.size(), b.size());
    USeries out(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; i + j < n; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

USeries useries_pow(const USeries& a, int e)
{
    if (e < 0) throw Error("useries_pow: negative exponent");
    USeries out(a.size(), Rational(0));
    out[0] = 1;
    for (int i = 0; i < e; ++i) out = useries_mul(out, a);
    return out;
}

USeries useries_D(const USeries& a)
{
    USeries out(a);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= static_cast<long>(i);
    return out;
}

MultiSeries useries_to_multi(const USeries& a)
{
    MultiSeries out(1, static_cast<int>(a.size()) - 1);
    for (std::size_t i = 0; i < a.size(); ++i) out.add_term({static_cast<int>(i)}, a[i]);
    return out;
}

USeries z_series(const CurveSpec& spec, int N)
{
    USeries z(N + 1, Rational(0));
    for (int m = 0; spec.qr() * m + 1 <= N; ++m) {
        const long a = static_cast<long>(spec.qr()) * m + 1;
        z[a] = pow(Rational(a), m - 1) / Rational(factorial(m));
    }
    return z;
}

USeries x_of_z(const CurveSpec& spec, int N)
{
    USeries x(N + 1, Rational(0));
    for (int k = 0; spec.qr() * k + 1 <= N; ++k)
        x[spec.qr() * k + 1] = Rational(k % 2 ? -1 : 1) / Rational(factorial(k));
    return x;
}

USeries useries_compose(const USeries& a, const USeries& b)
{
    if (!b.empty() && sgn(b[0]) != 0) throw Error("useries_compose: inner series has a constant term");
    const std::size_t n = b.size();
    USeries out(n, Rational(0));
    USeries power(n, Rational(0));
    power[0] = 1;
    for (std::size_t j = 0; j < a.size() && j < n; ++j) {
        if (sgn(a[j]) != 0)
            for (std::size_t i = 0; i < n; ++i) out[i] += a[j] * power[i];
        power = useries_mul(power, b);
    }
    return out;
}

H01Data h01_series(const CurveSpec& spec, int N)
{
    H01Data out;
    out.y = useries_pow(z_series(spec, N), spec.q);
    out.h01.assign(N + 1, Rational(0));
    for (int a = 1; a <= N; ++a) out.h01[a] = out.y[a] / Rational(a);
    return out;
}

USeries t_series(const CurveSpec& spec, int N)
{
    // t = -qr / (1 - qr y^r) = -qr sum_j (qr y^r)^j
    const USeries y = h01_series(spec, N).y;
    USeries u = useries_pow(y, spec.r);
    for (auto& c : u) c *= spec.qr();
    USeries geometric(N + 1, Rational(0)), power(N + 1, Rational(0));
    power[0] = 1;
    for (int j = 0; j <= N; ++j) {
        for (int i = 0; i <= N; ++i) geometric[i] += power[i];
        power = useries_mul(power, u);
    }
    for (auto& c : geometric) c *= -spec.qr();
    return geometric;
}

namespace {

USeries poly_in(const std::vector<Rational>& f, const USeries& t)
{
    USeries out(t.size(), Rational(0)), power(t.size(), Rational(0));
    power[0] = 1;
    for (const Rational& c : f) {
        for (std::size_t i = 0; i < t.size(); ++i) out[i] += c * power[i];
        power = useries_mul(power, t);
    }
    return out;
}

} // namespace

MultiSeries h02_series(const CurveSpec& spec, int N)
{
    const int qr = spec.qr();
    // S = (x1 - x2)/(z1 - z2) = sum_k (-1)^k/k! h_{qrk}(z1, z2); s = S - 1
    MultiSeries s(2, N);
    for (int k = 1; qr * k <= N; ++k) {
        const Rational c = Rational(k % 2 ? -1 : 1) / Rational(factorial(k));
        for (int a = 0; a <= qr * k; ++a) s.add_term({a, qr * k - a}, c);
    }
    // -ln(1 + s) - z1^{qr} - z2^{qr}
    MultiSeries inz(2, N), power(2, N);
    power.add_term({0, 0}, 1);
    for (int j = 1; j <= N; ++j) {
        power = ms_mul(power, s);
        if (power.empty()) break;
        MultiSeries term = power;
        term *= Rational(j % 2 ? 1 : -1, j) * -1;
        inz += term;
    }
    inz.add_term({qr, 0}, -1);
    inz.add_term({0, qr}, -1);

    const USeries z = z_series(spec, N);
    std::vector<USeries> zpow(N + 1);
    zpow[0] = USeries(N + 1, Rational(0));
    zpow[0][0] = 1;
    for (int a = 1; a <= N; ++a) zpow[a] = useries_mul(zpow[a - 1], z);

    MultiSeries out(2, N);
    for (const auto& [e, c] : inz.terms()) {
        const USeries& p1 = zpow[e[0]];
        const USeries& p2 = zpow[e[1]];
        for (int i = e[0]; i <= N; ++i) {
            if (sgn(p1[i]) == 0) continue;
            for (int j = e[1]; i + j <= N; ++j)
                if (sgn(p2[j]) != 0) out.add_term({i, j}, c * p1[i] * p2[j]);
        }
    }
    return out;
}

USeries w02_diag_closed(const CurveSpec& spec, int N)
{
    const Rational qr = spec.qr();
    const Rational q2r2 = qr * qr;
    USeries w = poly_in({q2r2, 0, q2r2 - 1, 4 * qr, 3}, t_series(spec, N));
    const Rational scale = 1 / (12 * Rational(spec.r * spec.r) * Rational(spec.q * spec.q));
    for (auto& c : w) c *= scale;
    return w;
}

USeries w02_diag_from_h02(const CurveSpec& spec, int N)
{
    USeries w(N + 1, Rational(0));
    const MultiSeries h02 = h02_series(spec, N);
    for (const auto& [e, c] : h02.terms()) w[e[0] + e[1]] += c * e[0] * e[1];
    return w;
}

USeries dtx_residual(const CurveSpec& spec, const std::vector<Rational>& f, int N)
{
    const USeries t = t_series(spec, N);
    USeries lhs = useries_D(poly_in(f, t));
    std::vector<Rational> fprime;
    for (std::size_t i = 1; i < f.size(); ++i) fprime.push_back(f[i] * static_cast<long>(i));
    const Rational qr = spec.qr();
    // t^2 (t + qr)/qr = t^2 + t^3/qr
    USeries factor = poly_in({0, 0, 1, 1 / qr}, t);
    USeries rhs = useries_mul(factor, poly_in(fprime, t));
    for (int i = 0; i <= N; ++i) lhs[i] -= rhs[i];
    return lhs;
}

USeries h11_series(const CurveSpec& spec, int N)
{
    // (t + qr)/y = -q^2 r^2 y^{r-1} / (1 - qr y^r)
    const int q = spec.q, r = spec.r;
    const Rational qr = spec.qr();
    const USeries y = h01_series(spec, N).y;
    USeries u = useries_pow(y, r);
    for (auto& c : u) c *= qr;
    USeries geometric(N + 1, Rational(0)), power(N + 1, Rational(0));
    power[0] = 1;
    for (int j = 0; j <= N; ++j) {
        for (int i = 0; i <= N; ++i) geometric[i] += power[i];
        power = useries_mul(power, u);
    }
    USeries ratio = useries_mul(useries_pow(y, r - 1), geometric);
    for (auto& c : ratio) c *= -qr * qr;
    USeries poly = poly_in({1, Rational(-q), -1}, t_series(spec, N));
    USeries out = useries_mul(ratio, poly);
    const Rational scale = 1 / (24 * Rational(q * q) * Rational(r));
    for (auto& c : out) c *= scale;
    return out;
}

MultiSeries eq02_residual(const CurveSpec& spec, int N)
{
    const MultiSeries h02 = h02_series(spec, N);
    const USeries yr = useries_pow(h01_series(spec, N).y, spec.r);
    const Rational inv = Rational(1) / Rational(spec.qr());

    MultiSeries out(2, N);
    for (int var = 0; var < 2; ++var) {
        MultiSeries coef(2, N);
        for (int i = 0; i <= N; ++i) {
            Exponents e{0, 0};
            e[var] = i;
            coef.add_term(e, yr[i] - (i == 0 ? inv : Rational(0)));
        }
        out += ms_mul(coef, ms_D(var, h02));
    }
    // (y1^r x2 - y2^r x1)/(x1 - x2) = sum_n a_n x1 x2 h_{n-2}(x1, x2)
    for (int n = 2; n <= N; ++n)
        for (int a = 0; a <= n - 2; ++a) out.add_term({a + 1, n - 1 - a}, yr[n]);
    return out;
}

Rational residue_sum_check(const std::vector<Rational>& values)
{
    std::set<Rational> seen;
    for (const Rational& v : values) {
        if (sgn(v) == 0) throw DuplicateInputError("residue_sum_check: inputs must be nonzero");
        if (!seen.insert(v).second) throw DuplicateInputError("residue_sum_check: duplicate input " + v.get_str());
    }
    Rational sum = 0;
    for (std::size_t k = 0; k < values.size(); ++k) {
        Rational prod = 1;
        for (std::size_t i = 0; i < values.size(); ++i)
            if (i != k) prod *= values[i] / (values[k] - values[i]);
        sum += prod;
    }
    return sum;
}

} // namespace spinhurwitz
