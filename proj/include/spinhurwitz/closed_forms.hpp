#pragma once

#include "spinhurwitz/rational.hpp"
#include "spinhurwitz/series.hpp"

#include <vector>

namespace spinhurwitz {

class DuplicateInputError : public Error {
public:
    using Error::Error;
};

/// The curve x = z e^{-z^{qr}}, y = z^q.
struct CurveSpec {
    int q = 1;
    int r = 1;
    int qr() const { return q * r; }
};

/// Univariate series as a dense coefficient vector c[0..N].
using USeries = std::vector<Rational>;

USeries useries_mul(const USeries& a, const USeries& b);
USeries useries_pow(const USeries& a, int e);
/// Euler operator x d/dx.
USeries useries_D(const USeries& a);
MultiSeries useries_to_multi(const USeries& a);

/// z(x) = sum_m (qrm+1)^{m-1} x^{qrm+1} / m!, the inverse of x = z e^{-z^{qr}}.
USeries z_series(const CurveSpec& spec, int N);
/// x(z) = z e^{-z^{qr}} truncated at degree N.
USeries x_of_z(const CurveSpec& spec, int N);
/// Composition a(b(x)) for b without constant term.
USeries useries_compose(const USeries& a, const USeries& b);

struct H01Data {
    USeries y;
    USeries h01;
};
/// y(x) = z(x)^q and H_{0,1} with D H_{0,1} = y, vanishing at 0.
H01Data h01_series(const CurveSpec& spec, int N);

/// t(x) with 1/t = y^r - 1/(qr).
USeries t_series(const CurveSpec& spec, int N);

/// H_{0,2} = ln((z1 - z2)/(x1 - x2)) - y1^r - y2^r, total degree <= N.
MultiSeries h02_series(const CurveSpec& spec, int N);

/// W_{0,2}(x,x) from the t closed form.
USeries w02_diag_closed(const CurveSpec& spec, int N);
/// W_{0,2}(x,x) from the diagonal of D1 D2 H_{0,2}.
USeries w02_diag_from_h02(const CurveSpec& spec, int N);

/// D_x f(t(x)) - t^2 (t + qr)/(qr) f'(t(x)) for a polynomial f given by its
/// coefficients; zero when the chain rule formula holds.
USeries dtx_residual(const CurveSpec& spec, const std::vector<Rational>& f, int N);

/// (qr + t)(1 - qt - t^2)/(24 q^2 r y) expanded in x.
USeries h11_series(const CurveSpec& spec, int N);

/// Left-hand side of the (0,2) cut-and-join equation evaluated on h02_series.
MultiSeries eq02_residual(const CurveSpec& spec, int N);

/// sum_k prod_{i != k} x_i/(x_k - x_i) for pairwise distinct nonzero inputs.
Rational residue_sum_check(const std::vector<Rational>& values);

} // namespace spinhurwitz
