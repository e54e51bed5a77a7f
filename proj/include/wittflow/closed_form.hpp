#pragma once

#include <array>
#include <cmath>

#include "wittflow/lambda_series.hpp"

namespace wittflow::lie {

// Switch point below which the closed forms are evaluated through their
// Taylor expansions in a_0 (the direct expressions divide by powers of a_0).
inline constexpr double kClosedFormA0Cutoff = 1e-4;

namespace detail {

// Taylor-in-a_0 evaluation path. Each P_n is (e^{z}-1)/z^{q} times a bracket
// of exponentials with a zero of matching order at z = 0, so the numerator
// series can be shifted down exactly and evaluated as a short polynomial.
// Degree 9 before the shift leaves at least a degree-6 tail, making the
// truncation error ~|a_0|^7 — invisible below the cutoff.
inline std::array<double, 5> closed_form_small_a0(const std::array<double, 5>& a) {
    constexpr int D = 9;
    const double z = a[0];
    const LambdaSeries one = LambdaSeries::constant(D, 1.0);
    const LambdaSeries e1 = LambdaSeries::exp_linear(D, 1.0);
    const LambdaSeries e2 = LambdaSeries::exp_linear(D, 2.0);
    const LambdaSeries e3 = LambdaSeries::exp_linear(D, 3.0);
    LambdaSeries lin(D);
    lin.coeff(1) = 1.0;  // the explicit a_0 factors inside the brackets

    std::array<double, 5> p{};
    p[0] = z;

    p[1] = a[1] * (e1 - one).shifted_down(1).eval(z);
    p[2] = 0.5 * a[2] * (e2 - one).shifted_down(1).eval(z);

    LambdaSeries b3 = (e2.scaled(2.0) - e1 - one).scaled(a[1] * a[2]) +
                      lin.mul(one + e1 + e2).scaled(2.0 * a[3]);
    p[3] = (e1 - one).mul(b3).shifted_down(2).eval(z) / 6.0;

    LambdaSeries b4 = (one + e1 - e2.scaled(5.0) + e3.scaled(3.0)).scaled(a[1] * a[1] * a[2]) +
                      lin.mul(e3.scaled(6.0) - (one + e1 + e2).scaled(2.0)).scaled(a[1] * a[3]) +
                      lin.mul(lin).mul(one + e1 + e2 + e3).scaled(3.0 * a[4]);
    p[4] = (e1 - one).mul(b4).shifted_down(3).eval(z) / 12.0;
    return p;
}

}  // namespace detail

// Closed-form decomposition coefficients for exp(sum_{i<=4} a_i W_i) under
// the ladder bracket [W_n, W_m] = (n-m) W_{n+m}:
//   exp(sum a_i W_i) = exp(P_0 W_0) ... exp(P_4 W_4) up to terms of index > 4.
// Near a_0 = 0 the removable singularities are taken through series limits.
inline std::array<double, 5> sabr_closed_form_P(const std::array<double, 5>& a) {
    if (std::abs(a[0]) < kClosedFormA0Cutoff) return detail::closed_form_small_a0(a);

    const double a0 = a[0];
    const double e1 = std::exp(a0);
    const double e2 = e1 * e1;
    const double e3 = e2 * e1;

    std::array<double, 5> p{};
    p[0] = a0;
    p[1] = a[1] * (e1 - 1.0) / a0;
    p[2] = a[2] * (e2 - 1.0) / (2.0 * a0);
    p[3] = (e1 - 1.0) / (6.0 * a0 * a0) *
           (a[1] * a[2] * (2.0 * e2 - e1 - 1.0) + 2.0 * a0 * a[3] * (1.0 + e1 + e2));
    p[4] = (e1 - 1.0) / (12.0 * a0 * a0 * a0) *
           (a[1] * a[1] * a[2] * (1.0 + e1 - 5.0 * e2 + 3.0 * e3) +
            a0 * a[1] * a[3] * (6.0 * e3 - 2.0 - 2.0 * e1 - 2.0 * e2) +
            3.0 * a0 * a0 * a[4] * (1.0 + e1 + e2 + e3));
    return p;
}

}  // namespace wittflow::lie
