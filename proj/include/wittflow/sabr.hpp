#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "wittflow/closed_form.hpp"
#include "wittflow/flow_decomposition.hpp"
#include "wittflow/state.hpp"

namespace wittflow::models {

struct SabrParams {
    double beta = 0.9;
    double nu = 1.0;
    double rho = -0.7;
};

inline void validate(const SabrParams& p) {
    if (!(p.beta > 0.5 && p.beta < 1.0))
        throw std::invalid_argument("SabrParams: beta must lie in (0.5, 1)");
    if (!(p.rho > -1.0 && p.rho < 1.0))
        throw std::invalid_argument("SabrParams: rho must lie in (-1, 1)");
    if (!(p.nu >= 0.0)) throw std::invalid_argument("SabrParams: nu must be >= 0");
}

// SABR dynamics dX1 = X2 X1^beta dB1, dX2 = nu X2 (rho dB1 + sqrt(1-rho^2) dB2),
// written over the ladder basis
//   W_0 = -x2 d2,   W_n = x1^{1-n(1-beta)} x2^n / (1-beta) d1   (n >= 1),
// which satisfies [W_n, W_m] = (n-m) W_{n+m}. The Stratonovich fields are
// V_i = sum_j c[i][j] W_j with the rows below; every flow the schemes need is
// a closed-form composition of W flows, so the analytic backend never
// integrates an ODE.
class Sabr {
public:
    static constexpr int kBasisSpan = 3;       // V_i live on W_0..W_2
    static constexpr int kFullDecomposition = 4;  // closed forms cover P_0..P_4

    explicit Sabr(SabrParams p) : p_(p) {
        validate(p);
        const double b = p.beta, n = p.nu, r = p.rho;
        const double root = std::sqrt(1.0 - r * r);
        c_ = {{{0.5 * n * n, 0.5 * (b - 1.0) * n * r, 0.5 * b * (b - 1.0)},
               {-n * r, 1.0 - b, 0.0},
               {-n * root, 0.0, 0.0}}};
    }

    const SabrParams& params() const { return p_; }
    const std::array<std::array<double, 3>, 3>& basis_rows() const { return c_; }

    Vec2 base_field(int n, Vec2 x) const {
        if (n < 0) throw std::invalid_argument("Sabr::base_field: negative index");
        if (n == 0) return {0.0, -x.x2};
        const double expo = 1.0 - n * (1.0 - p_.beta);
        return {pow_plus(x.x1, expo) * std::pow(x.x2, n) / (1.0 - p_.beta), 0.0};
    }

    // exp(t W_0): exponential decay in x2; exp(t W_n), n >= 1: the x1 power
    // x1^{n(1-beta)} moves linearly at rate n x2^n t, clamped at zero.
    Vec2 base_flow(int n, double t, Vec2 x) const {
        if (n < 0) throw std::invalid_argument("Sabr::base_flow: negative index");
        if (n == 0) return {x.x1, x.x2 * std::exp(-t)};
        const double d = n * (1.0 - p_.beta);
        const double inner = n * std::pow(x.x2, n) * t + pow_plus(x.x1, d);
        return {inner <= 0.0 ? 0.0 : std::pow(inner, 1.0 / d), x.x2};
    }

    // sum_i w_i V_i evaluated directly (two powers per call; the RK backend's
    // inner loop lives here)
    Vec2 strat_field(const std::array<double, 3>& w, Vec2 x) const {
        const std::array<double, 3> a = basis_coefficients(w);
        const double inv = 1.0 / (1.0 - p_.beta);
        const double w1 = pow_plus(x.x1, p_.beta) * x.x2 * inv;
        const double w2 = pow_plus(x.x1, 2.0 * p_.beta - 1.0) * x.x2 * x.x2 * inv;
        return {a[1] * w1 + a[2] * w2, -a[0] * x.x2};
    }

    // exp(sum_i w_i V_i) as an ordered product of base flows, truncated at
    // basis index cap; the coefficients come from the closed forms.
    lie::FlowDecomposition decompose(const std::array<double, 3>& w, int cap,
                                     int /*seriesDegree*/ = 0) const {
        const std::array<double, 3> a3 = basis_coefficients(w);
        const std::array<double, 5> p = lie::sabr_closed_form_P({a3[0], a3[1], a3[2], 0.0, 0.0});
        lie::FlowDecomposition dec;
        const int top = cap < kFullDecomposition ? cap : kFullDecomposition;
        for (int i = 0; i <= top; ++i)
            if (p[static_cast<std::size_t>(i)] != 0.0) dec.push(i, p[static_cast<std::size_t>(i)]);
        return dec;
    }

    Vec2 ito_drift(Vec2) const { return {0.0, 0.0}; }

    Vec2 ito_diffusion(int i, Vec2 x) const {
        if (i == 1) return {x.x2 * pow_plus(x.x1, p_.beta), p_.nu * p_.rho * x.x2};
        if (i == 2) return {0.0, p_.nu * std::sqrt(1.0 - p_.rho * p_.rho) * x.x2};
        throw std::invalid_argument("Sabr::ito_diffusion: Brownian index must be 1 or 2");
    }

    std::array<double, 3> basis_coefficients(const std::array<double, 3>& w) const {
        std::array<double, 3> a{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) a[static_cast<std::size_t>(j)] += w[static_cast<std::size_t>(i)] * c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return a;
    }

private:
    SabrParams p_;
    std::array<std::array<double, 3>, 3> c_;  // c_[i][j]: V_i over W_j
};

}  // namespace wittflow::models
