#pragma once

#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "wittflow/flow_decomposition.hpp"
#include "wittflow/lie_series.hpp"
#include "wittflow/state.hpp"

namespace wittflow::models {

struct HestonParams {
    double mu = 0.05;
    double kappa = 1.0;
    double theta = 0.09;
    double xi = 0.3;
    double rho = -0.5;
};

inline void validate(const HestonParams& p) {
    if (!(p.kappa >= 0.0)) throw std::invalid_argument("HestonParams: kappa must be >= 0");
    if (!(p.theta >= 0.0)) throw std::invalid_argument("HestonParams: theta must be >= 0");
    if (!(p.xi >= 0.0)) throw std::invalid_argument("HestonParams: xi must be >= 0");
    if (!(p.rho > -1.0 && p.rho < 1.0))
        throw std::invalid_argument("HestonParams: rho must lie in (-1, 1)");
}

// Heston dynamics dX1 = mu X1 dt + sqrt(X2) X1 dB1,
//                dX2 = kappa (theta - X2) dt + xi sqrt(X2) (rho dB1 + sqrt(1-rho^2) dB2),
// over the interleaved basis
//   W_{2n} = L_n = 2 x2^{1-n/2} d2,   W_{2n+1} = M_n = 2 x1 x2^{1-n/2} d1,
// with [M,M] = 0, [M_a, L_b] = (a-2) M_{a+b}, [L_a, L_b] = (a-b) L_{a+b}.
// The base flows are still elementary (each field moves one coordinate with
// the other frozen), but the decomposition coefficients have no closed form
// here, so the analytic backend runs the series splitter per flow.
class Heston {
public:
    static constexpr int kBasisSpan = 6;  // V_i live on W_0..W_5

    explicit Heston(HestonParams p) : p_(p) {
        validate(p);
        const double root = std::sqrt(1.0 - p.rho * p.rho);
        c_ = {{{-0.5 * p.kappa, -0.25, 0.0, 0.0, 0.5 * (p.kappa * p.theta - 0.25 * p.xi * p.xi),
                0.5 * (p.mu - 0.25 * p.xi * p.rho)},
               {0.0, 0.0, 0.5 * p.xi * p.rho, 0.5, 0.0, 0.0},
               {0.0, 0.0, 0.5 * p.xi * root, 0.0, 0.0, 0.0}}};
    }

    const HestonParams& params() const { return p_; }
    const std::array<std::array<double, 6>, 3>& basis_rows() const { return c_; }

    Vec2 base_field(int idx, Vec2 x) const {
        if (idx < 0) throw std::invalid_argument("Heston::base_field: negative index");
        const int n = idx / 2;
        const double g = 2.0 * pow_plus(x.x2, 1.0 - 0.5 * n);
        if (idx % 2 == 0) return {0.0, g};
        return {g * x.x1, 0.0};
    }

    // Even index 2n (volatility direction): x2^{n/2} moves linearly at rate n,
    // with the n = 0 ladder bottom the exponential limit x2 e^{2t}.
    // Odd index 2n+1 (asset direction): x1 scales by exp(2 x2^{1-n/2} t).
    Vec2 base_flow(int idx, double t, Vec2 x) const {
        if (idx < 0) throw std::invalid_argument("Heston::base_flow: negative index");
        const int n = idx / 2;
        if (idx % 2 == 1) return {x.x1 * std::exp(2.0 * t * pow_plus(x.x2, 1.0 - 0.5 * n)), x.x2};
        if (n == 0) return {x.x1, x.x2 * std::exp(2.0 * t)};
        const double inner = n * t + pow_plus(x.x2, 0.5 * n);
        return {x.x1, inner <= 0.0 ? 0.0 : std::pow(inner, 2.0 / n)};
    }

    // sum_i w_i V_i via the SDE-derived component forms (one sqrt per call);
    // x2 enters through the same clamp the basis fields use
    Vec2 strat_field(const std::array<double, 3>& w, Vec2 x) const {
        const double v = x.x2 > 0.0 ? x.x2 : 0.0;
        const double sv = std::sqrt(v);
        const double root = std::sqrt(1.0 - p_.rho * p_.rho);
        const Vec2 v0{(p_.mu - 0.25 * p_.xi * p_.rho) * x.x1 - 0.5 * x.x1 * v,
                      p_.kappa * p_.theta - 0.25 * p_.xi * p_.xi - p_.kappa * v};
        const Vec2 v1{x.x1 * sv, p_.xi * p_.rho * sv};
        const Vec2 v2{0.0, p_.xi * root * sv};
        return w[0] * v0 + w[1] * v1 + w[2] * v2;
    }

    // Series-backed splitting of exp(sum_i w_i V_i): coefficients over
    // W_0..W_5, split up to basis index cap at truncation degree
    // seriesDegree, evaluated at lambda = 1.
    lie::FlowDecomposition decompose(const std::array<double, 3>& w, int cap,
                                     int seriesDegree = 8) const {
        std::vector<double> a(6, 0.0);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 6; ++j)
                a[static_cast<std::size_t>(j)] +=
                    w[static_cast<std::size_t>(i)] * c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        while (a.size() > 1 && a.back() == 0.0) a.pop_back();

        lie::FlowDecomposition dec;
        if (a.size() == 1 && a[0] == 0.0) return dec;
        const auto p = lie::zassenhaus_decompose(a, lie::heston_structure(), seriesDegree, cap);
        for (std::size_t n = 0; n < p.size(); ++n) {
            const double flowTime = p[n].eval(1.0);
            if (flowTime != 0.0) dec.push(static_cast<int>(n), flowTime);
        }
        return dec;
    }

    Vec2 ito_drift(Vec2 x) const {
        return {p_.mu * x.x1, p_.kappa * (p_.theta - (x.x2 > 0.0 ? x.x2 : 0.0))};
    }

    Vec2 ito_diffusion(int i, Vec2 x) const {
        const double sv = std::sqrt(x.x2 > 0.0 ? x.x2 : 0.0);
        if (i == 1) return {sv * x.x1, p_.xi * p_.rho * sv};
        if (i == 2) return {0.0, p_.xi * std::sqrt(1.0 - p_.rho * p_.rho) * sv};
        throw std::invalid_argument("Heston::ito_diffusion: Brownian index must be 1 or 2");
    }

private:
    HestonParams p_;
    std::array<std::array<double, 6>, 3> c_;
};

}  // namespace wittflow::models
