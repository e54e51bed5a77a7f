#pragma once

#include <array>
#include <cmath>
#include <stdexcept>

#include "wittflow/draws.hpp"
#include "wittflow/flow_decomposition.hpp"
#include "wittflow/rk4.hpp"
#include "wittflow/state.hpp"

namespace wittflow::schemes {

using sampling::DrawPlan;
using sampling::SampleSource;
using sampling::SchemeKind;
using sampling::StepDraws;

enum class Backend { analytic, rk };

struct SchemeConfig {
    SchemeKind scheme = SchemeKind::nv;
    Backend backend = Backend::analytic;
    int nvTermCap = 3;      // highest basis index kept per flow, nv splitting
    int nnTermCap = 4;      // same for the two-exponential splitting
    int rkSubsteps = 8;     // RK4 resolution of the rk backend
    double r = 0.5;         // free weight of the two-exponential scheme
    int seriesDegree = 8;   // truncation degree where splitting runs the series engine
};

namespace detail {

// exp(sum_i w_i V_i)(x) by either backend. The analytic route splits into
// base flows; the rk route integrates the combined Stratonovich field once
// over unit time (coefficients folded into the field).
template <class Model>
Vec2 flow_exp(const Model& m, const std::array<double, 3>& w, int cap,
              const SchemeConfig& cfg, Vec2 x) {
    if (cfg.backend == Backend::analytic) {
        const auto dec = m.decompose(w, cap, cfg.seriesDegree);
        return lie::apply_decomposition(
            dec, [&m](int idx, double s, Vec2 y) { return m.base_flow(idx, s, y); }, x);
    }
    return ode::rk4_flow([&m, &w](Vec2 y) { return m.strat_field(w, y); }, 1.0, cfg.rkSubsteps, x);
}

inline void check_step_time(double t) {
    if (!(t > 0.0 && t <= 1.0))
        throw std::invalid_argument("scheme step: step length must lie in (0, 1]");
}

}  // namespace detail

// One Euler-Maruyama step in Ito form (the drift here is the Ito drift, not
// the Stratonovich-corrected one)
template <class Model>
Vec2 em_step(const Model& m, Vec2 x, double t, const StepDraws& d) {
    detail::check_step_time(t);
    const double rt = std::sqrt(t);
    return x + t * m.ito_drift(x) + (rt * d.z[0]) * m.ito_diffusion(1, x) +
           (rt * d.z[1]) * m.ito_diffusion(2, x);
}

// Strang-style splitting: half-time drift flow, the two Brownian flows in
// draw order (sign +1) or reversed (sign -1), then the second half drift.
template <class Model>
Vec2 nv_step(const Model& m, Vec2 x, double t, const StepDraws& d, const SchemeConfig& cfg) {
    detail::check_step_time(t);
    const double rt = std::sqrt(t);
    const std::array<double, 3> half{0.5 * t, 0.0, 0.0};
    const std::array<double, 3> b1{0.0, rt * d.z[0], 0.0};
    const std::array<double, 3> b2{0.0, 0.0, rt * d.z[1]};
    x = detail::flow_exp(m, half, cfg.nvTermCap, cfg, x);
    if (d.sign > 0.0) {
        x = detail::flow_exp(m, b1, cfg.nvTermCap, cfg, x);
        x = detail::flow_exp(m, b2, cfg.nvTermCap, cfg, x);
    } else {
        x = detail::flow_exp(m, b2, cfg.nvTermCap, cfg, x);
        x = detail::flow_exp(m, b1, cfg.nvTermCap, cfg, x);
    }
    return detail::flow_exp(m, half, cfg.nvTermCap, cfg, x);
}

// Two-exponential splitting with correlated Gaussian weights: the r-weighted
// combination goes into the outer exponential, the complement into the inner
// one, and the step applies exp(Y_1) first, then exp(Y_0).
template <class Model>
Vec2 nn_step(const Model& m, Vec2 x, double t, const StepDraws& d, const SchemeConfig& cfg) {
    detail::check_step_time(t);
    const double rt = std::sqrt(t);
    const double invRoot2 = 1.0 / std::sqrt(2.0);
    const double r = cfg.r;
    const double s11 = r * d.z[0] + invRoot2 * d.z[1];
    const double s12 = (1.0 - r) * d.z[0] - invRoot2 * d.z[1];
    const double s21 = r * d.z[2] + invRoot2 * d.z[3];
    const double s22 = (1.0 - r) * d.z[2] - invRoot2 * d.z[3];
    const std::array<double, 3> y1{(1.0 - r) * t, s12 * rt, s22 * rt};
    const std::array<double, 3> y0{r * t, s11 * rt, s21 * rt};
    x = detail::flow_exp(m, y1, cfg.nnTermCap, cfg, x);
    return detail::flow_exp(m, y0, cfg.nnTermCap, cfg, x);
}

template <class Model>
Vec2 scheme_step(const Model& m, Vec2 x, double t, const StepDraws& d, const SchemeConfig& cfg) {
    switch (cfg.scheme) {
        case SchemeKind::em: return em_step(m, x, t, d);
        case SchemeKind::nv: return nv_step(m, x, t, d, cfg);
        case SchemeKind::nn: return nn_step(m, x, t, d, cfg);
    }
    throw std::invalid_argument("scheme_step: unknown scheme");
}

// Equal-step path from 0 to maturity, one StepDraws block per step
template <class Model>
Vec2 simulate_path(const Model& m, Vec2 x0, double maturity, const SchemeConfig& cfg,
                   const SampleSource& src, const DrawPlan& plan, std::uint64_t sampleIndex) {
    if (plan.scheme != cfg.scheme)
        throw std::invalid_argument("simulate_path: draw plan built for a different scheme");
    if (!(maturity > 0.0)) throw std::invalid_argument("simulate_path: maturity must be > 0");
    const double t = maturity / plan.nSteps;
    Vec2 x = x0;
    for (int s = 0; s < plan.nSteps; ++s)
        x = scheme_step(m, x, t, sampling::step_draws(src, plan, sampleIndex, s), cfg);
    return x;
}

}  // namespace wittflow::schemes
