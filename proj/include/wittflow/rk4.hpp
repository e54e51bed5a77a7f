#pragma once

#include <functional>
#include <sstream>
#include <stdexcept>

#include "wittflow/state.hpp"

namespace wittflow::ode {

// Classical fixed-step RK4 for autonomous 2-d fields; the reference backend
// the analytic flow formulas are cross-checked against.
struct FieldFlowProblem {
    std::function<Vec2(Vec2)> field;
    double duration = 0.0;  // may be negative (backward flow)
    int substeps = 8;
};

template <class Field>
Vec2 rk4_flow(Field&& field, double duration, int substeps, Vec2 x) {
    if (substeps < 1) throw std::invalid_argument("rk4_flow: substeps must be >= 1");
    const double h = duration / substeps;
    for (int s = 0; s < substeps; ++s) {
        const Vec2 k1 = field(x);
        const Vec2 k2 = field(x + (0.5 * h) * k1);
        const Vec2 k3 = field(x + (0.5 * h) * k2);
        const Vec2 k4 = field(x + h * k3);
        x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!is_finite(x)) {
            std::ostringstream msg;
            msg << "rk4_flow: non-finite state after substep " << s + 1 << " of " << substeps
                << " (x1=" << x.x1 << ", x2=" << x.x2 << ")";
            throw std::domain_error(msg.str());
        }
    }
    return x;
}

inline Vec2 rk4_flow(const FieldFlowProblem& problem, Vec2 x) {
    return rk4_flow(problem.field, problem.duration, problem.substeps, x);
}

}  // namespace wittflow::ode
