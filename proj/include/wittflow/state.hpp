#pragma once

#include <cmath>

namespace wittflow {

// Two-component model state: x1 is the priced coordinate (forward / spot),
// x2 the volatility-like coordinate. Plain value type, componentwise algebra.
struct Vec2 {
    double x1 = 0.0;
    double x2 = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x1 + b.x1, a.x2 + b.x2}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x1 - b.x1, a.x2 - b.x2}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x1, s * a.x2}; }

inline bool is_finite(Vec2 a) { return std::isfinite(a.x1) && std::isfinite(a.x2); }

// max-norm helpers used throughout the tests and the flow cross-checks
inline double max_abs(Vec2 a) { return std::max(std::abs(a.x1), std::abs(a.x2)); }
inline double max_abs_diff(Vec2 a, Vec2 b) { return max_abs(a - b); }

// pow with the domain clamp written as a subscript plus in the flow tables:
// negative arguments are treated as 0. At the boundary the convention is
// 0^e = 0 for e > 0, 0^0 = 1, and 0 for e < 0 (flow frozen at the edge).
inline double pow_plus(double base, double expo) {
    if (base > 0.0) return std::pow(base, expo);
    if (expo > 0.0) return 0.0;
    return expo == 0.0 ? 1.0 : 0.0;
}

}  // namespace wittflow
