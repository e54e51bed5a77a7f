#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "wittflow/normal.hpp"
#include "wittflow/philox.hpp"
#include "wittflow/sobol.hpp"

namespace wittflow::sampling {

enum class SamplingKind { sobol, prng };

// Uniform coordinate supply for one run: the Sobol table (shifted by skip)
// or the counter-based generator keyed by seed. Either way the value is a
// pure function of (sampleIndex, coord), so samples can be generated in any
// order and the result cannot depend on scheduling.
struct SampleSource {
    SamplingKind kind = SamplingKind::prng;
    std::uint64_t seed = 0;
    std::uint64_t skip = 0;  // sobol: index offset applied before each sample
    const SobolTable* table = nullptr;

    double uniform01(std::uint64_t sampleIndex, int coord) const {
        if (sampleIndex == 0) throw std::invalid_argument("SampleSource: sample index must be >= 1");
        if (kind == SamplingKind::sobol) {
            if (table == nullptr) throw std::invalid_argument("SampleSource: no Sobol table attached");
            return table->point(skip + sampleIndex, coord);
        }
        return philox_uniform(seed, sampleIndex, static_cast<std::uint32_t>(coord));
    }
};

enum class SchemeKind { em, nv, nn };

inline int coords_per_step(SchemeKind k) {
    switch (k) {
        case SchemeKind::em: return 2;  // two normals
        case SchemeKind::nv: return 3;  // two normals + the branch coordinate
        case SchemeKind::nn: return 4;  // four normals
    }
    throw std::invalid_argument("coords_per_step: unknown scheme");
}

// Step-major coordinate layout: step s owns coordinates
// [s*coordsPerStep, (s+1)*coordsPerStep), so low Sobol dimensions line up
// with early time steps.
struct DrawPlan {
    SchemeKind scheme = SchemeKind::nv;
    int nSteps = 1;
    int coordsPerStep = 3;
    int dimension = 3;
};

inline DrawPlan make_draw_plan(SchemeKind scheme, int nSteps) {
    if (nSteps < 1) throw std::invalid_argument("make_draw_plan: nSteps must be >= 1");
    const int cps = coords_per_step(scheme);
    return {scheme, nSteps, cps, cps * nSteps};
}

// Draws consumed by one time step. em/nv read z[0..1], nn reads all four in
// the order Z_1^1, Z_1^2, Z_2^1, Z_2^2; sign carries the nv branch choice.
struct StepDraws {
    std::array<double, 4> z{};
    double sign = 1.0;
};

inline StepDraws step_draws(const SampleSource& src, const DrawPlan& plan,
                            std::uint64_t sampleIndex, int step) {
    if (step < 0 || step >= plan.nSteps) throw std::invalid_argument("step_draws: step out of range");
    const int base = step * plan.coordsPerStep;
    StepDraws d;
    d.z[0] = inv_normal_cdf(src.uniform01(sampleIndex, base));
    d.z[1] = inv_normal_cdf(src.uniform01(sampleIndex, base + 1));
    switch (plan.scheme) {
        case SchemeKind::em:
            break;
        case SchemeKind::nv:
            // branch coordinate: +1 on the lower half, -1 on the upper
            d.sign = src.uniform01(sampleIndex, base + 2) < 0.5 ? 1.0 : -1.0;
            break;
        case SchemeKind::nn:
            d.z[2] = inv_normal_cdf(src.uniform01(sampleIndex, base + 2));
            d.z[3] = inv_normal_cdf(src.uniform01(sampleIndex, base + 3));
            break;
    }
    return d;
}

inline std::vector<StepDraws> draws_for_sample(const SampleSource& src, const DrawPlan& plan,
                                               std::uint64_t sampleIndex) {
    std::vector<StepDraws> out;
    out.reserve(static_cast<std::size_t>(plan.nSteps));
    for (int s = 0; s < plan.nSteps; ++s) out.push_back(step_draws(src, plan, sampleIndex, s));
    return out;
}

}  // namespace wittflow::sampling
