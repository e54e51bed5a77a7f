#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "wittflow/heston.hpp"
#include "wittflow/lie_series.hpp"
#include "wittflow/sabr.hpp"
#include "wittflow/state.hpp"

namespace wittflow::models {

// Type-erased model description for generic consumers (CLI, cross-model
// tests). The scheme hot paths use the concrete Sabr/Heston classes directly.
struct ModelSpec {
    std::string name;
    int brownianCount = 2;
    std::vector<std::vector<double>> c;  // c[i][j]: Stratonovich V_i over basis W_j
    lie::StructureTable structure;
    int ratioConstant = 1;  // max basis-index growth per expansion order
    std::function<Vec2(int, double, Vec2)> baseFlow;
    std::function<Vec2(int, Vec2)> baseField;
    std::function<Vec2(Vec2)> itoDrift;
    std::function<Vec2(int, Vec2)> itoDiffusion;
};

// V_i(x) assembled from the basis expansion (the route the RK backend and the
// bracket tests rely on; the concrete models carry an equivalent direct form)
inline Vec2 raw_field_eval(const ModelSpec& spec, int i, Vec2 x) {
    if (i < 0 || i >= static_cast<int>(spec.c.size()))
        throw std::invalid_argument("raw_field_eval: field index out of range");
    Vec2 acc{0.0, 0.0};
    const auto& row = spec.c[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < row.size(); ++j) {
        if (row[j] == 0.0) continue;
        acc = acc + row[j] * spec.baseField(static_cast<int>(j), x);
    }
    return acc;
}

inline ModelSpec make_sabr_spec(const SabrParams& params) {
    auto model = std::make_shared<Sabr>(params);
    ModelSpec spec;
    spec.name = "sabr";
    spec.ratioConstant = 1;
    spec.structure = lie::witt_structure();
    for (const auto& row : model->basis_rows()) spec.c.push_back({row.begin(), row.end()});
    spec.baseFlow = [model](int n, double t, Vec2 x) { return model->base_flow(n, t, x); };
    spec.baseField = [model](int n, Vec2 x) { return model->base_field(n, x); };
    spec.itoDrift = [model](Vec2 x) { return model->ito_drift(x); };
    spec.itoDiffusion = [model](int i, Vec2 x) { return model->ito_diffusion(i, x); };
    return spec;
}

inline ModelSpec make_heston_spec(const HestonParams& params) {
    auto model = std::make_shared<Heston>(params);
    ModelSpec spec;
    spec.name = "heston";
    spec.ratioConstant = 3;
    spec.structure = lie::heston_structure();
    for (const auto& row : model->basis_rows()) spec.c.push_back({row.begin(), row.end()});
    spec.baseFlow = [model](int n, double t, Vec2 x) { return model->base_flow(n, t, x); };
    spec.baseField = [model](int n, Vec2 x) { return model->base_field(n, x); };
    spec.itoDrift = [model](Vec2 x) { return model->ito_drift(x); };
    spec.itoDiffusion = [model](int i, Vec2 x) { return model->ito_diffusion(i, x); };
    return spec;
}

}  // namespace wittflow::models
