#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "wittflow/state.hpp"

namespace wittflow::lie {

// Ordered product of base flows: entries (index, flowTime) with strictly
// increasing indices. Applying the decomposition runs index 0 first.
struct FlowDecomposition {
    std::vector<std::pair<int, double>> entries;

    void push(int index, double flowTime) {
        if (!entries.empty() && entries.back().first >= index)
            throw std::invalid_argument("FlowDecomposition: indices must increase");
        entries.push_back({index, flowTime});
    }
};

// flow(index, time, state) -> state; entries are applied left to right.
template <class Flow>
Vec2 apply_decomposition(const FlowDecomposition& dec, Flow&& flow, Vec2 x) {
    for (const auto& [index, time] : dec.entries) x = flow(index, time, x);
    return x;
}

}  // namespace wittflow::lie
