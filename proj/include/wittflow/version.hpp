#pragma once

namespace wittflow {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace wittflow
