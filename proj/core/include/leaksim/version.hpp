#pragma once

namespace leaksim {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace leaksim
