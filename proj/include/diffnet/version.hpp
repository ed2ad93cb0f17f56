#pragma once

namespace diffnet {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace diffnet
