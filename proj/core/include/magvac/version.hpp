#pragma once

namespace magvac {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace magvac
