#pragma once

namespace optocool {

inline constexpr const char* kToolName = "optocool";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace optocool
