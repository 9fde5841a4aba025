#pragma once

namespace divlab {

inline constexpr const char* kToolName = "divlab";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace divlab
