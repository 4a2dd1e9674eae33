#pragma once

namespace recom {

inline constexpr const char* kToolName = "recom";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace recom
