#pragma once

namespace odq {

inline constexpr const char* kToolName = "odq-assess";
inline constexpr const char* kToolVersion = "0.1.0";

} // namespace odq
