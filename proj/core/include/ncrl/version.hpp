#pragma once

namespace ncrl {

inline constexpr const char* kVersion = "0.1.0";
inline constexpr const char* kToolName = "ncrl";

} // namespace ncrl
