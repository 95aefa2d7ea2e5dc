#pragma once

namespace qg {

inline constexpr const char* kToolName = "quasigold";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace qg
