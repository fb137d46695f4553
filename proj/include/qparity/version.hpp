#pragma once

namespace qparity {

inline constexpr const char* kToolName = "qparity";
inline constexpr const char* kToolVersion = "1.0.0";

}  // namespace qparity
