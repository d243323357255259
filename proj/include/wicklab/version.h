#pragma once

namespace wicklab {

inline constexpr const char* kVersion = "0.1.0";
inline const char* version_string() { return kVersion; }

}  // namespace wicklab
