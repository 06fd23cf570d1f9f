#pragma once

namespace erb {

inline constexpr const char* toolkit_name = "erbound";
inline constexpr const char* toolkit_version = "1.0.0";

}  // namespace erb
