#pragma once

namespace schmidt {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace schmidt
