#pragma once

namespace hapslink {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hapslink
