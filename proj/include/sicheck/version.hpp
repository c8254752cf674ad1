#pragma once

namespace sicheck {

inline constexpr const char* kVersion = "0.3.0";

} // namespace sicheck
