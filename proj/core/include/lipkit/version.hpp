#pragma once

namespace lipkit {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace lipkit
