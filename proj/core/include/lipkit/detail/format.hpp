#pragma once

#include <cstdio>
#include <string>

namespace lipkit::detail {

/// printf-style formatting into std::string (std::format is unavailable on
/// the oldest supported toolchain).
template <typename... Args>
std::string format(const char* fmt, Args... args) {
    const int needed = std::snprintf(nullptr, 0, fmt, args...);
    std::string out(needed > 0 ? static_cast<std::size_t>(needed) : 0, '\0');
    if (needed > 0) std::snprintf(out.data(), out.size() + 1, fmt, args...);
    return out;
}

/// Shortest round-trip decimal form of a double; used everywhere a value is
/// serialized so reruns are byte-identical.
inline std::string format_double(double v) { return format("%.17g", v); }

}  // namespace lipkit::detail
