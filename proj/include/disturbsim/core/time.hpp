#pragma once

#include <cstdint>

namespace disturbsim {

/// Simulated time in picoseconds. Controller-clock cycles rarely land on whole
/// nanoseconds, so the engine keeps sub-nanosecond resolution.
using TimePs = std::int64_t;

constexpr TimePs ns_to_ps(std::uint64_t ns) { return static_cast<TimePs>(ns) * 1000; }
constexpr double ps_to_ns(TimePs ps) { return static_cast<double>(ps) / 1000.0; }

}  // namespace disturbsim
