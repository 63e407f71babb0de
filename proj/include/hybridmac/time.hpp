#ifndef HYBRIDMAC_TIME_HPP
#define HYBRIDMAC_TIME_HPP

#include <cstdint>
#include <compare>
#include <string>

namespace hybridmac {

// All simulation time is integer nanoseconds. Durations share the
// representation; negative durations are legal (clock offsets are signed).
using TimeNs = std::int64_t;

struct Duration {
    TimeNs ns = 0;
    constexpr auto operator<=>(const Duration&) const = default;
};

// A point on the simulation timeline (or a clock reading, which may be
// negative for a clock running behind the epoch).
struct SimTime {
    TimeNs ns = 0;
    constexpr auto operator<=>(const SimTime&) const = default;
};

constexpr Duration nanoseconds(TimeNs v) { return {v}; }
constexpr Duration microseconds(TimeNs v) { return {v * 1000}; }
constexpr Duration milliseconds(TimeNs v) { return {v * 1'000'000}; }
constexpr Duration seconds(TimeNs v) { return {v * 1'000'000'000}; }

constexpr SimTime at_ns(TimeNs v) { return {v}; }

constexpr SimTime operator+(SimTime t, Duration d) { return {t.ns + d.ns}; }
constexpr SimTime operator-(SimTime t, Duration d) { return {t.ns - d.ns}; }
constexpr Duration operator-(SimTime a, SimTime b) { return {a.ns - b.ns}; }
constexpr Duration operator+(Duration a, Duration b) { return {a.ns + b.ns}; }
constexpr Duration operator-(Duration a, Duration b) { return {a.ns - b.ns}; }
constexpr Duration operator*(Duration d, TimeNs k) { return {d.ns * k}; }
constexpr Duration operator*(TimeNs k, Duration d) { return {d.ns * k}; }
constexpr Duration operator-(Duration d) { return {-d.ns}; }

constexpr Duration abs(Duration d) { return d.ns < 0 ? Duration{-d.ns} : d; }

inline double to_seconds(Duration d) { return static_cast<double>(d.ns) * 1e-9; }

std::string format_ns(TimeNs ns);

}  // namespace hybridmac

#endif
