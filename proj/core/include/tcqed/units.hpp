// units.hpp — frequency and circuit unit conventions
//
// All angular frequencies and rates are stored internally in rad/us; time is
// in us.  Linear frequencies quoted in MHz or GHz convert via a factor 2*pi,
// since 1 MHz = 1/us.  Inductances are in nH and currents in uA, so the flux
// quantum h/2e is the clean constant 2.067833848 nH*uA.

#pragma once

#include <numbers>
#include <string>

namespace tcqed::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

// Linear MHz -> angular rad/us.
inline constexpr double mhz(double f) { return two_pi * f; }

// Linear GHz -> angular rad/us.
inline constexpr double ghz(double f) { return two_pi * 1000.0 * f; }

// Angular rad/us -> linear MHz.
inline constexpr double to_mhz(double w) { return w / two_pi; }

// Flux quantum h/2e in nH*uA.
inline constexpr double flux_quantum = 2.067833848;

inline constexpr const char* version = "0.1.0";

} // namespace tcqed::units
