// pulse.hpp — the detuning schedule delta(t) = nu - Omega(t) driving a protocol
#pragma once

#include "dicke/errors.hpp"

namespace dicke {

enum class PulseKind { Square, LinearChirp };

// delta(t) over [0, duration]; outside the window the boundary value holds.
struct PulseSchedule {
    PulseKind kind = PulseKind::Square;
    double duration = 0.0;      // [s]
    double delta_constant = 0.0;  // Square [rad/s]
    double delta_start = 0.0;     // LinearChirp [rad/s]
    double delta_end = 0.0;

    static PulseSchedule square(double delta, double duration);
    static PulseSchedule linear_chirp(double delta_start, double delta_end, double duration);
};

double detuning_at(const PulseSchedule& schedule, double t);
// Analytic d(delta)/dt: zero for Square, the chirp rate inside the window.
double detuning_slope_at(const PulseSchedule& schedule, double t);
// Implied microwave amplitude Omega(t) = nu - delta(t).
double drive_at(const PulseSchedule& schedule, double nu, double t);

// Checks duration > 0, finite deltas, and Omega(t) > 0 across the window.
void validate(const PulseSchedule& schedule, double nu);

}  // namespace dicke
