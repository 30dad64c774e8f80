#include "dicke/pulse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace dicke {

PulseSchedule PulseSchedule::square(double delta, double duration) {
    PulseSchedule s;
    s.kind = PulseKind::Square;
    s.delta_constant = delta;
    s.duration = duration;
    return s;
}

PulseSchedule PulseSchedule::linear_chirp(double delta_start, double delta_end, double duration) {
    PulseSchedule s;
    s.kind = PulseKind::LinearChirp;
    s.delta_start = delta_start;
    s.delta_end = delta_end;
    s.duration = duration;
    return s;
}

double detuning_at(const PulseSchedule& schedule, double t) {
    if (schedule.kind == PulseKind::Square) return schedule.delta_constant;
    const double clamped = std::clamp(t, 0.0, schedule.duration);
    if (schedule.duration <= 0.0) return schedule.delta_start;
    const double x = clamped / schedule.duration;
    return schedule.delta_start + (schedule.delta_end - schedule.delta_start) * x;
}

double detuning_slope_at(const PulseSchedule& schedule, double t) {
    if (schedule.kind == PulseKind::Square) return 0.0;
    if (t < 0.0 || t > schedule.duration || schedule.duration <= 0.0) return 0.0;
    return (schedule.delta_end - schedule.delta_start) / schedule.duration;
}

double drive_at(const PulseSchedule& schedule, double nu, double t) {
    return nu - detuning_at(schedule, t);
}

void validate(const PulseSchedule& schedule, double nu) {
    if (!(schedule.duration > 0.0) || !std::isfinite(schedule.duration)) {
        throw ConfigError("duration", "pulse duration must be positive and finite");
    }
    const double extremes[] = {detuning_at(schedule, 0.0), detuning_at(schedule, schedule.duration)};
    for (double d : extremes) {
        if (!std::isfinite(d)) throw ConfigError("pulse", "detuning is not finite");
        if (!(nu - d > 0.0)) {
            throw ConfigError("pulse", "implied drive Omega = nu - delta is not positive (delta = " +
                                           std::to_string(d) + ")");
        }
    }
}

}  // namespace dicke
