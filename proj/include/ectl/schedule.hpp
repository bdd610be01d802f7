#ifndef ECTL_SCHEDULE_HPP
#define ECTL_SCHEDULE_HPP

#include <string>
#include <variant>
#include <vector>

#include "ectl/errors.hpp"

namespace ectl {

// Instantaneous rotation exp(beta*Gx + gamma*Gy) applied at time t.
struct DiracPulse {
    double t = 0.0;
    double beta = 0.0;  // u-impulse area (rad)
    double gamma = 0.0; // v-impulse area (rad)
};

// Constant controls (u, v) over [t0, t1].
struct ConstantSegment {
    double t0 = 0.0;
    double t1 = 0.0;
    double u = 0.0;
    double v = 0.0;
};

using PulseEvent = std::variant<DiracPulse, ConstantSegment>;

double event_start(const PulseEvent& e);
double event_end(const PulseEvent& e);

// Time-ordered open-loop control; gaps between events are free evolution.
struct ControlSchedule {
    std::vector<PulseEvent> events;
    double horizon = 0.0;

    // Rejects unsorted events, overlapping constant segments, a Dirac inside a
    // constant segment, nonpositive segment lengths, and horizon < last event.
    void validate() const;

    std::size_t dirac_count() const;
    // Dirac events with |beta|+|gamma| >= pi/2 (trips between the poles).
    std::size_t trip_count() const;

    // Appends other's events shifted so they start when this schedule ends.
    void append(const ControlSchedule& other);
};

// Replaces each Dirac by a width-eps rectangle of the same area. The p-th
// Dirac (1-indexed) starts at t_p + (p-1)*eps, so every free-evolution gap is
// preserved; later events shift by the accumulated widths and the horizon
// grows by dirac_count()*eps. eps must stay below the smallest gap between
// consecutive Dirac times.
ControlSchedule rectangularize(const ControlSchedule& schedule, double eps);

// JSON wire format: array of {"type":"dirac",...}/{"type":"const",...}
// objects plus a trailing {"horizon":...} object.
std::string schedule_to_json(const ControlSchedule& schedule);
ControlSchedule schedule_from_json(const std::string& text);

} // namespace ectl

#endif
