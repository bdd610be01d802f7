#include "ectl/propagate.hpp"

#include "ectl/parallel.hpp"

namespace ectl {

EnsembleState free_evolve(const EnsembleState& state, double dt) {
    if (dt < 0.0) throw PreconditionError("free_evolve needs dt >= 0");
    EnsembleState out;
    out.grid = state.grid;
    out.m.resize(state.size());
    parallel_for(state.size(), [&](std::size_t i) {
        out.m[i] = rot_z(state.grid.nodes[i] * dt) * state.m[i];
    });
    return out;
}

EnsembleState apply_dirac(const EnsembleState& state, double beta, double gamma) {
    const Mat3 r = so3_exp({beta, gamma, 0.0}); // omega-independent
    EnsembleState out;
    out.grid = state.grid;
    out.m.resize(state.size());
    parallel_for(state.size(), [&](std::size_t i) { out.m[i] = r * state.m[i]; });
    return out;
}

EnsembleState apply_constant(const EnsembleState& state, double u, double v, double dt) {
    if (!(dt > 0.0)) throw PreconditionError("apply_constant needs dt > 0");
    EnsembleState out;
    out.grid = state.grid;
    out.m.resize(state.size());
    parallel_for(state.size(), [&](std::size_t i) {
        out.m[i] = so3_exp({u * dt, v * dt, state.grid.nodes[i] * dt}) * state.m[i];
    });
    return out;
}

EnsembleState simulate(const EnsembleState& state, const ControlSchedule& schedule) {
    schedule.validate();
    EnsembleState cur = state;
    double t = 0.0;
    for (const auto& e : schedule.events) {
        const double t0 = event_start(e);
        if (t0 > t) cur = free_evolve(cur, t0 - t);
        if (const auto* d = std::get_if<DiracPulse>(&e)) {
            cur = apply_dirac(cur, d->beta, d->gamma);
            t = d->t;
        } else {
            const auto& c = std::get<ConstantSegment>(e);
            cur = apply_constant(cur, c.u, c.v, c.t1 - c.t0);
            t = c.t1;
        }
    }
    if (schedule.horizon > t) cur = free_evolve(cur, schedule.horizon - t);
    return cur;
}

Mat3 endpoint_operator(const ControlSchedule& schedule, double omega) {
    schedule.validate();
    Mat3 u = Mat3::Identity();
    double t = 0.0;
    for (const auto& e : schedule.events) {
        const double t0 = event_start(e);
        if (t0 > t) u = rot_z(omega * (t0 - t)) * u;
        if (const auto* d = std::get_if<DiracPulse>(&e)) {
            u = so3_exp({d->beta, d->gamma, 0.0}) * u;
            t = d->t;
        } else {
            const auto& c = std::get<ConstantSegment>(e);
            const double dt = c.t1 - c.t0;
            u = so3_exp({c.u * dt, c.v * dt, omega * dt}) * u;
            t = c.t1;
        }
    }
    if (schedule.horizon > t) u = rot_z(omega * (schedule.horizon - t)) * u;
    return u;
}

} // namespace ectl
