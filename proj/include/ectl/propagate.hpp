#ifndef ECTL_PROPAGATE_HPP
#define ECTL_PROPAGATE_HPP

#include "ectl/grid.hpp"
#include "ectl/schedule.hpp"

namespace ectl {

// Free evolution: per node, rotation about z by omega*dt (Z -> Z e^{i omega dt}).
EnsembleState free_evolve(const EnsembleState& state, double dt);

// Hard pulse: left-multiply every node by exp(beta*Gx + gamma*Gy).
EnsembleState apply_dirac(const EnsembleState& state, double beta, double gamma);

// Constant controls for dt: per node omega, exp((u dt)Gx + (v dt)Gy + (omega dt)Gz).
// Exact, no time stepping.
EnsembleState apply_constant(const EnsembleState& state, double u, double v, double dt);

// Applies the schedule's events in time order with free evolution across gaps;
// returns the state at the horizon. Every primitive is a closed-form rotation,
// so composition carries no integration error.
EnsembleState simulate(const EnsembleState& state, const ControlSchedule& schedule);

// Product of the per-event rotations at a single frequency.
Mat3 endpoint_operator(const ControlSchedule& schedule, double omega);

} // namespace ectl

#endif
