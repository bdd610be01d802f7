#ifndef ECTL_HALVING_HPP
#define ECTL_HALVING_HPP

#include "ectl/propagate.hpp"
#include "ectl/spectrum.hpp"

namespace ectl {

struct HalvingConfig {
    double delta = 0.02;        // smallness threshold for N(Z0)
    double tail_fraction = 0.25;
    int n_max = 256;
    double z_guard = 0.5;       // requires z < -z_guard throughout

    void validate() const;
};

struct CycleReport {
    int k = 0;
    double n_before = 0.0;
    double n_after = 0.0;
    double z_extreme_before = 0.0; // max z over the grid (should stay < -z_guard)
    double z_extreme_after = 0.0;
    std::size_t pulse_count = 0;
    double elapsed_model_time = 0.0; // = 3k
};

// Smallest k >= 1 with sum_{|n|>=k} |c_n| < tail_fraction * N and certified
// truncation tail below tail_fraction * N / 2. The >= index convention is
// deliberate (it implies the printed > form).
int choose_k(const Spectrum& z_spectrum, const HalvingConfig& cfg);

// Dirac train of the explicit controller: pi pulse at k, coefficient pulses
// (-Im c_{-k+p}, -Re c_{-k+p}) at k+p for p = 1..2k-1 (zero amplitudes kept),
// pi pulse at 3k; horizon 3k.
ControlSchedule build_halving_schedule(const Spectrum& z_spectrum, int k);

// One cycle toward -e3. Preconditions: grid inside (0, pi), z < -z_guard
// everywhere, N(Z) < delta. A zero spectrum returns the state unchanged.
std::pair<EnsembleState, CycleReport> halving_cycle(const EnsembleState& state,
                                                    const HalvingConfig& cfg);

struct MaxCyclesExceeded : PreconditionError {
    MaxCyclesExceeded(std::vector<CycleReport> partial, EnsembleState last)
        : PreconditionError("tolerance not reached within max_cycles"),
          reports(std::move(partial)),
          state(std::move(last)) {}
    std::vector<CycleReport> reports;
    EnsembleState state;
};

// Iterates halving cycles until N(Z) < tol or max_cycles is hit.
std::pair<EnsembleState, std::vector<CycleReport>> drive_to_pole(const EnsembleState& state,
                                                                 const HalvingConfig& cfg,
                                                                 double tol, int max_cycles);

} // namespace ectl

#endif
