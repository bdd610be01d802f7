#include "ectl/halving.hpp"

#include <cmath>
#include <sstream>

namespace ectl {

void HalvingConfig::validate() const {
    if (!(delta > 0.0 && delta < 1.0)) throw PreconditionError("delta must lie in (0,1)");
    if (!(tail_fraction > 0.0 && tail_fraction < 0.5))
        throw PreconditionError("tail_fraction must lie in (0, 1/2)");
    if (n_max < 1) throw PreconditionError("n_max must be positive");
    if (!(z_guard > 0.0)) throw PreconditionError("z_guard must be positive");
}

int choose_k(const Spectrum& z_spectrum, const HalvingConfig& cfg) {
    cfg.validate();
    const double total = n_norm(z_spectrum);
    if (total <= 0.0) throw ZeroSpectrum();

    const double budget = cfg.tail_fraction * total;
    if (z_spectrum.tail_estimate() >= 0.5 * budget)
        throw NoValidK("truncation tail estimate is not certified below tail_fraction*N/2");

    // tail(k) = sum_{|n| >= k} |c_n|, built from the outside in
    double tail = 0.0;
    std::vector<double> tails(static_cast<std::size_t>(z_spectrum.n_max) + 1, 0.0);
    for (int k = z_spectrum.n_max; k >= 1; --k) {
        tail += std::abs(z_spectrum.coef(k)) + std::abs(z_spectrum.coef(-k));
        tails[static_cast<std::size_t>(k)] = tail;
    }
    for (int k = 1; k <= z_spectrum.n_max; ++k)
        if (tails[static_cast<std::size_t>(k)] < budget) return k;
    throw NoValidK("no k <= n_max satisfies the tail condition");
}

ControlSchedule build_halving_schedule(const Spectrum& z_spectrum, int k) {
    if (k < 1) throw PreconditionError("k must be >= 1");
    ControlSchedule s;
    s.events.emplace_back(DiracPulse{static_cast<double>(k), M_PI, 0.0});
    for (int p = 1; p <= 2 * k - 1; ++p) {
        const Cx c = z_spectrum.coef(-k + p);
        // zero-amplitude pulses retained so the model time stays exactly 3k
        s.events.emplace_back(DiracPulse{static_cast<double>(k + p), -c.imag(), -c.real()});
    }
    s.events.emplace_back(DiracPulse{3.0 * k, M_PI, 0.0});
    s.horizon = 3.0 * k;
    return s;
}

namespace {

double max_z(const EnsembleState& s) {
    double v = -2.0;
    for (const auto& n : s.m) v = std::max(v, n.z());
    return v;
}

} // namespace

std::pair<EnsembleState, CycleReport> halving_cycle(const EnsembleState& state,
                                                    const HalvingConfig& cfg) {
    cfg.validate();
    if (state.grid.nodes.front() < 0.0 || state.grid.nodes.back() > M_PI)
        throw PreconditionError("halving_cycle expects a grid inside (0, pi)");

    const Spectrum zsp = even_extension_spectrum(state.transverse(), state.grid, cfg.n_max);
    const double n_before = n_norm(zsp);
    const double z_hi = max_z(state);

    CycleReport rep;
    rep.n_before = n_before;
    rep.z_extreme_before = z_hi;

    if (n_before == 0.0) { // fixed point at the pole
        rep.n_after = 0.0;
        rep.z_extreme_after = z_hi;
        return {state, rep};
    }

    if (!(z_hi < -cfg.z_guard)) {
        std::ostringstream os;
        os << "PreconditionViolated: max z = " << z_hi << " is not below -" << cfg.z_guard;
        throw PreconditionError(os.str());
    }
    if (!(n_before < cfg.delta)) {
        std::ostringstream os;
        os << "PreconditionViolated: N(Z0) = " << n_before << " is not below delta = "
           << cfg.delta;
        throw PreconditionError(os.str());
    }

    const int k = choose_k(zsp, cfg);
    const ControlSchedule schedule = build_halving_schedule(zsp, k);
    EnsembleState out = simulate(state, schedule);
    out.check_unit_norm();

    rep.k = k;
    rep.n_after = n_norm(even_extension_spectrum(out.transverse(), out.grid, cfg.n_max));
    rep.z_extreme_after = max_z(out);
    rep.pulse_count = schedule.dirac_count();
    rep.elapsed_model_time = schedule.horizon;
    return {std::move(out), rep};
}

std::pair<EnsembleState, std::vector<CycleReport>> drive_to_pole(const EnsembleState& state,
                                                                 const HalvingConfig& cfg,
                                                                 double tol, int max_cycles) {
    if (!(tol > 0.0)) throw PreconditionError("tol must be positive");
    EnsembleState cur = state;
    std::vector<CycleReport> reports;
    for (int cycle = 0; cycle < max_cycles; ++cycle) {
        const Spectrum zsp = even_extension_spectrum(cur.transverse(), cur.grid, cfg.n_max);
        if (n_norm(zsp) < tol) return {std::move(cur), std::move(reports)};
        auto [next, rep] = halving_cycle(cur, cfg);
        cur = std::move(next);
        reports.push_back(rep);
    }
    const Spectrum zsp = even_extension_spectrum(cur.transverse(), cur.grid, cfg.n_max);
    if (n_norm(zsp) < tol) return {std::move(cur), std::move(reports)};
    throw MaxCyclesExceeded(std::move(reports), std::move(cur));
}

} // namespace ectl
