#include "ectl/verify.hpp"

#include <cmath>
#include <filesystem>
#include <sstream>

#include "ectl/bracket.hpp"
#include "ectl/cli.hpp"
#include "ectl/compare.hpp"
#include "ectl/halving.hpp"
#include "ectl/linear.hpp"
#include "ectl/mild.hpp"
#include "ectl/quad.hpp"
#include "ectl/rng.hpp"

namespace ectl {

namespace {

CheckResult below(const std::string& name, double measured, double threshold,
                  const std::string& detail = "") {
    return {name, measured < threshold, measured, threshold, detail};
}

CheckResult truthy(const std::string& name, bool ok, const std::string& detail = "") {
    return {name, ok, ok ? 1.0 : 0.0, 1.0, detail};
}

// Random Wiener-small state: decaying cosine profile, uniform phases,
// N in [n_lo, n_hi], z on the requested hemisphere.
EnsembleState random_small_state(CounterRng& rng, const OmegaGrid& grid, int pole, double n_lo,
                                 double n_hi, int modes = 8, double decay = 0.65) {
    std::vector<Cx> g(static_cast<std::size_t>(modes) + 1);
    double mass = 0.0;
    for (int j = 0; j <= modes; ++j) {
        const double mag = rng.uniform(0.2, 1.0) * std::pow(decay, j);
        const double phase = rng.uniform(0.0, 2.0 * M_PI);
        g[static_cast<std::size_t>(j)] = std::polar(mag, phase);
        mass += mag;
    }
    const double target = rng.uniform(n_lo, n_hi);
    for (auto& v : g) v *= target / mass;
    std::vector<Cx> z(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        Cx acc{0.0, 0.0};
        for (int j = 0; j <= modes; ++j)
            acc += g[static_cast<std::size_t>(j)] * std::cos(j * grid.nodes[i]);
        z[i] = acc;
    }
    return EnsembleState::from_transverse(grid, z, pole);
}

Spectrum random_spectrum(CounterRng& rng, int n_max) {
    Spectrum s = Spectrum::zero(n_max);
    for (int n = -n_max; n <= n_max; ++n)
        s.set_coef(n, std::polar(rng.uniform(0.0, 1.0), rng.uniform(0.0, 2.0 * M_PI)));
    return s;
}

// ---- bloch-core ----

void check_bloch_core(const ExperimentConfig& cfg, const FaultInjection& fault,
                      std::vector<CheckResult>& out) {
    CounterRng rng(cfg.seed ^ 0x01);

    { // drift cancellation (fault-injectable pulse angle)
        const double a = fault.drift_pulse_angle;
        double worst = 0.0;
        for (int trial = 0; trial < 200; ++trial) {
            const double omega = rng.uniform(-10.0, 10.0);
            for (int ax = 0; ax < 2; ++ax) {
                const So3Axis axis = ax == 0 ? So3Axis{a, 0.0, 0.0} : So3Axis{0.0, a, 0.0};
                const Mat3 lhs = so3_exp(axis) * rot_z(omega) * so3_exp(axis);
                worst = std::max(worst, (lhs - rot_z(-omega)).norm());
            }
        }
        out.push_back(below("bloch-core/drift-cancellation", worst, 1e-12));
    }

    { // norm preservation through a mixed schedule
        const OmegaGrid grid = OmegaGrid::uniform(0.0, M_PI, 257);
        double worst = 0.0;
        for (int trial = 0; trial < 5; ++trial) {
            EnsembleState s = random_small_state(rng, grid, -1, 0.05, 0.3);
            ControlSchedule sched;
            sched.events = {PulseEvent{DiracPulse{0.5, rng.uniform(-2, 2), rng.uniform(-2, 2)}},
                            PulseEvent{ConstantSegment{1.0, 1.7, rng.uniform(-1, 1),
                                                       rng.uniform(-1, 1)}},
                            PulseEvent{DiracPulse{2.2, rng.uniform(-2, 2), 0.0}}};
            sched.horizon = 3.0;
            worst = std::max(worst, simulate(s, sched).max_norm_defect());
        }
        out.push_back(below("bloch-core/norm-preservation", worst, 1e-9));
    }

    { // composition across a split avoiding event times
        const OmegaGrid grid = OmegaGrid::uniform(0.0, M_PI, 129);
        EnsembleState s = random_small_state(rng, grid, -1, 0.05, 0.2);
        ControlSchedule whole;
        whole.events = {PulseEvent{DiracPulse{0.4, 0.3, -0.2}},
                        PulseEvent{ConstantSegment{1.2, 1.8, 0.5, -0.4}},
                        PulseEvent{DiracPulse{2.5, -0.7, 0.1}}};
        whole.horizon = 3.0;
        const double split = 1.0; // inside a gap
        ControlSchedule first;
        first.events = {whole.events[0]};
        first.horizon = split;
        ControlSchedule second;
        second.events = {PulseEvent{ConstantSegment{0.2, 0.8, 0.5, -0.4}},
                         PulseEvent{DiracPulse{1.5, -0.7, 0.1}}};
        second.horizon = 2.0;
        const EnsembleState direct = simulate(s, whole);
        const EnsembleState staged = simulate(simulate(s, first), second);
        double worst = 0.0;
        for (std::size_t i = 0; i < direct.size(); ++i)
            worst = std::max(worst, (direct.m[i] - staged.m[i]).norm());
        out.push_back(below("bloch-core/composition-split", worst, 1e-12));
    }

    { // group consistency
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const So3Axis a{rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(-3, 3)};
            const So3Axis neg{-a.x, -a.y, -a.z};
            worst = std::max(worst, (so3_exp(a) * so3_exp(neg) - Mat3::Identity()).norm());
        }
        out.push_back(below("bloch-core/group-consistency", worst, 1e-12));
    }
}

// ---- fourier-n ----

void check_fourier(const ExperimentConfig& cfg, std::vector<CheckResult>& out) {
    CounterRng rng(cfg.seed ^ 0x02);
    const OmegaGrid grid = OmegaGrid::uniform(0.0, M_PI, 1025);

    { // submultiplicativity
        double worst = -1e300;
        for (int trial = 0; trial < 100; ++trial) {
            const Spectrum a = random_spectrum(rng, 8);
            const Spectrum b = random_spectrum(rng, 8);
            worst = std::max(worst, n_norm(convolve(a, b)) - n_norm(a) * n_norm(b));
        }
        out.push_back(below("fourier-n/submultiplicativity", worst, 1e-12,
                            "max of N(ab) - N(a)N(b)"));
    }

    { // triangle sandwich on random real pairs
        double worst = -1e300;
        for (int trial = 0; trial < 40; ++trial) {
            std::vector<Cx> xs(grid.size()), ys(grid.size()), zs(grid.size());
            std::vector<double> cx(7), cy(7);
            for (auto& v : cx) v = rng.uniform(-1, 1);
            for (auto& v : cy) v = rng.uniform(-1, 1);
            for (std::size_t i = 0; i < grid.size(); ++i) {
                double vx = 0.0, vy = 0.0;
                for (int j = 0; j < 7; ++j) {
                    vx += cx[static_cast<std::size_t>(j)] * std::cos(j * grid.nodes[i]);
                    vy += cy[static_cast<std::size_t>(j)] * std::cos(j * grid.nodes[i]);
                }
                xs[i] = vx;
                ys[i] = vy;
                zs[i] = Cx{vx, vy};
            }
            const double nx = n_norm(even_extension_spectrum(xs, grid, 64));
            const double ny = n_norm(even_extension_spectrum(ys, grid, 64));
            const double nz = n_norm(even_extension_spectrum(zs, grid, 64));
            worst = std::max(worst, 0.5 * (nx + ny) - nz);
            worst = std::max(worst, nz - (nx + ny));
        }
        out.push_back(below("fourier-n/triangle-sandwich", worst, 1e-12));
    }

    { // z-recovery bound N(z-1) <= 2 N(Z)^2
        double worst = -1e300;
        for (int trial = 0; trial < 20; ++trial) {
            CounterRng local(cfg.seed ^ (0x100 + static_cast<std::uint64_t>(trial)));
            const EnsembleState s = random_small_state(local, grid, +1, 0.02, 0.2);
            const PoleDistanceReport r = pole_distance(s, +1, 128);
            if (r.n_Z > 0.25) continue;
            worst = std::max(worst, r.n_z_shift - 2.0 * r.n_Z * r.n_Z);
        }
        out.push_back(below("fourier-n/z-recovery", worst, 1e-9));
    }

    { // hermitian symmetry for real samples
        std::vector<Cx> f(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            f[i] = std::sin(2.0 * grid.nodes[i]) + 0.3 * std::cos(5.0 * grid.nodes[i]);
        const Spectrum s = even_extension_spectrum(f, grid, 64);
        double worst = 0.0;
        for (int n = -64; n <= 64; ++n)
            worst = std::max(worst, std::abs(s.coef(-n) - std::conj(s.coef(n))));
        out.push_back(below("fourier-n/hermitian-symmetry", worst, 1e-12));
    }
}

// ---- halving-controller ----

void check_halving(const ExperimentConfig& cfg, std::vector<CheckResult>& out) {
    const OmegaGrid grid = OmegaGrid::uniform(0.0, M_PI, 1025);
    HalvingConfig hcfg;

    { // contraction over 20 random admissible states
        double worst_ratio = 0.0;
        double worst_z = -1.0;
        for (int trial = 0; trial < 20; ++trial) {
            CounterRng rng(cfg.seed ^ (0x200 + static_cast<std::uint64_t>(trial)));
            const EnsembleState s = random_small_state(rng, grid, -1, 0.005, 0.02);
            const auto [next, rep] = halving_cycle(s, hcfg);
            worst_ratio = std::max(worst_ratio, rep.n_after / rep.n_before);
            worst_z = std::max(worst_z, rep.z_extreme_after);
        }
        out.push_back(below("halving/contraction-ratio", worst_ratio, 0.5));
        out.push_back(below("halving/z-after", worst_z, -0.5));
    }

    { // Prop:1saut perturbation bound and z floor near +e3
        CounterRng rng(cfg.seed ^ 0x03);
        double c_hat = 0.0, cp_hat = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            const EnsembleState s = random_small_state(rng, grid, +1, 0.002, 0.05, 5);
            const Spectrum zsp = even_extension_spectrum(s.transverse(), grid, hcfg.n_max);
            const double n0 = n_norm(zsp);
            const Cx d0 = std::polar(rng.uniform(0.001, 0.05), rng.uniform(0.0, 2.0 * M_PI));
            // w-impulse d0: u = Im(d0) delta, v = -Re(d0) delta
            const EnsembleState after = apply_dirac(s, d0.imag(), -d0.real());
            std::vector<Cx> dev(grid.size());
            const auto z_old = s.transverse();
            const auto z_new = after.transverse();
            for (std::size_t i = 0; i < grid.size(); ++i) dev[i] = z_new[i] - z_old[i] + d0;
            const double num = n_norm(even_extension_spectrum(dev, grid, hcfg.n_max));
            const double den = std::abs(d0) * std::max(std::abs(d0), n0);
            c_hat = std::max(c_hat, num / den);
            double zdrop = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i)
                zdrop = std::max(zdrop, s.m[i].z() - after.m[i].z());
            cp_hat = std::max(cp_hat, zdrop / den);
        }
        out.push_back(below("halving/perturbation-constant", c_hat, 20.0));
        out.push_back(below("halving/z-floor-constant", cp_hat, 20.0));
    }

    { // pulse structure: 2k+1 Diracs at {k, k+1, ..., 3k}
        CounterRng rng(cfg.seed ^ 0x04);
        const Spectrum sp = random_spectrum(rng, 6);
        bool ok = true;
        for (int k : {1, 3, 6}) {
            const ControlSchedule sched = build_halving_schedule(sp, k);
            ok = ok && sched.dirac_count() == static_cast<std::size_t>(2 * k + 1);
            ok = ok && sched.horizon == 3.0 * k;
            for (std::size_t i = 0; i < sched.events.size(); ++i)
                ok = ok && event_start(sched.events[i]) == static_cast<double>(k + i);
        }
        out.push_back(truthy("halving/pulse-structure", ok));
    }

    { // pi-pulse conjugation at t = k
        CounterRng rng(cfg.seed ^ 0x05);
        const EnsembleState s = random_small_state(rng, grid, -1, 0.005, 0.02);
        const int k = 2;
        ControlSchedule prefix;
        prefix.events = {PulseEvent{DiracPulse{static_cast<double>(k), M_PI, 0.0}}};
        prefix.horizon = k;
        const EnsembleState flipped = simulate(s, prefix);
        const EnsembleState drifted = free_evolve(s, k);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const Cx za{flipped.m[i].x(), flipped.m[i].y()};
            const Cx zb{drifted.m[i].x(), drifted.m[i].y()};
            worst = std::max(worst, std::abs(za - std::conj(zb)));
            worst = std::max(worst, std::abs(flipped.m[i].z() + drifted.m[i].z()));
        }
        out.push_back(below("halving/pi-conjugation", worst, 1e-12));
    }
}

// ---- bracket-synth ----

void check_bracket(const ExperimentConfig& cfg, std::vector<CheckResult>& out) {
    { // descent monotonicity
        const OmegaGrid grid = OmegaGrid::uniform(0.0, M_PI, 1025);
        std::vector<Cx> z(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) z[i] = std::sin(0.1 * grid.nodes[i]);
        const EnsembleState s = EnsembleState::from_transverse(grid, z, +1);
        const DescentStepResult step = descent_step(s, 2, 0.1);
        out.push_back(below("bracket/descent-monotonicity",
                            step.report.h1_after - step.report.h1_before, 0.0));
    }

    { // order of accuracy for m <= 3: err/tau decreasing along the sweep
        const std::vector<double> taus{1e-2, 1e-3, 1e-4, 1e-5};
        const std::vector<double> freqs{0.3, 0.7, 1.0, 1.7, 2.4};
        bool ok = true;
        std::ostringstream detail;
        for (int m = 0; m <= 3; ++m) {
            const Axis axis = (m % 2 == 1) ? Axis::Y : Axis::X;
            const Mat3 gen = (axis == Axis::X) ? omega_x() : omega_y();
            for (double omega : freqs) {
                double prev = 1e300;
                for (double tau : taus) {
                    const ControlSchedule sched = bracket_schedule(m, tau, +1, axis);
                    const Mat3 target =
                        Mat3::Identity() + tau * std::pow(omega, m) * gen;
                    const double err =
                        (endpoint_operator(sched, omega) - target).norm() / tau;
                    if (m >= 1 && err >= prev) {
                        ok = false;
                        detail << "m=" << m << " omega=" << omega << " stalls; ";
                    }
                    if (m == 0 && err > 1e-12) ok = false;
                    prev = err;
                }
            }
        }
        out.push_back(truthy("bracket/order-of-accuracy", ok, detail.str()));
    }

    { // schedule duration growth
        bool ok = true;
        for (int m = 1; m <= 3; ++m)
            for (double tau : {1e-2, 1e-4}) {
                const ControlSchedule sched = bracket_schedule(m, tau, +1, Axis::X);
                const double expect =
                    (std::pow(2.0, m + 1) - 2.0) * std::pow(tau, 1.0 / (m + 1));
                ok = ok && std::abs(sched.horizon - expect) <= 1e-12 * expect;
            }
        out.push_back(truthy("bracket/duration-growth", ok));
    }

    { // rotate_to_pole never increases |M - e3|
        CounterRng rng(cfg.seed ^ 0x06);
        double worst = -1e300;
        for (int trial = 0; trial < 100; ++trial) {
            Vec3 m(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
            if (m.norm() < 1e-6) continue;
            m.normalize();
            if ((m - Vec3(0, 0, 1)).norm() < 1e-12) continue;
            const RotateResult rot = rotate_to_pole(m, Axis::X);
            worst = std::max(worst, (rot.result - Vec3(0, 0, 1)).norm() -
                                        (m - Vec3(0, 0, 1)).norm());
        }
        out.push_back(below("bracket/rotate-nonexpansive", worst, 1e-15));
    }

    { // exact linearity of the descent functional
        CounterRng rng(cfg.seed ^ 0x07);
        const OmegaGrid grid = OmegaGrid::uniform(0.0, M_PI, 257);
        const EnsembleState s = random_small_state(rng, grid, +1, 0.1, 0.4);
        RealPolynomial p1, p2, q1;
        p1.coef = {0.3, -0.5, 0.2};
        p2.coef = {0.0, 0.7};
        q1.coef = {0.1, 0.0, -0.4};
        const double a = 1.7, b = -0.6;
        RealPolynomial comb;
        comb.coef = {a * p1.coef[0] + b * p2.coef[0], a * p1.coef[1] + b * p2.coef[1],
                     a * p1.coef[2]};
        const double lhs = descent_functional(s, comb, q1);
        const double rhs = a * descent_functional(s, p1, {}) +
                           b * descent_functional(s, p2, {}) +
                           descent_functional(s, {}, q1);
        out.push_back(below("bracket/functional-linearity", std::abs(lhs - rhs), 1e-12));
    }
}

// ---- linear-ctrl ----

void check_linear(const ExperimentConfig& cfg, std::vector<CheckResult>& out) {
    const OmegaGrid grid = OmegaGrid::uniform(0.0, M_PI, 257);

    { // endpoint modulus bound
        CounterRng rng(cfg.seed ^ 0x08);
        SampledControl w;
        w.t0 = 0.0;
        w.t1 = 2.0;
        w.samples.resize(1025);
        for (auto& v : w.samples)
            v = Cx{rng.uniform(-0.2, 0.2), rng.uniform(-0.2, 0.2)};
        const std::vector<Cx> z0(grid.size(), Cx{0, 0});
        const auto z = lin_endpoint(z0, grid, w, 2.0);
        const double l1 = w.l1_norm();
        double worst = 0.0;
        for (const Cx& v : z) worst = std::max(worst, std::abs(v));
        out.push_back(below("linear/endpoint-modulus", worst, l1 + 1e-12));
    }

    { // mollifier convergence through eps = {0.2, 0.1, 0.05} T
        const double T = 2.0;
        std::vector<Cx> zf(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i)
            zf[i] = 0.1 * std::polar(1.0, grid.nodes[i]);
        const WeierstrassFit fit = weierstrass_fit(zf, grid, T, 0.02, 8);
        double prev = 1e300;
        bool ok = true;
        for (double eps : {0.2 * T, 0.1 * T, 0.05 * T}) {
            double sup = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double omega = grid.nodes[i];
                sup = std::max(sup, std::abs(fit.poly.eval(Cx{0, omega}) *
                                             (bump_hat(eps * omega) -
                                              std::polar(1.0, -omega * T / 2.0))));
            }
            ok = ok && sup < prev;
            prev = sup;
        }
        out.push_back(truthy("linear/mollifier-convergence", ok));
    }

    { // zero steering: Z0 := F[w], control w drives it to 0
        const double Tw = 3.0;
        SampledControl w;
        w.t0 = 0.0;
        w.t1 = Tw;
        w.samples.resize(4097);
        for (std::size_t i = 0; i < w.samples.size(); ++i) {
            const double t = Tw * static_cast<double>(i) / 4096.0;
            const double env = std::exp(-8.0 * (t - Tw / 2.0) * (t - Tw / 2.0));
            w.samples[i] = env * std::polar(0.2, 1.5 * t);
        }
        std::vector<Cx> z0(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double omega = grid.nodes[i];
            z0[i] = simpson_fn(
                [&](double t) { return w.at(t) * std::polar(1.0, -omega * t); }, 0.0, Tw,
                1 << 13);
        }
        const auto zT = lin_endpoint(z0, grid, w, Tw);
        double sup = 0.0, sup0 = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            sup = std::max(sup, std::abs(zT[i]));
            sup0 = std::max(sup0, std::abs(z0[i]));
        }
        out.push_back(below("linear/zero-steering", sup, 1e-3 * sup0));
    }

    { // endpoint = -F[tau_{-T} w] against an independent quadrature
        const double T = 2.0;
        MollifierSpec spec;
        spec.center = 1.0;
        spec.eps = 0.5;
        spec.poly.coef = {Cx{0.3, -0.1}};
        const SampledControl w = mollified_control(spec, T, 8193);
        const std::vector<Cx> z0(grid.size(), Cx{0, 0});
        const auto z = lin_endpoint(z0, grid, w, T);
        double worst = 0.0;
        for (std::size_t i = 0; i < grid.size(); i += 8) {
            const double omega = grid.nodes[i];
            const Cx hat = simpson_fn(
                [&](double t) { return w.at(t) * std::polar(1.0, -omega * t); }, 0.0, T,
                1 << 13);
            worst = std::max(worst, std::abs(z[i] + hat * std::polar(1.0, omega * T)));
        }
        out.push_back(below("linear/fourier-support", worst, 1e-10));
    }
}

// ---- reachability-lab ----

void check_reachability(const ExperimentConfig& cfg, std::vector<CheckResult>& out) {
    const double T = 1.0;

    SampledControl w01;
    w01.t0 = 0.0;
    w01.t1 = T;
    w01.samples.assign(1025, Cx{0.1, 0.0});

    { // a-priori bounds on a converged solution
        const MildSolution sol = fixed_point_solve(w01, T, 40.0, 1e-12, 200);
        const double linf_slack = sol.sup_norm() - std::sqrt(T) * sol.control_l2;
        const double l2_slack =
            sol.max_windowed_l2() - 2.0 * std::sqrt(2.0 * M_PI) * sol.control_l2;
        out.push_back(below("reachability/apriori-linf", linf_slack, 1e-8));
        out.push_back(below("reachability/apriori-l2", l2_slack, 1e-6));

        // Picard contraction factor c sqrt(T) ||w|| * 1.1
        const double q = (1.0 / std::sqrt(3.0)) * std::sqrt(T) * sol.control_l2 * 1.1;
        double worst = 0.0;
        for (std::size_t i = 2; i + 1 < sol.sup_diff_history.size(); ++i)
            worst = std::max(worst,
                             sol.sup_diff_history[i + 1] / sol.sup_diff_history[i]);
        out.push_back(below("reachability/picard-contraction", worst, q));
    }

    { // Lipschitz in the control over 20 admissible pairs
        CounterRng rng(cfg.seed ^ 0x09);
        double worst = -1e300;
        for (int trial = 0; trial < 20; ++trial) {
            auto make = [&](double base, double mod) {
                SampledControl w;
                w.t0 = 0.0;
                w.t1 = T;
                w.samples.resize(1025);
                for (std::size_t i = 0; i < w.samples.size(); ++i) {
                    const double t = T * static_cast<double>(i) / 1024.0;
                    w.samples[i] = Cx{base + mod * std::cos(M_PI * t), mod * std::sin(2 * t)};
                }
                return w;
            };
            const SampledControl w1 = make(rng.uniform(-0.12, 0.12), rng.uniform(-0.1, 0.1));
            const SampledControl w2 = make(rng.uniform(-0.12, 0.12), rng.uniform(-0.1, 0.1));
            const MildSolution s1 = fixed_point_solve(w1, T, 10.0, 1e-12, 200, 41);
            const MildSolution s2 = fixed_point_solve(w2, T, 10.0, 1e-12, 200, 41);
            double sup = 0.0;
            for (std::size_t i = 0; i < s1.times.size(); ++i)
                for (std::size_t j = 0; j < s1.omegas.size(); ++j)
                    sup = std::max(sup, std::abs(s1.z[i][j] - s2.z[i][j]));
            double dl2 = 0.0;
            {
                double acc = 0.0;
                const double h = T / 1024.0;
                for (std::size_t i = 0; i < w1.samples.size(); ++i) {
                    const double wgt = (i == 0 || i + 1 == w1.samples.size()) ? 0.5 : 1.0;
                    acc += wgt * std::norm(w1.samples[i] - w2.samples[i]);
                }
                dl2 = std::sqrt(acc * h);
            }
            worst = std::max(worst, sup - 2.0 * std::sqrt(T) * dl2);
        }
        out.push_back(below("reachability/lipschitz-in-control", worst, 1e-9));
    }

    { // Phi support
        SampledControl box;
        box.t0 = 0.0;
        box.t1 = T;
        box.samples.assign(257, Cx{1.0, 0.0});
        double worst = 0.0;
        for (double x : {-0.5, -1e-9, 2.0 * T, 2.0 * T + 1e-9, 3.0 * T})
            worst = std::max(worst, std::abs(phi_w(box, T, x)));
        out.push_back(below("reachability/phi-support", worst, 1e-300,
                            "exact zero outside (0, 2T)"));
    }
}

// ---- compare-bench ----

void check_compare(const ExperimentConfig& cfg, std::vector<CheckResult>& out) {
    (void)cfg;
    { // invertibility of A for N <= 8
        double worst = 1e300;
        for (int n = 1; n <= 8; ++n) worst = std::min(worst, std::abs(build_matrix_A(n).det));
        out.push_back({"compare/A-invertibility", worst > 1e-10, worst, 1e-10, "min |det|"});
    }

    { // Newton residual at 2x-resolution re-evaluation, plus monotone damping
        const OrthoCoeffs c = newton_a_eps(4, 0.1, 1e-10);
        double res2 = 0.0;
        for (int K = 0; K < c.n; ++K) {
            const double v = simpson_fn(
                [&](double w) {
                    const double y = c.x_eps(w);
                    return c.x_eps_prime(w) /
                           std::sqrt(1.0 - c.eps * c.eps * y * y) * std::pow(w, K);
                },
                0.0, M_PI / 2.0, 1 << 13);
            res2 = std::max(res2, std::abs(v));
        }
        out.push_back(below("compare/newton-residual-recheck", res2, 1e-9));
        bool mono = true;
        for (std::size_t i = 0; i + 1 < c.residual_history.size(); ++i)
            mono = mono && c.residual_history[i + 1] < c.residual_history[i];
        out.push_back(truthy("compare/newton-monotone-damping", mono));
    }

    { // Strategy A content at N=4, eps=0.05: printed inequality (distance to
      // -e3 before, nearest pole after) and the cancelled-band reduction
        const auto [a, b] = strategy_comparison(4, 0.05);
        out.push_back(below("compare/strategy-a-printed-halving", a.n_distance_after,
                            0.5 * a.n_distance_before_minus,
                            "N[U at +e3] vs 0.5 N[M0 + e3]"));
        out.push_back(below("compare/strategy-a-band-reduction", a.band_mass_after,
                            a.band_mass_before / 5.0));
        out.push_back(truthy("compare/strategy-a-cost",
                             a.trip_count == 2 && a.model_time == 27.0 &&
                                 a.pulse_count == 10));
        out.push_back(truthy("compare/strategy-b-descent",
                             b.h1_after < b.h1_before && b.trip_count >= a.trip_count));
    }
}

// ---- ensemble-cli ----

void check_cli_determinism(const ExperimentConfig& cfg, std::vector<CheckResult>& out) {
    namespace fs = std::filesystem;
    const std::string base = cfg.out_dir + "/determinism";
    ensure_directory(base);
    auto run_one = [&](const std::string& sub) {
        std::ostringstream sink;
        const int rc = run_experiment({"halve", "--out", base + "/" + sub, "--amp", "0.01",
                                       "--tol", "1e-5", "--cycles", "10"},
                                      sink, sink);
        if (rc != 0) throw InternalError("determinism probe run failed");
        return read_text_file(base + "/" + sub + "/halve_cycles.csv");
    };
    const std::string first = run_one("a");
    const std::string second = run_one("b");
    out.push_back(truthy("cli/byte-deterministic-csv", first == second));
}

} // namespace

std::vector<CheckResult> verify_suite(const ExperimentConfig& cfg, const FaultInjection& fault) {
    std::vector<CheckResult> out;
    check_bloch_core(cfg, fault, out);
    check_fourier(cfg, out);
    check_halving(cfg, out);
    check_bracket(cfg, out);
    check_linear(cfg, out);
    check_reachability(cfg, out);
    check_compare(cfg, out);
    check_cli_determinism(cfg, out);
    return out;
}

bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (!r.pass) return false;
    return true;
}

} // namespace ectl
