#include "ectl/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <iostream>
#include <sstream>

#include "ectl/bracket.hpp"
#include "ectl/compare.hpp"
#include "ectl/config.hpp"
#include "ectl/halving.hpp"
#include "ectl/holomorphy.hpp"
#include "ectl/linear.hpp"
#include "ectl/mild.hpp"
#include "ectl/verify.hpp"

namespace ectl {

namespace {

std::string artifact_path(const ExperimentConfig& cfg, const std::string& stem,
                          const std::string& ext) {
    return cfg.out_dir + "/" + stem + ext;
}

void finish_report(ExperimentReport& rep, const ExperimentConfig& cfg) {
    rep.finished = iso8601_now();
    const std::string path = cfg.out_dir + "/report_" + rep.command + ".json";
    write_text_file(path, rep.to_json());
}

int cmd_simulate(const ExperimentConfig& cfg, const std::string& schedule_path, int pole,
                 double rect_eps, std::ostream& out) {
    ExperimentReport rep;
    rep.command = "simulate";
    rep.started = iso8601_now();

    ControlSchedule sched = schedule_from_json(read_text_file(schedule_path));
    if (rect_eps > 0.0) sched = rectangularize(sched, rect_eps);

    const OmegaGrid grid = cfg.grid();
    const EnsembleState init =
        EnsembleState::constant(grid, Vec3(0.0, 0.0, static_cast<double>(pole)));
    const EnsembleState final_state = simulate(init, sched);

    Table table;
    table.columns = {"omega", "x", "y", "z"};
    for (std::size_t i = 0; i < final_state.size(); ++i)
        table.add_row({format_double(grid.nodes[i]), format_double(final_state.m[i].x()),
                       format_double(final_state.m[i].y()),
                       format_double(final_state.m[i].z())});
    const std::string data = artifact_path(cfg, "simulate_state", Table::extension(cfg.format));
    write_text_file(data, table.serialize(cfg.format));
    rep.artifacts.push_back(data);

    const std::string echo = artifact_path(cfg, "schedule_echo", ".json");
    write_text_file(echo, schedule_to_json(sched));
    rep.artifacts.push_back(echo);

    rep.add_metric("norm_defect", final_state.max_norm_defect());
    rep.add_metric("events", static_cast<double>(sched.events.size()));
    rep.add_metric("horizon", sched.horizon);
    finish_report(rep, cfg);
    out << "simulate: " << final_state.size() << " nodes through " << sched.events.size()
        << " events\n";
    return kExitOk;
}

int cmd_halve(const ExperimentConfig& cfg, double amp, double tol, int cycles,
              std::ostream& out) {
    ExperimentReport rep;
    rep.command = "halve";
    rep.started = iso8601_now();

    const OmegaGrid grid = cfg.grid();
    std::vector<Cx> z0(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) z0[i] = amp * std::cos(grid.nodes[i]);
    const EnsembleState init = EnsembleState::from_transverse(grid, z0, -1);

    HalvingConfig hcfg;
    hcfg.n_max = cfg.n_max;

    Table table;
    table.columns = {"cycle", "k", "n_before", "n_after", "z_min", "pulses", "model_time"};
    std::vector<CycleReport> reports;
    EnsembleState final_state = init;
    int exit_code = kExitOk;
    try {
        auto [state, reps] = drive_to_pole(init, hcfg, tol, cycles);
        final_state = std::move(state);
        reports = std::move(reps);
    } catch (const MaxCyclesExceeded& e) {
        reports = e.reports;
        final_state = e.state;
        exit_code = kExitPrecondition;
    }
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const CycleReport& r = reports[i];
        table.add_row({std::to_string(i), std::to_string(r.k), format_double(r.n_before),
                       format_double(r.n_after), format_double(r.z_extreme_after),
                       std::to_string(r.pulse_count), format_double(r.elapsed_model_time)});
    }
    const std::string data = artifact_path(cfg, "halve_cycles", Table::extension(cfg.format));
    write_text_file(data, table.serialize(cfg.format));
    rep.artifacts.push_back(data);

    const Spectrum zsp =
        even_extension_spectrum(final_state.transverse(), final_state.grid, cfg.n_max);
    rep.add_metric("final_n", n_norm(zsp));
    rep.add_metric("cycles", static_cast<double>(reports.size()));
    double total_time = 0.0;
    for (const auto& r : reports) total_time += r.elapsed_model_time;
    rep.add_metric("total_model_time", total_time);
    finish_report(rep, cfg);
    out << "halve: " << reports.size() << " cycles, final N = " << n_norm(zsp) << "\n";
    if (exit_code != kExitOk) out << "halve: tolerance not reached within max cycles\n";
    return exit_code;
}

int cmd_descent(const ExperimentConfig& cfg, double slope, double tol, int iters, int deg,
                std::ostream& out) {
    ExperimentReport rep;
    rep.command = "descent";
    rep.started = iso8601_now();

    const OmegaGrid grid = cfg.grid();
    std::vector<Cx> z(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) z[i] = std::sin(slope * grid.nodes[i]);
    const EnsembleState init = EnsembleState::from_transverse(grid, z, +1);

    Table table;
    table.columns = {"iter", "a_value", "tau", "h1_before", "h1_after", "duration", "trips"};
    std::vector<DescentReport> reports;
    EnsembleState final_state = init;
    int exit_code = kExitOk;
    try {
        auto [state, reps] = h1_descent_loop(init, tol, iters, deg);
        final_state = std::move(state);
        reports = std::move(reps);
    } catch (const MaxIterExceeded& e) {
        reports = e.reports;
        final_state = e.state;
        exit_code = kExitPrecondition;
    }
    for (std::size_t i = 0; i < reports.size(); ++i) {
        const DescentReport& r = reports[i];
        table.add_row({std::to_string(i), format_double(r.a_value), format_double(r.tau),
                       format_double(r.h1_before), format_double(r.h1_after),
                       format_double(r.schedule_duration), std::to_string(r.trip_count)});
    }
    const std::string data = artifact_path(cfg, "descent_steps", Table::extension(cfg.format));
    write_text_file(data, table.serialize(cfg.format));
    rep.artifacts.push_back(data);

    double pole_dist = 0.0;
    for (const auto& v : final_state.m)
        pole_dist = std::max(pole_dist, (v - Vec3(0, 0, 1)).norm());
    rep.add_metric("final_pole_distance_sup", pole_dist);
    rep.add_metric("final_h1", h1_seminorm(final_state));
    rep.add_metric("steps", static_cast<double>(reports.size()));
    finish_report(rep, cfg);
    out << "descent: " << reports.size() << " rows, final sup distance to e3 = " << pole_dist
        << "\n";
    return exit_code;
}

int cmd_linctrl(const ExperimentConfig& cfg, double T, double eta, int deg, std::ostream& out) {
    ExperimentReport rep;
    rep.command = "linctrl";
    rep.started = iso8601_now();

    const OmegaGrid grid = cfg.grid();
    std::vector<Cx> zf(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        zf[i] = 0.1 * std::polar(1.0, grid.nodes[i]);

    const auto [control, reach_rep] = approx_reach(zf, grid, T, eta, deg);

    Table table;
    table.columns = {"t", "re_w", "im_w"};
    const double h = (control.t1 - control.t0) / static_cast<double>(control.samples.size() - 1);
    for (std::size_t i = 0; i < control.samples.size(); ++i)
        table.add_row({format_double(control.t0 + h * static_cast<double>(i)),
                       format_double(control.samples[i].real()),
                       format_double(control.samples[i].imag())});
    const std::string data = artifact_path(cfg, "linctrl_control", Table::extension(cfg.format));
    write_text_file(data, table.serialize(cfg.format));
    rep.artifacts.push_back(data);

    rep.add_metric("achieved_error", reach_rep.achieved_error);
    rep.add_metric("eps", reach_rep.eps);
    rep.add_metric("degree", reach_rep.degree);
    rep.add_metric("fit_residual", reach_rep.fit_residual);
    rep.add_metric("cross_check_error", reach_rep.cross_check_error);
    finish_report(rep, cfg);
    out << "linctrl: achieved sup error " << reach_rep.achieved_error << " with degree "
        << reach_rep.degree << "\n";
    return kExitOk;
}

int cmd_reach(const ExperimentConfig& cfg, double T, bool do_phi, bool do_cr, bool do_solve,
              double h, std::ostream& out) {
    ExperimentReport rep;
    rep.command = "reach";
    rep.started = iso8601_now();
    if (!do_phi && !do_cr && !do_solve) do_phi = true;

    if (do_phi) {
        const TangentDemo demo = tangent_demo(T);
        Table table;
        table.columns = {"x", "re_phi", "im_phi"};
        for (std::size_t i = 0; i < demo.report.x.size(); ++i)
            table.add_row({format_double(demo.report.x[i]),
                           format_double(demo.report.phi[i].real()),
                           format_double(demo.report.phi[i].imag())});
        const std::string data = artifact_path(cfg, "reach_phi", Table::extension(cfg.format));
        write_text_file(data, table.serialize(cfg.format));
        rep.artifacts.push_back(data);
        rep.add_metric("phi_at_3T_2", demo.phi_at_3T_2);
        rep.add_metric("phi_max_beyond_T", demo.max_beyond_T);
        out << "reach --phi: Phi(3T/2) = " << demo.phi_at_3T_2 << "\n";
    }
    if (do_cr) {
        ControlSchedule sched;
        sched.events = {PulseEvent{ConstantSegment{0.0, 1.0, 1.0, 0.0}}};
        sched.horizon = 1.0;
        const CrReport cr =
            cauchy_riemann_check(sched, {0.0, 3.0, 16}, {-0.5, 0.5, 11}, h);
        {
            std::ostringstream os;
            os << "{\n  \"h\": " << format_double(cr.h) << ",\n  \"grid\": [" << cr.n1 << ", "
               << cr.n2 << "],\n  \"max_residual\": " << format_double(cr.max_residual)
               << "\n}\n";
            const std::string data = artifact_path(cfg, "reach_cr", ".json");
            write_text_file(data, os.str());
            rep.artifacts.push_back(data);
        }
        rep.add_metric("cr_max_residual", cr.max_residual);
        out << "reach --cr: max residual " << cr.max_residual << " at h = " << h << "\n";
    }
    if (do_solve) {
        SampledControl w;
        w.t0 = 0.0;
        w.t1 = T;
        w.samples.assign(1025, Cx{0.1, 0.0});
        const MildSolution sol = fixed_point_solve(w, T, 40.0, 1e-12, 200);
        Table table;
        table.columns = {"omega", "re_z", "im_z"};
        for (std::size_t j = 0; j < sol.omegas.size(); ++j)
            table.add_row({format_double(sol.omegas[j]),
                           format_double(sol.z.back()[j].real()),
                           format_double(sol.z.back()[j].imag())});
        const std::string data =
            artifact_path(cfg, "reach_solution", Table::extension(cfg.format));
        write_text_file(data, table.serialize(cfg.format));
        rep.artifacts.push_back(data);
        rep.add_metric("iterations", sol.iterations);
        rep.add_metric("sup_norm", sol.sup_norm());
        rep.add_metric("linf_bound", std::sqrt(T) * sol.control_l2);
        out << "reach --solve: " << sol.iterations << " Picard sweeps, sup |Z| = "
            << sol.sup_norm() << "\n";
    }
    finish_report(rep, cfg);
    return kExitOk;
}

int cmd_compare(const ExperimentConfig& cfg, int n, double eps, std::ostream& out) {
    ExperimentReport rep;
    rep.command = "compare";
    rep.started = iso8601_now();

    const auto [a, b] = strategy_comparison(n, eps);
    Table table;
    table.columns = {"strategy", "N",     "eps",   "model_time",        "pulses",
                     "trips",    "n_distance_before", "n_distance_after", "h1_before",
                     "h1_after"};
    for (const ComparisonReport& r : {a, b})
        table.add_row({r.strategy, std::to_string(r.n), format_double(r.eps),
                       format_double(r.model_time), std::to_string(r.pulse_count),
                       std::to_string(r.trip_count), format_double(r.n_distance_before),
                       format_double(r.n_distance_after), format_double(r.h1_before),
                       format_double(r.h1_after)});
    const std::string data = artifact_path(cfg, "compare", Table::extension(cfg.format));
    write_text_file(data, table.serialize(cfg.format));
    rep.artifacts.push_back(data);

    rep.add_metric("sign_discrepancy_flagged", a.sign_discrepancy_flagged ? 1.0 : 0.0);
    rep.add_metric("n_distance_to_minus_e3_before", a.n_distance_before_minus);
    rep.add_metric("band_mass_before", a.band_mass_before);
    rep.add_metric("band_mass_after", a.band_mass_after);
    finish_report(rep, cfg);
    out << "compare: A(time " << a.model_time << ", trips " << a.trip_count << ") vs B(time "
        << b.model_time << ", trips " << b.trip_count << ")\n";
    if (a.sign_discrepancy_flagged)
        out << "compare: note, the printed coefficient-pulse sign targets z0 < -1/2; the "
               "+e3-adapted sign was applied and distances are measured at the nearest pole\n";
    return kExitOk;
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out) {
    ExperimentReport rep;
    rep.command = "verify";
    rep.started = iso8601_now();

    const std::vector<CheckResult> results = verify_suite(cfg);
    Table table;
    table.columns = {"name", "pass", "measured", "threshold"};
    for (const auto& r : results) {
        out << (r.pass ? "[PASS] " : "[FAIL] ") << r.name << "  measured=" << r.measured
            << " threshold=" << r.threshold;
        if (!r.detail.empty()) out << "  (" << r.detail << ")";
        out << "\n";
        table.add_row({r.name, r.pass ? "1" : "0", format_double(r.measured),
                       format_double(r.threshold)});
    }
    const std::string data = artifact_path(cfg, "verify_summary", Table::extension(cfg.format));
    write_text_file(data, table.serialize(cfg.format));
    rep.artifacts.push_back(data);
    rep.add_metric("checks", static_cast<double>(results.size()));
    rep.add_metric("failures", static_cast<double>(
                                   results.size() -
                                   static_cast<std::size_t>(std::count_if(
                                       results.begin(), results.end(),
                                       [](const CheckResult& r) { return r.pass; }))));
    finish_report(rep, cfg);
    const bool ok = all_passed(results);
    out << (ok ? "verify: all checks passed\n" : "verify: FAILURES present\n");
    return ok ? kExitOk : kExitPrecondition;
}

} // namespace

int run_experiment(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"ensemblectl - Bloch ensemble control laboratory"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags remain valid after the subcommand

    std::string config_path, out_dir, format;
    std::uint64_t seed = 0;
    bool seed_set = false;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option_function<std::uint64_t>(
        "--seed", [&](std::uint64_t v) { seed = v; seed_set = true; }, "RNG seed");

    double tol = -1.0;
    app.add_option("--tol", tol, "tolerance for the subcommand");

    auto* sim = app.add_subcommand("simulate", "run a schedule from a JSON file");
    std::string schedule_path;
    int pole = 1;
    double rect_eps = 0.0;
    sim->add_option("--schedule", schedule_path, "schedule JSON")->required();
    sim->add_option("--pole", pole, "+1 or -1 starting pole")->check(CLI::IsMember({1, -1}));
    sim->add_option("--rect", rect_eps, "rectangularize Diracs with width eps");

    auto* halve = app.add_subcommand("halve", "run the explicit halving controller");
    double amp = 0.01;
    int cycles = 10;
    halve->add_option("--amp", amp, "initial Z0 = amp*cos(omega)");
    halve->add_option("--cycles", cycles, "max cycles");

    auto* descent = app.add_subcommand("descent", "H1 descent loop");
    double slope = 0.1;
    int iters = 25, deg = 3;
    descent->add_option("--a", slope, "initial state slope sin(a w)");
    descent->add_option("--iters", iters, "max iterations");
    descent->add_option("--deg", deg, "polynomial degree bound");

    auto* lin = app.add_subcommand("linctrl", "linearized approximate reach");
    double T_lin = 2.0, eta = 0.02;
    int deg_lin = 10;
    lin->add_option("--T", T_lin, "horizon");
    lin->add_option("--eta", eta, "target sup error");
    lin->add_option("--deg", deg_lin, "max fit degree");

    auto* reach = app.add_subcommand("reach", "reachability diagnostics");
    double T_reach = 1.0, h_cr = 1e-3;
    bool do_phi = false, do_cr = false, do_solve = false;
    reach->add_option("--T", T_reach, "horizon");
    reach->add_flag("--phi", do_phi, "cubic correction report");
    reach->add_flag("--cr", do_cr, "Cauchy-Riemann residual check");
    reach->add_flag("--solve", do_solve, "Picard solve demo");
    reach->add_option("--step", h_cr, "finite-difference step for --cr");

    auto* compare = app.add_subcommand("compare", "strategy cost comparison");
    int n_cmp = 4;
    double eps_cmp = 0.1;
    compare->add_option("--N", n_cmp, "number of solved harmonics");
    compare->add_option("--eps", eps_cmp, "amplitude");

    app.add_subcommand("verify", "run every module's invariant checks");

    std::vector<std::string> argv_copy = args;
    std::vector<const char*> argv;
    argv.push_back("ensemblectl");
    for (const auto& a : argv_copy) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n" << app.help();
        return kExitUsage;
    }

    try {
        ExperimentConfig cfg;
        if (!config_path.empty()) cfg.apply_json(read_text_file(config_path));
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (!format.empty()) cfg.format = format;
        if (seed_set) cfg.seed = seed;
        cfg.validate();
        ensure_directory(cfg.out_dir);

        if (sim->parsed()) return cmd_simulate(cfg, schedule_path, pole, rect_eps, out);
        if (halve->parsed())
            return cmd_halve(cfg, amp, tol > 0 ? tol : cfg.tol("halve", 1e-5), cycles, out);
        if (descent->parsed())
            return cmd_descent(cfg, slope, tol > 0 ? tol : cfg.tol("descent", 1e-3), iters, deg,
                               out);
        if (lin->parsed()) return cmd_linctrl(cfg, T_lin, eta, deg_lin, out);
        if (reach->parsed()) return cmd_reach(cfg, T_reach, do_phi, do_cr, do_solve, h_cr, out);
        if (compare->parsed()) return cmd_compare(cfg, n_cmp, eps_cmp, out);
        return cmd_verify(cfg, out);
    } catch (const PreconditionError& e) {
        err << "precondition error: " << e.what() << "\n";
        return kExitPrecondition;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

} // namespace ectl
