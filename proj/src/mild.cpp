#include "ectl/mild.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ectl/parallel.hpp"
#include "ectl/quad.hpp"

namespace ectl {

double MildSolution::sup_norm() const {
    double v = 0.0;
    for (const auto& row : z)
        for (const Cx& c : row) v = std::max(v, std::abs(c));
    return v;
}

double MildSolution::windowed_l2(std::size_t time_index) const {
    std::vector<double> sq(omegas.size());
    for (std::size_t j = 0; j < omegas.size(); ++j) sq[j] = std::norm(z[time_index][j]);
    return std::sqrt(trapezoid(omegas, sq));
}

double MildSolution::max_windowed_l2() const {
    double v = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) v = std::max(v, windowed_l2(i));
    return v;
}

MildSolution fixed_point_solve(const SampledControl& w, double T, double omega_window,
                               double tol, int max_iter, std::size_t omega_nodes) {
    if (!(T > 0.0)) throw PreconditionError("T must be positive");
    if (!(omega_window > 0.0)) throw PreconditionError("omega window must be positive");
    w.validate();

    MildSolution sol;
    sol.w = w;
    sol.times.resize(kPicardTimeSteps + 1);
    for (std::size_t i = 0; i <= kPicardTimeSteps; ++i)
        sol.times[i] = T * static_cast<double>(i) / static_cast<double>(kPicardTimeSteps);
    sol.omegas.resize(omega_nodes);
    for (std::size_t j = 0; j < omega_nodes; ++j)
        sol.omegas[j] = -omega_window +
                        2.0 * omega_window * static_cast<double>(j) /
                            static_cast<double>(omega_nodes - 1);

    // resample the control onto the Picard time grid
    std::vector<Cx> wv(sol.times.size());
    for (std::size_t i = 0; i < sol.times.size(); ++i) wv[i] = w.at(sol.times[i]);
    {
        double acc = 0.5 * (std::norm(wv.front()) + std::norm(wv.back()));
        for (std::size_t i = 1; i + 1 < wv.size(); ++i) acc += std::norm(wv[i]);
        sol.control_l2 = std::sqrt(acc * (T / static_cast<double>(kPicardTimeSteps)));
    }
    const double radius = 1.0 / (2.0 * std::sqrt(T));
    if (!(sol.control_l2 < radius)) {
        std::ostringstream os;
        os << "||w||_L2 = " << sol.control_l2 << " must stay below 1/(2 sqrt(T)) = " << radius;
        throw ControlTooLarge(os.str());
    }

    sol.z.assign(sol.times.size(), std::vector<Cx>(omega_nodes, Cx{0.0, 0.0}));
    std::vector<std::vector<Cx>> next(sol.times.size(), std::vector<Cx>(omega_nodes));
    const double h = T / static_cast<double>(kPicardTimeSteps);

    for (int it = 1; it <= max_iter; ++it) {
        std::vector<double> col_diff(omega_nodes, 0.0);
        parallel_for(omega_nodes, [&](std::size_t j) {
            const double omega = sol.omegas[j];
            Cx integral{0.0, 0.0};
            next[0][j] = Cx{0.0, 0.0};
            Cx prev = wv[0] * std::sqrt(1.0 - std::min(1.0, std::norm(sol.z[0][j]))) *
                      std::polar(1.0, -omega * sol.times[0]);
            double diff = 0.0;
            for (std::size_t i = 1; i < sol.times.size(); ++i) {
                const Cx curr = wv[i] *
                                std::sqrt(1.0 - std::min(1.0, std::norm(sol.z[i][j]))) *
                                std::polar(1.0, -omega * sol.times[i]);
                integral += 0.5 * h * (prev + curr);
                prev = curr;
                next[i][j] = -integral * std::polar(1.0, omega * sol.times[i]);
                diff = std::max(diff, std::abs(next[i][j] - sol.z[i][j]));
            }
            col_diff[j] = diff;
        });
        std::swap(sol.z, next);
        sol.iterations = it;
        double diff = 0.0;
        for (double d : col_diff) diff = std::max(diff, d);
        sol.sup_diff_history.push_back(diff);
        if (diff < tol) {
            const double bound = std::sqrt(T) * sol.control_l2;
            if (sol.sup_norm() > bound + 1e-8)
                throw InternalError("mild solution violates the L-infinity a-priori bound");
            return sol;
        }
    }
    // Under the precondition the map is a contraction, so this is a bug.
    throw InternalError("Picard iteration failed to converge (flagged as a bug)");
}

namespace {

// Inner integral over sigma in [lo(tau), hi(tau)] with the third factor
// evaluated at tau + sigma - x; nsig tensor panels.
Cx phi_inner(const SampledControl& w, double tau, double lo, double hi, double x,
             std::size_t nsig) {
    if (!(hi > lo)) return {0.0, 0.0};
    const double h = (hi - lo) / static_cast<double>(nsig);
    Cx acc{0.0, 0.0};
    for (std::size_t i = 0; i <= nsig; ++i) {
        const double sigma = lo + h * static_cast<double>(i);
        const Cx val = w.at(sigma) * std::conj(w.at(tau + sigma - x));
        acc += (i == 0 || i == nsig) ? 0.5 * val : val;
    }
    return w.at(tau) * acc * h;
}

} // namespace

Cx phi_w(const SampledControl& w, double T, double x) {
    if (x <= 0.0 || x >= 2.0 * T) return {0.0, 0.0};

    // tau breakpoints where the sigma limits change slope
    std::vector<double> knots{0.0, T};
    for (double cand : {x, x - T, x / 2.0})
        if (cand > 0.0 && cand < T) knots.push_back(cand);
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-15; }),
                knots.end());

    constexpr std::size_t kPanels = 512;
    Cx total{0.0, 0.0};
    for (std::size_t seg = 0; seg + 1 < knots.size(); ++seg) {
        const double a = knots[seg], b = knots[seg + 1];
        const double h = (b - a) / static_cast<double>(kPanels);
        Cx acc{0.0, 0.0};
        for (std::size_t i = 0; i <= kPanels; ++i) {
            const double tau = a + h * static_cast<double>(i);
            const double lo = std::max(0.0, x - tau);
            const double hi = std::min(tau, x);
            const Cx val = phi_inner(w, tau, lo, hi, x, kPanels);
            acc += (i == 0 || i == kPanels) ? 0.5 * val : val;
        }
        total += acc * h;
    }
    return total;
}

CubicReport cubic_report(const SampledControl& w, double T, std::size_t panels) {
    CubicReport rep;
    rep.x.resize(panels + 1);
    rep.phi.resize(panels + 1);
    for (std::size_t i = 0; i <= panels; ++i) {
        rep.x[i] = 2.0 * T * static_cast<double>(i) / static_cast<double>(panels);
        rep.phi[i] = phi_w(w, T, rep.x[i]);
    }
    return rep;
}

TangentDemo tangent_demo(double T) {
    if (!(T > 0.0)) throw PreconditionError("T must be positive");
    SampledControl box;
    box.t0 = 0.0;
    box.t1 = T;
    box.samples.assign(1025, Cx{1.0, 0.0});

    TangentDemo demo;
    demo.report = cubic_report(box, T, 128);
    for (std::size_t i = 0; i < demo.report.x.size(); ++i)
        if (demo.report.x[i] > T)
            demo.max_beyond_T = std::max(demo.max_beyond_T, std::abs(demo.report.phi[i]));
    demo.phi_at_3T_2 = std::abs(phi_w(box, T, 1.5 * T));
    return demo;
}

ThirdOrderReport third_order_check(const SampledControl& w, double T,
                                   const std::vector<double>& omega_probes,
                                   const std::vector<double>& eps_list) {
    w.validate();
    ThirdOrderReport rep;

    // Z1(t, omega) on the Picard time grid (running trapezoid of w e^{-iws}).
    const std::size_t nt = kPicardTimeSteps;
    const double h = T / static_cast<double>(nt);

    for (double omega : omega_probes) {
        // reference Z3(T) = -(1/2) int_0^T W |Z1(tau)|^2 e^{-iw tau} dtau e^{iwT}
        std::vector<Cx> z1(nt + 1);
        Cx run{0.0, 0.0};
        Cx prev = w.at(0.0);
        z1[0] = Cx{0.0, 0.0};
        for (std::size_t i = 1; i <= nt; ++i) {
            const double t = h * static_cast<double>(i);
            const Cx curr = w.at(t) * std::polar(1.0, -omega * t);
            run += 0.5 * h * (prev + curr);
            prev = curr;
            z1[i] = -run * std::polar(1.0, omega * t);
        }
        Cx z3int{0.0, 0.0};
        Cx prev3 = w.at(0.0) * std::norm(z1[0]);
        for (std::size_t i = 1; i <= nt; ++i) {
            const double t = h * static_cast<double>(i);
            const Cx curr = w.at(t) * std::norm(z1[i]) * std::polar(1.0, -omega * t);
            z3int += 0.5 * h * (prev3 + curr);
            prev3 = curr;
        }
        const Cx z3 = -0.5 * z3int * std::polar(1.0, omega * T);

        std::vector<Cx> measured;
        for (double eps : eps_list) {
            // single-frequency Picard for Z(T; eps w) at the probe
            std::vector<Cx> zc(nt + 1, Cx{0, 0}), xi(nt + 1);
            for (int it = 0; it < 200; ++it) {
                Cx integral{0.0, 0.0};
                Cx prv = eps * w.at(0.0) * std::sqrt(1.0 - std::min(1.0, std::norm(zc[0])));
                xi[0] = Cx{0, 0};
                double diff = 0.0;
                for (std::size_t i = 1; i <= nt; ++i) {
                    const double t = h * static_cast<double>(i);
                    const Cx cur = eps * w.at(t) *
                                   std::sqrt(1.0 - std::min(1.0, std::norm(zc[i]))) *
                                   std::polar(1.0, -omega * t);
                    integral += 0.5 * h * (prv + cur);
                    prv = cur;
                    xi[i] = -integral * std::polar(1.0, omega * t);
                    diff = std::max(diff, std::abs(xi[i] - zc[i]));
                }
                std::swap(zc, xi);
                if (diff < 1e-14) break;
            }
            const Cx d = (zc[nt] - eps * z1[nt]) / (eps * eps * eps);
            measured.push_back(d);
            ThirdOrderRow row;
            row.omega = omega;
            row.eps = eps;
            row.measured = d;
            row.reference = z3;
            row.rel_error = std::abs(d - z3) / std::max(1e-300, std::abs(z3));
            rep.rows.push_back(row);
        }
        if (measured.size() >= 2) {
            // eps halves along the list: (4 D(e/2) - D(e)) / 3 kills the eps^2 term
            const Cx extra =
                (4.0 * measured.back() - measured[measured.size() - 2]) / 3.0;
            rep.extrapolated_rel_error.push_back(std::abs(extra - z3) /
                                                 std::max(1e-300, std::abs(z3)));
        }
    }
    return rep;
}

} // namespace ectl
