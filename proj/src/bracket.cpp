#include "ectl/bracket.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "ectl/quad.hpp"

namespace ectl {

namespace {

DiracPulse pulse(Axis pax, double t, double a) {
    if (pax == Axis::X) return {t, a, 0.0};
    return {t, 0.0, a};
}

struct Train {
    std::vector<DiracPulse> events;
    double duration = 0.0;
};

Train shifted(const Train& tr, double dt) {
    Train out;
    out.duration = tr.duration;
    out.events.reserve(tr.events.size());
    for (DiracPulse d : tr.events) {
        d.t += dt;
        out.events.push_back(d);
    }
    return out;
}

// U_1(tau): exp(pi G)exp(w Gz s)exp(-(pi+s)G)exp(w Gz s)exp(s G), time 2s.
Train base_forward(double s, Axis pax) {
    Train tr;
    tr.events = {pulse(pax, 0.0, s), pulse(pax, s, -(M_PI + s)), pulse(pax, 2.0 * s, M_PI)};
    tr.duration = 2.0 * s;
    return tr;
}

// Exact inverse of base_forward: exp((pi-s)G)exp(w Gz s)exp((pi+s)G)exp(w Gz s).
Train base_inverse(double s, Axis pax) {
    Train tr;
    tr.events = {pulse(pax, s, M_PI + s), pulse(pax, 2.0 * s, M_PI - s)};
    tr.duration = 2.0 * s;
    return tr;
}

// Paper's printed 3-pulse negative variant of U_1 (top-level m=1 only; inside
// the recursion the exact inverse is required for the remainders to cancel).
Train base_negative_printed(double s, Axis pax) {
    Train tr;
    tr.events = {pulse(pax, 0.0, -M_PI), pulse(pax, s, M_PI - s), pulse(pax, 2.0 * s, s)};
    tr.duration = 2.0 * s;
    return tr;
}

// P_{n+1} = [efface -A] o I_n o [flight +A] o P_n   (time order: P_n, flight,
// I_n, pi-flight-pi);  I_{n+1} = I_n o [efface -A] o P_n o [flight +A].
// Both recursions keep I_n the exact inverse of P_n, so every stage's
// third-order remainder cancels and the duration obeys T_{n+1} = 2 T_n + 2s.
Train build_train(int n, bool inverse, double s, Axis pax) {
    if (n == 1) return inverse ? base_inverse(s, pax) : base_forward(s, pax);
    const Train p = build_train(n - 1, false, s, pax);
    const Train i = build_train(n - 1, true, s, pax);
    Train out;
    if (!inverse) {
        out.events = p.events;
        const double t0 = p.duration + s;
        const Train is = shifted(i, t0);
        out.events.insert(out.events.end(), is.events.begin(), is.events.end());
        const double t1 = t0 + i.duration;
        out.events.push_back(pulse(pax, t1, M_PI));
        out.events.push_back(pulse(pax, t1 + s, M_PI));
        out.duration = t1 + s;
    } else {
        const Train ps = shifted(p, s);
        out.events = ps.events;
        const double t1 = s + p.duration;
        out.events.push_back(pulse(pax, t1, M_PI));
        out.events.push_back(pulse(pax, t1 + s, M_PI));
        const double t2 = t1 + s;
        const Train is = shifted(i, t2);
        out.events.insert(out.events.end(), is.events.begin(), is.events.end());
        out.duration = t2 + i.duration;
    }
    return out;
}

} // namespace

ControlSchedule bracket_schedule(int m, double tau, int sign, Axis axis) {
    if (m < 0) throw PreconditionError("bracket_schedule needs m >= 0");
    if (!(tau > 0.0)) throw PreconditionError("bracket_schedule needs tau > 0");
    if (sign != 1 && sign != -1) throw PreconditionError("sign must be +1 or -1");

    ControlSchedule s;
    if (m == 0) {
        if (tau >= M_PI / 2.0) throw TauTooLarge("pulse angle tau must stay below pi/2");
        s.events.emplace_back(pulse(axis, 0.0, sign * tau));
        s.horizon = 0.0;
        return s;
    }

    const double tau_eff = std::pow(tau, 2.0 / (m + 1));
    const double step = std::sqrt(tau_eff);
    if (step >= M_PI / 2.0)
        throw TauTooLarge("intermediate angle sqrt(tau_eff) must stay below pi/2");

    // Commutator chains: x pulses give U_m along y for odd m, along x for even
    // m (signs +,-,-,+ with period 4); y pulses the mirrored assignment.
    const bool want_y = (axis == Axis::Y);
    const Axis pax = ((m % 2 == 1) == want_y) ? Axis::X : Axis::Y;
    int chain;
    if (pax == Axis::X)
        chain = (m % 4 == 0 || m % 4 == 1) ? +1 : -1;
    else
        chain = (m % 4 == 1 || m % 4 == 2) ? -1 : +1;
    const bool inverse = (sign * chain) < 0;

    Train tr;
    if (m == 1 && inverse)
        tr = base_negative_printed(step, pax);
    else
        tr = build_train(m, inverse, step, pax);

    s.events.reserve(tr.events.size());
    for (const DiracPulse& d : tr.events) s.events.emplace_back(d);
    s.horizon = tr.duration;
    s.validate();
    return s;
}

ControlSchedule poly_schedule(const RealPolynomial& p, const RealPolynomial& q, double tau) {
    if (!(tau > 0.0)) throw PreconditionError("poly_schedule needs tau > 0");
    ControlSchedule out;
    out.horizon = 0.0;
    for (const auto& [poly, axis] :
         {std::pair<const RealPolynomial&, Axis>{p, Axis::X}, {q, Axis::Y}}) {
        for (std::size_t deg = 0; deg < poly.coef.size(); ++deg) {
            const double c = poly.coef[deg];
            if (c == 0.0) continue;
            const ControlSchedule piece =
                bracket_schedule(static_cast<int>(deg), std::abs(c) * tau, c > 0 ? 1 : -1, axis);
            out.append(piece);
        }
    }
    out.validate();
    return out;
}

namespace {

// Second-order 3-point derivative (one-sided at the ends).
std::vector<double> grid_derivative(const std::vector<double>& x, const std::vector<double>& f) {
    const std::size_t n = x.size();
    std::vector<double> d(n);
    auto lag3 = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t at) {
        const double xa = x[a], xb = x[b], xc = x[c], xi = x[at];
        return f[a] * (2.0 * xi - xb - xc) / ((xa - xb) * (xa - xc)) +
               f[b] * (2.0 * xi - xa - xc) / ((xb - xa) * (xb - xc)) +
               f[c] * (2.0 * xi - xa - xb) / ((xc - xa) * (xc - xb));
    };
    d[0] = lag3(0, 1, 2, 0);
    for (std::size_t i = 1; i + 1 < n; ++i) d[i] = lag3(i - 1, i, i + 1, i);
    d[n - 1] = lag3(n - 3, n - 2, n - 1, n - 1);
    return d;
}

struct StateDerivatives {
    std::vector<double> x, y, z, xp, yp, zp;
};

StateDerivatives derivatives(const EnsembleState& s) {
    StateDerivatives d;
    const std::size_t n = s.size();
    d.x.resize(n);
    d.y.resize(n);
    d.z.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        d.x[i] = s.m[i].x();
        d.y[i] = s.m[i].y();
        d.z[i] = s.m[i].z();
    }
    d.xp = grid_derivative(s.grid.nodes, d.x);
    d.yp = grid_derivative(s.grid.nodes, d.y);
    d.zp = grid_derivative(s.grid.nodes, d.z);
    return d;
}

} // namespace

double h1_seminorm(const EnsembleState& state) {
    const StateDerivatives d = derivatives(state);
    std::vector<double> integrand(state.size());
    for (std::size_t i = 0; i < state.size(); ++i)
        integrand[i] = d.xp[i] * d.xp[i] + d.yp[i] * d.yp[i] + d.zp[i] * d.zp[i];
    return std::sqrt(trapezoid(state.grid.nodes, integrand));
}

double descent_functional(const EnsembleState& state, const RealPolynomial& p,
                          const RealPolynomial& q) {
    const StateDerivatives d = derivatives(state);
    const RealPolynomial pp = p.derivative();
    const RealPolynomial qp = q.derivative();
    std::vector<double> integrand(state.size());
    for (std::size_t i = 0; i < state.size(); ++i) {
        const double w = state.grid.nodes[i];
        integrand[i] = pp.eval(w) * (-d.z[i] * d.yp[i] + d.y[i] * d.zp[i]) +
                       qp.eval(w) * (d.z[i] * d.xp[i] - d.x[i] * d.zp[i]);
    }
    return trapezoid(state.grid.nodes, integrand);
}

std::pair<RealPolynomial, RealPolynomial> find_descent_polys(const EnsembleState& state,
                                                             int max_deg) {
    if (max_deg < 1) throw PreconditionError("max_deg must be >= 1");
    std::vector<double> gp(static_cast<std::size_t>(max_deg) + 1);
    std::vector<double> gq(static_cast<std::size_t>(max_deg) + 1);
    double norm2 = 0.0;
    bool live = false;
    for (int i = 0; i <= max_deg; ++i) {
        gp[static_cast<std::size_t>(i)] =
            descent_functional(state, RealPolynomial::monomial(static_cast<std::size_t>(i)), {});
        gq[static_cast<std::size_t>(i)] =
            descent_functional(state, {}, RealPolynomial::monomial(static_cast<std::size_t>(i)));
        norm2 += gp[static_cast<std::size_t>(i)] * gp[static_cast<std::size_t>(i)] +
                 gq[static_cast<std::size_t>(i)] * gq[static_cast<std::size_t>(i)];
        live = live || std::abs(gp[static_cast<std::size_t>(i)]) >= 1e-12 ||
               std::abs(gq[static_cast<std::size_t>(i)]) >= 1e-12;
    }
    if (!live) throw DegenerateState("all descent basis values below 1e-12 (constant state?)");
    const double norm = std::sqrt(norm2);
    RealPolynomial p, q;
    p.coef.resize(gp.size());
    q.coef.resize(gq.size());
    for (std::size_t i = 0; i < gp.size(); ++i) {
        p.coef[i] = -gp[i] / norm;
        q.coef[i] = -gq[i] / norm;
    }
    p.normalize();
    q.normalize();
    return {p, q};
}

DescentStepResult descent_step(const EnsembleState& state, int max_deg, double tau0) {
    if (!(tau0 > 0.0)) throw PreconditionError("tau0 must be positive");

    EnsembleState work = state;
    ControlSchedule prefix;
    prefix.horizon = 0.0;

    double zmax = 0.0;
    for (const auto& v : state.m) zmax = std::max(zmax, std::abs(v.z()));
    if (zmax < 1e-9) {
        // exact pre-rotation (x,y,0) -> (x,0,y): u = (3pi/2) d_0 + pi d_1
        prefix.events = {PulseEvent{DiracPulse{0.0, 1.5 * M_PI, 0.0}},
                         PulseEvent{DiracPulse{1.0, M_PI, 0.0}}};
        prefix.horizon = 2.0;
        work = simulate(work, prefix);
    }

    const auto [p, q] = find_descent_polys(work, max_deg);
    const double a_value = descent_functional(work, p, q);
    const double h1_before = h1_seminorm(state);

    double tau = tau0;
    for (int attempt = 0; attempt < 31; ++attempt, tau *= 0.5) {
        ControlSchedule sched;
        try {
            sched = poly_schedule(p, q, tau);
        } catch (const TauTooLarge&) {
            continue;
        }
        const EnsembleState candidate = simulate(work, sched);
        const double h1_after = h1_seminorm(candidate);
        if (h1_after < h1_before) {
            ControlSchedule full = prefix;
            full.append(sched);
            DescentReport rep;
            rep.a_value = a_value;
            rep.tau = tau;
            rep.h1_before = h1_before;
            rep.h1_after = h1_after;
            rep.schedule_duration = full.horizon;
            rep.trip_count = full.trip_count();
            return {std::move(full), candidate, rep};
        }
    }
    std::ostringstream os;
    os << "no H1 decrease after 30 halvings from tau0 = " << tau0;
    throw BacktrackFailed(os.str());
}

RotateResult rotate_to_pole(const Vec3& m, Axis axis) {
    const double x = m.x(), y = m.y(), z = m.z();
    if ((Vec3(x, y, z) - Vec3(0, 0, 1)).norm() < 1e-14) throw AlreadyAtPole();

    // axis x zeroes y (usable unless y==0 with z>=0); axis y zeroes x.
    const bool x_usable = !(std::abs(y) < 1e-14 && z >= 0.0);
    const bool y_usable = !(std::abs(x) < 1e-14 && z >= 0.0);
    Axis use = axis;
    if (use == Axis::X && !x_usable) use = Axis::Y;
    if (use == Axis::Y && !y_usable) use = Axis::X;
    if ((use == Axis::X && !x_usable) || (use == Axis::Y && !y_usable)) throw AlreadyAtPole();

    RotateResult out;
    out.used_axis = use;
    double theta;
    if (use == Axis::X) {
        theta = std::atan2(y, z);
        out.result = Vec3(x, 0.0, std::sqrt(y * y + z * z));
    } else {
        theta = std::atan2(-x, z);
        out.result = Vec3(0.0, y, std::sqrt(x * x + z * z));
    }
    if (theta < 0.0) theta += 2.0 * M_PI;
    out.theta = theta;

    DiracPulse first{1.0, 0.0, 0.0}, second{2.0, 0.0, 0.0};
    if (use == Axis::X) {
        first.beta = M_PI;
        second.beta = M_PI + theta;
    } else {
        first.gamma = M_PI;
        second.gamma = M_PI + theta;
    }
    out.schedule.events = {PulseEvent{first}, PulseEvent{second}};
    out.schedule.horizon = 2.0;
    return out;
}

std::pair<EnsembleState, std::vector<DescentReport>> h1_descent_loop(const EnsembleState& state,
                                                                     double tol_h1, int max_iter,
                                                                     int max_deg) {
    constexpr double kTau0 = 0.1;
    EnsembleState cur = state;
    std::vector<DescentReport> reports;

    int iter = 0;
    while (h1_seminorm(cur) >= tol_h1) {
        if (iter++ >= max_iter) throw MaxIterExceeded(std::move(reports), std::move(cur));
        DescentStepResult step = descent_step(cur, max_deg, kTau0);
        cur = std::move(step.state);
        reports.push_back(step.report);
    }

    // Average the near-constant profile and rotate it onto e3; a second
    // rotation about the other axis removes the remaining transverse part.
    for (int pass = 0; pass < 2; ++pass) {
        Vec3 avg = Vec3::Zero();
        for (const auto& v : cur.m) avg += v;
        avg /= static_cast<double>(cur.size());
        if (avg.norm() < 1e-14) break;
        avg.normalize();
        if ((avg - Vec3(0, 0, 1)).norm() < 1e-12) break;
        RotateResult rot;
        try {
            rot = rotate_to_pole(avg, pass == 0 ? Axis::X : Axis::Y);
        } catch (const AlreadyAtPole&) {
            break;
        }
        const double h1_before = h1_seminorm(cur);
        cur = simulate(cur, rot.schedule);
        DescentReport rep;
        rep.tau = 0.0;
        rep.a_value = 0.0;
        rep.h1_before = h1_before;
        rep.h1_after = h1_seminorm(cur); // constant rotation preserves it
        rep.schedule_duration = rot.schedule.horizon;
        rep.trip_count = rot.schedule.trip_count();
        reports.push_back(rep);
    }
    return {std::move(cur), std::move(reports)};
}

} // namespace ectl
