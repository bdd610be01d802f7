#include "ectl/holomorphy.hpp"

#include <cmath>

#include "ectl/parallel.hpp"

namespace ectl {

Mat3c expm(const Mat3c& a) {
    // scale so the Taylor tail of 13 terms stays below 1e-13
    const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int squarings = 0;
    Mat3c scaled = a;
    if (norm > 0.5) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
        scaled /= std::pow(2.0, squarings);
    }
    Mat3c term = Mat3c::Identity();
    Mat3c sum = Mat3c::Identity();
    for (int k = 1; k <= 13; ++k) {
        term = term * scaled / static_cast<double>(k);
        sum += term;
    }
    for (int k = 0; k < squarings; ++k) sum = sum * sum;
    return sum;
}

Vec3c propagate_complex(const ControlSchedule& schedule, std::complex<double> omega) {
    schedule.validate();
    const Mat3c gz = omega_z().cast<std::complex<double>>();
    const Mat3c gx = omega_x().cast<std::complex<double>>();
    const Mat3c gy = omega_y().cast<std::complex<double>>();

    Vec3c m(0.0, 0.0, 1.0);
    double t = 0.0;
    for (const auto& e : schedule.events) {
        const double t0 = event_start(e);
        if (t0 > t) m = expm(omega * gz * (t0 - t)) * m;
        if (const auto* d = std::get_if<DiracPulse>(&e)) {
            m = so3_exp({d->beta, d->gamma, 0.0}).cast<std::complex<double>>() * m;
            t = d->t;
        } else {
            const auto& c = std::get<ConstantSegment>(e);
            const double dt = c.t1 - c.t0;
            m = expm((omega * gz + c.u * gx + c.v * gy) * dt) * m;
            t = c.t1;
        }
    }
    if (schedule.horizon > t) m = expm(omega * gz * (schedule.horizon - t)) * m;
    return m;
}

CrReport cauchy_riemann_check(const ControlSchedule& schedule, const CrRange& omega1,
                              const CrRange& omega2, double h) {
    if (!(h > 0.0)) throw PreconditionError("finite-difference step must be positive");
    if (omega1.n < 2 || omega2.n < 2) throw PreconditionError("need at least 2 probe nodes");

    auto z_at = [&](std::complex<double> omega) {
        const Vec3c m = propagate_complex(schedule, omega);
        return m[0] + std::complex<double>(0.0, 1.0) * m[1];
    };

    const std::size_t total = omega1.n * omega2.n;
    std::vector<double> residual(total, 0.0);
    parallel_for(total, [&](std::size_t idx) {
        const std::size_t i = idx / omega2.n;
        const std::size_t j = idx % omega2.n;
        const double w1 = omega1.lo + (omega1.hi - omega1.lo) * static_cast<double>(i) /
                                          static_cast<double>(omega1.n - 1);
        const double w2 = omega2.lo + (omega2.hi - omega2.lo) * static_cast<double>(j) /
                                          static_cast<double>(omega2.n - 1);
        const std::complex<double> om{w1, w2};
        const std::complex<double> i1{0.0, 1.0};
        const auto d1 = (z_at(om + h) - z_at(om - h)) / (2.0 * h);
        const auto d2 = (z_at(om + i1 * h) - z_at(om - i1 * h)) / (2.0 * h);
        residual[idx] = std::abs(d2 - i1 * d1);
    });

    CrReport rep;
    rep.h = h;
    rep.n1 = omega1.n;
    rep.n2 = omega2.n;
    for (double r : residual) rep.max_residual = std::max(rep.max_residual, r);
    return rep;
}

} // namespace ectl
