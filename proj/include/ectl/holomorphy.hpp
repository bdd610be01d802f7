#ifndef ECTL_HOLOMORPHY_HPP
#define ECTL_HOLOMORPHY_HPP

#include <complex>

#include "ectl/schedule.hpp"
#include "ectl/so3.hpp"

namespace ectl {

using Mat3c = Eigen::Matrix3cd;
using Vec3c = Eigen::Vector3cd;

// Scaling-and-squaring matrix exponential (13-term Taylor core).
Mat3c expm(const Mat3c& a);

// State at the horizon for complexified frequency omega, from M(0) = e3.
Vec3c propagate_complex(const ControlSchedule& schedule, std::complex<double> omega);

struct CrRange {
    double lo = 0.0;
    double hi = 0.0;
    std::size_t n = 16;
};

struct CrReport {
    double h = 0.0;
    std::size_t n1 = 0;
    std::size_t n2 = 0;
    double max_residual = 0.0;
};

// Max over the probe grid of |dZ/dw2 - i dZ/dw1| by centered differences with
// step h, where Z(T, w) = M1(T, w) + i M2(T, w) from the complexified system.
CrReport cauchy_riemann_check(const ControlSchedule& schedule, const CrRange& omega1,
                              const CrRange& omega2, double h);

} // namespace ectl

#endif
