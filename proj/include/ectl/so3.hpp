#ifndef ECTL_SO3_HPP
#define ECTL_SO3_HPP

#include <Eigen/Dense>

namespace ectl {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

// Generators of so(3), ordered so that a_x*Gx + a_y*Gy + a_z*Gz is the
// cross-product matrix of (a_x, a_y, a_z).
Mat3 omega_x();
Mat3 omega_y();
Mat3 omega_z();

struct So3Axis {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double angle() const;
    Mat3 generator() const; // a_x*Gx + a_y*Gy + a_z*Gz (antisymmetric)
};

// Rodrigues rotation about axis/|axis| by angle |axis|; series fallback below
// 1e-8 to avoid cancellation near the identity. so3_exp(0) == I.
Mat3 so3_exp(const So3Axis& axis);

// Rotation about z by angle a (closed form).
Mat3 rot_z(double a);

} // namespace ectl

#endif
