#include "ectl/so3.hpp"

#include <cmath>

namespace ectl {

Mat3 omega_x() {
    Mat3 m;
    m << 0, 0, 0,
         0, 0, -1,
         0, 1, 0;
    return m;
}

Mat3 omega_y() {
    Mat3 m;
    m << 0, 0, 1,
         0, 0, 0,
         -1, 0, 0;
    return m;
}

Mat3 omega_z() {
    Mat3 m;
    m << 0, -1, 0,
         1, 0, 0,
         0, 0, 0;
    return m;
}

double So3Axis::angle() const {
    return std::sqrt(x * x + y * y + z * z);
}

Mat3 So3Axis::generator() const {
    Mat3 m;
    m << 0, -z, y,
         z, 0, -x,
         -y, x, 0;
    return m;
}

Mat3 so3_exp(const So3Axis& axis) {
    const double theta = axis.angle();
    const Mat3 k = axis.generator();
    double a, b; // sin(t)/t and (1-cos(t))/t^2
    if (theta < 1e-8) {
        const double t2 = theta * theta;
        a = 1.0 - t2 / 6.0;
        b = 0.5 - t2 / 24.0;
    } else {
        a = std::sin(theta) / theta;
        b = (1.0 - std::cos(theta)) / (theta * theta);
    }
    return Mat3::Identity() + a * k + b * (k * k);
}

Mat3 rot_z(double a) {
    const double c = std::cos(a), s = std::sin(a);
    Mat3 m;
    m << c, -s, 0,
         s, c, 0,
         0, 0, 1;
    return m;
}

} // namespace ectl
