#include "ectl/quad.hpp"

#include <cmath>

namespace ectl {

namespace {

double simpson_once(const std::function<double(double)>& f, double a, double fa, double b,
                    double fb, double m, double fm) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double fa, double b, double fb,
             double m, double fm, double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson_once(f, a, fa, m, fm, lm, flm);
    const double right = simpson_once(f, m, fm, b, fb, rm, frm);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
    return adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}

} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol,
                        int max_depth) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = simpson_once(f, a, fa, b, fb, m, fm);
    return adapt(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

std::complex<double> lerp_uniform(const std::vector<std::complex<double>>& samples, double t0,
                                  double t1, double t) {
    if (samples.empty() || t < t0 || t > t1) return {0.0, 0.0};
    if (samples.size() == 1) return samples[0];
    const double h = (t1 - t0) / static_cast<double>(samples.size() - 1);
    const double u = (t - t0) / h;
    const auto i = static_cast<std::size_t>(std::min(u, static_cast<double>(samples.size() - 2)));
    const double w = u - static_cast<double>(i);
    return (1.0 - w) * samples[i] + w * samples[i + 1];
}

} // namespace ectl
