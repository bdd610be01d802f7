#ifndef ECTL_QUAD_HPP
#define ECTL_QUAD_HPP

#include <complex>
#include <cstddef>
#include <functional>
#include <vector>

namespace ectl {

// Composite trapezoid over explicit nodes. Left-to-right accumulation order,
// fixed for reproducibility.
template <typename T>
T trapezoid(const std::vector<double>& x, const std::vector<T>& f) {
    T acc{};
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        acc += 0.5 * (x[i + 1] - x[i]) * (f[i] + f[i + 1]);
    return acc;
}

// Trapezoid of f over n+1 uniform samples of [a, b].
template <typename F>
auto trapezoid_fn(F&& f, double a, double b, std::size_t panels) {
    using T = decltype(f(a));
    const double h = (b - a) / static_cast<double>(panels);
    T acc = 0.5 * (f(a) + f(b));
    for (std::size_t i = 1; i < panels; ++i) acc += f(a + h * static_cast<double>(i));
    return acc * h;
}

// Composite Simpson over n+1 uniform samples (n even).
template <typename F>
auto simpson_fn(F&& f, double a, double b, std::size_t panels) {
    if (panels % 2) ++panels;
    using T = decltype(f(a));
    const double h = (b - a) / static_cast<double>(panels);
    T acc = f(a) + f(b);
    for (std::size_t i = 1; i < panels; ++i)
        acc += (i % 2 ? 4.0 : 2.0) * f(a + h * static_cast<double>(i));
    return acc * (h / 3.0);
}

// Adaptive Simpson with absolute tolerance.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 40);

// Piecewise-linear interpolation of samples on a uniform time grid [t0, t1];
// zero outside.
std::complex<double> lerp_uniform(const std::vector<std::complex<double>>& samples,
                                  double t0, double t1, double t);

} // namespace ectl

#endif
