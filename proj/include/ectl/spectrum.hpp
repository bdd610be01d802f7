#ifndef ECTL_SPECTRUM_HPP
#define ECTL_SPECTRUM_HPP

#include <complex>
#include <string>
#include <vector>

#include "ectl/grid.hpp"

namespace ectl {

using Cx = std::complex<double>;

// Truncated two-sided Fourier coefficients c_n, |n| <= n_max, of the even
// extension to (-pi, pi). Built by even_extension_spectrum the coefficients
// satisfy c_{-n} == c_n exactly.
struct Spectrum {
    int n_max = 0;
    std::vector<Cx> c; // index n + n_max

    static Spectrum zero(int n_max);
    Cx coef(int n) const;
    void set_coef(int n, Cx v);
    // Heuristic mass beyond the truncation: |c_{n_max}| * n_max.
    double tail_estimate() const;
};

// c_n = (1/pi) int_0^pi f cos(n w) dw (c_0 without the factor 2; composite
// trapezoid on the supplied grid), mirrored to negative n. Grid must lie
// inside [0, pi].
Spectrum even_extension_spectrum(const std::vector<Cx>& samples, const OmegaGrid& grid,
                                 int n_max);

// l^1 norm of the coefficients (deterministic summation order).
double n_norm(const Spectrum& s);

// sum c_n e^{i n omega}
Cx synthesize(const Spectrum& s, double omega);

// Coefficient convolution, truncated to n_max(a)+n_max(b).
Spectrum convolve(const Spectrum& a, const Spectrum& b);

struct PoleDistanceReport {
    double n_x = 0.0;
    double n_y = 0.0;
    double n_z_shift = 0.0; // N(z - pole)
    double n_Z = 0.0;       // N(x + iy)
    int pole = +1;

    double n_distance() const { return n_x + n_y + n_z_shift; } // N(M - pole*e3)
};

// N-distance data of the state to pole*e3; grid must lie inside [0, pi].
PoleDistanceReport pole_distance(const EnsembleState& state, int pole, int n_max);

std::string spectrum_to_json(const Spectrum& s);
Spectrum spectrum_from_json(const std::string& text);

} // namespace ectl

#endif
