#ifndef ECTL_LINEAR_HPP
#define ECTL_LINEAR_HPP

#include "ectl/grid.hpp"
#include "ectl/polynomial.hpp"
#include "ectl/spectrum.hpp"

namespace ectl {

// Complex control w = -v + iu sampled on a uniform time grid; zero outside
// [t0, t1].
struct SampledControl {
    double t0 = 0.0;
    double t1 = 0.0;
    std::vector<Cx> samples;

    void validate() const;
    Cx at(double t) const; // linear interpolation, zero outside
    double l1_norm() const;
    double l2_norm() const;
};

// Endpoint of the linearized flow: Z(T,w) = (Z0(w) - int_0^T w(t) e^{-iwt} dt) e^{iwT},
// trapezoid over the control's own time grid.
std::vector<Cx> lin_endpoint(const std::vector<Cx>& z0, const OmegaGrid& grid,
                             const SampledControl& w, double T);

// Least-squares polynomial P with sup_grid |Z_f(w) e^{-iwT/2} - P(iw)| < eta/2,
// minimal degree <= deg_max (columns scaled by max|w|^j against Vandermonde
// conditioning).
struct WeierstrassFit {
    CxPolynomial poly;
    int degree = 0;
    double sup_residual = 0.0;
};
WeierstrassFit weierstrass_fit(const std::vector<Cx>& zf, const OmegaGrid& grid, double T,
                               double eta, int deg_max);

struct MollifierSpec {
    double center = 0.0; // T/2
    double eps = 0.0;
    CxPolynomial poly;

    void validate(double T) const; // support must stay inside (0, T)
};

// Samples of w_eps(t) = -sum_j p_j g_eps^{(j)}(t) with the unit-mass bump
// g(y) = C exp(-1/(1-y^2)); derivatives by the exact rational-factor
// recurrence g^{(n)} = P_n/(1-y^2)^{2n} g. Degree capped at 20.
SampledControl mollified_control(const MollifierSpec& spec, double T, std::size_t n_samples);

// Fourier transform of the unit bump: int g(y) e^{-iuy} dy (quadrature).
Cx bump_hat(double u);

struct ApproxReachReport {
    double achieved_error = 0.0; // sup over the grid of |endpoint - Z_f|
    double eps = 0.0;
    int degree = 0;
    double fit_residual = 0.0;
    double cross_check_error = 0.0; // closed form vs lin_endpoint of samples
};

// Weierstrass fit + eps shrinking until the closed-form endpoint
// P(iw) g_hat(eps w) e^{iwT/2} lands within eta of Z_f on the grid.
std::pair<SampledControl, ApproxReachReport> approx_reach(const std::vector<Cx>& zf,
                                                          const OmegaGrid& grid, double T,
                                                          double eta, int deg_max);

} // namespace ectl

#endif
