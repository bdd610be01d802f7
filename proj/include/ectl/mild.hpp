#ifndef ECTL_MILD_HPP
#define ECTL_MILD_HPP

#include "ectl/linear.hpp"

namespace ectl {

// Picard solution of Z(t,w) = -int_0^t w sqrt(1-|Z|^2) e^{-iw tau} dtau e^{iwt}
// on a truncated symmetric frequency window; |Z| stays in the 1/2 ball.
struct MildSolution {
    std::vector<double> times;  // 1024 uniform steps on [0, T]
    std::vector<double> omegas; // symmetric window [-W, W]
    std::vector<std::vector<Cx>> z; // [time][omega]
    SampledControl w;
    int iterations = 0;
    double control_l2 = 0.0;
    std::vector<double> sup_diff_history; // per Picard sweep

    double sup_norm() const;
    double windowed_l2(std::size_t time_index) const; // trapezoid over omega
    double max_windowed_l2() const;
};

constexpr std::size_t kPicardTimeSteps = 1024;
constexpr std::size_t kDefaultWindowNodes = 161;

// Requires ||w||_{L2(0,T)} < 1/(2 sqrt(T)). Converges geometrically with
// factor c sqrt(T) ||w||, c = 1/sqrt(3).
MildSolution fixed_point_solve(const SampledControl& w, double T, double omega_window,
                               double tol, int max_iter,
                               std::size_t omega_nodes = kDefaultWindowNodes);

// Phi_W(x) = int_0^T int_{max(0,x-τ)}^{min(τ,x)} W(τ) W(σ) conj(W(τ+σ-x)) dσ dτ
// for x in (0, 2T), 0 outside. Tensor trapezoid on the kink-split region.
Cx phi_w(const SampledControl& w, double T, double x);

struct CubicReport {
    std::vector<double> x;
    std::vector<Cx> phi;
};

CubicReport cubic_report(const SampledControl& w, double T, std::size_t panels = 128);

struct TangentDemo {
    CubicReport report;          // W = 1_{[0,T]} on x in (0, 2T)
    double max_beyond_T = 0.0;   // max |Phi_1| over (T, 2T)
    double phi_at_3T_2 = 0.0;    // should equal T^2/16
};

// Evaluates the cubic correction for the box control; nonzero mass beyond T
// is the computable witness that the endpoint leaves the tangent space.
TangentDemo tangent_demo(double T);

struct ThirdOrderRow {
    double omega = 0.0;
    double eps = 0.0;
    Cx measured;      // (Z(T; eps W) - eps Z1(T)) / eps^3
    Cx reference;     // closed-form Z3(T)
    double rel_error = 0.0;
};

struct ThirdOrderReport {
    std::vector<ThirdOrderRow> rows;
    // Richardson extrapolation from the two smallest eps per omega.
    std::vector<double> extrapolated_rel_error;
};

ThirdOrderReport third_order_check(const SampledControl& w, double T,
                                   const std::vector<double>& omega_probes,
                                   const std::vector<double>& eps_list);

} // namespace ectl

#endif
