#ifndef ECTL_BRACKET_HPP
#define ECTL_BRACKET_HPP

#include "ectl/polynomial.hpp"
#include "ectl/propagate.hpp"

namespace ectl {

enum class Axis { X, Y };

struct DescentReport {
    double a_value = 0.0; // the descent functional at the chosen (P, Q)
    double tau = 0.0;
    double h1_before = 0.0;
    double h1_after = 0.0;
    double schedule_duration = 0.0;
    std::size_t trip_count = 0;
};

// Dirac train whose endpoint is I + sign*tau*omega^m * G_axis + o(tau),
// uniformly on bounded frequency windows. m=0 is one exact pulse; m=1 the
// 3-pulse commutator train with sqrt(tau) free flights; m>=2 the nested
// recursion, whose negative legs are exact schedule inverses so the
// third-order remainders cancel stage by stage. Duration (2^{m+1}-2) *
// tau^{1/(m+1)} exactly on event times.
ControlSchedule bracket_schedule(int m, double tau, int sign, Axis axis);

// Concatenation of one bracket schedule per nonzero monomial (ascending
// degree, P before Q; per-monomial tau_j = |coef_j|*tau, sign = sign(coef_j)).
ControlSchedule poly_schedule(const RealPolynomial& p, const RealPolynomial& q, double tau);

// Discrete H^1 seminorm ||M'||_{L^2}: centered second-order differences,
// one-sided at the ends, trapezoid in omega.
double h1_seminorm(const EnsembleState& state);

// A(P,Q) = int P'(-z y' + y z') + Q'(z x' - x z') domega
double descent_functional(const EnsembleState& state, const RealPolynomial& p,
                          const RealPolynomial& q);

// Negated normalized gradient of A over the monomial basis X^i, i <= max_deg;
// the returned pair has A(P,Q) = -||gradient||.
std::pair<RealPolynomial, RealPolynomial> find_descent_polys(const EnsembleState& state,
                                                             int max_deg);

struct DescentStepResult {
    ControlSchedule schedule;
    EnsembleState state;
    DescentReport report;
};

// One backtracking descent step (tau, tau/2, ... up to 30 halvings); accepts
// the first tau whose simulated endpoint lowers the H^1 seminorm. States with
// z identically 0 are pre-rotated by the exact (3pi/2, pi) x-pulse pair.
DescentStepResult descent_step(const EnsembleState& state, int max_deg, double tau0);

// Two-pulse schedule with omega-independent endpoint exp(theta*G_axis) mapping
// the constant vector to (x, 0, sqrt(y^2+z^2)) (axis x) or (0, y,
// sqrt(x^2+z^2)) (axis y), strictly closer to e3. Falls back to the other
// axis when the requested one cannot improve.
struct RotateResult {
    ControlSchedule schedule;
    Vec3 result;
    double theta = 0.0;   // in [0, 2pi)
    Axis used_axis = Axis::X;
};
RotateResult rotate_to_pole(const Vec3& m, Axis axis);

struct MaxIterExceeded : PreconditionError {
    MaxIterExceeded(std::vector<DescentReport> partial, EnsembleState last)
        : PreconditionError("H1 tolerance not reached within max_iter"),
          reports(std::move(partial)),
          state(std::move(last)) {}
    std::vector<DescentReport> reports;
    EnsembleState state;
};

// Repeats descent steps until ||M'|| < tol_h1 (or throws MaxIterExceeded),
// then rotates the averaged near-constant state to the pole (second axis
// applied when the first leaves transverse mass).
std::pair<EnsembleState, std::vector<DescentReport>> h1_descent_loop(const EnsembleState& state,
                                                                     double tol_h1, int max_iter,
                                                                     int max_deg);

} // namespace ectl

#endif
