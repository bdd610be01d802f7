#include "ectl/linear.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>

#include "ectl/parallel.hpp"
#include "ectl/quad.hpp"

namespace ectl {

void SampledControl::validate() const {
    if (!(t0 < t1)) throw PreconditionError("SampledControl needs t0 < t1");
    if (samples.size() < 2) throw PreconditionError("SampledControl needs >= 2 samples");
}

Cx SampledControl::at(double t) const {
    return lerp_uniform(samples, t0, t1, t);
}

double SampledControl::l1_norm() const {
    const double h = (t1 - t0) / static_cast<double>(samples.size() - 1);
    double acc = 0.5 * (std::abs(samples.front()) + std::abs(samples.back()));
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) acc += std::abs(samples[i]);
    return acc * h;
}

double SampledControl::l2_norm() const {
    const double h = (t1 - t0) / static_cast<double>(samples.size() - 1);
    double acc = 0.5 * (std::norm(samples.front()) + std::norm(samples.back()));
    for (std::size_t i = 1; i + 1 < samples.size(); ++i) acc += std::norm(samples[i]);
    return std::sqrt(acc * h);
}

std::vector<Cx> lin_endpoint(const std::vector<Cx>& z0, const OmegaGrid& grid,
                             const SampledControl& w, double T) {
    grid.validate();
    w.validate();
    if (z0.size() != grid.size()) throw PreconditionError("z0 sample count != grid size");
    const std::size_t nt = w.samples.size();
    const double h = (w.t1 - w.t0) / static_cast<double>(nt - 1);

    std::vector<Cx> out(grid.size());
    parallel_for(grid.size(), [&](std::size_t j) {
        const double omega = grid.nodes[j];
        Cx integral{0.0, 0.0};
        Cx prev = w.samples[0] * std::polar(1.0, -omega * w.t0);
        for (std::size_t i = 1; i < nt; ++i) {
            const double t = w.t0 + h * static_cast<double>(i);
            const Cx curr = w.samples[i] * std::polar(1.0, -omega * t);
            integral += 0.5 * h * (prev + curr);
            prev = curr;
        }
        out[j] = (z0[j] - integral) * std::polar(1.0, omega * T);
    });
    return out;
}

WeierstrassFit weierstrass_fit(const std::vector<Cx>& zf, const OmegaGrid& grid, double T,
                               double eta, int deg_max) {
    grid.validate();
    if (zf.size() != grid.size()) throw PreconditionError("zf sample count != grid size");
    if (!(eta > 0.0)) throw PreconditionError("eta must be positive");
    if (deg_max < 0) throw PreconditionError("deg_max must be nonnegative");

    const std::size_t n = grid.size();
    Eigen::VectorXcd target(n);
    for (std::size_t i = 0; i < n; ++i)
        target[static_cast<Eigen::Index>(i)] =
            zf[i] * std::polar(1.0, -grid.nodes[i] * T / 2.0);

    double wmax = 0.0;
    for (double v : grid.nodes) wmax = std::max(wmax, std::abs(v));
    if (wmax == 0.0) wmax = 1.0;

    for (int deg = 0; deg <= deg_max; ++deg) {
        Eigen::MatrixXcd vand(n, deg + 1);
        for (std::size_t i = 0; i < n; ++i) {
            Cx p{1.0, 0.0};
            const Cx iw{0.0, grid.nodes[i]};
            for (int j = 0; j <= deg; ++j) {
                const double scale = std::pow(wmax, j);
                vand(static_cast<Eigen::Index>(i), j) = p / scale;
                p *= iw;
            }
        }
        const Eigen::VectorXcd sol = vand.colPivHouseholderQr().solve(target);
        CxPolynomial poly;
        poly.coef.resize(static_cast<std::size_t>(deg) + 1);
        for (int j = 0; j <= deg; ++j)
            poly.coef[static_cast<std::size_t>(j)] = sol[j] / std::pow(wmax, j);

        double sup = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            sup = std::max(sup, std::abs(target[static_cast<Eigen::Index>(i)] -
                                         poly.eval(Cx{0.0, grid.nodes[i]})));
        if (sup < eta / 2.0) return {poly, deg, sup};
    }
    std::ostringstream os;
    os << "no polynomial of degree <= " << deg_max << " meets eta/2 = " << eta / 2.0;
    throw DegreeInsufficient(os.str());
}

namespace {

constexpr int kMaxBumpDegree = 20;

double bump_raw(double y) {
    const double s = 1.0 - y * y;
    if (s <= 0.0) return 0.0;
    const double e = -1.0 / s;
    return e < -700.0 ? 0.0 : std::exp(e);
}

double bump_mass() {
    static const double mass =
        simpson_fn([](double y) { return bump_raw(y); }, -1.0, 1.0, 1 << 16);
    return mass;
}

// P_{n+1} = P_n'(1-y^2)^2 + 4 n y (1-y^2) P_n - 2 y P_n, with g^{(n)} =
// P_n/(1-y^2)^{2n} g and P_0 = 1. Integer coefficients, exact in double for
// n <= 20.
const std::vector<RealPolynomial>& bump_factor_polys() {
    static const std::vector<RealPolynomial> polys = [] {
        std::vector<RealPolynomial> out;
        RealPolynomial one;
        one.coef = {1.0};
        out.push_back(one);
        RealPolynomial base; // 1 - y^2
        base.coef = {1.0, 0.0, -1.0};
        auto mul = [](const RealPolynomial& a, const RealPolynomial& b) {
            RealPolynomial r;
            if (a.is_zero() || b.is_zero()) return r;
            r.coef.assign(a.coef.size() + b.coef.size() - 1, 0.0);
            for (std::size_t i = 0; i < a.coef.size(); ++i)
                for (std::size_t j = 0; j < b.coef.size(); ++j)
                    r.coef[i + j] += a.coef[i] * b.coef[j];
            return r;
        };
        auto add = [](const RealPolynomial& a, const RealPolynomial& b) {
            RealPolynomial r;
            r.coef.assign(std::max(a.coef.size(), b.coef.size()), 0.0);
            for (std::size_t i = 0; i < a.coef.size(); ++i) r.coef[i] += a.coef[i];
            for (std::size_t i = 0; i < b.coef.size(); ++i) r.coef[i] += b.coef[i];
            r.normalize();
            return r;
        };
        for (int n = 0; n < kMaxBumpDegree; ++n) {
            const RealPolynomial& pn = out.back();
            RealPolynomial y4n;
            y4n.coef = {0.0, 4.0 * n};
            RealPolynomial ym2;
            ym2.coef = {0.0, -2.0};
            RealPolynomial next = add(mul(pn.derivative(), mul(base, base)),
                                      add(mul(y4n, mul(pn, base)), mul(ym2, pn)));
            out.push_back(next);
        }
        return out;
    }();
    return polys;
}

// n-th derivative of the unit-mass bump at y.
double bump_derivative(int n, double y) {
    const double g = bump_raw(y);
    if (g == 0.0) return 0.0;
    const double s = 1.0 - y * y;
    const double factor = bump_factor_polys()[static_cast<std::size_t>(n)].eval(y) /
                          std::pow(s, 2.0 * n);
    return factor * g / bump_mass();
}

} // namespace

Cx bump_hat(double u) {
    const Cx val = simpson_fn(
        [u](double y) { return bump_raw(y) * std::polar(1.0, -u * y); }, -1.0, 1.0, 1 << 12);
    return val / bump_mass();
}

void MollifierSpec::validate(double T) const {
    if (!(eps > 0.0)) throw PreconditionError("mollifier eps must be positive");
    if (!(center - eps > 0.0 && center + eps < T))
        throw PreconditionError("mollifier support must stay inside (0, T)");
    if (poly.degree() > kMaxBumpDegree)
        throw PreconditionError("mollifier polynomial degree capped at 20");
}

SampledControl mollified_control(const MollifierSpec& spec, double T, std::size_t n_samples) {
    spec.validate(T);
    if (n_samples < 2) throw PreconditionError("need at least 2 samples");
    SampledControl w;
    w.t0 = 0.0;
    w.t1 = T;
    w.samples.resize(n_samples);
    const double h = T / static_cast<double>(n_samples - 1);
    parallel_for(n_samples, [&](std::size_t i) {
        const double t = h * static_cast<double>(i);
        const double y = (t - spec.center) / spec.eps;
        Cx acc{0.0, 0.0};
        if (std::abs(y) < 1.0) {
            for (std::size_t j = 0; j < spec.poly.coef.size(); ++j) {
                if (spec.poly.coef[j] == Cx{0.0, 0.0}) continue;
                const double gj = bump_derivative(static_cast<int>(j), y);
                acc += spec.poly.coef[j] * gj / std::pow(spec.eps, static_cast<double>(j) + 1.0);
            }
        }
        w.samples[i] = -acc;
    });
    return w;
}

std::pair<SampledControl, ApproxReachReport> approx_reach(const std::vector<Cx>& zf,
                                                          const OmegaGrid& grid, double T,
                                                          double eta, int deg_max) {
    if (!(T > 0.0)) throw PreconditionError("T must be positive");
    const WeierstrassFit fit = weierstrass_fit(zf, grid, T, eta, deg_max);

    double eps = 0.2 * T;
    while (true) {
        if (eps < 1e-6 * T) throw EpsUnderflow("mollifier width collapsed below 1e-6*T");
        double sup = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            const double omega = grid.nodes[i];
            const Cx endpoint = fit.poly.eval(Cx{0.0, omega}) * bump_hat(eps * omega) *
                                std::polar(1.0, omega * T / 2.0);
            sup = std::max(sup, std::abs(endpoint - zf[i]));
        }
        if (sup < eta) {
            MollifierSpec spec;
            spec.center = T / 2.0;
            spec.eps = eps;
            spec.poly = fit.poly;
            const auto n_samples = static_cast<std::size_t>(
                std::max(4097.0, std::ceil(64.0 * T / eps) + 1.0));
            SampledControl w = mollified_control(spec, T, n_samples);

            const std::vector<Cx> z0(grid.size(), Cx{0.0, 0.0});
            const std::vector<Cx> reached = lin_endpoint(z0, grid, w, T);
            double cross = 0.0;
            for (std::size_t i = 0; i < grid.size(); ++i) {
                const double omega = grid.nodes[i];
                const Cx endpoint = fit.poly.eval(Cx{0.0, omega}) * bump_hat(eps * omega) *
                                    std::polar(1.0, omega * T / 2.0);
                cross = std::max(cross, std::abs(reached[i] - endpoint));
            }
            if (cross > 2e-3)
                throw InternalError("sampled control disagrees with the closed-form endpoint");

            ApproxReachReport rep;
            rep.achieved_error = sup;
            rep.eps = eps;
            rep.degree = fit.degree;
            rep.fit_residual = fit.sup_residual;
            rep.cross_check_error = cross;
            return {std::move(w), rep};
        }
        eps *= 0.5;
    }
}

} // namespace ectl
