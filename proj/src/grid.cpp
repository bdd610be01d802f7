#include "ectl/grid.hpp"

#include <cmath>
#include <complex>

namespace ectl {

OmegaGrid OmegaGrid::uniform(double lo, double hi, std::size_t n) {
    OmegaGrid g;
    g.omega_min = lo;
    g.omega_max = hi;
    g.nodes.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        g.nodes[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.nodes.back() = hi;
    g.validate();
    return g;
}

void OmegaGrid::validate() const {
    if (nodes.size() < 2)
        throw PreconditionError("OmegaGrid needs at least 2 nodes");
    if (!(omega_min < omega_max))
        throw PreconditionError("OmegaGrid requires omega_min < omega_max");
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i)
        if (!(nodes[i] < nodes[i + 1]))
            throw PreconditionError("OmegaGrid nodes must be strictly ascending");
    if (nodes.front() < omega_min || nodes.back() > omega_max)
        throw PreconditionError("OmegaGrid nodes outside [omega_min, omega_max]");
}

EnsembleState EnsembleState::constant(const OmegaGrid& grid, const Vec3& v) {
    grid.validate();
    EnsembleState s;
    s.grid = grid;
    s.m.assign(grid.size(), v);
    return s;
}

EnsembleState EnsembleState::from_transverse(const OmegaGrid& grid,
                                             const std::vector<std::complex<double>>& z,
                                             int pole) {
    grid.validate();
    if (z.size() != grid.size())
        throw PreconditionError("transverse sample count does not match grid");
    EnsembleState s;
    s.grid = grid;
    s.m.resize(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double r2 = std::norm(z[i]);
        if (r2 > 1.0)
            throw DomainViolation("|Z| exceeds 1; no point on the sphere");
        s.m[i] = Vec3(z[i].real(), z[i].imag(), pole * std::sqrt(1.0 - r2));
    }
    return s;
}

std::vector<std::complex<double>> EnsembleState::transverse() const {
    std::vector<std::complex<double>> z(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) z[i] = {m[i].x(), m[i].y()};
    return z;
}

double EnsembleState::max_norm_defect() const {
    double worst = 0.0;
    for (const auto& v : m) worst = std::max(worst, std::abs(v.norm() - 1.0));
    return worst;
}

void EnsembleState::check_unit_norm(double tol) const {
    if (max_norm_defect() >= tol)
        throw InternalError("ensemble state left the unit sphere");
}

} // namespace ectl
