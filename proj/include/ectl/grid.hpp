#ifndef ECTL_GRID_HPP
#define ECTL_GRID_HPP

#include <vector>

#include "ectl/errors.hpp"
#include "ectl/so3.hpp"

namespace ectl {

// Frequency grid over a finite window [omega_min, omega_max]; nodes strictly
// ascending, at least 2.
struct OmegaGrid {
    double omega_min = 0.0;
    double omega_max = 0.0;
    std::vector<double> nodes;

    static OmegaGrid uniform(double lo, double hi, std::size_t n);
    void validate() const;
    std::size_t size() const { return nodes.size(); }
};

constexpr std::size_t kDefaultGridNodes = 1025; // power-of-two panel count

// Sampled magnetization over the grid; every node stays on the unit sphere.
struct EnsembleState {
    OmegaGrid grid;
    std::vector<Vec3> m;

    static EnsembleState constant(const OmegaGrid& grid, const Vec3& v);
    // x+iy from samples of Z, z = pole*sqrt(1-|Z|^2). Requires |Z| <= 1.
    static EnsembleState from_transverse(const OmegaGrid& grid,
                                         const std::vector<std::complex<double>>& z,
                                         int pole);

    std::size_t size() const { return m.size(); }
    std::vector<std::complex<double>> transverse() const; // x + iy per node
    double max_norm_defect() const;                       // max | ||m||-1 |
    void check_unit_norm(double tol = 1e-9) const;
};

} // namespace ectl

#endif
