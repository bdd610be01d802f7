#include "ectl/spectrum.hpp"

#include <cmath>
#include <json.hpp>

#include "ectl/parallel.hpp"

namespace ectl {

Spectrum Spectrum::zero(int n_max) {
    Spectrum s;
    s.n_max = n_max;
    s.c.assign(2 * static_cast<std::size_t>(n_max) + 1, Cx{0.0, 0.0});
    return s;
}

Cx Spectrum::coef(int n) const {
    if (std::abs(n) > n_max) return {0.0, 0.0};
    return c[static_cast<std::size_t>(n + n_max)];
}

void Spectrum::set_coef(int n, Cx v) {
    if (std::abs(n) > n_max) throw PreconditionError("coefficient index beyond n_max");
    c[static_cast<std::size_t>(n + n_max)] = v;
}

double Spectrum::tail_estimate() const {
    return std::abs(coef(n_max)) * static_cast<double>(n_max);
}

Spectrum even_extension_spectrum(const std::vector<Cx>& samples, const OmegaGrid& grid,
                                 int n_max) {
    grid.validate();
    if (samples.size() != grid.size())
        throw PreconditionError("sample count does not match grid");
    if (n_max < 0) throw PreconditionError("n_max must be nonnegative");
    if (grid.nodes.front() < -1e-12 || grid.nodes.back() > M_PI + 1e-12)
        throw PreconditionError("even-extension spectrum needs a grid inside [0, pi]");

    const std::size_t n_nodes = grid.size();
    std::vector<double> w(n_nodes, 0.0); // trapezoid weights
    for (std::size_t i = 0; i + 1 < n_nodes; ++i) {
        const double h = grid.nodes[i + 1] - grid.nodes[i];
        w[i] += 0.5 * h;
        w[i + 1] += 0.5 * h;
    }

    Spectrum s = Spectrum::zero(n_max);
    std::vector<Cx> half(static_cast<std::size_t>(n_max) + 1);
    parallel_for(static_cast<std::size_t>(n_max) + 1, [&](std::size_t n) {
        Cx acc{0.0, 0.0};
        for (std::size_t i = 0; i < n_nodes; ++i)
            acc += w[i] * samples[i] * std::cos(static_cast<double>(n) * grid.nodes[i]);
        half[n] = acc / M_PI;
    });
    for (int n = 0; n <= n_max; ++n) {
        s.set_coef(n, half[static_cast<std::size_t>(n)]);
        s.set_coef(-n, half[static_cast<std::size_t>(n)]); // evenness, exact
    }
    return s;
}

double n_norm(const Spectrum& s) {
    double acc = 0.0;
    for (const Cx& v : s.c) acc += std::abs(v);
    return acc;
}

Cx synthesize(const Spectrum& s, double omega) {
    Cx acc{0.0, 0.0};
    for (int n = -s.n_max; n <= s.n_max; ++n)
        acc += s.coef(n) * std::polar(1.0, static_cast<double>(n) * omega);
    return acc;
}

Spectrum convolve(const Spectrum& a, const Spectrum& b) {
    Spectrum out = Spectrum::zero(a.n_max + b.n_max);
    for (int n = -out.n_max; n <= out.n_max; ++n) {
        Cx acc{0.0, 0.0};
        for (int p = -b.n_max; p <= b.n_max; ++p) {
            const int q = n - p;
            if (std::abs(q) > a.n_max) continue;
            acc += a.coef(q) * b.coef(p);
        }
        out.set_coef(n, acc);
    }
    return out;
}

PoleDistanceReport pole_distance(const EnsembleState& state, int pole, int n_max) {
    if (pole != 1 && pole != -1) throw PreconditionError("pole must be +1 or -1");
    const std::size_t n = state.size();
    std::vector<Cx> x(n), y(n), zs(n), z(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = state.m[i].x();
        y[i] = state.m[i].y();
        zs[i] = state.m[i].z() - static_cast<double>(pole);
        z[i] = Cx{state.m[i].x(), state.m[i].y()};
    }
    PoleDistanceReport r;
    r.pole = pole;
    r.n_x = n_norm(even_extension_spectrum(x, state.grid, n_max));
    r.n_y = n_norm(even_extension_spectrum(y, state.grid, n_max));
    r.n_z_shift = n_norm(even_extension_spectrum(zs, state.grid, n_max));
    r.n_Z = n_norm(even_extension_spectrum(z, state.grid, n_max));
    return r;
}

std::string spectrum_to_json(const Spectrum& s) {
    nlohmann::json j;
    j["n_max"] = s.n_max;
    auto arr = nlohmann::json::array();
    for (int n = -s.n_max; n <= s.n_max; ++n) {
        const Cx v = s.coef(n);
        arr.push_back({{"n", n}, {"re", v.real()}, {"im", v.imag()}});
    }
    j["coefficients"] = arr;
    return j.dump(2);
}

Spectrum spectrum_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("spectrum JSON: ") + e.what());
    }
    Spectrum s = Spectrum::zero(j.at("n_max").get<int>());
    for (const auto& item : j.at("coefficients"))
        s.set_coef(item.at("n").get<int>(),
                   Cx{item.at("re").get<double>(), item.at("im").get<double>()});
    return s;
}

} // namespace ectl
