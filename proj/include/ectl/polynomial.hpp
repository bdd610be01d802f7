#ifndef ECTL_POLYNOMIAL_HPP
#define ECTL_POLYNOMIAL_HPP

#include <complex>
#include <vector>

namespace ectl {

// Dense real polynomial, coefficient index = degree; trailing zeros trimmed.
struct RealPolynomial {
    std::vector<double> coef;

    static RealPolynomial zero() { return {}; }
    static RealPolynomial monomial(std::size_t degree, double c = 1.0);

    bool is_zero() const { return coef.empty(); }
    int degree() const { return static_cast<int>(coef.size()) - 1; }
    double eval(double x) const;
    RealPolynomial derivative() const;
    void normalize(); // strip trailing zeros
};

struct CxPolynomial {
    std::vector<std::complex<double>> coef;

    bool is_zero() const { return coef.empty(); }
    int degree() const { return static_cast<int>(coef.size()) - 1; }
    std::complex<double> eval(std::complex<double> x) const;
};

} // namespace ectl

#endif
