#include "ectl/polynomial.hpp"

namespace ectl {

RealPolynomial RealPolynomial::monomial(std::size_t degree, double c) {
    RealPolynomial p;
    p.coef.assign(degree + 1, 0.0);
    p.coef[degree] = c;
    p.normalize();
    return p;
}

double RealPolynomial::eval(double x) const {
    double acc = 0.0;
    for (std::size_t i = coef.size(); i-- > 0;) acc = acc * x + coef[i];
    return acc;
}

RealPolynomial RealPolynomial::derivative() const {
    RealPolynomial d;
    if (coef.size() <= 1) return d;
    d.coef.resize(coef.size() - 1);
    for (std::size_t i = 1; i < coef.size(); ++i)
        d.coef[i - 1] = static_cast<double>(i) * coef[i];
    d.normalize();
    return d;
}

void RealPolynomial::normalize() {
    while (!coef.empty() && coef.back() == 0.0) coef.pop_back();
}

std::complex<double> CxPolynomial::eval(std::complex<double> x) const {
    std::complex<double> acc{0.0, 0.0};
    for (std::size_t i = coef.size(); i-- > 0;) acc = acc * x + coef[i];
    return acc;
}

} // namespace ectl
