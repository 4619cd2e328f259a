#include "tmsort/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

namespace tmsort {

double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    using boost::math::quadrature::gauss_kronrod;
    return gauss_kronrod<double, 61>::integrate(f, a, b, 20, rel_tol);
}

double sine_integral(double x) {
    constexpr double pi = std::numbers::pi;
    if (x == 0.0) return 0.0;
    if (x < 0.0) return -sine_integral(-x);
    if (x > 4.0 * pi) {
        // Si = pi/2 - f cos x - g sin x with the Laplace forms
        // f = int e^{-xt}/(1+t^2) dt, g = int t e^{-xt}/(1+t^2) dt; the cut at 45/x drops e^{-45}
        double hi = 45.0 / x;
        double f = integrate([x](double t) { return std::exp(-x * t) / (1.0 + t * t); }, 0.0, hi, 1e-13);
        double g = integrate([x](double t) { return t * std::exp(-x * t) / (1.0 + t * t); }, 0.0, hi, 1e-13);
        return pi / 2.0 - f * std::cos(x) - g * std::sin(x);
    }
    auto sinc = [](double u) { return u == 0.0 ? 1.0 : std::sin(u) / u; };
    // one lobe per piece
    double s = 0.0, a = 0.0;
    while (a < x) {
        double b = std::min(a + pi, x);
        s += integrate(sinc, a, b, 1e-13);
        a = b;
    }
    return s;
}

}  // namespace tmsort
