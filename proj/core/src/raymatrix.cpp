#include "tmsort/raymatrix.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tmsort/errors.hpp"

namespace tmsort {

TemporalRayMatrix::TemporalRayMatrix(double a, double b, double c, double d)
    : a_(a), b_(b), c_(c), d_(d) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(d))
        throw InvalidParameter("ray matrix entries must be finite");
    // Absolute tolerance for O(1) entries; large entries cancel in ad - bc, so
    // scale by the size of the products there.
    double scale = std::max(1.0, std::abs(a * d) + std::abs(b * c));
    if (std::abs(det() - 1.0) > kUnimodularTol * scale) {
        std::ostringstream os;
        os.precision(17);
        os << "ray matrix not unimodular: ad - bc = " << det();
        throw InvalidParameter(os.str());
    }
}

TemporalRayMatrix identity_matrix() { return {1.0, 0.0, 0.0, 1.0}; }

TemporalRayMatrix prop(double D) { return {1.0, -D, 0.0, 1.0}; }

TemporalRayMatrix lens(double Df) {
    if (Df == 0.0 || !std::isfinite(Df)) throw InvalidParameter("lens: Df must be finite and nonzero");
    return {1.0, 0.0, 1.0 / Df, 1.0};
}

TemporalRayMatrix frft_matrix(double gamma, double tau) {
    if (!(tau > 0.0)) throw InvalidParameter("frft_matrix: tau must be positive");
    double c = std::cos(gamma), s = std::sin(gamma);
    double t2 = tau * tau;
    return {c, t2 * s, -s / t2, c};
}

TemporalRayMatrix compose(const TemporalRayMatrix& T2, const TemporalRayMatrix& T1) {
    return {T2.a() * T1.a() + T2.b() * T1.c(), T2.a() * T1.b() + T2.b() * T1.d(),
            T2.c() * T1.a() + T2.d() * T1.c(), T2.c() * T1.b() + T2.d() * T1.d()};
}

TemporalRayMatrix operator*(const TemporalRayMatrix& T2, const TemporalRayMatrix& T1) {
    return compose(T2, T1);
}

double wrap_angle(double x) {
    constexpr double pi = std::numbers::pi;
    double y = std::remainder(x, 2.0 * pi);  // [-pi, pi]
    if (y <= -pi) y += 2.0 * pi;
    return y;
}

GouyParams gouy_params(const TemporalRayMatrix& T, double tau) {
    if (!(tau > 0.0)) throw InvalidParameter("gouy_params: tau must be positive");
    double t2 = tau * tau;
    cplx z(T.a(), T.b() / t2);
    double beta = std::abs(z);
    // atan2 gives the same branch as arctan(b/a tau^2) + pi sgn(b) theta(-a);
    // -pi (a < 0, b = -0) is folded onto +pi.
    double gamma = std::atan2(z.imag(), z.real());
    if (gamma <= -std::numbers::pi) gamma = std::numbers::pi;
    cplx alpha = ((cplx(T.d(), -T.c() * t2)) * std::conj(z) - 1.0) / (beta * beta);
    return {alpha, beta, gamma};
}

Type1Decomposition type1_decomposition(double gamma, double tau) {
    if (!(tau > 0.0)) throw InvalidParameter("type1_decomposition: tau must be positive");
    double s = std::sin(gamma);
    // sin(k pi) evaluates to ~1e-16, not 0
    if (std::abs(s) < 1e-12) throw DegenerateAngle("type1_decomposition: sin(gamma) = 0, use the delta-kernel path");
    double Df = -tau * tau / s;
    return {Df * (1.0 - std::cos(gamma)), Df};
}

}  // namespace tmsort
