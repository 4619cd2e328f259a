#pragma once

#include <complex>

namespace tmsort {

using cplx = std::complex<double>;

// 2x2 real unimodular matrix (a b; c d). b in ps^2, c in ps^-2.
class TemporalRayMatrix {
public:
    static constexpr double kUnimodularTol = 1e-12;

    TemporalRayMatrix(double a, double b, double c, double d);

    double a() const { return a_; }
    double b() const { return b_; }
    double c() const { return c_; }
    double d() const { return d_; }
    double det() const { return a_ * d_ - b_ * c_; }

    friend bool operator==(const TemporalRayMatrix&, const TemporalRayMatrix&) = default;

private:
    double a_, b_, c_, d_;
};

struct GouyParams {
    cplx alpha;
    double beta;
    double gamma;  // (-pi, pi]
};

struct Type1Decomposition {
    double D;   // each dispersive element
    double Df;  // lens focal GDD
};

TemporalRayMatrix identity_matrix();
TemporalRayMatrix prop(double D);
TemporalRayMatrix lens(double Df);
TemporalRayMatrix frft_matrix(double gamma, double tau);

// T2 * T1: T1 acts first.
TemporalRayMatrix compose(const TemporalRayMatrix& T2, const TemporalRayMatrix& T1);
TemporalRayMatrix operator*(const TemporalRayMatrix& T2, const TemporalRayMatrix& T1);

GouyParams gouy_params(const TemporalRayMatrix& T, double tau);

Type1Decomposition type1_decomposition(double gamma, double tau);

// Wrap an angle into (-pi, pi].
double wrap_angle(double x);

}  // namespace tmsort
