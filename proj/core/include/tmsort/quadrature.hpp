#pragma once

#include <functional>

namespace tmsort {

// Adaptive Gauss-Kronrod (61-point) on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-12);

// Sine integral Si(x) = int_0^x sin(u)/u du.
double sine_integral(double x);

}  // namespace tmsort
