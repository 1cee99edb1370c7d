#pragma once

#include <functional>

namespace regvar {

// Adaptive Gauss-Kronrod G7/K15 on a finite interval. Subdivides until the
// panel error estimate is below max(relTol * |integral|, absTol); throws
// numeric_error when the interval budget is exhausted.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double relTol = 1e-10, double absTol = 1e-300);

// Integral of f over [x0, inf) through the substitution x = x0 * 2^s:
// marches unit panels in s until they stop contributing. Requires an
// integrand that eventually decays faster than 1/x.
double integrate_tail(const std::function<double(double)>& f, double x0, double relTol = 1e-10);

}  // namespace regvar
