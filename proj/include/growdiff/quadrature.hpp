#pragma once

#include <functional>

namespace growdiff {

struct QuadratureResult {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
    bool converged = false;
};

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_intervals = 2000;
};

// Globally adaptive Gauss-Kronrod 7/15 on [a, b].
QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureOptions& opts = {});

// [a, inf) via x = a + u/(1-u).
QuadratureResult integrate_to_infinity(const std::function<double(double)>& f, double a,
                                       const QuadratureOptions& opts = {});

// Like integrate() but throws NumericalFailure if the tolerance is not reached.
double integrate_checked(const std::function<double(double)>& f, double a, double b,
                         const QuadratureOptions& opts = {});

// Fixed n-point Gauss-Legendre on [a, b]; n in [1, 20].
double gauss_legendre(const std::function<double(double)>& f, double a, double b, int n);

}  // namespace growdiff
