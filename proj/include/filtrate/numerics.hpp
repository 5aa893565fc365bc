#pragma once

#include <array>
#include <functional>
#include <utility>
#include <vector>

namespace filtrate::num {

using Fn1 = std::function<double(double)>;

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    int max_depth = 0;  // deepest bisection level used
};

/// Adaptive Gauss-Kronrod (G7,K15) quadrature on [a, b] (a may exceed b).
/// Subdivides by bisection until the local error estimate meets
/// max(abs_tol_share, rel_tol * |local|); recursion is capped at max_depth
/// levels and exhausting the cap with an unresolved interval throws NumericError.
QuadratureResult integrate_adaptive(const Fn1& f, double a, double b,
                                    double abs_tol = 1e-10, double rel_tol = 1e-10,
                                    int max_depth = 60);

struct OdeOptions {
    double rel_tol = 1e-9;
    double abs_tol = 0.0;          // absolute component of the error weight
    double initial_step = 0.0;     // 0 = auto
    bool require_positive = false; // stop with NumericError when y crosses <= 0
};

/// Dormand-Prince 5(4) integration of dy/dx = f(x, y) from (x0, y0) to x1.
/// Integrates in either direction. Throws NumericError on step underflow or,
/// with require_positive, when y crosses zero (diagnostics() carries the
/// crossing abscissa).
double integrate_ode(const std::function<double(double, double)>& f, double x0, double y0,
                     double x1, const OdeOptions& opts = {});

/// Bisection on a sign-changing bracket [a, b]; relative tolerance on the root.
double bisect_root(const Fn1& f, double a, double b, double rel_tol = 1e-12,
                   int max_iter = 200);

/// Scan f over the given abscissas and return all sign-change brackets.
std::vector<std::pair<double, double>> sign_change_brackets(const Fn1& f,
                                                            const std::vector<double>& xs);

std::vector<double> linspace(double a, double b, int n);
std::vector<double> logspace(double a, double b, int n);  // log-uniform, a,b > 0

struct Newton2dOptions {
    int max_iter = 200;
    double tol = 1e-13;  // on the scaled residual
    int max_backtrack = 40;
    // Step gate: proposed iterate must satisfy this predicate (or the step is halved).
    std::function<bool(double, double)> in_domain;
};

struct Newton2dResult {
    double x1 = 0.0, x2 = 0.0;
    double f1 = 0.0, f2 = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Damped Newton for F: R^2 -> R^2 with caller-supplied residual and Jacobian.
/// jac returns (df1/dx1, df1/dx2, df2/dx1, df2/dx2).
Newton2dResult newton_2d(const std::function<std::pair<double, double>(double, double)>& F,
                         const std::function<std::array<double, 4>(double, double)>& jac,
                         double x1_0, double x2_0, const Newton2dOptions& opts = {});

// Central finite differences.
inline double deriv1_o2(const Fn1& f, double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}
inline double deriv1_o4(const Fn1& f, double x, double h) {
    return (-f(x + 2 * h) + 8 * f(x + h) - 8 * f(x - h) + f(x - 2 * h)) / (12.0 * h);
}
inline double deriv2_o4(const Fn1& f, double x, double h) {
    return (-f(x + 2 * h) + 16 * f(x + h) - 30 * f(x) + 16 * f(x - h) - f(x - 2 * h)) /
           (12.0 * h * h);
}

}  // namespace filtrate::num
