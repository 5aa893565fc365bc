#include "filtrate/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "filtrate/errors.hpp"

namespace filtrate::num {

namespace {

// 15-point Kronrod nodes with embedded 7-point Gauss rule, on [-1, 1].
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct GkEstimate {
    double kronrod;
    double error;
};

GkEstimate gk15(const Fn1& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double gauss = kWg[3] * fc;
    double kronrod = kWgk[7] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double fsum = f(center - dx) + f(center + dx);
        kronrod += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    gauss *= half;
    kronrod *= half;

    const double diff = std::fabs(kronrod - gauss);
    double err = diff;
    if (diff != 0.0) err = std::min(diff, std::pow(200.0 * diff, 1.5));
    return {kronrod, err};
}

struct Interval {
    double a, b, value, error;
    int depth;
    bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace

QuadratureResult integrate_adaptive(const Fn1& f, double a, double b, double abs_tol,
                                    double rel_tol, int max_depth) {
    if (a == b) return {0.0, 0.0, 0};
    double sign = 1.0;
    if (a > b) {
        std::swap(a, b);
        sign = -1.0;
    }

    // Worst-interval-first refinement with global error accounting; intervals
    // that reach the depth cap freeze and keep their error contribution.
    std::priority_queue<Interval> active;
    const GkEstimate first = gk15(f, a, b);
    if (!std::isfinite(first.kronrod))
        throw NumericError("quadrature: integrand produced a non-finite value");
    active.push({a, b, first.kronrod, first.error, 0});
    double total_value = first.kronrod;
    double total_error = first.error;
    double frozen_error = 0.0;
    int deepest = 0;

    const std::size_t max_intervals = 200000;
    std::size_t splits = 0;
    while (!active.empty()) {
        const double tol = std::max(abs_tol, rel_tol * std::fabs(total_value));
        if (total_error <= tol) break;
        const Interval worst = active.top();
        active.pop();
        if (worst.depth >= max_depth) {
            // Cannot refine further; give up only if this interval alone
            // exceeds the remaining budget.
            if (worst.error > tol) {
                std::ostringstream os;
                os << "interval [" << worst.a << ", " << worst.b
                   << "] unresolved at depth " << worst.depth << ", local error "
                   << worst.error;
                throw NumericError("quadrature: bisection depth exhausted", os.str());
            }
            frozen_error += worst.error;
            total_error -= worst.error;
            continue;
        }
        if (++splits > max_intervals)
            throw NumericError("quadrature: interval budget exhausted");

        const double mid = 0.5 * (worst.a + worst.b);
        const GkEstimate left = gk15(f, worst.a, mid);
        const GkEstimate right = gk15(f, mid, worst.b);
        if (!std::isfinite(left.kronrod) || !std::isfinite(right.kronrod))
            throw NumericError("quadrature: integrand produced a non-finite value");
        total_value += left.kronrod + right.kronrod - worst.value;
        total_error += left.error + right.error - worst.error;
        deepest = std::max(deepest, worst.depth + 1);
        active.push({worst.a, mid, left.kronrod, left.error, worst.depth + 1});
        active.push({mid, worst.b, right.kronrod, right.error, worst.depth + 1});
    }
    return {sign * total_value, total_error + frozen_error, deepest};
}

double integrate_ode(const std::function<double(double, double)>& f, double x0, double y0,
                     double x1, const OdeOptions& opts) {
    if (x0 == x1) return y0;

    // Dormand-Prince 5(4) tableau.
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0,
                            a63 = 46732.0 / 5247.0, a64 = 49.0 / 176.0,
                            a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0,
                            e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                            e4 = 125.0 / 192.0 - 393.0 / 640.0,
                            e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0,
                            e6 = 11.0 / 84.0 - 187.0 / 2100.0, e7 = -1.0 / 40.0;
    static constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

    const double span = x1 - x0;
    const double dir = span > 0 ? 1.0 : -1.0;
    double h = opts.initial_step != 0.0 ? std::fabs(opts.initial_step)
                                        : std::fabs(span) / 64.0;
    const double h_min = std::fabs(span) * 1e-14;

    double x = x0;
    double y = y0;
    double k1 = f(x, y);

    while (dir * (x1 - x) > 0.0) {
        h = std::min(h, std::fabs(x1 - x));
        const double hs = dir * h;

        const double k2 = f(x + c2 * hs, y + hs * (a21 * k1));
        const double k3 = f(x + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
        const double k4 = f(x + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = f(x + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 =
            f(x + hs, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = f(x + hs, y_new);

        const double err_raw =
            hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double weight =
            opts.abs_tol + opts.rel_tol * std::max(std::fabs(y), std::fabs(y_new));
        const double err = std::fabs(err_raw) / std::max(weight, 1e-300);

        if (err <= 1.0) {
            if (opts.require_positive && y_new <= 0.0) {
                // Locate the crossing inside the accepted step by bisecting h.
                double lo = 0.0, hi = h;
                for (int i = 0; i < 100 && (hi - lo) > 1e-13 * h; ++i) {
                    const double mid = 0.5 * (lo + hi);
                    OdeOptions sub = opts;
                    sub.require_positive = false;
                    const double y_mid = integrate_ode(f, x, y, x + dir * mid, sub);
                    (y_mid > 0.0 ? lo : hi) = mid;
                }
                const double x_cross = x + dir * 0.5 * (lo + hi);
                std::ostringstream os;
                os << x_cross;
                throw NumericError("ode: solution crossed zero at abscissa " + os.str(),
                                   os.str());
            }
            x += hs;
            y = y_new;
            k1 = k7;
        }

        double factor = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
        factor = std::clamp(factor, 0.2, 5.0);
        h *= factor;
        if (h < h_min)
            throw NumericError("ode: step size underflow",
                               "x = " + std::to_string(x));
    }
    return y;
}

double bisect_root(const Fn1& f, double a, double b, double rel_tol, int max_iter) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0) == (fb > 0))
        throw NumericError("bisection: no sign change on bracket");
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (a + b);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (fa > 0)) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
        if (std::fabs(b - a) <= rel_tol * std::max(std::fabs(a), std::fabs(b))) break;
    }
    return 0.5 * (a + b);
}

std::vector<std::pair<double, double>> sign_change_brackets(const Fn1& f,
                                                            const std::vector<double>& xs) {
    std::vector<std::pair<double, double>> out;
    if (xs.size() < 2) return out;
    double prev_x = xs[0];
    double prev_f = f(prev_x);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        const double cx = xs[i];
        const double cf = f(cx);
        if (std::isfinite(prev_f) && std::isfinite(cf)) {
            if (prev_f == 0.0) {
                out.emplace_back(prev_x, prev_x);
            } else if ((prev_f > 0) != (cf > 0)) {
                out.emplace_back(prev_x, cx);
            }
        }
        prev_x = cx;
        prev_f = cf;
    }
    if (prev_f == 0.0) out.emplace_back(prev_x, prev_x);
    return out;
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> xs(static_cast<std::size_t>(std::max(n, 0)));
    if (n == 1) {
        xs[0] = a;
        return xs;
    }
    for (int i = 0; i < n; ++i)
        xs[static_cast<std::size_t>(i)] = a + (b - a) * static_cast<double>(i) / (n - 1);
    return xs;
}

std::vector<double> logspace(double a, double b, int n) {
    if (a <= 0.0 || b <= 0.0) throw DomainError("logspace: endpoints must be positive");
    std::vector<double> xs(static_cast<std::size_t>(std::max(n, 0)));
    if (n == 1) {
        xs[0] = a;
        return xs;
    }
    const double la = std::log(a), lb = std::log(b);
    for (int i = 0; i < n; ++i)
        xs[static_cast<std::size_t>(i)] =
            std::exp(la + (lb - la) * static_cast<double>(i) / (n - 1));
    return xs;
}

Newton2dResult newton_2d(const std::function<std::pair<double, double>(double, double)>& F,
                         const std::function<std::array<double, 4>(double, double)>& jac,
                         double x1_0, double x2_0, const Newton2dOptions& opts) {
    Newton2dResult res;
    res.x1 = x1_0;
    res.x2 = x2_0;
    auto [f1, f2] = F(res.x1, res.x2);
    res.f1 = f1;
    res.f2 = f2;

    auto norm2 = [](double a, double b) { return a * a + b * b; };
    double fn = norm2(res.f1, res.f2);

    for (int it = 0; it < opts.max_iter; ++it) {
        res.iterations = it;
        const auto J = jac(res.x1, res.x2);
        const double det = J[0] * J[3] - J[1] * J[2];
        if (det == 0.0 || !std::isfinite(det)) break;
        const double dx1 = (-res.f1 * J[3] + res.f2 * J[1]) / det;
        const double dx2 = (-res.f2 * J[0] + res.f1 * J[2]) / det;

        double step = 1.0;
        bool accepted = false;
        for (int bt = 0; bt < opts.max_backtrack; ++bt, step *= 0.5) {
            const double n1 = res.x1 + step * dx1;
            const double n2 = res.x2 + step * dx2;
            if (opts.in_domain && !opts.in_domain(n1, n2)) continue;
            const auto [g1, g2] = F(n1, n2);
            if (!std::isfinite(g1) || !std::isfinite(g2)) continue;
            const double gn = norm2(g1, g2);
            if (gn < fn || gn < opts.tol * opts.tol) {
                res.x1 = n1;
                res.x2 = n2;
                res.f1 = g1;
                res.f2 = g2;
                fn = gn;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;

        const double scale = std::max({std::fabs(res.f1), std::fabs(res.f2)});
        const double xscale = std::max({std::fabs(res.x1), std::fabs(res.x2), 1.0});
        const double step_size = std::max(std::fabs(dx1), std::fabs(dx2));
        if (scale < opts.tol || step_size < 1e-16 * xscale) {
            res.converged = true;
            res.iterations = it + 1;
            return res;
        }
    }
    res.converged = std::max(std::fabs(res.f1), std::fabs(res.f2)) < opts.tol;
    return res;
}

}  // namespace filtrate::num
