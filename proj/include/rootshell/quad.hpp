#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace rootshell {

// One-dimensional adaptive quadrature on a 7/15 Gauss-Kronrod pair.
// Bisection with an absolute-error budget; deterministic evaluation order.

// Kronrod value over [a, b]; *err receives |kronrod - gauss|.
template <class F>
double gauss_kronrod_15(F&& f, double a, double b, double* err) {
    // 15-point Kronrod nodes (descending) and weights; the embedded 7-point
    // Gauss rule sits at indices 1, 3, 5 and the centre.
    static const double xk[8] = {
        0.991455371120813, 0.949107912342759, 0.864864423359769,
        0.741531185599394, 0.586087235467691, 0.405845151377397,
        0.207784955007898, 0.0};
    static const double wk[8] = {
        0.022935322010529, 0.063092092629979, 0.104790010322250,
        0.140653259715525, 0.169004726639267, 0.190350578064785,
        0.204432940075298, 0.209482141084728};
    static const double wg[4] = {
        0.129484966168870, 0.279705391489277, 0.381830050505119,
        0.417959183673469};

    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = wk[7] * fc;
    double gauss = wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double f1 = f(c - h * xk[j]);
        const double f2 = f(c + h * xk[j]);
        kron += wk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += wg[j / 2] * (f1 + f2);
    }
    kron *= h;
    gauss *= h;
    if (err) *err = std::abs(kron - gauss);
    return kron;
}

// Adaptive bisection until each panel meets its share of abs_tol.  Panels that
// hit the depth limit, or whose error estimate is at rounding level, are
// accepted as-is.  Throws if the panel count explodes (integrand unsuitable).
template <class F>
double adaptive_integrate(F&& f, double a, double b, double abs_tol,
                          int max_depth = 50) {
    struct Seg {
        double a, b, tol;
        int depth;
    };
    std::vector<Seg> work{{a, b, abs_tol, 0}};
    double total = 0.0;
    long long splits = 0;
    while (!work.empty()) {
        const Seg s = work.back();
        work.pop_back();
        double err = 0.0;
        const double v = gauss_kronrod_15(f, s.a, s.b, &err);
        const bool done = err <= s.tol || err <= 1e-14 * std::abs(v) ||
                          s.depth >= max_depth ||
                          (s.b - s.a) <= 1e-15 * (std::abs(s.a) + std::abs(s.b));
        if (done) {
            total += v;
            continue;
        }
        if (++splits > 2000000)
            throw std::runtime_error("adaptive_integrate: failed to converge");
        const double m = 0.5 * (s.a + s.b);
        work.push_back({m, s.b, 0.5 * s.tol, s.depth + 1});
        work.push_back({s.a, m, 0.5 * s.tol, s.depth + 1});
    }
    return total;
}

// Integral over [a, infinity) via x = a + u/(1-u), u in (0,1).  The integrand
// must decay fast enough that f(x)/(1-u)^2 stays bounded near u = 1.
template <class F>
double integrate_semi_infinite(F&& f, double a, double abs_tol,
                               int max_depth = 50) {
    return adaptive_integrate(
        [&](double u) {
            const double om = 1.0 - u;
            const double x = a + u / om;
            return f(x) / (om * om);
        },
        0.0, 1.0, abs_tol, max_depth);
}

}  // namespace rootshell
