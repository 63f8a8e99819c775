#pragma once

#include <cmath>
#include <stdexcept>

// Bracketed scalar solvers shared by the optimizer and the validation suite.

namespace leoacq {

// Bisection on a bracketing interval [lo, hi] with f(lo) and f(hi) of opposite
// sign. Relative tolerance on the interval width; hard iteration cap.
template <typename F>
double bisect(F&& f, double lo, double hi, double rel_tol = 1e-12, int max_iter = 200) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0) == (fhi > 0))
        throw std::domain_error("bisect: interval does not bracket a root");
    for (int i = 0; i < max_iter; ++i) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0) == (fhi > 0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
        }
        if (hi - lo <= rel_tol * std::abs(mid)) break;
    }
    return 0.5 * (lo + hi);
}

// Golden-section minimization of a unimodal function on [lo, hi].
template <typename F>
double golden_section_min(F&& f, double lo, double hi, double rel_tol = 1e-10,
                          int max_iter = 300) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < max_iter && (hi - lo) > rel_tol * (std::abs(lo) + std::abs(hi)); ++i) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

// Grid pre-bracketing followed by golden-section refinement. Handles the flat
// plateaus of the acquisition-time curves, where a blind golden section can
// stall on the saturation region.
template <typename F>
double grid_golden_min(F&& f, double lo, double hi, int grid = 200,
                       double rel_tol = 1e-10) {
    if (grid < 3) grid = 3;
    double best_x = lo, best_f = f(lo);
    const double step = (hi - lo) / (grid - 1);
    for (int i = 1; i < grid; ++i) {
        const double x = lo + step * i;
        const double fx = f(x);
        if (fx < best_f) {
            best_f = fx;
            best_x = x;
        }
    }
    const double a = std::max(lo, best_x - step);
    const double b = std::min(hi, best_x + step);
    return golden_section_min(f, a, b, rel_tol);
}

}  // namespace leoacq
