#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "auctionlab/common.hpp"

namespace auctionlab::quad {

// Adaptive Gauss-Kronrod on a finite interval.  Callers are expected to have
// split the domain at any kinks, so the integrand is smooth here.
template <class F>
double integrate(F&& f, double lo, double hi, double tol = 1e-10) {
    if (!(hi > lo)) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        std::forward<F>(f), lo, hi, 12, tol);
}

// Integral over [m, inf) via the substitution v = m / t, t in (0, 1]:
//   int_m^inf f(v) dv = int_0^1 f(m/t) * m / t^2 dt.
// Well behaved whenever f decays at least quadratically.
template <class F>
double integrate_tail(F&& f, double m, double tol = 1e-10) {
    if (m <= 0) throw ValidationError("tail transform requires a positive lower limit");
    auto g = [&](double t) {
        double v = m / t;
        return f(v) * m / (t * t);
    };
    return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(g, 0.0, 1.0, 12, tol);
}

// Integral of f over [lo, hi] (hi may be +inf), split at the given breakpoints.
// Breakpoints outside the range are ignored.
template <class F>
double integrate_split(F&& f, double lo, double hi, std::vector<double> breaks,
                       double tol = 1e-10) {
    breaks.push_back(lo);
    if (std::isfinite(hi)) breaks.push_back(hi);
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
    double total = 0.0;
    double prev = lo;
    for (double b : breaks) {
        if (b <= prev || b > hi) continue;
        total += integrate(f, prev, b, tol);
        prev = b;
    }
    if (!std::isfinite(hi)) {
        double m = std::max(prev, 1e-12);
        if (prev <= 0) {
            // Cover (prev, 1] with a finite panel first, then transform from 1.
            total += integrate(f, prev, 1.0, tol);
            m = 1.0;
        }
        total += integrate_tail(f, m, tol);
    } else if (prev < hi) {
        total += integrate(f, prev, hi, tol);
    }
    return total;
}

}  // namespace auctionlab::quad
