#pragma once

#include <vector>

#include "auctionlab/dist.hpp"

namespace auctionlab {

// Revenue at quantile q: R(q) = q * price(q) where price(q) is the largest
// price whose left-limit sale probability is at least q.  R(0) is defined as
// the limit revenue available at quantile zero (nonzero only for heavy tails).
double revenue_at_quantile(const PiecewiseDistribution& d, double q);

// Quantile grid used for curve sampling: geometric spacing toward q = 0 plus a
// uniform component, refined by the exact quantiles of every atom boundary and
// segment endpoint (and their immediate successors, to expose jumps in R).
std::vector<double> build_quantile_grid(const PiecewiseDistribution& d, int grid_size);

inline constexpr double kQuantileGridMin = 1e-9;
inline constexpr int kDefaultGrid = 4096;

// Concave envelope of the sampled revenue curve, anchored at (0, R(0)).
// Piecewise linear; slopes are strictly decreasing across segments.  The
// anchor value (r.front()) is the revenue carried "at quantile zero", which a
// posted price can approach but not attain on heavy-tailed supports.
struct IronedCurve {
    std::vector<double> q;  // breakpoints, q.front() == 0, q.back() == 1
    std::vector<double> r;  // envelope values at the breakpoints

    double boundary_mass() const { return r.front(); }
    double value_at(double x) const;
    double slope_at(double x) const;  // slope of the piece containing x
    double max_value() const;
    // Hull pieces as (slope, quantile length), in decreasing slope order.
    std::vector<std::pair<double, double>> slope_lengths() const;
};

IronedCurve iron(const PiecewiseDistribution& d, int grid_size = kDefaultGrid);

// Envelope of an explicitly given sampled curve (must include q ascending;
// the (0, anchor) point is prepended).
IronedCurve iron_points(const std::vector<std::pair<double, double>>& samples, double anchor);

struct MonopolyPoint {
    double q_star = 0.0;
    double r_star = 0.0;    // price
    double rev_star = 0.0;  // q_star * r_star
};

// Revenue-maximizing posted price.  Ties are resolved toward the smallest
// quantile (largest price); reserve_price() below resolves the same ties the
// opposite way, which is the convention the reserve-based mechanisms use.
MonopolyPoint monopoly(const PiecewiseDistribution& d, int grid_size = kDefaultGrid);

// Smallest price among the revenue maximizers (largest quantile).
MonopolyPoint monopoly_reserve(const PiecewiseDistribution& d, int grid_size = kDefaultGrid);

// Best posted price restricted to prices >= floor_price, smallest maximizer.
MonopolyPoint monopoly_with_floor(const PiecewiseDistribution& d, double floor_price,
                                  int grid_size = kDefaultGrid);

// (price, revenue) candidate pairs covering every posted-price optimum:
// characteristic values, closed-form stationary points, and a refinement grid.
// Sorted by price.
std::vector<std::pair<double, double>> posted_price_candidates(const PiecewiseDistribution& d,
                                                               int grid_size = kDefaultGrid);

}  // namespace auctionlab
