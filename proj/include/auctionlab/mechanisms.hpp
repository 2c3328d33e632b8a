#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "auctionlab/curve.hpp"
#include "auctionlab/dist.hpp"

namespace auctionlab {

// A market: one distribution per buyer type with a copy count, so large iid
// markets don't need thousands of duplicated objects.
struct Market {
    std::vector<PiecewiseDistribution> dists;
    std::vector<int> copies;

    static Market iid(PiecewiseDistribution d, int n);
    static Market of(std::vector<PiecewiseDistribution> ds);

    int total() const;
    bool discrete() const;   // every type purely atomic
    bool unbounded() const;  // any type with unbounded support
    void validate() const;
};

enum class Method { ClosedForm, Quadrature, MonteCarlo };
std::string method_name(Method m);

struct MechanismReport {
    std::string mechanism;
    double revenue = 0.0;
    Method method = Method::Quadrature;
    double opt_price = std::numeric_limits<double>::quiet_NaN();  // reserve / posted price
    int dup_index = -1;  // type whose duplication is optimal (spa-dup1 only)
    uint64_t mc_samples = 0;
    double std_error = 0.0;
    uint64_t seed = 0;
    std::map<std::string, double> diagnostics;
};

struct McOptions {
    uint64_t samples = 2'000'000;
    uint64_t seed = 0;
};

// Order-statistic CDFs of the market profile at a point.
double first_cdf(const Market& m, double v);
double first_cdf_left(const Market& m, double v);
double second_cdf(const Market& m, double v);
double second_cdf_left(const Market& m, double v);
// second_cdf with one extra copy of type t.
double second_cdf_dup(const Market& m, int t, double v);

double expected_max(const Market& m);     // E[highest value]
double expected_second(const Market& m);  // E[second-highest value]
// E[phi(max of n iid draws)] for a purely continuous distribution.
double expected_virtual_of_max(const PiecewiseDistribution& d, int n);

// Optimal (virtual-value maximizing) mechanism revenue.  Exact path: per-type
// ironed curves, then the layered integral over virtual-value levels plus the
// revenue carried at quantile zero by heavy tails.
MechanismReport bom_revenue(const Market& m, int grid_size = kDefaultGrid);
MechanismReport bom_revenue_mc(const Market& m, const McOptions& opts,
                               int grid_size = kDefaultGrid);

// Best anonymous posted price (sold to everyone at once, left-limit tie rule).
MechanismReport boup_revenue(const Market& m, int grid_size = kDefaultGrid);

// Second-price auction with anonymous reserve r.
double spa_revenue(const Market& m, double r);
// Best anonymous reserve.
MechanismReport bour_revenue(const Market& m, int grid_size = kDefaultGrid);

// Second-price auction after duplicating the best single type.
MechanismReport spa_plus_dup_revenue(const Market& m);

// Instant price: post the highest of one fresh sample per buyer.
MechanismReport ip_revenue(const Market& m, const McOptions& opts = {0, 0});

// Best sequential posted prices, optimal over approach orders and prices.
struct BospOptions {
    int max_n_for_exact = 8;  // hard cap 22; single-type markets are unrestricted
};
MechanismReport bosp_revenue(const Market& m, const BospOptions& opts = {});

// Worst-case BOSP/BOUP ratio constant.
double bosp_boup_constant();

// Triangular surrogate with the same sale probability at the given price.
PiecewiseDistribution triangular_reduction(const PiecewiseDistribution& d, double price);

}  // namespace auctionlab
