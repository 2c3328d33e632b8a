#pragma once

#include <vector>

#include "auctionlab/dist.hpp"
#include "auctionlab/family.hpp"

namespace auctionlab {

// A distribution represented by exact CDF evaluations on a finite value grid:
// right values F and left limits F_left at each grid point, plus the matching
// survival values kept separately so neither end of the distribution loses
// precision to cancellation (1 - F is useless once F rounds to 1).  Between
// grid points nothing is interpolated; all downstream checks consume grid
// points only, so the stored numbers are exact functionals of the inputs.
struct GridDistribution {
    std::vector<double> v;       // strictly increasing
    std::vector<double> F;       // F(v[i]) = P[X <= v[i]]
    std::vector<double> F_left;  // F(v[i]-)
    std::vector<double> T;       // P[X > v[i]], exact even when F rounds to 1
    std::vector<double> T_left;  // P[X >= v[i]]

    void validate() const;
};

// Shared evaluation grid for a set of distributions: union of characteristic
// values and quantile-mapped prices of each input, capped at each input's
// 1 - 1e-12 quantile.
std::vector<double> shared_value_grid(const std::vector<PiecewiseDistribution>& dists,
                                      int grid_size);

GridDistribution to_grid(const PiecewiseDistribution& d, const std::vector<double>& grid);

// CDF of the k-th highest of independent draws, one per input grid
// distribution (all on the same value grid).  Uses the buyer-by-buyer
// recursion with F_{0:j} = 0 and F_{k:j} = 1 for k > j.
GridDistribution order_statistic(const std::vector<GridDistribution>& gs, int k);

// k-th highest of n iid draws.
GridDistribution order_statistic_iid(const GridDistribution& g, int n, int k);

// Convenience: build the shared grid and the k-th order statistic directly.
GridDistribution order_statistic(const std::vector<PiecewiseDistribution>& dists, int k,
                                 int grid_size = 4096);

// Exact curve samples off grid points (same conventions as the family module).
std::vector<std::pair<double, double>> revenue_samples(const GridDistribution& g);
std::vector<std::pair<double, double>> ratio_samples(const GridDistribution& g);
std::vector<std::pair<double, double>> cum_hazard_samples(const GridDistribution& g);
std::vector<std::pair<double, double>> hazard_ratio_samples(const GridDistribution& g);

FamilyReport check_family(const GridDistribution& g, Family f);

struct ClosureResult {
    FamilyReport report;
    GridDistribution stat;
};

// Does the k-th order statistic of `dists` stay in family `f`?
ClosureResult closure_check(const std::vector<PiecewiseDistribution>& dists, int k, Family f,
                            int grid_size = 4096);

// Structural identities, returned as the largest absolute discrepancy over the
// grid; all should be ~0 respectively >= -tol for valid inputs.
double counting_identity_gap(const std::vector<GridDistribution>& gs);
// min over grid of F_{2:n} - F_{1:n} (1 - ln F_{1:n}); >= -tol always.
double second_vs_first_margin(const GridDistribution& first, const GridDistribution& second);
// min over grid of F_{k:n}(x) - F_{k:n+1}(x); adding a buyer pushes the k-th
// highest up, so this must be >= -tol.
double add_buyer_margin(const GridDistribution& with_n, const GridDistribution& with_np1);
// min over grid of F_{k+1:n} - F_{k:n}; order statistics decrease in k.
double k_monotone_margin(const GridDistribution& kth, const GridDistribution& kp1th);

}  // namespace auctionlab
