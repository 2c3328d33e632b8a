#pragma once

#include <string>
#include <utility>
#include <vector>

#include "auctionlab/dist.hpp"

namespace auctionlab {

enum class Family { Regular, MHR, QuasiRegular, QuasiMHR };

std::string family_name(Family f);
Family family_from_name(const std::string& name);

struct FamilyReport {
    Family family = Family::Regular;
    bool passes = false;
    double max_violation = 0.0;  // largest normalized violation found
    double witness_x = 0.0;      // location (quantile or value) of that violation
    int points = 0;              // sample points inspected
};

// Shape tests over explicitly sampled points.  Points must be sorted by x;
// duplicate x values encode jump discontinuities (left value first).  These
// properties are closed under subsampling, so exact sample values of a true
// member can never produce a violation beyond floating-point noise; rtol
// absorbs that noise, scaled by the local magnitude.
FamilyReport check_concave_points(const std::vector<std::pair<double, double>>& pts,
                                  double rtol = 1e-7);
FamilyReport check_convex_points(const std::vector<std::pair<double, double>>& pts,
                                 double rtol = 1e-7);
FamilyReport check_nondecreasing_points(const std::vector<std::pair<double, double>>& pts,
                                        double rtol = 1e-7);

// Exact curve samples for a distribution.
//   revenue_samples:     (q, R(q)) on the refined quantile grid
//   ratio_samples:       (q, R(q) / (1 - q)), q < 1
//   cum_hazard_samples:  (v, H(v)) with left-limit/right pairs at atoms
//   hazard_ratio_samples:(v, H(v) / v)
std::vector<std::pair<double, double>> revenue_samples(const PiecewiseDistribution& d,
                                                       int grid_size);
std::vector<std::pair<double, double>> ratio_samples(const PiecewiseDistribution& d,
                                                     int grid_size);
std::vector<std::pair<double, double>> cum_hazard_samples(const PiecewiseDistribution& d,
                                                          int grid_size);
std::vector<std::pair<double, double>> hazard_ratio_samples(const PiecewiseDistribution& d,
                                                            int grid_size);

FamilyReport check_family(const PiecewiseDistribution& d, Family f, int grid_size = 4096);

struct FamilyProfile {
    bool regular = false;
    bool mhr = false;
    bool quasi_regular = false;
    bool quasi_mhr = false;
    bool operator==(const FamilyProfile&) const = default;
};

FamilyProfile classify(const PiecewiseDistribution& d, int grid_size = 4096);

// Every quasi-regular distribution sells with probability at least 1/e at its
// revenue-maximizing price (largest maximizer).  Returns the margin
// q_star - 1/e, which must be >= -tol for members.
double monopoly_quantile_margin(const PiecewiseDistribution& d, int grid_size = 4096);

}  // namespace auctionlab
