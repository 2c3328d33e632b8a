#pragma once

#include <vector>

#include "auctionlab/dist.hpp"

namespace auctionlab {

// Hiring one worker over n rounds at minimum expected cost, candidates drawn
// i.i.d. from d.  thresholds[k-1] holds V_k, the optimal expected cost with
// rounds k..n remaining: V_n = E[c], V_k = E[min(c, V_{k+1})].  The algorithm
// accepts round k's candidate when its cost is at most V_{k+1} and pays V_1 in
// expectation; the prophet pays E[min of n draws].
struct ProphetRun {
    int n = 0;
    std::vector<double> thresholds;  // V_1 .. V_n
    double alg_cost = 0.0;
    double prophet_cost = 0.0;
    double ratio = 0.0;  // alg / prophet
};

// V_1..V_n.  Throws DivergenceError when E[c] is infinite.
std::vector<double> optimal_stopping_values(const PiecewiseDistribution& d, int n);

ProphetRun prophet_run(const PiecewiseDistribution& d, int n);

// E[min of n iid draws]; exact for discrete laws, quadrature otherwise.
double expected_min_of(const PiecewiseDistribution& d, int n);

}  // namespace auctionlab
