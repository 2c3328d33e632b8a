#include "auctionlab/prophet.hpp"

#include <algorithm>
#include <cmath>

#include "auctionlab/common.hpp"
#include "auctionlab/quad.hpp"

namespace auctionlab {

std::vector<double> optimal_stopping_values(const PiecewiseDistribution& d, int n) {
    if (n < 1) throw ValidationError("need at least one round");
    double mean = d.mean();
    if (!std::isfinite(mean))
        throw DivergenceError("expected cost is infinite; stopping thresholds are undefined");
    std::vector<double> v(n);
    v[n - 1] = mean;
    // E[min(c, V)] = int_0^V (1 - F)
    for (int k = n - 2; k >= 0; --k) v[k] = d.tail_integral(0.0, v[k + 1]);
    return v;
}

double expected_min_of(const PiecewiseDistribution& d, int n) {
    if (n < 1) throw ValidationError("need at least one draw");
    if (n == 1) return d.mean();
    if (d.is_discrete()) {
        // the n-th power of a step function integrates as a step sum
        std::vector<double> xs;
        for (const auto& a : d.atoms()) xs.push_back(a.v);
        double total = xs.front();  // tail == 1 below the support
        for (size_t j = 0; j + 1 < xs.size(); ++j)
            total += (xs[j + 1] - xs[j]) * std::pow(d.tail(xs[j]), n);
        return total;
    }
    double lo = d.support_inf();
    auto f = [&](double v) { return std::pow(d.tail(v), n); };
    return lo + quad::integrate_split(f, lo, d.support_sup(), d.char_values());
}

ProphetRun prophet_run(const PiecewiseDistribution& d, int n) {
    ProphetRun run;
    run.n = n;
    run.thresholds = optimal_stopping_values(d, n);
    run.alg_cost = run.thresholds.front();
    run.prophet_cost = expected_min_of(d, n);
    run.ratio = run.alg_cost / run.prophet_cost;
    return run;
}

}  // namespace auctionlab
