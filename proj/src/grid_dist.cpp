#include "auctionlab/grid_dist.hpp"

#include <algorithm>
#include <cmath>

#include "auctionlab/curve.hpp"

namespace auctionlab {

void GridDistribution::validate() const {
    if (v.empty() || v.size() != F.size() || v.size() != F_left.size() ||
        v.size() != T.size() || v.size() != T_left.size())
        throw ValidationError("grid distribution arrays must be nonempty and aligned");
    for (size_t i = 0; i < v.size(); ++i) {
        if (F_left[i] > F[i] + 1e-12 || T[i] > T_left[i] + 1e-12)
            throw ValidationError("grid distribution: left limit exceeds right value");
        if (std::fabs(F[i] + T[i] - 1.0) > 1e-9 || std::fabs(F_left[i] + T_left[i] - 1.0) > 1e-9)
            throw ValidationError("grid distribution: CDF and survival sides disagree");
        if (i > 0) {
            if (!(v[i] > v[i - 1])) throw ValidationError("grid values must increase");
            if (F[i - 1] > F_left[i] + 1e-12 || T_left[i] > T[i - 1] + 1e-12)
                throw ValidationError("grid distribution must be nondecreasing");
        }
    }
}

std::vector<double> shared_value_grid(const std::vector<PiecewiseDistribution>& dists,
                                      int grid_size) {
    std::vector<double> vs;
    for (const auto& d : dists) {
        for (double x : d.char_values()) vs.push_back(x);
        double cap = d.bounded() ? d.support_sup() : d.quantile_price(1e-12);
        for (double q : build_quantile_grid(d, grid_size)) {
            double x = d.quantile_price(q);
            if (std::isfinite(x) && x <= cap) vs.push_back(x);
        }
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

GridDistribution to_grid(const PiecewiseDistribution& d, const std::vector<double>& grid) {
    GridDistribution g;
    g.v = grid;
    g.F.reserve(grid.size());
    g.F_left.reserve(grid.size());
    g.T.reserve(grid.size());
    g.T_left.reserve(grid.size());
    for (double x : grid) {
        g.F.push_back(d.cdf(x));
        g.F_left.push_back(d.cdf_left(x));
        g.T.push_back(d.tail(x));
        g.T_left.push_back(d.tail_left(x));
    }
    return g;
}

namespace {

// One recursion step for the CDF side: given F_{j:i-1} for j = 0..k (row) and
// buyer i's CDF value fi at one grid point, produce F_{j:i}.
inline void recurse_row(std::vector<double>& row, double fi, int k) {
    // row[j] = F_{j : i-1}; iterate j downward so row[j-1] is still the old value.
    for (int j = k; j >= 1; --j) {
        double prev_full = row[static_cast<size_t>(j)];
        double prev_less = row[static_cast<size_t>(j - 1)];
        row[static_cast<size_t>(j)] = prev_full * fi + prev_less * (1.0 - fi);
    }
}

// Survival side: row[j] = P[at least j of the first i exceed], updated with
// buyer i's exact (cdf, tail) pair.  Every term is nonnegative, so the result
// keeps full relative precision down to the smallest representable tails,
// where 1 - F_{k:n} would have cancelled to noise.
inline void recurse_tail_row(std::vector<double>& row, double fi, double ti, int k) {
    for (int j = k; j >= 1; --j)
        row[static_cast<size_t>(j)] =
            fi * row[static_cast<size_t>(j)] + ti * row[static_cast<size_t>(j - 1)];
}

}  // namespace

GridDistribution order_statistic(const std::vector<GridDistribution>& gs, int k) {
    if (gs.empty()) throw ValidationError("order statistic needs at least one distribution");
    int n = static_cast<int>(gs.size());
    if (k < 1 || k > n) throw ValidationError("order statistic index must satisfy 1 <= k <= n");
    size_t m = gs[0].v.size();
    for (const auto& g : gs)
        if (g.v.size() != m || g.v != gs[0].v)
            throw ValidationError("order statistic inputs must share one value grid");

    GridDistribution out;
    out.v = gs[0].v;
    out.F.resize(m);
    out.F_left.resize(m);
    out.T.resize(m);
    out.T_left.resize(m);
    // row[j] = F_{j:i} at the current point; F_{0:i} = 1 would overcount, the
    // correct base is F_{0:i} = 0 with F_{j:i} = 1 whenever j > i.
    std::vector<double> row(static_cast<size_t>(k) + 1);
    std::vector<double> trow(static_cast<size_t>(k) + 1);
    for (size_t p = 0; p < m; ++p) {
        for (int pass = 0; pass < 2; ++pass) {
            row.assign(static_cast<size_t>(k) + 1, 0.0);
            row[0] = 0.0;
            for (int j = 1; j <= k; ++j) row[static_cast<size_t>(j)] = 1.0;  // F_{j:0}, j > 0
            // trow base: with zero buyers, "at least 0 exceed" is certain and
            // "at least j >= 1 exceed" impossible.
            trow.assign(static_cast<size_t>(k) + 1, 0.0);
            trow[0] = 1.0;
            for (int i = 1; i <= n; ++i) {
                const auto& g = gs[static_cast<size_t>(i - 1)];
                double fi = pass == 0 ? g.F[p] : g.F_left[p];
                double ti = pass == 0 ? g.T[p] : g.T_left[p];
                recurse_row(row, fi, std::min(k, i));
                // entries j > i stay 1 by construction
                for (int j = i + 1; j <= k; ++j) row[static_cast<size_t>(j)] = 1.0;
                recurse_tail_row(trow, fi, ti, std::min(k, i));
            }
            if (pass == 0) {
                out.F[p] = row[static_cast<size_t>(k)];
                out.T[p] = trow[static_cast<size_t>(k)];
            } else {
                out.F_left[p] = row[static_cast<size_t>(k)];
                out.T_left[p] = trow[static_cast<size_t>(k)];
            }
        }
    }
    return out;
}

GridDistribution order_statistic_iid(const GridDistribution& g, int n, int k) {
    if (k < 1 || k > n) throw ValidationError("order statistic index must satisfy 1 <= k <= n");
    GridDistribution out;
    out.v = g.v;
    size_t m = g.v.size();
    out.F.resize(m);
    out.F_left.resize(m);
    out.T.resize(m);
    out.T_left.resize(m);
    for (size_t p = 0; p < m; ++p) {
        for (int pass = 0; pass < 2; ++pass) {
            double f = pass == 0 ? g.F[p] : g.F_left[p];
            double t = pass == 0 ? g.T[p] : g.T_left[p];
            // P[at most k-1 exceed] and P[at least k exceed], each as a sum of
            // nonnegative terms over its own side of the binomial.
            double below = 0.0;
            double binom = 1.0;
            for (int j = 0; j <= k - 1; ++j) {
                below += binom * std::pow(t, j) * std::pow(f, n - j);
                binom *= static_cast<double>(n - j) / static_cast<double>(j + 1);
            }
            double above = 0.0;
            binom = 1.0;  // rebuilt as C(n, n-j) walking j downward from n
            for (int j = n; j >= k; --j) {
                above += binom * std::pow(t, j) * std::pow(f, n - j);
                binom *= static_cast<double>(j) / static_cast<double>(n - j + 1);
            }
            if (pass == 0) {
                out.F[p] = std::min(below, 1.0);
                out.T[p] = std::min(above, 1.0);
            } else {
                out.F_left[p] = std::min(below, 1.0);
                out.T_left[p] = std::min(above, 1.0);
            }
        }
    }
    return out;
}

GridDistribution order_statistic(const std::vector<PiecewiseDistribution>& dists, int k,
                                 int grid_size) {
    std::vector<double> grid = shared_value_grid(dists, grid_size);
    std::vector<GridDistribution> gs;
    gs.reserve(dists.size());
    for (const auto& d : dists) gs.push_back(to_grid(d, grid));
    return order_statistic(gs, k);
}

// ---------------------------------------------------------------------------
// Curve samples off grid points

std::vector<std::pair<double, double>> revenue_samples(const GridDistribution& g) {
    // Exact pairs (q, R(q)) at q = P[X >= v[i]], where the price is v[i].
    // Duplicate quantiles (flat stretches) keep the larger price: that is the
    // supremum the price curve actually attains.
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < g.v.size(); ++i) {
        double q = g.T_left[i];
        if (q <= 0.0) continue;
        if (!pts.empty() && pts.back().first == q) {
            pts.back().second = q * g.v[i];
        } else {
            pts.emplace_back(q, q * g.v[i]);
        }
    }
    std::reverse(pts.begin(), pts.end());  // ascending in q
    return pts;
}

std::vector<std::pair<double, double>> ratio_samples(const GridDistribution& g) {
    // R(q) / (1 - q) at the same quantiles; the denominator is the stored CDF
    // value, exact where q rounds to 0 and 1 - q would not.
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < g.v.size(); ++i) {
        double q = g.T_left[i];
        double denom = g.F_left[i];
        if (q <= 0.0 || denom <= 0.0) continue;
        double val = q * g.v[i] / denom;
        if (!pts.empty() && pts.back().first == q) {
            pts.back().second = val;
        } else {
            pts.emplace_back(q, val);
        }
    }
    std::reverse(pts.begin(), pts.end());  // ascending in q
    return pts;
}

namespace {

// -ln(survival) from whichever of the stored sides is relatively exact: the
// CDF side when the hazard is small, the survival side when it is large.
inline double cum_hazard_of(double F, double T) {
    if (F < 0.5) return -std::log1p(-F);
    return T > 0.0 ? -std::log(T) : kInf;
}

}  // namespace

std::vector<std::pair<double, double>> cum_hazard_samples(const GridDistribution& g) {
    std::vector<std::pair<double, double>> pts;
    for (size_t i = 0; i < g.v.size(); ++i) {
        double hl = cum_hazard_of(g.F_left[i], g.T_left[i]);
        double hr = cum_hazard_of(g.F[i], g.T[i]);
        if (std::isfinite(hl)) pts.emplace_back(g.v[i], hl);
        if (hr != hl && std::isfinite(hr)) pts.emplace_back(g.v[i], hr);
    }
    return pts;
}

std::vector<std::pair<double, double>> hazard_ratio_samples(const GridDistribution& g) {
    std::vector<std::pair<double, double>> out;
    for (const auto& [v, h] : cum_hazard_samples(g)) {
        if (v <= 0.0) continue;
        out.emplace_back(v, h / v);
    }
    return out;
}

FamilyReport check_family(const GridDistribution& g, Family f) {
    FamilyReport rep;
    switch (f) {
        case Family::Regular: {
            auto pts = revenue_samples(g);
            // Anchor at (0, 0): since R(q)/q (the price) is always nonincreasing,
            // this anchor can never flag a true member.
            pts.insert(pts.begin(), {0.0, 0.0});
            rep = check_concave_points(pts);
            break;
        }
        case Family::MHR:
            rep = check_convex_points(cum_hazard_samples(g));
            break;
        case Family::QuasiRegular:
            rep = check_nondecreasing_points(ratio_samples(g));
            break;
        case Family::QuasiMHR:
            rep = check_nondecreasing_points(hazard_ratio_samples(g));
            break;
    }
    rep.family = f;
    rep.points = static_cast<int>(g.v.size());
    return rep;
}

ClosureResult closure_check(const std::vector<PiecewiseDistribution>& dists, int k, Family f,
                            int grid_size) {
    ClosureResult res;
    res.stat = order_statistic(dists, k, grid_size);
    res.report = check_family(res.stat, f);
    return res;
}

double counting_identity_gap(const std::vector<GridDistribution>& gs) {
    // sum_k F_{k:n}(x) = sum_i F_i(x) pointwise.
    int n = static_cast<int>(gs.size());
    std::vector<GridDistribution> stats;
    stats.reserve(static_cast<size_t>(n));
    for (int k = 1; k <= n; ++k) stats.push_back(order_statistic(gs, k));
    double worst = 0.0;
    for (size_t p = 0; p < gs[0].v.size(); ++p) {
        double direct = 0.0;
        for (const auto& g : gs) direct += g.F[p];
        double viaorder = 0.0;
        for (const auto& s : stats) viaorder += s.F[p];
        worst = std::max(worst, std::fabs(direct - viaorder));
    }
    return worst;
}

double second_vs_first_margin(const GridDistribution& first, const GridDistribution& second) {
    double worst = kInf;
    for (size_t p = 0; p < first.v.size(); ++p) {
        double f1 = first.F[p];
        double bound = f1 > 0.0 ? f1 * (1.0 - std::log(f1)) : 0.0;
        worst = std::min(worst, second.F[p] - bound);
    }
    return worst;
}

double add_buyer_margin(const GridDistribution& with_n, const GridDistribution& with_np1) {
    double worst = kInf;
    for (size_t p = 0; p < with_n.v.size(); ++p)
        worst = std::min(worst, with_n.F[p] - with_np1.F[p]);
    return worst;
}

double k_monotone_margin(const GridDistribution& kth, const GridDistribution& kp1th) {
    double worst = kInf;
    for (size_t p = 0; p < kth.v.size(); ++p)
        worst = std::min(worst, kp1th.F[p] - kth.F[p]);
    return worst;
}

}  // namespace auctionlab
