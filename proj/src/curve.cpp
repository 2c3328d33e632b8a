#include "auctionlab/curve.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/tools/minima.hpp>

namespace auctionlab {

double revenue_at_quantile(const PiecewiseDistribution& d, double q) {
    if (q <= 0.0) return d.boundary_revenue();
    if (q > 1.0) q = 1.0;
    double p = d.quantile_price(q);
    return std::isfinite(p) ? q * p : d.boundary_revenue();
}

std::vector<double> build_quantile_grid(const PiecewiseDistribution& d, int grid_size) {
    std::vector<double> qs;
    qs.reserve(static_cast<size_t>(grid_size) + 16);
    int half = std::max(grid_size / 2, 2);
    double lq = std::log(kQuantileGridMin);
    for (int i = 0; i < half; ++i) {
        // geometric from kQuantileGridMin up to 1
        qs.push_back(std::exp(lq * (1.0 - static_cast<double>(i) / (half - 1))));
        qs.push_back(static_cast<double>(i + 1) / half);
    }
    for (double x : d.char_values()) {
        for (double q : {d.tail_left(x), d.tail(x)}) {
            if (q > 0.0 && q <= 1.0) {
                qs.push_back(q);
                double qn = std::nextafter(q, 1.0);
                if (qn <= 1.0) qs.push_back(qn);
            }
        }
    }
    qs.push_back(1.0);
    std::sort(qs.begin(), qs.end());
    qs.erase(std::unique(qs.begin(), qs.end()), qs.end());
    while (!qs.empty() && qs.front() <= 0.0) qs.erase(qs.begin());
    return qs;
}

double IronedCurve::value_at(double x) const {
    if (x <= q.front()) return r.front();
    if (x >= q.back()) return r.back();
    auto it = std::upper_bound(q.begin(), q.end(), x);
    size_t j = static_cast<size_t>(it - q.begin());
    double t = (x - q[j - 1]) / (q[j] - q[j - 1]);
    return r[j - 1] + t * (r[j] - r[j - 1]);
}

double IronedCurve::slope_at(double x) const {
    if (q.size() < 2) return 0.0;
    if (x >= q.back()) x = q.back();
    auto it = std::upper_bound(q.begin(), q.end(), x);
    size_t j = static_cast<size_t>(it - q.begin());
    if (j == 0) j = 1;
    if (j >= q.size()) j = q.size() - 1;
    return (r[j] - r[j - 1]) / (q[j] - q[j - 1]);
}

double IronedCurve::max_value() const { return *std::max_element(r.begin(), r.end()); }

std::vector<std::pair<double, double>> IronedCurve::slope_lengths() const {
    std::vector<std::pair<double, double>> out;
    for (size_t j = 1; j < q.size(); ++j)
        out.emplace_back((r[j] - r[j - 1]) / (q[j] - q[j - 1]), q[j] - q[j - 1]);
    return out;
}

IronedCurve iron_points(const std::vector<std::pair<double, double>>& samples, double anchor) {
    // Upper concave hull by a monotone chain over (q, R) points.
    std::vector<std::pair<double, double>> hull;
    hull.reserve(samples.size() + 1);
    hull.emplace_back(0.0, anchor);
    auto cross = [](const std::pair<double, double>& a, const std::pair<double, double>& b,
                    const std::pair<double, double>& c) {
        return (b.first - a.first) * (c.second - a.second) -
               (b.second - a.second) * (c.first - a.first);
    };
    for (const auto& p : samples) {
        if (p.first <= hull.back().first) {
            // Duplicate quantile: keep the higher revenue value.
            if (p.first == hull.back().first && p.second > hull.back().second)
                hull.back().second = p.second;
            else if (p.first < hull.back().first)
                continue;
            else
                continue;
        } else {
            hull.push_back(p);
        }
        while (hull.size() >= 3 &&
               cross(hull[hull.size() - 3], hull[hull.size() - 2], hull.back()) >= 0.0)
            hull.erase(hull.end() - 2);
    }
    IronedCurve c;
    for (const auto& p : hull) {
        c.q.push_back(p.first);
        c.r.push_back(p.second);
    }
    return c;
}

IronedCurve iron(const PiecewiseDistribution& d, int grid_size) {
    std::vector<double> qs = build_quantile_grid(d, grid_size);
    std::vector<std::pair<double, double>> samples;
    samples.reserve(qs.size());
    for (double q : qs) samples.emplace_back(q, q * d.quantile_price(q));
    return iron_points(samples, d.boundary_revenue());
}

namespace {

// Candidate prices for exact monopoly search: characteristic values, interior
// stationary points of R(p) = p * (1 - F(p)) where those have closed forms,
// and a Brent pass for the one segment kind without one.
struct Candidate {
    double price;
    double q;
    double rev;
};

void add_candidate(const PiecewiseDistribution& d, double p, std::vector<Candidate>& out) {
    if (!std::isfinite(p)) return;
    double q = d.tail_left(p);
    if (q <= 0.0) return;
    out.push_back({p, q, p * q});
}

std::vector<Candidate> monopoly_candidates(const PiecewiseDistribution& d, int grid_size) {
    std::vector<Candidate> cand;
    for (double x : d.char_values()) add_candidate(d, x, cand);
    for (const auto& s : d.segments()) {
        switch (s.kind) {
            case SegKind::Exponential: {
                double p = s.p1 + 1.0 / s.p0;  // shift + 1/lambda
                if (p > s.lo && p < s.hi) add_candidate(d, p, cand);
                break;
            }
            case SegKind::Uniform: {
                double p = s.p1 / 2.0;
                if (p > s.lo && p < s.hi) add_candidate(d, p, cand);
                break;
            }
            case SegKind::Affine: {
                double p = (1.0 - s.p0) / (2.0 * s.p1);
                if (p > s.lo && p < s.hi) add_candidate(d, p, cand);
                break;
            }
            case SegKind::Rational:
                break;  // R is monotone on the segment; endpoints suffice
            case SegKind::PowerOfER: {
                double hi = std::isfinite(s.hi) ? s.hi : d.quantile_price(kQuantileGridMin);
                auto neg = [&](double p) { return -(p * d.tail_left(p)); };
                auto res = boost::math::tools::brent_find_minima(neg, s.lo, hi, 40);
                add_candidate(d, res.first, cand);
                break;
            }
        }
    }
    if (!d.is_discrete()) {
        // Grid candidates pick up suprema approached toward q -> 0.
        for (double q : build_quantile_grid(d, std::min(grid_size, 512)))
            add_candidate(d, d.quantile_price(q), cand);
    }
    return cand;
}

MonopolyPoint pick(const std::vector<Candidate>& cand, bool smallest_q) {
    double best = 0.0;
    for (const auto& c : cand) best = std::max(best, c.rev);
    double tol = 1e-9 * std::max(best, 1.0);
    MonopolyPoint mp;
    bool have = false;
    for (const auto& c : cand) {
        if (c.rev < best - tol) continue;
        bool better = !have || (smallest_q ? c.q < mp.q_star : c.q > mp.q_star);
        if (better) {
            mp = {c.q, c.price, c.rev};
            have = true;
        }
    }
    return mp;
}

}  // namespace

std::vector<std::pair<double, double>> posted_price_candidates(const PiecewiseDistribution& d,
                                                               int grid_size) {
    std::vector<std::pair<double, double>> out;
    for (const auto& c : monopoly_candidates(d, grid_size)) out.emplace_back(c.price, c.rev);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

MonopolyPoint monopoly(const PiecewiseDistribution& d, int grid_size) {
    return pick(monopoly_candidates(d, grid_size), /*smallest_q=*/true);
}

MonopolyPoint monopoly_reserve(const PiecewiseDistribution& d, int grid_size) {
    return pick(monopoly_candidates(d, grid_size), /*smallest_q=*/false);
}

MonopolyPoint monopoly_with_floor(const PiecewiseDistribution& d, double floor_price,
                                  int grid_size) {
    std::vector<Candidate> cand = monopoly_candidates(d, grid_size);
    std::vector<Candidate> keep;
    for (const auto& c : cand)
        if (c.price >= floor_price) keep.push_back(c);
    add_candidate(d, floor_price, keep);
    if (keep.empty()) {
        // No mass at or above the floor: selling never happens.
        return {0.0, floor_price, 0.0};
    }
    return pick(keep, /*smallest_q=*/false);
}

}  // namespace auctionlab
