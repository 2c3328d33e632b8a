#include "auctionlab/family.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "auctionlab/curve.hpp"

namespace auctionlab {

std::string family_name(Family f) {
    switch (f) {
        case Family::Regular:
            return "regular";
        case Family::MHR:
            return "mhr";
        case Family::QuasiRegular:
            return "quasi-regular";
        case Family::QuasiMHR:
            return "quasi-mhr";
    }
    return "?";
}

Family family_from_name(const std::string& name) {
    if (name == "regular") return Family::Regular;
    if (name == "mhr") return Family::MHR;
    if (name == "quasi-regular" || name == "quasi_regular") return Family::QuasiRegular;
    if (name == "quasi-mhr" || name == "quasi_mhr") return Family::QuasiMHR;
    throw ValidationError("unknown family: " + name);
}

namespace {

// Chord test on consecutive triples.  sign=+1 demands points above chords
// (concave), sign=-1 below (convex).  Duplicate x values encode jumps and are
// handled by the same test without dividing by zero-length steps.
//
// Sample lists carry x-twins a few ulps apart wherever the curve was probed
// from both sides.  When the y values agree these twins would shrink one leg
// of every straddling triple to nothing and hide a genuine kink behind an
// ulp-sized chord, so equal-value twins are merged first.  Twins whose values
// disagree are real jumps and stay.
FamilyReport chord_check(const std::vector<std::pair<double, double>>& pts, double rtol,
                         int sign, Family fam) {
    std::vector<std::pair<double, double>> p;
    p.reserve(pts.size());
    for (const auto& pt : pts) {
        if (!p.empty()) {
            double xgap = pt.first - p.back().first;
            double xeps = 32 * std::numeric_limits<double>::epsilon() *
                          std::max(std::fabs(pt.first), 1e-300);
            double ys = std::max({std::fabs(pt.second), std::fabs(p.back().second), 1e-12});
            if (xgap <= xeps && std::fabs(pt.second - p.back().second) <= 1e-9 * ys) continue;
        }
        p.push_back(pt);
    }
    FamilyReport rep;
    rep.family = fam;
    rep.passes = true;
    rep.points = static_cast<int>(p.size());
    for (size_t i = 0; i + 2 < p.size(); ++i) {
        const auto& [x1, y1] = p[i];
        const auto& [x2, y2] = p[i + 1];
        const auto& [x3, y3] = p[i + 2];
        if (!(x3 > x1)) continue;
        if (!std::isfinite(y1) || !std::isfinite(y2) || !std::isfinite(y3)) continue;
        double chord = y1 + (y3 - y1) * (x2 - x1) / (x3 - x1);
        double scale = std::max({std::fabs(y1), std::fabs(y2), std::fabs(y3), 1e-12});
        double viol = sign * (chord - y2) / scale;
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            rep.witness_x = x2;
        }
    }
    rep.passes = rep.max_violation <= rtol;
    return rep;
}

}  // namespace

FamilyReport check_concave_points(const std::vector<std::pair<double, double>>& pts,
                                  double rtol) {
    return chord_check(pts, rtol, +1, Family::Regular);
}

FamilyReport check_convex_points(const std::vector<std::pair<double, double>>& pts,
                                 double rtol) {
    return chord_check(pts, rtol, -1, Family::MHR);
}

FamilyReport check_nondecreasing_points(const std::vector<std::pair<double, double>>& pts,
                                        double rtol) {
    FamilyReport rep;
    rep.passes = true;
    rep.points = static_cast<int>(pts.size());
    for (size_t i = 0; i + 1 < pts.size(); ++i) {
        double y1 = pts[i].second, y2 = pts[i + 1].second;
        if (!std::isfinite(y1) || !std::isfinite(y2)) continue;
        double scale = std::max({std::fabs(y1), std::fabs(y2), 1e-12});
        double viol = (y1 - y2) / scale;
        if (viol > rep.max_violation) {
            rep.max_violation = viol;
            rep.witness_x = pts[i + 1].first;
        }
    }
    rep.passes = rep.max_violation <= rtol;
    return rep;
}

std::vector<std::pair<double, double>> revenue_samples(const PiecewiseDistribution& d,
                                                       int grid_size) {
    std::vector<std::pair<double, double>> pts;
    for (double q : build_quantile_grid(d, grid_size))
        pts.emplace_back(q, q * std::min(d.quantile_price(q), 1e300));
    return pts;
}

std::vector<std::pair<double, double>> ratio_samples(const PiecewiseDistribution& d,
                                                     int grid_size) {
    std::vector<std::pair<double, double>> pts;
    for (double q : build_quantile_grid(d, grid_size)) {
        if (q >= 1.0) continue;
        pts.emplace_back(q, q * std::min(d.quantile_price(q), 1e300) / (1.0 - q));
    }
    return pts;
}

namespace {

// Value grid on the support: characteristic values, quantile-mapped prices and
// jump pairs at atoms.  Capped at the 1 - 1e-12 quantile for unbounded tails.
std::vector<double> value_grid(const PiecewiseDistribution& d, int grid_size) {
    std::vector<double> vs = d.char_values();
    double cap = d.bounded() ? d.support_sup() : d.quantile_price(1e-12);
    for (double q : build_quantile_grid(d, grid_size)) {
        double v = d.quantile_price(q);
        if (std::isfinite(v) && v <= cap) vs.push_back(v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    while (!vs.empty() && vs.back() > cap) vs.pop_back();
    return vs;
}

}  // namespace

std::vector<std::pair<double, double>> cum_hazard_samples(const PiecewiseDistribution& d,
                                                          int grid_size) {
    std::vector<std::pair<double, double>> pts;
    for (double v : value_grid(d, grid_size)) {
        double hl = d.cum_hazard_left(v);
        double hr = d.cum_hazard(v);
        if (std::isfinite(hl)) pts.emplace_back(v, hl);
        if (hr != hl && std::isfinite(hr)) pts.emplace_back(v, hr);
    }
    return pts;
}

std::vector<std::pair<double, double>> hazard_ratio_samples(const PiecewiseDistribution& d,
                                                            int grid_size) {
    std::vector<std::pair<double, double>> pts;
    for (double v : value_grid(d, grid_size)) {
        if (v <= 0.0) continue;
        double hl = d.cum_hazard_left(v);
        double hr = d.cum_hazard(v);
        if (std::isfinite(hl)) pts.emplace_back(v, hl / v);
        if (hr != hl && std::isfinite(hr)) pts.emplace_back(v, hr / v);
    }
    return pts;
}

FamilyReport check_family(const PiecewiseDistribution& d, Family f, int grid_size) {
    FamilyReport rep;
    switch (f) {
        case Family::Regular: {
            auto pts = revenue_samples(d, grid_size);
            pts.insert(pts.begin(), {0.0, d.boundary_revenue()});
            rep = check_concave_points(pts);
            break;
        }
        case Family::MHR:
            rep = check_convex_points(cum_hazard_samples(d, grid_size));
            break;
        case Family::QuasiRegular:
            rep = check_nondecreasing_points(ratio_samples(d, grid_size));
            break;
        case Family::QuasiMHR:
            rep = check_nondecreasing_points(hazard_ratio_samples(d, grid_size));
            break;
    }
    rep.family = f;
    return rep;
}

FamilyProfile classify(const PiecewiseDistribution& d, int grid_size) {
    FamilyProfile p;
    p.regular = check_family(d, Family::Regular, grid_size).passes;
    p.mhr = check_family(d, Family::MHR, grid_size).passes;
    p.quasi_regular = check_family(d, Family::QuasiRegular, grid_size).passes;
    p.quasi_mhr = check_family(d, Family::QuasiMHR, grid_size).passes;
    return p;
}

double monopoly_quantile_margin(const PiecewiseDistribution& d, int grid_size) {
    MonopolyPoint mp = monopoly_reserve(d, grid_size);
    return mp.q_star - std::exp(-1.0);
}

}  // namespace auctionlab
