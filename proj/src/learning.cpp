#include "auctionlab/learning.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "auctionlab/common.hpp"
#include "auctionlab/curve.hpp"
#include "auctionlab/rng.hpp"

namespace auctionlab {

namespace {

std::vector<const PiecewiseDistribution*> expand(const Market& market) {
    std::vector<const PiecewiseDistribution*> d;
    for (size_t t = 0; t < market.dists.size(); ++t)
        for (int c = 0; c < market.copies[t]; ++c) d.push_back(&market.dists[t]);
    return d;
}

// Highest and second-highest entry of one row.
std::pair<double, double> row_top2(const SampleMatrix& s, int row) {
    double m1 = 0.0, m2 = 0.0;
    for (int j = 0; j < s.n; ++j) {
        double v = s.at(row, j);
        if (v > m1) {
            m2 = m1;
            m1 = v;
        } else if (v > m2) {
            m2 = v;
        }
    }
    return {m1, m2};
}

}  // namespace

SampleMatrix sample_matrix(const Market& market, int m, uint64_t seed) {
    market.validate();
    if (m < 1) throw ValidationError("sample matrix needs at least one row");
    auto dists = expand(market);
    SampleMatrix s;
    s.m = m;
    s.n = static_cast<int>(dists.size());
    s.seed = seed;
    s.values.resize(static_cast<size_t>(m) * s.n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < s.n; ++j)
            s.values[static_cast<size_t>(i) * s.n + j] =
                dists[j]->sample(rng::uniform01(seed, j, i));
    return s;
}

double empirical_spa_revenue(const SampleMatrix& s, double r) {
    double total = 0.0;
    for (int i = 0; i < s.m; ++i) {
        auto [m1, m2] = row_top2(s, i);
        if (m1 >= r) total += std::max(m2, r);
    }
    return total / s.m;
}

double empirical_uniform_reserve(const SampleMatrix& s) {
    const int m = s.m;
    std::vector<double> m1(m), m2(m);
    for (int i = 0; i < m; ++i) std::tie(m1[i], m2[i]) = row_top2(s, i);

    std::vector<double> s1 = m1, s2 = m2;
    std::sort(s1.begin(), s1.end());
    std::sort(s2.begin(), s2.end());
    std::vector<double> suffix2(m + 1, 0.0);  // sum of s2[i..)
    for (int i = m - 1; i >= 0; --i) suffix2[i] = suffix2[i + 1] + s2[i];

    std::vector<double> cand = s1;
    cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

    double best = -1.0, r_hat = 0.0;
    for (auto it = cand.rbegin(); it != cand.rend(); ++it) {  // descending: ties keep larger r
        double r = *it;
        auto i1 = std::lower_bound(s1.begin(), s1.end(), r) - s1.begin();
        auto i2 = std::lower_bound(s2.begin(), s2.end(), r) - s2.begin();
        // rows whose second value clears r pay it; the rest that still sell pay r
        double rev = suffix2[i2] + r * static_cast<double>((m - i1) - (m - i2));
        if (rev > best) {
            best = rev;
            r_hat = r;
        }
    }
    return r_hat;
}

double EmpiricalMyerson::virtual_of(int buyer, double value) const {
    const auto& r = rule[buyer];
    auto it = std::upper_bound(r.v.begin(), r.v.end(), value);
    if (it == r.v.begin()) return -kInf;
    return r.phi[static_cast<size_t>(it - r.v.begin()) - 1];
}

std::pair<int, double> EmpiricalMyerson::outcome(const std::vector<double>& values) const {
    const int n = static_cast<int>(rule.size());
    std::vector<double> lev(n);
    int w = -1;
    for (int i = 0; i < n; ++i) {
        lev[i] = virtual_of(i, values[i]);
        if (lev[i] >= 0.0 && (w < 0 || lev[i] > lev[w])) w = i;
    }
    if (w < 0) return {-1, 0.0};
    // smallest support value at which w still beats everyone: strictly ahead
    // of lower-indexed buyers, weakly ahead of higher-indexed ones
    double strict = -kInf, weak = 0.0;
    for (int j = 0; j < n; ++j) {
        if (j < w) strict = std::max(strict, lev[j]);
        else if (j > w) weak = std::max(weak, lev[j]);
    }
    const auto& r = rule[w];
    auto a = std::lower_bound(r.phi.begin(), r.phi.end(), weak);
    auto b = std::upper_bound(r.phi.begin(), r.phi.end(), strict);
    size_t idx = static_cast<size_t>(std::max(a, b) - r.phi.begin());
    return {w, r.v[idx]};
}

EmpiricalMyerson empirical_myerson(const SampleMatrix& s, double epsilon) {
    if (!(epsilon > 0.0) || !(epsilon < 1.0))
        throw ValidationError("epsilon must lie in (0, 1)");
    if (s.m < 2) throw ValidationError("learning the mechanism needs at least 2 rows");
    const int ma = (s.m + 1) / 2;  // rows [0, ma) fit the curves, the rest calibrate

    // truncation level from the held-out half: empirical best uniform price
    double boup = 0.0;
    {
        std::vector<double> maxima;
        for (int i = ma; i < s.m; ++i) maxima.push_back(row_top2(s, i).first);
        std::sort(maxima.begin(), maxima.end());
        const int mb = static_cast<int>(maxima.size());
        for (int i = 0; i < mb; ++i)
            boup = std::max(boup, maxima[i] * static_cast<double>(mb - i) / mb);
    }

    EmpiricalMyerson mech;
    mech.epsilon = epsilon;
    mech.truncation = 9.0 * std::log(2.0 / epsilon) * boup;

    for (int j = 0; j < s.n; ++j) {
        std::vector<double> vals(ma);
        for (int i = 0; i < ma; ++i) vals[i] = std::min(s.at(i, j), mech.truncation);
        std::sort(vals.begin(), vals.end());

        std::vector<Atom> atoms;
        for (int i = 0; i < ma;) {
            int k = i;
            while (k < ma && vals[k] == vals[i]) ++k;
            atoms.push_back({vals[i], static_cast<double>(k - i) / ma});
            i = k;
        }
        PiecewiseDistribution d(atoms, {});
        IronedCurve curve = iron(d);

        EmpiricalMyerson::BuyerRule rule;
        for (const auto& a : atoms) {
            // average ironed virtual value across the atom's quantile span
            double ql = d.tail(a.v), qr = d.tail_left(a.v);
            double phi = (curve.value_at(qr) - curve.value_at(ql)) / (qr - ql);
            rule.v.push_back(a.v);
            rule.phi.push_back(phi);
        }
        for (size_t k = 1; k < rule.phi.size(); ++k)  // absorb fp noise in the hull slopes
            rule.phi[k] = std::max(rule.phi[k], rule.phi[k - 1]);
        mech.rule.push_back(std::move(rule));
    }
    return mech;
}

MechanismReport evaluate_learned(const EmpiricalMyerson& mech, const Market& market,
                                 const McOptions& opts) {
    market.validate();
    auto dists = expand(market);
    const int n = static_cast<int>(dists.size());
    if (n != static_cast<int>(mech.rule.size()))
        throw ValidationError("learned mechanism covers a different number of buyers");
    if (opts.samples == 0) throw ValidationError("Monte Carlo needs a positive sample count");

    MeanAccumulator acc =
        parallel_mc(opts.samples, [&](uint64_t lo, uint64_t hi, MeanAccumulator& a) {
            std::vector<double> v(n);
            for (uint64_t i = lo; i < hi; ++i) {
                for (int j = 0; j < n; ++j) v[j] = dists[j]->sample(rng::uniform01(opts.seed, j, i));
                auto [w, pay] = mech.outcome(v);
                a.add(w >= 0 ? pay : 0.0);
            }
        });

    MechanismReport rep;
    rep.mechanism = "empirical-myerson";
    rep.revenue = acc.mean();
    rep.method = Method::MonteCarlo;
    rep.mc_samples = opts.samples;
    rep.std_error = acc.std_error();
    rep.seed = opts.seed;
    rep.diagnostics["truncation"] = mech.truncation;
    return rep;
}

std::vector<ConvergencePoint> convergence_experiment(const Market& market,
                                                     const std::vector<int>& m_grid,
                                                     double epsilon, int trials, uint64_t seed,
                                                     uint64_t myerson_mc) {
    if (trials < 1) throw ValidationError("need at least one trial");
    double bour = bour_revenue(market).revenue;
    double bom = myerson_mc > 0 ? bom_revenue(market).revenue : 1.0;

    std::vector<ConvergencePoint> out;
    for (int m : m_grid) {
        ConvergencePoint pt;
        pt.m = m;
        MeanAccumulator eur, myer;
        for (int trial = 0; trial < trials; ++trial) {
            uint64_t ts = rng::derive(seed, static_cast<uint64_t>(m) * 1000003ULL +
                                                static_cast<uint64_t>(trial));
            SampleMatrix s = sample_matrix(market, m, ts);
            double r_hat = empirical_uniform_reserve(s);
            eur.add(spa_revenue(market, r_hat) / bour);
            if (myerson_mc > 0) {
                EmpiricalMyerson mech = empirical_myerson(s, epsilon);
                auto rep = evaluate_learned(mech, market, {myerson_mc, rng::derive(ts, 0x9e37)});
                myer.add(rep.revenue / bom);
            }
        }
        pt.eur_ratio = eur.mean();
        pt.eur_se = eur.std_error();
        pt.myerson_ratio = myer.mean();
        pt.myerson_se = myer.std_error();
        out.push_back(pt);
    }
    return out;
}

TruncationCheck truncation_loss_check(const Market& market, double epsilon,
                                      TruncationFlavor flavor) {
    if (!(epsilon > 0.0) || !(epsilon < 0.5))
        throw ValidationError("epsilon must lie in (0, 0.5)");
    market.validate();
    TruncationCheck chk;
    chk.bom_full = bom_revenue(market).revenue;
    if (flavor == TruncationFlavor::QuasiMhrMarket) {
        chk.t = 9.0 * std::log(2.0 / epsilon) * chk.bom_full;
        chk.bound = (1.0 - epsilon) * chk.bom_full;
    } else {
        if (market.total() != 1)
            throw ValidationError("the single-buyer flavor needs exactly one buyer");
        chk.t = chk.bom_full / epsilon;
        chk.bound = (1.0 - epsilon / (1.0 - epsilon)) * chk.bom_full;
    }
    Market trunc = market;
    for (auto& d : trunc.dists)
        if (chk.t < d.support_sup()) d = d.truncate(chk.t);
    chk.bom_truncated = bom_revenue(trunc).revenue;
    chk.passes = chk.bom_truncated >= chk.bound - 1e-9 * std::max(1.0, chk.bom_full);
    return chk;
}

namespace {
std::vector<double> average_ranks(const std::vector<double>& x) {
    const int n = static_cast<int>(x.size());
    std::vector<int> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return x[a] < x[b]; });
    std::vector<double> rank(n);
    for (int i = 0; i < n;) {
        int j = i;
        while (j < n && x[idx[j]] == x[idx[i]]) ++j;
        double r = 0.5 * (i + j - 1);
        for (int k = i; k < j; ++k) rank[idx[k]] = r;
        i = j;
    }
    return rank;
}
}  // namespace

double spearman(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw ValidationError("rank correlation needs two equally sized series");
    auto rx = average_ranks(x), ry = average_ranks(y);
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / rx.size();
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / ry.size();
    double num = 0.0, dx = 0.0, dy = 0.0;
    for (size_t i = 0; i < rx.size(); ++i) {
        num += (rx[i] - mx) * (ry[i] - my);
        dx += (rx[i] - mx) * (rx[i] - mx);
        dy += (ry[i] - my) * (ry[i] - my);
    }
    if (dx == 0.0 || dy == 0.0) return 0.0;
    return num / std::sqrt(dx * dy);
}

}  // namespace auctionlab
