// Acceptance suite: every release criterion as one deterministic check with a
// single [PASS]/[FAIL] line.  Exit status is the number of failed criteria.
//
// Run all:        ./acceptance
// Run a subset:   ./acceptance 10 15

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "auctionlab/env.hpp"
#include "auctionlab/family.hpp"
#include "auctionlab/grid_dist.hpp"
#include "auctionlab/instances.hpp"
#include "auctionlab/learning.hpp"
#include "auctionlab/mechanisms.hpp"
#include "auctionlab/prophet.hpp"
#include "auctionlab/reproduce.hpp"
#include "auctionlab/rng.hpp"

namespace {

using namespace auctionlab;

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string num(double x, int dec = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", dec, x);
    return buf;
}

void require(Outcome& o, bool cond, const std::string& what) {
    if (!cond) {
        o.pass = false;
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += what;
    }
}

void note(Outcome& o, const std::string& what) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += what;
}

bool within(double x, double ref, double tol) { return std::fabs(x - ref) <= tol; }

// ---------------------------------------------------------------------------

Outcome c01_constant() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    double c = bosp_boup_constant();
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(o, within(c, 0.3817, 1e-4), "constant " + num(c) + " not within 1e-4 of 0.3817");
    require(o, secs < 1.0, "took " + num(secs, 2) + "s (limit 1s)");
    note(o, "c=" + num(c));
    return o;
}

Outcome c02_bour_gap() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    Market m = instances::bom_bour_iid();
    auto bom = bom_revenue(m);
    auto bour = bour_revenue(m);
    auto spa1 = spa_plus_dup_revenue(m);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(o, bom.method != Method::MonteCarlo && bour.method != Method::MonteCarlo &&
                   spa1.method != Method::MonteCarlo,
            "expected deterministic evaluation");
    double r1 = bour.revenue / bom.revenue;
    double r2 = spa1.revenue / bom.revenue;
    require(o, within(r1, 0.6822, 0.01), "BOUR/BOM " + num(r1));
    require(o, within(r2, 0.6822, 0.01), "SPA+1/BOM " + num(r2));
    require(o, secs < 30.0, "took " + num(secs, 1) + "s (limit 30s)");
    note(o, "bour/bom=" + num(r1) + " spa1/bom=" + num(r2));
    return o;
}

Outcome c03_boup_gaps() {
    Outcome o;
    Market m = instances::bom_boup_iid();
    double boup = boup_revenue(m).revenue;
    double bour = bour_revenue(m).revenue;
    double bom = bom_revenue(m).revenue;
    double zeta = 6.0 / (std::numbers::pi * std::numbers::pi);
    require(o, within(boup / bour, zeta, 0.01),
            "BOUP/BOUR " + num(boup / bour) + " vs 6/pi^2 " + num(zeta));
    require(o, within(boup / bom, 0.5, 0.01), "BOUP/BOM " + num(boup / bom));
    note(o, "boup/bour=" + num(boup / bour) + " boup/bom=" + num(boup / bom));
    return o;
}

Outcome c04_spa_dup() {
    Outcome o;
    Market m = instances::spa_dup_asym();
    double r = spa_plus_dup_revenue(m).revenue / bom_revenue(m).revenue;
    require(o, within(r, 0.6365, 1e-3), "SPA+1/BOM " + num(r));
    note(o, "ratio=" + num(r));
    return o;
}

Outcome c05_instant_asym() {
    Outcome o;
    Market m = instances::single_sample_asym();
    double r = ip_revenue(m).revenue / bom_revenue(m).revenue;
    require(o, within(r, 0.375, 0.005), "IP/BOM " + num(r));
    note(o, "ratio=" + num(r));
    return o;
}

Outcome c06_instant_iid() {
    Outcome o;
    Market m = instances::single_sample_iid();
    double r = ip_revenue(m).revenue / bom_revenue(m).revenue;
    require(o, within(r, 0.3978, 0.005), "IP/BOM " + num(r));
    note(o, "ratio=" + num(r));
    return o;
}

Outcome c07_exponential_facts() {
    Outcome o;
    auto e = exponential_dist(1.0);
    auto mono = monopoly(e);
    require(o, within(mono.q_star, std::exp(-1.0), 1e-6), "q* " + num(mono.q_star, 8));
    double phimax = expected_virtual_of_max(e, 2);
    require(o, within(phimax, 0.5, 1e-4), "E[phi(max of 2)] " + num(phimax));
    double vmax = expected_max(Market::iid(e, 2));
    require(o, within(vmax, 1.5, 1e-4), "E[max of 2] " + num(vmax));
    double mean = instances::welfare_witness().mean();
    require(o, mean <= 3.0 + 1e-6, "witness mean " + num(mean, 8) + " above 3");
    note(o, "q*=" + num(mono.q_star) + " E[phi]=" + num(phimax) + " mean=" + num(mean));
    return o;
}

Outcome c08_hierarchy() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    for (const auto& w : instances::hierarchy_witnesses()) {
        FamilyProfile got = classify(w.dist);
        require(o, got == w.profile, "witness " + w.name + " misclassified");
    }
    int chain_breaks = 0;
    for (uint64_t i = 0; i < 500; ++i) {
        PiecewiseDistribution d;
        switch (i % 5) {
            case 0: d = instances::random_arbitrary(42, i); break;
            case 1: d = instances::random_discrete(42, i); break;
            case 2: d = instances::random_mhr(42, i); break;
            case 3: d = instances::random_regular(42, i); break;
            default: d = instances::random_quasi_mhr(42, i); break;
        }
        FamilyProfile p = classify(d);
        bool ok = (!p.mhr || p.regular) && (!p.mhr || p.quasi_mhr) &&
                  (!p.regular || p.quasi_regular) && (!p.quasi_mhr || p.quasi_regular);
        if (!ok) ++chain_breaks;
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(o, chain_breaks == 0, std::to_string(chain_breaks) + " implication breaks");
    require(o, secs < 60.0, "took " + num(secs, 1) + "s (limit 60s)");
    note(o, "5 witnesses + 500 random, " + num(secs, 1) + "s");
    return o;
}

Outcome c09_closure() {
    Outcome o;
    auto rep = reproduce::run("closure", 42);
    int fails = 0;
    for (const auto& row : rep.rows)
        if (!row.pass) ++fails;
    require(o, rep.all_pass, std::to_string(fails) + " closure rows failed");
    note(o, std::to_string(rep.rows.size()) + " rows (300 fuzz cases + counterexample)");
    return o;
}

Outcome c10_single_item_bounds() {
    Outcome o;
    int bad = 0;
    std::string first;
    auto flag = [&](uint64_t i, const std::string& what) {
        ++bad;
        if (first.empty()) first = "case " + std::to_string(i) + ": " + what;
    };
    for (uint64_t i = 0; i < 200; ++i) {
        uint64_t s = rng::derive(1000, i);
        int n = 1 + static_cast<int>(rng::word(s, 0, 0) % 4);
        std::vector<PiecewiseDistribution> ds;
        for (int j = 0; j < n; ++j) ds.push_back(instances::random_quasi_regular(s, 10 + j));
        Market m = Market::of(ds);
        double bom = bom_revenue(m).revenue;
        double bour = bour_revenue(m).revenue;
        double boup = boup_revenue(m).revenue;
        double bosp = bosp_revenue(m).revenue;
        double spa1 = spa_plus_dup_revenue(m).revenue;
        auto ip = ip_revenue(m, {100000, rng::derive(s, 77)});
        double tol = 1e-6 * std::max(1.0, bom);
        if (!(boup <= bour + tol)) flag(i, "BOUP > BOUR");
        if (!(bour <= bom + tol)) flag(i, "BOUR > BOM");
        if (!(boup <= bosp + tol)) flag(i, "BOUP > BOSP");
        if (!(bosp <= bom + tol)) flag(i, "BOSP > BOM");
        if (!(spa1 >= bour - tol)) flag(i, "SPA+1 < BOUR by " + num(bour - spa1, 8));
        if (!(ip.revenue >= 0.5 * bour - 3.0 * ip.std_error))
            flag(i, "IP < BOUR/2 - 3se (ip=" + num(ip.revenue) + ", bour=" + num(bour) + ")");
    }
    for (uint64_t i = 0; i < 200; ++i) {
        uint64_t s = rng::derive(2000, i);
        int n = 1 + static_cast<int>(rng::word(s, 0, 0) % 4);
        std::vector<PiecewiseDistribution> ds;
        for (int j = 0; j < n; ++j) ds.push_back(instances::random_arbitrary(s, 20 + j));
        Market m = Market::of(ds);
        double spa = spa_revenue(m, 0.0);
        auto ip = ip_revenue(m, {100000, rng::derive(s, 88)});
        if (!(ip.revenue >= 0.5 * spa - 3.0 * ip.std_error))
            flag(i + 200, "IP < SPA/2 - 3se (ip=" + num(ip.revenue) + ", spa=" + num(spa) + ")");
    }
    require(o, bad == 0, std::to_string(bad) + " violations; first: " + first);
    note(o, "400 random markets");
    return o;
}

Outcome c11_downward_closed() {
    Outcome o;
    const double share_reserve = 1.0 / (std::exp(1.0) + 1.0);
    int bad = 0;
    std::string first;
    auto flag = [&](uint64_t i, const std::string& what) {
        ++bad;
        if (first.empty()) first = "case " + std::to_string(i) + ": " + what;
    };
    for (uint64_t i = 0; i < 100; ++i) {
        uint64_t s = rng::derive(3000, i);
        int n = 1 + static_cast<int>(rng::word(s, 0, 0) % 8);
        std::vector<PiecewiseDistribution> ds;
        for (int j = 0; j < n; ++j) ds.push_back(instances::random_quasi_mhr(s, 30 + j));
        Market m = Market::of(ds);
        Environment env = instances::random_explicit_environment(n, s, 999);
        McOptions opts{60000, rng::derive(s, 5)};
        auto W = vcg_welfare(env, m, opts);
        auto check = [&](const MechanismReport& rep, double share, const char* name) {
            double sigma = std::sqrt(rep.std_error * rep.std_error +
                                     share * share * W.std_error * W.std_error);
            if (!(rep.revenue >= share * W.revenue - 3.0 * sigma))
                flag(i, std::string(name) + " " + num(rep.revenue) + " < " +
                            num(share * W.revenue) + " - 3se");
        };
        check(monopoly_reserves_revenue(env, m, ReserveMode::Eager, opts), share_reserve,
              "eager");
        check(monopoly_reserves_revenue(env, m, ReserveMode::Lazy, opts), share_reserve,
              "lazy");
        check(monopoly_reserves_revenue(env, m, ReserveMode::AdaptiveLazy, opts), 1.0 / 3.0,
              "adaptive");
        check(n_duplicate_vcg(env, m, opts), 1.0 / 3.0, "dup-vcg");
    }
    require(o, bad == 0, std::to_string(bad) + " bound violations; first: " + first);

    // the structured capacity experiment approaches its 1/(e+1) floor
    std::vector<double> ratios;
    for (int m : {512, 2048, 8192})
        ratios.push_back(capacity_reserve_experiment(m, 20000, rng::derive(42, m)).ratio);
    require(o, ratios[1] < ratios[0] && ratios[2] < ratios[1],
            "capacity ratios not decreasing: " + num(ratios[0]) + " " + num(ratios[1]) + " " +
                num(ratios[2]));
    require(o, std::fabs(ratios[2] - share_reserve) <= 0.06,
            "gap to 1/(e+1) " + num(std::fabs(ratios[2] - share_reserve)));
    note(o, "capacity ratios " + num(ratios[0], 4) + " > " + num(ratios[1], 4) + " > " +
                num(ratios[2], 4));
    return o;
}

Outcome c12_truncation() {
    Outcome o;
    int bad = 0;
    std::string first;
    for (double eps : {0.05, 0.1}) {
        for (uint64_t i = 0; i < 100; ++i) {
            uint64_t s = rng::derive(4000, i);
            int n = 1 + static_cast<int>(rng::word(s, 0, 0) % 3);
            std::vector<PiecewiseDistribution> ds;
            for (int j = 0; j < n; ++j) ds.push_back(instances::random_quasi_mhr(s, 40 + j));
            auto chk = truncation_loss_check(Market::of(ds), eps,
                                             TruncationFlavor::QuasiMhrMarket);
            if (!chk.passes) {
                ++bad;
                if (first.empty())
                    first = "qmhr case " + std::to_string(i) + " eps " + num(eps, 2) +
                            ": kept " + num(chk.bom_truncated) + " < " + num(chk.bound);
            }
        }
        for (uint64_t i = 0; i < 100; ++i) {
            uint64_t s = rng::derive(5000, i);
            Market m = Market::of({instances::random_quasi_regular(s, 50)});
            auto chk =
                truncation_loss_check(m, eps, TruncationFlavor::QuasiRegularSingleBuyer);
            if (!chk.passes) {
                ++bad;
                if (first.empty())
                    first = "qreg case " + std::to_string(i) + " eps " + num(eps, 2) +
                            ": kept " + num(chk.bom_truncated) + " < " + num(chk.bound);
            }
        }
    }
    require(o, bad == 0, std::to_string(bad) + " truncation violations; first: " + first);
    note(o, "2 eps x 200 markets");
    return o;
}

Outcome c13_learning() {
    Outcome o;
    Market m = instances::rational_pair();
    auto pts = convergence_experiment(m, {100, 1000, 10000, 100000}, 0.1, 20, 31, 0);
    std::vector<double> ms, ratios;
    for (const auto& p : pts) {
        ms.push_back(static_cast<double>(p.m));
        ratios.push_back(p.eur_ratio);
    }
    double rho = spearman(ms, ratios);
    require(o, rho > 0.9, "spearman " + num(rho, 3));
    require(o, ratios.back() >= 0.95, "ratio at 1e5 " + num(ratios.back()));
    note(o, "rho=" + num(rho, 3) + " ratios " + num(ratios[0], 4) + ".." +
                num(ratios.back(), 4));
    return o;
}

Outcome c14_prophet() {
    Outcome o;
    auto t0 = std::chrono::steady_clock::now();
    double exp1000 = prophet_run(instances::exp1(), 1000).ratio;
    require(o, exp1000 >= 1.85 && exp1000 <= 2.0, "exp n=1000 ratio " + num(exp1000));
    for (const char* name : {"exp", "w2", "f2"}) {
        auto d = instances::named_market(name).dists[0];
        for (int n : {10, 100, 1000}) {
            double r = prophet_run(d, n).ratio;
            require(o, r <= 2.0 + 1e-6,
                    std::string(name) + " n=" + std::to_string(n) + " ratio " + num(r));
        }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    require(o, secs < 5.0, "took " + num(secs, 1) + "s (limit 5s)");
    note(o, "exp@1000=" + num(exp1000) + ", " + num(secs, 1) + "s");
    return o;
}

// --- criterion 15: independent brute-force evaluators on discrete markets ---

struct DiscreteBuyer {
    std::vector<double> v;  // ascending
    std::vector<double> p;
};

using Profile = std::vector<int>;  // atom index per buyer

template <typename Fn>
void for_each_profile(const std::vector<DiscreteBuyer>& buyers, Fn&& fn) {
    Profile idx(buyers.size(), 0);
    while (true) {
        double prob = 1.0;
        for (size_t b = 0; b < buyers.size(); ++b) prob *= buyers[b].p[idx[b]];
        fn(idx, prob);
        size_t b = 0;
        while (b < buyers.size()) {
            if (++idx[b] < static_cast<int>(buyers[b].v.size())) break;
            idx[b++] = 0;
        }
        if (b == buyers.size()) break;
    }
}

std::vector<double> support_union(const std::vector<DiscreteBuyer>& buyers) {
    std::vector<double> s;
    for (const auto& b : buyers) s.insert(s.end(), b.v.begin(), b.v.end());
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

double brute_boup(const std::vector<DiscreteBuyer>& buyers) {
    double best = 0.0;
    for (double price : support_union(buyers)) {
        double no_sale = 1.0;
        for (const auto& b : buyers) {
            double below = 0.0;
            for (size_t j = 0; j < b.v.size(); ++j)
                if (b.v[j] < price) below += b.p[j];
            no_sale *= below;
        }
        best = std::max(best, price * (1.0 - no_sale));
    }
    return best;
}

double brute_spa(const std::vector<DiscreteBuyer>& buyers, double r) {
    double rev = 0.0;
    for_each_profile(buyers, [&](const Profile& idx, double prob) {
        double hi = 0.0, second = 0.0;
        for (size_t b = 0; b < buyers.size(); ++b) {
            double v = buyers[b].v[idx[b]];
            if (v > hi) {
                second = hi;
                hi = v;
            } else if (v > second) {
                second = v;
            }
        }
        if (hi >= r) rev += prob * std::max(second, r);
    });
    return rev;
}

double brute_bour(const std::vector<DiscreteBuyer>& buyers) {
    double best = brute_spa(buyers, 0.0);
    for (double r : support_union(buyers)) best = std::max(best, brute_spa(buyers, r));
    return best;
}

double brute_spa_dup(const std::vector<DiscreteBuyer>& buyers) {
    double best = 0.0;
    for (size_t t = 0; t < buyers.size(); ++t) {
        auto dup = buyers;
        dup.push_back(buyers[t]);
        best = std::max(best, brute_spa(dup, 0.0));
    }
    return best;
}

double brute_ip(const std::vector<DiscreteBuyer>& buyers) {
    double rev = 0.0;
    for_each_profile(buyers, [&](const Profile& sample, double ps) {
        double price = 0.0;
        for (size_t b = 0; b < buyers.size(); ++b)
            price = std::max(price, buyers[b].v[sample[b]]);
        double sale = 0.0;
        for_each_profile(buyers, [&](const Profile& value, double pv) {
            for (size_t b = 0; b < buyers.size(); ++b)
                if (buyers[b].v[value[b]] >= price) {
                    sale += pv;
                    return;
                }
        });
        rev += ps * price * sale;
    });
    return rev;
}

double brute_bosp(const std::vector<DiscreteBuyer>& buyers) {
    std::vector<int> order(buyers.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end());
    double best = 0.0;
    do {
        // all price vectors from each buyer's own support
        std::vector<int> pi(buyers.size(), 0);
        while (true) {
            double rev = 0.0, reach = 1.0;
            for (size_t pos = 0; pos < order.size(); ++pos) {
                const auto& b = buyers[order[pos]];
                double price = b.v[pi[pos]];
                double accept = 0.0;
                for (size_t j = 0; j < b.v.size(); ++j)
                    if (b.v[j] >= price) accept += b.p[j];
                rev += reach * accept * price;
                reach *= 1.0 - accept;
            }
            best = std::max(best, rev);
            size_t pos = 0;
            while (pos < buyers.size()) {
                if (++pi[pos] < static_cast<int>(buyers[order[pos]].v.size())) break;
                pi[pos++] = 0;
            }
            if (pos == buyers.size()) break;
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return best;
}

double brute_bom(const std::vector<DiscreteBuyer>& buyers) {
    // per-buyer ironed virtual value per atom, from the concave hull of the
    // discrete revenue curve anchored at (0, 0)
    std::vector<std::vector<double>> phi(buyers.size());
    for (size_t b = 0; b < buyers.size(); ++b) {
        const auto& d = buyers[b];
        size_t k = d.v.size();
        std::vector<double> q(k + 1, 0.0), r(k + 1, 0.0);
        double acc = 0.0;
        for (size_t j = 0; j < k; ++j) {  // values descending
            acc += d.p[k - 1 - j];
            q[j + 1] = acc;
            r[j + 1] = acc * d.v[k - 1 - j];
        }
        // upper hull over (q, r); points already sorted by q
        std::vector<size_t> hull;
        for (size_t j = 0; j <= k; ++j) {
            while (hull.size() >= 2) {
                size_t a = hull[hull.size() - 2], m = hull[hull.size() - 1];
                double lhs = (r[m] - r[a]) * (q[j] - q[m]);
                double rhs = (r[j] - r[m]) * (q[m] - q[a]);
                if (lhs >= rhs) break;
                hull.pop_back();
            }
            hull.push_back(j);
        }
        auto hull_value = [&](double x) {
            for (size_t h = 1; h < hull.size(); ++h) {
                size_t a = hull[h - 1], m = hull[h];
                if (x <= q[m] + 1e-15)
                    return r[a] + (r[m] - r[a]) * (x - q[a]) / (q[m] - q[a]);
            }
            return r[hull.back()];
        };
        phi[b].resize(k);
        for (size_t j = 1; j <= k; ++j)  // atom j-1 from the top
            phi[b][k - j] = (hull_value(q[j]) - hull_value(q[j - 1])) / (q[j] - q[j - 1]);
    }
    double rev = 0.0;
    for_each_profile(buyers, [&](const Profile& idx, double prob) {
        double best = 0.0;
        for (size_t b = 0; b < buyers.size(); ++b)
            best = std::max(best, phi[b][idx[b]]);
        rev += prob * best;
    });
    return rev;
}

Outcome c15_brute_force() {
    Outcome o;
    int bad = 0;
    std::string first;
    auto flag = [&](uint64_t i, const std::string& what) {
        ++bad;
        if (first.empty()) first = "market " + std::to_string(i) + ": " + what;
    };
    for (uint64_t i = 0; i < 50; ++i) {
        uint64_t s = rng::derive(6000, i);
        int n = 1 + static_cast<int>(rng::word(s, 0, 0) % 3);
        std::vector<PiecewiseDistribution> ds;
        std::vector<DiscreteBuyer> buyers;
        for (int j = 0; j < n; ++j) {
            auto d = instances::random_discrete(s, 60 + j);
            DiscreteBuyer b;
            for (const auto& a : d.atoms()) {
                b.v.push_back(a.v);
                b.p.push_back(a.p);
            }
            ds.push_back(std::move(d));
            buyers.push_back(std::move(b));
        }
        Market m = Market::of(ds);
        auto close = [](double a, double b) {
            return std::fabs(a - b) <= 1e-9 * std::max(1.0, std::fabs(b));
        };
        struct Row {
            const char* name;
            MechanismReport rep;
            double brute;
        };
        Row rows[] = {
            {"bom", bom_revenue(m), brute_bom(buyers)},
            {"boup", boup_revenue(m), brute_boup(buyers)},
            {"bour", bour_revenue(m), brute_bour(buyers)},
            {"bosp", bosp_revenue(m), brute_bosp(buyers)},
            {"ip", ip_revenue(m), brute_ip(buyers)},
            {"spa-dup1", spa_plus_dup_revenue(m), brute_spa_dup(buyers)},
        };
        for (const auto& row : rows) {
            if (row.rep.method == Method::MonteCarlo) {
                if (!(std::fabs(row.rep.revenue - row.brute) <= 3.0 * row.rep.std_error))
                    flag(i, std::string(row.name) + " mc " + num(row.rep.revenue, 9) +
                                " vs brute " + num(row.brute, 9));
            } else if (!close(row.rep.revenue, row.brute)) {
                flag(i, std::string(row.name) + " " + num(row.rep.revenue, 9) + " vs brute " +
                            num(row.brute, 9));
            }
        }
        // the sampled paths agree within noise
        auto mc = bom_revenue_mc(m, {100000, rng::derive(s, 3)});
        if (!(std::fabs(mc.revenue - brute_bom(buyers)) <= 3.0 * mc.std_error))
            flag(i, "bom-mc " + num(mc.revenue, 6) + " vs brute " + num(brute_bom(buyers), 6));
    }
    require(o, bad == 0, std::to_string(bad) + " mismatches; first: " + first);
    note(o, "50 discrete markets x 7 evaluators");
    return o;
}

Outcome c16_reproducible() {
    Outcome o;
    auto r1 = reproduce::run("ratios", 42);
    auto r2 = reproduce::run("ratios", 42);
    std::string s1 = reproduce::render(r1), s2 = reproduce::render(r2);
    require(o, s1 == s2, "two runs differ");
    setenv("AUCTIONLAB_THREADS", "3", 1);
    std::string s3 = reproduce::render(reproduce::run("ratios", 42));
    unsetenv("AUCTIONLAB_THREADS");
    require(o, s1 == s3, "thread cap changes output");
    require(o, r1.all_pass, "ratios table failed");
    note(o, std::to_string(s1.size()) + " bytes, stable");
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* title;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> all = {
        {1, "sequential vs uniform price constant", c01_constant},
        {2, "anonymous reserve worst case", c02_bour_gap},
        {3, "anonymous price worst cases", c03_boup_gaps},
        {4, "duplication on the asymmetric pair", c04_spa_dup},
        {5, "instant price, asymmetric pair", c05_instant_asym},
        {6, "instant price, iid market", c06_instant_iid},
        {7, "exponential closed forms and witness mean", c07_exponential_facts},
        {8, "hierarchy witnesses and implication chain", c08_hierarchy},
        {9, "order-statistic closure fuzzing", c09_closure},
        {10, "single-item revenue bounds on random markets", c10_single_item_bounds},
        {11, "downward-closed reserve guarantees", c11_downward_closed},
        {12, "truncation keeps the guaranteed share", c12_truncation},
        {13, "reserve learning converges", c13_learning},
        {14, "hiring-cost ratios stay below two", c14_prophet},
        {15, "closed forms match brute force on discrete markets", c15_brute_force},
        {16, "byte-identical reproduction", c16_reproducible},
    };

    std::vector<int> filter;
    for (int a = 1; a < argc; ++a) filter.push_back(std::atoi(argv[a]));

    int failed = 0, ran = 0;
    for (const auto& c : all) {
        if (!filter.empty() && std::find(filter.begin(), filter.end(), c.id) == filter.end())
            continue;
        ++ran;
        auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (!out.pass) ++failed;
        std::printf("[%s] %02d %-48s %7.1fs  %s\n", out.pass ? "PASS" : "FAIL", c.id, c.title,
                    secs, out.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", ran - failed, ran);
    return failed == 0 ? 0 : 1;
}
