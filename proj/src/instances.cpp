#include "auctionlab/instances.hpp"

#include <cmath>
#include <set>

#include "auctionlab/common.hpp"
#include "auctionlab/rng.hpp"

namespace auctionlab::instances {

namespace {
const double kE = std::exp(1.0);

// Deterministic parameter source for the generators.
struct Draw {
    uint64_t seed, salt;
    uint64_t ctr = 0;
    double u() { return rng::uniform01(seed, salt, ctr++); }
    double in(double lo, double hi) { return lo + (hi - lo) * u(); }
    int upto(int n) {  // 0..n-1
        int k = static_cast<int>(u() * n);
        return k >= n ? n - 1 : k;
    }
};
}  // namespace

PiecewiseDistribution er() { return rational_dist(1.0, 1.0); }

PiecewiseDistribution exp1() { return exponential_dist(1.0); }

PiecewiseDistribution w2() {
    double ie = 1.0 / kE;
    PiecewiseDistribution d({}, {Segment::rational(ie, 1.0, ie, ie),
                                 Segment::exponential(1.0, kInf, 1.0, 0.0)});
    d.validate();
    return d;
}

PiecewiseDistribution f2() {
    PiecewiseDistribution d({{1.0, 1.0 - std::exp(-1.0)}},
                            {Segment::exponential(1.0, kInf, 1.0, 0.0)});
    d.validate();
    return d;
}

PiecewiseDistribution f1() {
    PiecewiseDistribution d({{2.0, 0.5}}, {Segment::rational(2.0, kInf, 1.0, 1.0)});
    d.validate();
    return d;
}

PiecewiseDistribution small_atom_exp() {
    double q = std::exp(-1.0 / kE);
    PiecewiseDistribution d({{1.0, 1.0 - q}}, {Segment::exponential(1.0, kInf, 1.0 / kE, 0.0)});
    d.validate();
    return d;
}

PiecewiseDistribution welfare_witness() {
    PiecewiseDistribution d({}, {Segment::rational(1.0, kE, 1.0, 1.0),
                                 Segment::exponential(kE, kInf, 1.0 / kE, 0.0)});
    d.validate();
    return d;
}

std::vector<Witness> hierarchy_witnesses() {
    return {
        {"exponential", exp1(), {true, true, true, true}},
        {"w2", w2(), {true, false, true, true}},
        {"equal-revenue", er(), {true, false, true, false}},
        {"f2", f2(), {false, false, true, true}},
        {"f1", f1(), {false, false, true, false}},
    };
}

Market bom_bour_iid(int n, double a) {
    double c = 1.0 / n;
    PiecewiseDistribution d({{a, a / (a + c)}}, {Segment::rational(a, kInf, c, 0.0)});
    d.validate();
    return Market::iid(d, n);
}

Market bom_boup_iid(int n) { return Market::iid(power_of_er_dist(n), n); }

Market spa_dup_asym() {
    return Market::of({point_mass(1.75088), rational_dist(1.0, 0.0)});
}

Market single_sample_asym(double eps) {
    return Market::of({uniform_dist(1.0, 1.0 + eps), rational_dist(1.0, 0.0)});
}

Market single_sample_iid(int n, double a, double eps) {
    // value where the uniform head meets the equal-revenue tail:
    // (v - 1)/eps = 1 - a/(n v), the positive root of n v^2 + (a - n - eps n) v - a = 0
    double b = a - n - eps * static_cast<double>(n);
    double vdag = (-b + std::sqrt(b * b + 4.0 * n * a)) / (2.0 * n);
    PiecewiseDistribution d({}, {Segment::uniform_law(1.0, vdag, 1.0, 1.0 + eps),
                                 Segment::rational(vdag, kInf, a / n, 0.0)});
    d.validate();
    return Market::iid(d, n);
}

Market rational_pair() { return Market::iid(rational_dist(1.0, 0.0), 2); }

Market named_market(const std::string& name) {
    if (name == "bom-bour-iid") return bom_bour_iid();
    if (name == "bom-boup-iid") return bom_boup_iid();
    if (name == "spa-dup-asym") return spa_dup_asym();
    if (name == "single-sample-asym") return single_sample_asym();
    if (name == "single-sample-iid") return single_sample_iid();
    if (name == "rational-pair") return rational_pair();
    if (name == "er") return Market::of({er()});
    if (name == "exp") return Market::of({exp1()});
    if (name == "w2") return Market::of({w2()});
    if (name == "f2") return Market::of({f2()});
    if (name == "f1") return Market::of({f1()});
    if (name == "small-atom-exp") return Market::of({small_atom_exp()});
    if (name == "welfare-witness") return Market::of({welfare_witness()});
    throw ValidationError("unknown instance name: " + name);
}

std::vector<std::string> market_names() {
    return {"bom-bour-iid", "bom-boup-iid",      "spa-dup-asym", "single-sample-asym",
            "single-sample-iid", "rational-pair", "er",           "exp",
            "w2",            "f2",               "f1",           "small-atom-exp",
            "welfare-witness"};
}

PiecewiseDistribution random_mhr(uint64_t seed, uint64_t salt) {
    Draw g{seed, salt};
    switch (g.upto(3)) {
        case 0: {  // shifted exponential: hazard constant
            double lam = g.in(0.3, 3.0), shift = g.in(0.0, 2.0);
            return exponential_dist(lam, shift);
        }
        case 1: {  // uniform: hazard 1/(b - v) increasing
            double lo = g.in(0.0, 2.0);
            return uniform_dist(lo, lo + g.in(0.3, 3.0));
        }
        default: {  // truncated exponential: top atom keeps the hazard convex
            double lam = g.in(0.3, 3.0), shift = g.in(0.0, 2.0);
            return exponential_dist(lam, shift).truncate(shift + g.in(0.5, 3.0));
        }
    }
}

PiecewiseDistribution random_regular(uint64_t seed, uint64_t salt) {
    Draw g{seed, salt};
    switch (g.upto(3)) {
        case 0:
            return random_mhr(seed, rng::derive(salt, 101));
        case 1: {  // rational: linear revenue curve
            return rational_dist(g.in(0.3, 3.0), g.in(0.0, 2.0));
        }
        default: {  // truncated rational: the truncation price exceeds the tail slope
            double a = g.in(0.3, 3.0), b = g.in(0.0, 2.0);
            return rational_dist(a, b).truncate(b + g.in(1.0, 5.0));
        }
    }
}

PiecewiseDistribution random_quasi_mhr(uint64_t seed, uint64_t salt) {
    Draw g{seed, salt};
    switch (g.upto(3)) {
        case 0:
            return random_mhr(seed, rng::derive(salt, 202));
        case 1: {  // atom at s + exponential tail through the origin: H(v)/v constant
            double s = g.in(0.5, 2.0), lam = g.in(0.3, 2.0);
            PiecewiseDistribution d({{s, 1.0 - std::exp(-lam * s)}},
                                    {Segment::exponential(s, kInf, lam, 0.0)});
            d.validate();
            return d;
        }
        default: {  // truncated version of the same
            double s = g.in(0.5, 2.0), lam = g.in(0.3, 2.0);
            PiecewiseDistribution d({{s, 1.0 - std::exp(-lam * s)}},
                                    {Segment::exponential(s, kInf, lam, 0.0)});
            d.validate();
            return d.truncate(s + g.in(0.5, 3.0));
        }
    }
}

PiecewiseDistribution random_quasi_regular(uint64_t seed, uint64_t salt) {
    Draw g{seed, salt};
    switch (g.upto(3)) {
        case 0:
            return random_regular(seed, rng::derive(salt, 303));
        case 1:
            return random_quasi_mhr(seed, rng::derive(salt, 404));
        default: {  // atom at c + tail a/v (survival), so R(q)/(1-q) stays monotone
            double c = g.in(0.8, 2.5);
            double a = c * g.in(0.3, 0.95);
            PiecewiseDistribution d({{c, 1.0 - a / c}}, {Segment::rational(c, kInf, a, a)});
            d.validate();
            return d;
        }
    }
}

PiecewiseDistribution random_discrete(uint64_t seed, uint64_t salt, int max_support) {
    Draw g{seed, salt};
    int k = 1 + g.upto(max_support);
    std::set<double> support;
    while (static_cast<int>(support.size()) < k) support.insert(g.in(0.1, 5.0));
    std::vector<Atom> atoms;
    double total = 0.0;
    std::vector<double> w;
    for (int i = 0; i < k; ++i) {
        w.push_back(0.05 + g.u());
        total += w.back();
    }
    int i = 0;
    for (double v : support) atoms.push_back({v, w[i++] / total});
    auto d = discrete_dist(std::move(atoms));
    d.validate();
    return d;
}

PiecewiseDistribution random_arbitrary(uint64_t seed, uint64_t salt) {
    Draw g{seed, salt};
    switch (g.upto(4)) {
        case 0:
            return random_discrete(seed, rng::derive(salt, 505), 3);
        case 1:
            return random_quasi_regular(seed, rng::derive(salt, 606));
        case 2: {  // bimodal two-point law: far outside every family
            double m = g.in(3.0, 8.0);
            return discrete_dist({{1.0, 0.5}, {m, 0.5}});
        }
        default: {  // two uniform blocks with a support gap
            double gap = g.in(1.5, 3.0);
            PiecewiseDistribution d({}, {Segment::uniform_law(0.0, 1.0, 0.0, 2.0),
                                         Segment::uniform_law(1.0 + gap, 2.0 + gap, gap, 2.0 + gap)});
            d.validate();
            return d;
        }
    }
}

Environment random_explicit_environment(int n, uint64_t seed, uint64_t salt) {
    if (n < 1 || n > 22) throw ValidationError("explicit environments support 1..22 buyers");
    Draw g{seed, salt};
    std::set<uint32_t> masks;
    masks.insert(0);
    for (int i = 0; i < n; ++i) masks.insert(uint32_t(1) << i);  // singletons always in
    int gens = 1 + g.upto(3);
    for (int t = 0; t < gens; ++t) {
        uint32_t m = 0;
        int size = 2 + g.upto(std::min(n, 3));
        for (int j = 0; j < size; ++j) m |= uint32_t(1) << g.upto(n);
        // close downward
        for (uint32_t s = m;; s = (s - 1) & m) {
            masks.insert(s);
            if (s == 0) break;
        }
    }
    std::vector<std::vector<int>> sets;
    for (uint32_t m : masks) {
        std::vector<int> s;
        for (int i = 0; i < n; ++i)
            if (m & (uint32_t(1) << i)) s.push_back(i);
        sets.push_back(std::move(s));
    }
    return Environment::explicit_sets(n, sets);
}

}  // namespace auctionlab::instances
