#include "auctionlab/reproduce.hpp"

#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "auctionlab/common.hpp"
#include "auctionlab/env.hpp"
#include "auctionlab/family.hpp"
#include "auctionlab/grid_dist.hpp"
#include "auctionlab/instances.hpp"
#include "auctionlab/mechanisms.hpp"
#include "auctionlab/prophet.hpp"
#include "auctionlab/rng.hpp"

namespace auctionlab::reproduce {

namespace I = instances;

namespace {

std::string fmt(double x, int decimals = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
    return buf;
}

void add(Report& rep, const std::string& label, double computed, double reference,
         const std::string& ref_text, double tol) {
    Row r;
    r.label = label;
    r.computed = fmt(computed);
    r.reference = ref_text;
    r.pass = std::fabs(computed - reference) <= tol;
    rep.rows.push_back(std::move(r));
}

void add_flag(Report& rep, const std::string& label, const std::string& computed,
              const std::string& reference, bool pass) {
    rep.rows.push_back(Row{label, computed, reference, pass});
}

Report run_ratios(uint64_t) {
    Report rep;
    rep.target = "ratios";

    add(rep, "BOSP/BOUP worst-case constant", bosp_boup_constant(), 0.3817, "0.3817", 1e-4);

    {
        Market m = I::bom_bour_iid();
        double bm = bom_revenue(m).revenue;
        add(rep, "BOUR/BOM  iid n=2000 a=0.8725", bour_revenue(m).revenue / bm, 0.6822, "0.6822",
            0.01);
        add(rep, "SPA+1/BOM iid n=2000 a=0.8725", spa_plus_dup_revenue(m).revenue / bm, 0.6822,
            "0.6822", 0.01);
    }
    {
        Market m = I::bom_boup_iid();
        double up = boup_revenue(m).revenue;
        add(rep, "BOUP/BOUR iid n=1000", up / bour_revenue(m).revenue,
            6.0 / (std::numbers::pi * std::numbers::pi), "0.6079", 0.01);
        add(rep, "BOUP/BOM  iid n=1000", up / bom_revenue(m).revenue, 0.5, "0.5", 0.01);
    }
    {
        Market m = I::spa_dup_asym();
        add(rep, "SPA+1/BOM two types a=1.75088", spa_plus_dup_revenue(m).revenue /
            bom_revenue(m).revenue, 0.6365, "0.6365", 1e-3);
    }
    {
        Market m = I::single_sample_asym();
        add(rep, "IP/BOM    two types eps=1e-3", ip_revenue(m).revenue / bom_revenue(m).revenue,
            0.375, "0.375", 0.005);
    }
    {
        Market m = I::single_sample_iid();
        add(rep, "IP/BOM    iid n=2000 a=0.6016", ip_revenue(m).revenue / bom_revenue(m).revenue,
            0.3978, "0.3978", 0.005);
    }
    return rep;
}

std::string quad(const FamilyProfile& q) {
    std::string s;
    const bool bits[4] = {q.regular, q.mhr, q.quasi_regular, q.quasi_mhr};
    for (int i = 0; i < 4; ++i) {
        s += bits[i] ? 'y' : 'n';
        if (i < 3) s += ' ';
    }
    return s;
}

Report run_hierarchy(uint64_t) {
    Report rep;
    rep.target = "hierarchy";
    rep.notes.push_back("columns: regular, mhr, quasi-regular, quasi-mhr");
    for (const auto& w : I::hierarchy_witnesses()) {
        FamilyProfile got = classify(w.dist);
        add_flag(rep, w.name, quad(got), quad(w.profile), got == w.profile);
    }
    return rep;
}

Report run_closure(uint64_t seed) {
    Report rep;
    rep.target = "closure";

    auto fuzz = [&](const std::string& label, uint64_t salt, bool iid,
                    PiecewiseDistribution (*gen)(uint64_t, uint64_t),
                    std::initializer_list<Family> fams) {
        int cases = 100, failures = 0;
        for (int c = 0; c < cases; ++c) {
            uint64_t s = rng::derive(seed, salt * 1000 + c);
            int n = 1 + static_cast<int>(rng::word(s, 7, 0) % 4);
            std::vector<PiecewiseDistribution> tuple;
            if (iid) {
                tuple.assign(n, gen(s, 0));
            } else {
                for (int i = 0; i < n; ++i) tuple.push_back(gen(s, i + 1));
            }
            for (int k = 1; k <= n; ++k) {
                for (Family f : fams) {
                    if (!closure_check(tuple, k, f).report.passes) ++failures;
                }
            }
        }
        add_flag(rep, label, failures == 0 ? "0 failures" : fmt(failures, 0) + " failures",
                 "0 failures", failures == 0);
    };

    fuzz("quasi-regular tuples (n<=4, all k)", 1, false, &I::random_quasi_regular,
         {Family::QuasiRegular});
    fuzz("quasi-mhr tuples (n<=4, all k)", 2, false, &I::random_quasi_mhr, {Family::QuasiMHR});
    fuzz("iid regular+mhr tuples (all k)", 3, true, &I::random_mhr,
         {Family::Regular, Family::MHR});

    {
        auto cex = closure_check({I::er(), point_mass(2.0)}, 1, Family::Regular);
        add_flag(rep, "two-type counterexample vs regular",
                 cex.report.passes ? "passes" : "fails", "fails", !cex.report.passes);
        auto ok = closure_check({I::er(), point_mass(2.0)}, 1, Family::QuasiRegular);
        add_flag(rep, "two-type counterexample vs quasi-regular",
                 ok.report.passes ? "passes" : "fails", "passes", ok.report.passes);
    }
    return rep;
}

Report run_downward(uint64_t seed) {
    Report rep;
    rep.target = "downward";
    rep.notes.push_back("capacitated market with rival bidder, eager reserves vs BOM;");
    rep.notes.push_back("the ratio approaches 1/(e+1) = 0.2689 from above as m grows");
    const uint64_t trials = 20000;
    std::vector<double> ratios;
    for (int m : {512, 2048, 8192}) {
        auto pt = capacity_reserve_experiment(m, trials, rng::derive(seed, m));
        ratios.push_back(pt.ratio);
        add_flag(rep, "m=" + std::to_string(m) + " cap=" + std::to_string(pt.cap), fmt(pt.ratio),
                 "> 0.2689", pt.ratio > 1.0 / (std::exp(1.0) + 1.0));
    }
    bool decreasing = ratios[0] > ratios[1] && ratios[1] > ratios[2];
    add_flag(rep, "ratio decreasing in m", decreasing ? "yes" : "no", "yes", decreasing);
    double gap = std::fabs(ratios.back() - 1.0 / (std::exp(1.0) + 1.0));
    add_flag(rep, "gap to 1/(e+1) at m=8192", fmt(gap), "<= 0.06", gap <= 0.06);
    return rep;
}

Report run_prophet(uint64_t) {
    Report rep;
    rep.target = "prophet";
    rep.notes.push_back("threshold-stopping cost over n draws vs prophet's E[min];");
    rep.notes.push_back("quasi-mhr inputs stay below the tight factor 2");
    struct Ref {
        const char* name;
        int n;
        double value;
    };
    const Ref refs[] = {
        {"exp", 10, 1.722546},   {"exp", 100, 1.954261}, {"exp", 1000, 1.993816},
        {"w2", 10, 1.093559},    {"w2", 100, 1.010098},  {"w2", 1000, 1.001003},
        {"f2", 10, 1.000030},    {"f2", 100, 1.000000},  {"f2", 1000, 1.000000},
    };
    bool all_below = true;
    for (const auto& r : refs) {
        auto run = prophet_run(I::named_market(r.name).dists[0], r.n);
        add(rep, std::string(r.name) + " n=" + std::to_string(r.n), run.ratio, r.value,
            fmt(r.value), 5e-7);
        all_below = all_below && run.ratio <= 2.0 + 1e-6;
    }
    {
        PiecewiseDistribution u({}, {Segment::uniform(0.0, 1.0)});
        add(rep, "uniform(0,1) n=100", prophet_run(u, 100).ratio, 1.897948, "1.897948", 5e-7);
    }
    add_flag(rep, "all quasi-mhr ratios <= 2", all_below ? "yes" : "no", "yes", all_below);
    return rep;
}

}  // namespace

const std::vector<std::string>& targets() {
    static const std::vector<std::string> t{"ratios", "hierarchy", "closure", "downward",
                                            "prophet"};
    return t;
}

Report run(const std::string& target, uint64_t seed) {
    Report rep;
    if (target == "ratios")
        rep = run_ratios(seed);
    else if (target == "hierarchy")
        rep = run_hierarchy(seed);
    else if (target == "closure")
        rep = run_closure(seed);
    else if (target == "downward")
        rep = run_downward(seed);
    else if (target == "prophet")
        rep = run_prophet(seed);
    else
        throw ValidationError("unknown reproduce target '" + target + "'");
    rep.all_pass = true;
    for (const auto& r : rep.rows) rep.all_pass = rep.all_pass && r.pass;
    return rep;
}

std::string render(const Report& rep) {
    size_t wl = 8, wc = 8, wr = 9;
    for (const auto& r : rep.rows) {
        wl = std::max(wl, r.label.size());
        wc = std::max(wc, r.computed.size());
        wr = std::max(wr, r.reference.size());
    }
    std::ostringstream out;
    out << "reproduce: " << rep.target << "\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-*s  %-*s  %-*s  %s\n", static_cast<int>(wl), "quantity",
                  static_cast<int>(wc), "computed", static_cast<int>(wr), "reference", "status");
    out << line;
    for (const auto& r : rep.rows) {
        std::snprintf(line, sizeof line, "%-*s  %-*s  %-*s  %s\n", static_cast<int>(wl),
                      r.label.c_str(), static_cast<int>(wc), r.computed.c_str(),
                      static_cast<int>(wr), r.reference.c_str(), r.pass ? "ok" : "FAIL");
        out << line;
    }
    for (const auto& n : rep.notes) out << "# " << n << "\n";
    out << "result: " << (rep.all_pass ? "PASS" : "FAIL") << "\n";
    return out.str();
}

std::string render_csv(const Report& rep) {
    std::ostringstream out;
    out << "quantity,computed,reference,status\n";
    for (const auto& r : rep.rows) {
        std::string label = r.label;
        for (auto& ch : label)
            if (ch == ',') ch = ';';
        out << label << "," << r.computed << "," << r.reference << ","
            << (r.pass ? "ok" : "FAIL") << "\n";
    }
    return out.str();
}

}  // namespace auctionlab::reproduce
