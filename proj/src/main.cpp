// auctionlab command-line interface.  Every subcommand reads JSON instance
// files, prints one JSON document (or a fixed-format table for `reproduce`)
// on stdout, and exits 0 on success, 2 on validation errors, 3 on capability
// limits, 64 on usage mistakes.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "auctionlab/env.hpp"
#include "auctionlab/family.hpp"
#include "auctionlab/grid_dist.hpp"
#include "auctionlab/instances.hpp"
#include "auctionlab/io.hpp"
#include "auctionlab/learning.hpp"
#include "auctionlab/mechanisms.hpp"
#include "auctionlab/prophet.hpp"
#include "auctionlab/reproduce.hpp"

namespace {

using namespace auctionlab;
using io::json;

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
}

Family family_of(const std::string& name) {
    if (name == "regular") return Family::Regular;
    if (name == "mhr") return Family::MHR;
    if (name == "quasi-regular") return Family::QuasiRegular;
    if (name == "quasi-mhr") return Family::QuasiMHR;
    throw ValidationError("unknown family '" + name + "'");
}

struct EvalArgs {
    std::string instance;
    std::string mechanism;
    uint64_t mc = 0;
    uint64_t seed = 0;
    bool seed_set = false;
    int grid = kDefaultGrid;
};

int cmd_eval(const EvalArgs& a) {
    Market m = io::load_instance(a.instance).market;
    if (a.mc > 0 && !a.seed_set)
        throw ValidationError("Monte Carlo evaluation requires --seed");
    MechanismReport rep;
    if (a.mechanism == "bom") {
        rep = a.mc > 0 ? bom_revenue_mc(m, {a.mc, a.seed}, a.grid) : bom_revenue(m, a.grid);
    } else if (a.mechanism == "boup") {
        rep = boup_revenue(m, a.grid);
    } else if (a.mechanism == "bour") {
        rep = bour_revenue(m, a.grid);
    } else if (a.mechanism == "bosp") {
        rep = bosp_revenue(m);
    } else if (a.mechanism == "ip") {
        rep = ip_revenue(m, {a.mc, a.seed});
    } else if (a.mechanism == "spa-dup1") {
        rep = spa_plus_dup_revenue(m);
    }
    if (a.mc > 0 && rep.method != Method::MonteCarlo)
        throw ValidationError("mechanism '" + a.mechanism + "' has no Monte Carlo path");
    emit(io::report_to_json(rep));
    return 0;
}

struct EvalDcArgs {
    std::string instance;
    std::string env_path;
    std::string mode;
    uint64_t mc = 2'000'000;
    uint64_t seed = 0;
    int grid = kDefaultGrid;
};

int cmd_eval_dc(const EvalDcArgs& a) {
    io::InstanceFile inst = io::load_instance(a.instance);
    Environment env = Environment::single_item(inst.market.total());
    if (!a.env_path.empty()) {
        std::ifstream in(a.env_path);
        if (!in) throw ValidationError("cannot open environment file: " + a.env_path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        env = io::environment_from_json(io::parse_json(text, a.env_path), inst.market.total());
    } else if (inst.environment) {
        env = *inst.environment;
    }
    McOptions opts{a.mc, a.seed};
    MechanismReport rep;
    if (a.mode == "eager")
        rep = monopoly_reserves_revenue(env, inst.market, ReserveMode::Eager, opts);
    else if (a.mode == "lazy")
        rep = monopoly_reserves_revenue(env, inst.market, ReserveMode::Lazy, opts);
    else if (a.mode == "adaptive")
        rep = monopoly_reserves_revenue(env, inst.market, ReserveMode::AdaptiveLazy, opts);
    else if (a.mode == "dup-vcg")
        rep = n_duplicate_vcg(env, inst.market, opts);
    else if (a.mode == "bom")
        rep = bom_downward_closed(env, inst.market, opts, a.grid);
    emit(io::report_to_json(rep));
    return 0;
}

struct CheckFamilyArgs {
    std::string instance;
    std::string family;
    int grid = 4096;
};

int cmd_check_family(const CheckFamilyArgs& a) {
    Market m = io::load_instance(a.instance).market;
    auto one = [&](const PiecewiseDistribution& d) -> json {
        if (!a.family.empty())
            return io::family_report_to_json(check_family(d, family_of(a.family), a.grid));
        json all;
        for (Family f : {Family::Regular, Family::MHR, Family::QuasiRegular, Family::QuasiMHR})
            all[family_name(f)] = io::family_report_to_json(check_family(d, f, a.grid));
        return all;
    };
    if (m.dists.size() == 1) {
        emit(one(m.dists[0]));
    } else {
        json arr = json::array();
        for (const auto& d : m.dists) arr.push_back(one(d));
        emit(arr);
    }
    return 0;
}

struct OrderStatArgs {
    std::string instance;
    int k = 1;
    std::string check;
    int grid = 4096;
};

int cmd_order_stat(const OrderStatArgs& a) {
    Market m = io::load_instance(a.instance).market;
    std::vector<PiecewiseDistribution> dists;
    for (size_t t = 0; t < m.dists.size(); ++t)
        for (int c = 0; c < m.copies[t]; ++c) dists.push_back(m.dists[t]);
    if (a.k < 1 || a.k > static_cast<int>(dists.size()))
        throw ValidationError("--k must lie in [1, number of buyers]");
    json out;
    out["k"] = a.k;
    out["n"] = dists.size();
    if (!a.check.empty()) {
        auto res = closure_check(dists, a.k, family_of(a.check), a.grid);
        out["report"] = io::family_report_to_json(res.report);
    } else {
        auto stat = order_statistic(dists, a.k, a.grid);
        json reports;
        for (Family f : {Family::Regular, Family::MHR, Family::QuasiRegular, Family::QuasiMHR})
            reports[family_name(f)] = io::family_report_to_json(check_family(stat, f));
        out["reports"] = reports;
    }
    emit(out);
    return 0;
}

struct LearnArgs {
    std::string instance;
    int m = 100000;
    double epsilon = 0.1;
    int trials = 20;
    uint64_t seed = 0;
    std::string csv;
};

int cmd_learn(const LearnArgs& a) {
    Market market = io::load_instance(a.instance).market;
    if (a.m < 1) throw ValidationError("--m must be positive");
    std::vector<int> m_grid;
    for (int mm = 100; mm < a.m; mm *= 10) m_grid.push_back(mm);
    m_grid.push_back(a.m);
    auto points = convergence_experiment(market, m_grid, a.epsilon, a.trials, a.seed);
    json rows = json::array();
    std::string csv = "m,eur_ratio,eur_std_error,myerson_ratio,myerson_std_error\n";
    char line[160];
    for (const auto& p : points) {
        rows.push_back(json{{"m", p.m},
                            {"eur_ratio", p.eur_ratio},
                            {"eur_std_error", p.eur_se},
                            {"myerson_ratio", p.myerson_ratio},
                            {"myerson_std_error", p.myerson_se}});
        std::snprintf(line, sizeof line, "%d,%.6f,%.6f,%.6f,%.6f\n", p.m, p.eur_ratio, p.eur_se,
                      p.myerson_ratio, p.myerson_se);
        csv += line;
    }
    if (!a.csv.empty()) write_file(a.csv, csv);
    emit(json{{"epsilon", a.epsilon},
              {"trials", a.trials},
              {"seed", a.seed},
              {"points", rows}});
    return 0;
}

struct ProphetArgs {
    std::string instance;
    int n = 1000;
    std::string csv;
};

int cmd_prophet(const ProphetArgs& a) {
    Market m = io::load_instance(a.instance).market;
    if (m.dists.size() != 1)
        throw ValidationError("prophet expects a single-distribution instance (iid draws)");
    auto run = prophet_run(m.dists[0], a.n);
    json out;
    out["n"] = run.n;
    out["alg_cost"] = run.alg_cost;
    out["prophet_cost"] = run.prophet_cost;
    out["ratio"] = run.ratio;
    if (run.n <= 32) {
        json th = json::array();
        for (double t : run.thresholds) th.push_back(t);
        out["thresholds"] = th;
    }
    if (!a.csv.empty()) {
        std::string csv = "k,threshold\n";
        char line[64];
        for (size_t i = 0; i < run.thresholds.size(); ++i) {
            std::snprintf(line, sizeof line, "%zu,%.9g\n", i + 1, run.thresholds[i]);
            csv += line;
        }
        write_file(a.csv, csv);
    }
    emit(out);
    return 0;
}

struct ReproduceArgs {
    std::string target;
    uint64_t seed = 0;
    std::string csv;
};

int cmd_reproduce(const ReproduceArgs& a) {
    auto rep = reproduce::run(a.target, a.seed);
    std::cout << reproduce::render(rep);
    if (!a.csv.empty()) write_file(a.csv, reproduce::render_csv(rep));
    return rep.all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bayesian revenue toolbox for single-parameter markets"};
    app.set_version_flag("--version", "auctionlab 0.1.0");
    app.require_subcommand(1);

    EvalArgs ev;
    auto* eval = app.add_subcommand("eval", "Evaluate a single-item mechanism on an instance");
    eval->add_option("--instance", ev.instance, "instance JSON file")->required();
    eval->add_option("--mechanism", ev.mechanism, "mechanism to evaluate")
        ->required()
        ->check(CLI::IsMember({"bom", "boup", "bour", "bosp", "ip", "spa-dup1"}));
    eval->add_option("--mc", ev.mc, "Monte Carlo samples (default: exact evaluation)");
    eval->add_option("--seed", ev.seed, "RNG seed")->each([&](const std::string&) {
        ev.seed_set = true;
    });
    eval->add_option("--grid", ev.grid, "quantile grid size for exact paths");

    EvalDcArgs dc;
    auto* evaldc =
        app.add_subcommand("eval-dc", "Evaluate reserve-based mechanisms in a downward-closed "
                                      "environment");
    evaldc->add_option("--instance", dc.instance, "instance JSON file")->required();
    evaldc->add_option("--env", dc.env_path,
                       "environment JSON file (overrides the instance's environment)");
    evaldc->add_option("--mode", dc.mode, "mechanism variant")
        ->required()
        ->check(CLI::IsMember({"eager", "lazy", "adaptive", "dup-vcg", "bom"}));
    evaldc->add_option("--mc", dc.mc, "Monte Carlo samples");
    evaldc->add_option("--seed", dc.seed, "RNG seed")->required();
    evaldc->add_option("--grid", dc.grid, "quantile grid size for ironed curves");

    CheckFamilyArgs cf;
    auto* check = app.add_subcommand("check-family", "Test distribution family membership");
    check->add_option("--instance", cf.instance, "instance JSON file")->required();
    check->add_option("--family", cf.family, "single family to test (default: all four)")
        ->check(CLI::IsMember({"regular", "mhr", "quasi-regular", "quasi-mhr"}));
    check->add_option("--grid", cf.grid, "sample grid size");

    OrderStatArgs os;
    auto* order = app.add_subcommand("order-stat", "Family checks on a k-th order statistic");
    order->add_option("--instance", os.instance, "instance JSON file")->required();
    order->add_option("--k", os.k, "order statistic index (1 = maximum)")->required();
    order->add_option("--check", os.check, "family to check on the statistic")
        ->check(CLI::IsMember({"regular", "mhr", "quasi-regular", "quasi-mhr"}));
    order->add_option("--grid", os.grid, "shared value grid size");

    LearnArgs ln;
    auto* learn = app.add_subcommand("learn", "Sample-based learning convergence experiment");
    learn->add_option("--instance", ln.instance, "instance JSON file")->required();
    learn->add_option("--m", ln.m, "largest sample count (decade grid up to this)");
    learn->add_option("--epsilon", ln.epsilon, "truncation parameter for the Myerson track");
    learn->add_option("--trials", ln.trials, "independent trials per sample count");
    learn->add_option("--seed", ln.seed, "RNG seed")->required();
    learn->add_option("--emit-csv", ln.csv, "write the convergence table as CSV");

    ProphetArgs pr;
    auto* prophet = app.add_subcommand("prophet", "Threshold stopping vs prophet on iid draws");
    prophet->add_option("--instance", pr.instance, "instance JSON file")->required();
    prophet->add_option("--n", pr.n, "number of draws")->required();
    prophet->add_option("--emit-csv", pr.csv, "write thresholds as CSV");

    ReproduceArgs rp;
    auto* repro = app.add_subcommand("reproduce", "Re-run a published table or suite");
    repro->add_option("target", rp.target, "what to reproduce")
        ->required()
        ->check(CLI::IsMember(reproduce::targets()));
    repro->add_option("--seed", rp.seed, "RNG seed")->required();
    repro->add_option("--emit-csv", rp.csv, "write the table as CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 64;
    }

    try {
        if (*eval) return cmd_eval(ev);
        if (*evaldc) return cmd_eval_dc(dc);
        if (*check) return cmd_check_family(cf);
        if (*order) return cmd_order_stat(os);
        if (*learn) return cmd_learn(ln);
        if (*prophet) return cmd_prophet(pr);
        if (*repro) return cmd_reproduce(rp);
    } catch (const CapabilityError& e) {
        std::cerr << "capability error: " << e.what() << "\n";
        return 3;
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return 2;
    }
    return 64;
}
