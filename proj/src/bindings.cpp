// Python bindings.  The surface mirrors the CLI: instances travel as JSON
// strings, results come back as plain dicts/lists, so the binding layer stays
// free of wrapped C++ types.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "auctionlab/env.hpp"
#include "auctionlab/family.hpp"
#include "auctionlab/grid_dist.hpp"
#include "auctionlab/instances.hpp"
#include "auctionlab/io.hpp"
#include "auctionlab/learning.hpp"
#include "auctionlab/mechanisms.hpp"
#include "auctionlab/prophet.hpp"
#include "auctionlab/reproduce.hpp"

namespace py = pybind11;
using namespace auctionlab;
using io::json;

namespace {

py::object to_py(const json& j) {
    return py::module_::import("json").attr("loads")(j.dump());
}

Market market_of(const std::string& instance_json) {
    return io::instance_from_json(io::parse_json(instance_json, "instance")).market;
}

Family family_of(const std::string& name) {
    for (Family f : {Family::Regular, Family::MHR, Family::QuasiRegular, Family::QuasiMHR})
        if (family_name(f) == name) return f;
    throw ValidationError("unknown family '" + name + "'");
}

py::object eval_mechanism(const std::string& instance_json, const std::string& mechanism,
                          uint64_t mc, uint64_t seed, int grid) {
    Market m = market_of(instance_json);
    MechanismReport rep;
    if (mechanism == "bom")
        rep = mc > 0 ? bom_revenue_mc(m, {mc, seed}, grid) : bom_revenue(m, grid);
    else if (mechanism == "boup")
        rep = boup_revenue(m, grid);
    else if (mechanism == "bour")
        rep = bour_revenue(m, grid);
    else if (mechanism == "bosp")
        rep = bosp_revenue(m);
    else if (mechanism == "ip")
        rep = ip_revenue(m, {mc, seed});
    else if (mechanism == "spa-dup1")
        rep = spa_plus_dup_revenue(m);
    else
        throw ValidationError("unknown mechanism '" + mechanism + "'");
    return to_py(io::report_to_json(rep));
}

py::object eval_downward_closed(const std::string& instance_json, const std::string& mode,
                                uint64_t mc, uint64_t seed, const std::string& env_json) {
    io::InstanceFile inst = io::instance_from_json(io::parse_json(instance_json, "instance"));
    Environment env = Environment::single_item(inst.market.total());
    if (!env_json.empty())
        env = io::environment_from_json(io::parse_json(env_json, "environment"),
                                        inst.market.total());
    else if (inst.environment)
        env = *inst.environment;
    McOptions opts{mc, seed};
    MechanismReport rep;
    if (mode == "eager")
        rep = monopoly_reserves_revenue(env, inst.market, ReserveMode::Eager, opts);
    else if (mode == "lazy")
        rep = monopoly_reserves_revenue(env, inst.market, ReserveMode::Lazy, opts);
    else if (mode == "adaptive")
        rep = monopoly_reserves_revenue(env, inst.market, ReserveMode::AdaptiveLazy, opts);
    else if (mode == "dup-vcg")
        rep = n_duplicate_vcg(env, inst.market, opts);
    else if (mode == "bom")
        rep = bom_downward_closed(env, inst.market, opts);
    else
        throw ValidationError("unknown mode '" + mode + "'");
    return to_py(io::report_to_json(rep));
}

py::object check_family_py(const std::string& instance_json, const std::string& family,
                           int grid) {
    Market m = market_of(instance_json);
    json arr = json::array();
    for (const auto& d : m.dists)
        arr.push_back(io::family_report_to_json(check_family(d, family_of(family), grid)));
    return m.dists.size() == 1 ? to_py(arr[0]) : to_py(arr);
}

py::object classify_py(const std::string& instance_json, int grid) {
    Market m = market_of(instance_json);
    json arr = json::array();
    for (const auto& d : m.dists) {
        FamilyProfile p = classify(d, grid);
        arr.push_back(json{{"regular", p.regular},
                           {"mhr", p.mhr},
                           {"quasi-regular", p.quasi_regular},
                           {"quasi-mhr", p.quasi_mhr}});
    }
    return m.dists.size() == 1 ? to_py(arr[0]) : to_py(arr);
}

py::object order_stat_check(const std::string& instance_json, int k, const std::string& family,
                            int grid) {
    Market m = market_of(instance_json);
    std::vector<PiecewiseDistribution> dists;
    for (size_t t = 0; t < m.dists.size(); ++t)
        for (int c = 0; c < m.copies[t]; ++c) dists.push_back(m.dists[t]);
    if (k < 1 || k > static_cast<int>(dists.size()))
        throw ValidationError("k must lie in [1, number of buyers]");
    auto res = closure_check(dists, k, family_of(family), grid);
    return to_py(io::family_report_to_json(res.report));
}

py::object prophet_py(const std::string& instance_json, int n) {
    Market m = market_of(instance_json);
    if (m.dists.size() != 1)
        throw ValidationError("prophet expects a single-distribution instance");
    ProphetRun run = prophet_run(m.dists[0], n);
    return to_py(json{{"n", run.n},
                      {"alg_cost", run.alg_cost},
                      {"prophet_cost", run.prophet_cost},
                      {"ratio", run.ratio}});
}

py::object learn_py(const std::string& instance_json, const std::vector<int>& m_grid,
                    double epsilon, int trials, uint64_t seed) {
    auto points = convergence_experiment(market_of(instance_json), m_grid, epsilon, trials, seed);
    json rows = json::array();
    for (const auto& p : points)
        rows.push_back(json{{"m", p.m},
                            {"eur_ratio", p.eur_ratio},
                            {"eur_std_error", p.eur_se},
                            {"myerson_ratio", p.myerson_ratio},
                            {"myerson_std_error", p.myerson_se}});
    return to_py(rows);
}

py::object reproduce_py(const std::string& target, uint64_t seed) {
    auto rep = reproduce::run(target, seed);
    return to_py(json{{"target", rep.target},
                      {"all_pass", rep.all_pass},
                      {"text", reproduce::render(rep)}});
}

std::string named_instance(const std::string& name) {
    io::InstanceFile inst;
    inst.market = instances::named_market(name);
    return io::instance_to_json(inst).dump(2) + "\n";
}

}  // namespace

PYBIND11_MODULE(_auctionlab, m) {
    m.doc() = "Bayesian revenue toolbox for single-parameter markets";
    m.attr("__version__") = "0.1.0";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<CapabilityError>(m, "CapabilityError", PyExc_RuntimeError);
    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_ArithmeticError);

    m.def("market_names", &instances::market_names, "Canonical market names");
    m.def("named_instance", &named_instance, py::arg("name"),
          "Instance JSON for a canonical market");
    m.def("eval_mechanism", &eval_mechanism, py::arg("instance_json"), py::arg("mechanism"),
          py::arg("mc") = 0, py::arg("seed") = 0, py::arg("grid") = kDefaultGrid,
          "Expected revenue report for bom/boup/bour/bosp/ip/spa-dup1");
    m.def("eval_downward_closed", &eval_downward_closed, py::arg("instance_json"),
          py::arg("mode"), py::arg("mc") = 2'000'000, py::arg("seed") = 0,
          py::arg("env_json") = std::string(),
          "Reserve-based mechanisms in a downward-closed environment");
    m.def("check_family", &check_family_py, py::arg("instance_json"), py::arg("family"),
          py::arg("grid") = 4096, "Family membership report per buyer type");
    m.def("classify", &classify_py, py::arg("instance_json"), py::arg("grid") = 4096,
          "All four family verdicts per buyer type");
    m.def("order_stat_check", &order_stat_check, py::arg("instance_json"), py::arg("k"),
          py::arg("family"), py::arg("grid") = 4096,
          "Family check on the k-th order statistic of the instance's buyers");
    m.def("prophet", &prophet_py, py::arg("instance_json"), py::arg("n"),
          "Threshold stopping vs prophet over n iid draws");
    m.def("learn", &learn_py, py::arg("instance_json"), py::arg("m_grid"),
          py::arg("epsilon") = 0.1, py::arg("trials") = 20, py::arg("seed") = 0,
          "Reserve / mechanism learning convergence table");
    m.def("bosp_boup_constant", &bosp_boup_constant,
          "Worst-case sequential-posted-price vs uniform-price constant");
    m.def("reproduce", &reproduce_py, py::arg("target"), py::arg("seed"),
          "Re-run a published table; returns the rendered text and verdict");
}
