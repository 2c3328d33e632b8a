#include <filesystem>
#include <fstream>

#include "auctionlab/instances.hpp"
#include "auctionlab/io.hpp"
#include "doctest.h"

using namespace auctionlab;
using io::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::filesystem::path source_dir() {
#ifdef AUCTIONLAB_SOURCE_DIR
    return AUCTIONLAB_SOURCE_DIR;
#else
    return std::filesystem::path(__FILE__).parent_path().parent_path();
#endif
}

}  // namespace

TEST_CASE("distribution json round trips byte for byte") {
    for (const auto& w : instances::hierarchy_witnesses()) {
        CAPTURE(w.name);
        json j = io::dist_to_json(w.dist);
        auto back = io::dist_from_json(j);
        CHECK(io::dist_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("market json keeps copy counts compact") {
    Market m = instances::bom_boup_iid();
    json j = io::buyers_to_json(m);
    REQUIRE(j.size() == 1);
    CHECK(j[0].at("copies").get<int>() == 1000);
    Market back = io::buyers_from_json(j);
    CHECK(back.total() == 1000);
    CHECK(io::buyers_to_json(back).dump() == j.dump());
    // copies of one are left implicit
    json single = io::buyers_to_json(Market::of({instances::exp1()}));
    CHECK_FALSE(single[0].contains("copies"));
}

TEST_CASE("environment json round trips all kinds") {
    std::vector<Environment> envs = {
        Environment::single_item(4),
        Environment::explicit_sets(3, {{0}, {1}, {2}, {0, 1}}),
        Environment::capacity_with_rival(5, 2, 7.5),
    };
    for (const auto& e : envs) {
        json j = io::environment_to_json(e);
        auto back = io::environment_from_json(j, e.n);
        CHECK(io::environment_to_json(back).dump() == j.dump());
    }
}

TEST_CASE("instance files parse, validate and re-emit identically") {
    io::InstanceFile inst;
    inst.market = instances::spa_dup_asym();
    inst.metadata = json{{"description", "round trip"}};
    json j = io::instance_to_json(inst);
    auto back = io::instance_from_json(j);
    CHECK(io::instance_to_json(back).dump() == j.dump());
    CHECK(back.metadata.at("description") == "round trip");
}

TEST_CASE("malformed instances are rejected with context") {
    CHECK_THROWS_AS(io::parse_json("{ not json", "x"), ValidationError);
    CHECK_THROWS_AS(io::instance_from_json(json{{"buyers", json::array()}}), ValidationError);
    // unknown segment kind
    json bad = json::parse(R"({"buyers":[{"atoms":[],"segments":[
        {"lo":0,"hi":1,"kind":"cauchy","params":{}}]}]})");
    CHECK_THROWS_AS(io::instance_from_json(bad), ValidationError);
    // atom probabilities must sum to one with the segments
    json mass = json::parse(R"({"buyers":[{"atoms":[{"v":1,"p":0.5}],"segments":[]}]})");
    CHECK_THROWS_AS(io::instance_from_json(mass), ValidationError);
    // capacity environment must match the buyer count
    json cap = json::parse(R"({"buyers":[{"atoms":[{"v":1,"p":1}],"segments":[]}],
        "environment":{"type":"capacity_with_rival","small":3,"cap":1,"big_value":2}})");
    CHECK_THROWS_AS(io::instance_from_json(cap), ValidationError);
    // zero copies
    json cz = json::parse(R"({"buyers":[{"atoms":[{"v":1,"p":1}],"segments":[],"copies":0}]})");
    CHECK_THROWS_AS(io::instance_from_json(cz), ValidationError);
}

TEST_CASE("reports serialize what the method produced") {
    MechanismReport quad;
    quad.mechanism = "bom";
    quad.revenue = 1.5;
    quad.method = Method::Quadrature;
    json jq = io::report_to_json(quad);
    CHECK(jq.at("method") == "quadrature");
    CHECK_FALSE(jq.contains("mc_samples"));
    CHECK_FALSE(jq.contains("opt_price"));  // NaN stays out

    MechanismReport mc;
    mc.mechanism = "bom";
    mc.revenue = 1.5;
    mc.method = Method::MonteCarlo;
    mc.mc_samples = 1000;
    mc.std_error = 0.01;
    mc.seed = 9;
    mc.opt_price = 2.0;
    mc.diagnostics["welfare"] = 3.0;
    json jm = io::report_to_json(mc);
    CHECK(jm.at("method") == "monte-carlo");
    CHECK(jm.at("mc_samples") == 1000);
    CHECK(jm.at("seed") == 9);
    CHECK(jm.at("opt_price") == 2.0);
    CHECK(jm.at("diagnostics").at("welfare") == 3.0);
    // emitted reports re-parse as json
    CHECK(json::parse(jm.dump(2)) == jm);
}

TEST_CASE("family reports serialize completely") {
    auto rep = check_family(instances::f1(), Family::Regular);
    json j = io::family_report_to_json(rep);
    CHECK(j.at("family") == "regular");
    CHECK(j.at("passes") == false);
    CHECK(j.at("points").get<int>() > 0);
}

TEST_CASE("committed instance files all validate") {
    auto dir = source_dir() / "docs" / "instances";
    REQUIRE(std::filesystem::is_directory(dir));
    int seen = 0;
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().extension() != ".json") continue;
        CAPTURE(entry.path().filename().string());
        auto inst = io::load_instance(entry.path().string());
        inst.market.validate();
        // re-emission is canonical: parse(dump(file)) == file content
        json reparsed = io::parse_json(slurp(entry.path()), "file");
        CHECK(io::instance_to_json(inst).dump() == reparsed.dump());
        ++seen;
    }
    CHECK(seen >= 15);
}

TEST_CASE("committed environment files validate") {
    auto dir = source_dir() / "docs" / "environments";
    REQUIRE(std::filesystem::is_directory(dir));
    auto env = io::environment_from_json(io::parse_json(slurp(dir / "chain3.json"), "env"), 3);
    env.validate();
    CHECK(env.n == 3);
}
