// Regenerates the canonical instance files under docs/.  Build ad hoc:
//   g++ -std=c++20 -O2 -I include -I vendor tools/gen_instances.cpp src/*.cpp \
//       -o /tmp/gen_instances -pthread && /tmp/gen_instances docs
// The files are committed, so this only needs to run when the canonical
// constructions change.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "auctionlab/env.hpp"
#include "auctionlab/instances.hpp"
#include "auctionlab/io.hpp"

using namespace auctionlab;
using io::json;

namespace {

void dump(const std::filesystem::path& path, const json& j) {
    std::ofstream out(path);
    out << j.dump(2) << "\n";
    std::cout << "wrote " << path.string() << "\n";
}

void write_instance(const std::filesystem::path& dir, const std::string& name,
                    const Market& market, const std::string& description,
                    const std::optional<Environment>& env = std::nullopt) {
    io::InstanceFile inst;
    inst.market = market;
    inst.environment = env;
    inst.metadata = json{{"description", description}};
    json j = io::instance_to_json(inst);
    // round-trip through the parser so a committed file is guaranteed valid
    io::instance_from_json(j);
    dump(dir / (name + ".json"), j);
}

}  // namespace

int main(int argc, char** argv) {
    std::filesystem::path docs = argc > 1 ? argv[1] : "docs";
    auto inst_dir = docs / "instances";
    auto env_dir = docs / "environments";
    std::filesystem::create_directories(inst_dir);
    std::filesystem::create_directories(env_dir);

    using namespace auctionlab::instances;

    write_instance(inst_dir, "er", Market::of({er()}),
                   "single equal-revenue buyer; every posted price in [0,1] earns 1");
    write_instance(inst_dir, "exp", Market::of({exp1()}),
                   "single Exponential(1) buyer; regular and MHR");
    write_instance(inst_dir, "exp_triple", Market::iid(exp1(), 3),
                   "three iid Exponential(1) buyers; order-statistic examples");
    write_instance(inst_dir, "w2", Market::of({w2()}),
                   "regular but not MHR; hazard rate dips and recovers");
    write_instance(inst_dir, "f1", Market::of({f1()}),
                   "atom plus heavy tail; quasi-regular only");
    write_instance(inst_dir, "f2", Market::of({f2()}),
                   "atom plus exponential tail; quasi-MHR but not regular");
    write_instance(inst_dir, "uniform01", Market::of({uniform_dist(0.0, 1.0)}),
                   "single Uniform(0,1) buyer");
    write_instance(inst_dir, "rational_pair", rational_pair(),
                   "two iid equal-revenue buyers; reserve-learning benchmark");
    write_instance(inst_dir, "bom_bour_iid", bom_bour_iid(),
                   "2000 iid near-equal-revenue buyers with an atom; anonymous reserve "
                   "vs optimal gap near its floor");
    write_instance(inst_dir, "bom_boup_iid", bom_boup_iid(),
                   "1000 iid power-of-equal-revenue buyers; anonymous pricing loses "
                   "half the optimum");
    write_instance(inst_dir, "spa_dup_asym", spa_dup_asym(),
                   "point mass vs equal-revenue buyer; duplicating either is nearly tied");
    write_instance(inst_dir, "single_sample_asym", single_sample_asym(),
                   "near-deterministic buyer vs equal-revenue buyer; identity pricing "
                   "collects about 3/8 of the optimum");
    write_instance(inst_dir, "single_sample_iid", single_sample_iid(),
                   "2000 iid buyers with a uniform head and heavy tail; identity "
                   "pricing ratio near 0.398");
    write_instance(inst_dir, "welfare_witness", Market::of({welfare_witness()}),
                   "quasi-MHR with monopoly revenue 1 and mean exactly 3");

    // three iid Exponential(1) buyers in a non-matroid feasibility system
    {
        Environment env = Environment::explicit_sets(3, {{0}, {1}, {2}, {0, 1}, {0, 2}});
        write_instance(inst_dir, "explicit_env", Market::iid(exp1(), 3),
                       "buyer 0 pairs with either rival, buyers 1 and 2 conflict", env);
    }

    // small copy of the capacity-with-rival construction (m = 64)
    {
        int m = 64;
        double eps = std::sqrt(std::log(static_cast<double>(m)) / m);
        double base = std::exp(-std::exp(-1.0));  // e^{-1/e}
        int cap = static_cast<int>(std::ceil((base + eps) * m));
        double big = ((std::exp(1.0) + 1.0) * base - eps) * m;
        Market market = Market::iid(small_atom_exp(), m);
        Environment env = Environment::capacity_with_rival(m, cap, big);
        write_instance(inst_dir, "capacity_rival", market,
                       "64 small buyers behind a capacity, one rival worth the lot", env);
    }

    // standalone environment file for eval-dc --env (3 buyers)
    {
        Environment env = Environment::explicit_sets(3, {{0}, {1}, {2}, {0, 1}, {1, 2}});
        json j = io::environment_to_json(env);
        io::environment_from_json(j, 3);
        dump(env_dir / "chain3.json", j);
    }

    return 0;
}
