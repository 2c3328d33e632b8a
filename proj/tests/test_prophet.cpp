#include <cmath>

#include "auctionlab/instances.hpp"
#include "auctionlab/prophet.hpp"
#include "doctest.h"

using namespace auctionlab;

TEST_CASE("expected minimum of iid draws") {
    CHECK(expected_min_of(exponential_dist(1.0), 1) == doctest::Approx(1.0));
    CHECK(expected_min_of(exponential_dist(1.0), 7) == doctest::Approx(1.0 / 7.0));
    CHECK(expected_min_of(uniform_dist(0.0, 1.0), 3) == doctest::Approx(0.25).epsilon(1e-9));
    CHECK(expected_min_of(discrete_dist({{1.0, 0.5}, {2.0, 0.5}}), 2) ==
          doctest::Approx(1.25));
}

TEST_CASE("optimal stopping recursion") {
    auto e = exponential_dist(1.0);
    auto vs = optimal_stopping_values(e, 10);
    REQUIRE(vs.size() == 10);
    // V_n is the single-round cost, and more remaining rounds can only help
    CHECK(vs.back() == doctest::Approx(1.0));
    for (size_t i = 1; i < vs.size(); ++i) CHECK(vs[i - 1] <= vs[i] + 1e-12);
    // V_{n-1} = E[min(c, 1)] = 1 - e^{-1}
    CHECK(vs[8] == doctest::Approx(1.0 - std::exp(-1.0)).epsilon(1e-9));
}

TEST_CASE("single round is a wash") {
    auto run = prophet_run(uniform_dist(0.0, 1.0), 1);
    CHECK(run.ratio == doctest::Approx(1.0));
    CHECK(run.alg_cost == doctest::Approx(0.5));
}

TEST_CASE("hiring-cost ratios of the canonical laws") {
    struct Row {
        const char* name;
        int n;
        double ratio;
    };
    const Row rows[] = {
        {"exp", 10, 1.722546},   {"exp", 100, 1.954261},  {"exp", 1000, 1.993816},
        {"w2", 10, 1.093559},    {"w2", 100, 1.010098},   {"w2", 1000, 1.001003},
        {"f2", 10, 1.000030},    {"f2", 100, 1.000000},   {"f2", 1000, 1.000000},
    };
    for (const auto& row : rows) {
        CAPTURE(row.name);
        CAPTURE(row.n);
        auto d = instances::named_market(row.name).dists[0];
        auto run = prophet_run(d, row.n);
        CHECK(run.ratio == doctest::Approx(row.ratio).epsilon(5e-6));
        CHECK(run.alg_cost == doctest::Approx(run.thresholds[0]));
        CHECK(run.prophet_cost == doctest::Approx(expected_min_of(d, row.n)));
    }
}

TEST_CASE("uniform candidates over a hundred rounds") {
    auto run = prophet_run(uniform_dist(0.0, 1.0), 100);
    CHECK(run.ratio == doctest::Approx(1.897948).epsilon(5e-6));
}

TEST_CASE("quasi-mhr costs stay within factor two") {
    for (const char* name : {"exp", "w2", "f2"}) {
        auto d = instances::named_market(name).dists[0];
        for (int n : {10, 100, 1000}) {
            CAPTURE(name);
            CAPTURE(n);
            CHECK(prophet_run(d, n).ratio <= 2.0 + 1e-6);
        }
    }
}

TEST_CASE("heavy tails have no finite stopping values") {
    CHECK_THROWS_AS(prophet_run(instances::er(), 5), DivergenceError);
}
