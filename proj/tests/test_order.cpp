#include <cmath>

#include "auctionlab/grid_dist.hpp"
#include "auctionlab/instances.hpp"
#include "auctionlab/mechanisms.hpp"
#include "doctest.h"

using namespace auctionlab;

TEST_CASE("grid conversion is exact at grid points") {
    auto d = instances::f2();
    auto grid = shared_value_grid({d}, 256);
    auto g = to_grid(d, grid);
    g.validate();
    for (size_t i = 0; i < g.v.size(); ++i) {
        CHECK(g.F[i] == doctest::Approx(d.cdf(g.v[i])).epsilon(1e-14));
        CHECK(g.T[i] == doctest::Approx(d.tail(g.v[i])).epsilon(1e-14));
        CHECK(g.F[i] + g.T[i] == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("order statistic CDFs on a discrete hand case") {
    // two iid buyers on {1, 2} with probability 1/2 each
    auto d = discrete_dist({{1.0, 0.5}, {2.0, 0.5}});
    Market m = Market::iid(d, 2);
    CHECK(first_cdf(m, 1.0) == doctest::Approx(0.25));    // both at 1
    CHECK(first_cdf(m, 2.0) == doctest::Approx(1.0));
    CHECK(second_cdf(m, 1.0) == doctest::Approx(0.75));   // at most one above 1
    CHECK(first_cdf_left(m, 1.0) == doctest::Approx(0.0));
    CHECK(second_cdf_left(m, 2.0) == doctest::Approx(0.75));
    // duplicating a type adds one more independent draw
    CHECK(second_cdf_dup(m, 0, 1.0) == doctest::Approx(0.5));  // 3 draws: <=1 of them above 1
}

TEST_CASE("expected order statistics of the exponential pair") {
    Market m = Market::iid(exponential_dist(1.0), 2);
    CHECK(expected_max(m) == doctest::Approx(1.5).epsilon(1e-9));
    CHECK(expected_second(m) == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(expected_virtual_of_max(exponential_dist(1.0), 2) ==
          doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("iid recursion agrees with the generic one") {
    auto d = instances::random_quasi_mhr(3, 11);
    auto grid = shared_value_grid({d}, 512);
    auto g = to_grid(d, grid);
    for (int k = 1; k <= 3; ++k) {
        auto a = order_statistic_iid(g, 3, k);
        auto b = order_statistic({g, g, g}, k);
        for (size_t i = 0; i < a.v.size(); ++i) {
            CHECK(a.F[i] == doctest::Approx(b.F[i]).epsilon(1e-11));
            CHECK(a.T[i] == doctest::Approx(b.T[i]).epsilon(1e-9));
        }
    }
}

TEST_CASE("counting identity across all ranks") {
    // sum over k of F_{k:n}(x) counts n minus the draws above x, so it must
    // equal the sum of the individual CDFs
    for (uint64_t salt : {1ULL, 5ULL, 9ULL}) {
        std::vector<PiecewiseDistribution> dists = {instances::random_quasi_regular(2, salt),
                                                    instances::random_quasi_mhr(2, salt + 50),
                                                    instances::random_mhr(2, salt + 100)};
        auto grid = shared_value_grid(dists, 512);
        std::vector<GridDistribution> gs;
        for (const auto& d : dists) gs.push_back(to_grid(d, grid));
        CHECK(counting_identity_gap(gs) <= 1e-9);
    }
}

TEST_CASE("structural inequalities between ranks") {
    auto d1 = instances::random_quasi_mhr(8, 1);
    auto d2 = instances::random_quasi_mhr(8, 2);
    auto d3 = instances::random_quasi_mhr(8, 3);
    auto grid = shared_value_grid({d1, d2, d3}, 512);
    std::vector<GridDistribution> gs = {to_grid(d1, grid), to_grid(d2, grid),
                                        to_grid(d3, grid)};
    auto first = order_statistic(gs, 1);
    auto second = order_statistic(gs, 2);
    CHECK(second_vs_first_margin(first, second) >= -1e-9);
    // dropping a buyer lowers every order statistic
    auto first_of_two = order_statistic({gs[0], gs[1]}, 1);
    CHECK(add_buyer_margin(first_of_two, first) >= -1e-9);
}

TEST_CASE("order statistic curve samples feed the family checks") {
    std::vector<PiecewiseDistribution> pair = {instances::exp1(), instances::exp1()};
    auto stat = order_statistic(pair, 1, 2048);
    // max of iid MHR draws stays MHR
    CHECK(check_family(stat, Family::MHR).passes);
    CHECK(check_family(stat, Family::Regular).passes);
    auto rs = revenue_samples(stat);
    CHECK(rs.size() > 100);
    // revenue curve of the max of two exponentials peaks above the single
    // buyer's e^{-1}
    double best = 0.0;
    for (auto& [q, r] : rs) best = std::max(best, r);
    CHECK(best > std::exp(-1.0));
    CHECK(best < 1.0);
}

TEST_CASE("heterogeneous quasi-mhr tuples stay quasi-mhr at every rank") {
    std::vector<PiecewiseDistribution> dists = {instances::f2(), instances::exp1(),
                                                instances::w2()};
    for (int k = 1; k <= 3; ++k) {
        auto res = closure_check(dists, k, Family::QuasiMHR);
        CAPTURE(k);
        CHECK(res.report.passes);
    }
}
