#include <cmath>
#include <limits>

#include "auctionlab/dist.hpp"
#include "auctionlab/instances.hpp"
#include "doctest.h"

using namespace auctionlab;

TEST_CASE("segment formulas match their closed forms") {
    Segment er = Segment::rational(1.0, kInf, 1.0, 1.0);
    CHECK(er.cdf(1.0) == doctest::Approx(0.0));
    CHECK(er.cdf(4.0) == doctest::Approx(0.75));
    CHECK(er.tail(4.0) == doctest::Approx(0.25));
    // survival of the equal-revenue law is exactly 1/v, far past double's
    // resolution for 1 - F
    CHECK(er.tail(1e12) == doctest::Approx(1e-12).epsilon(1e-12));
    CHECK(er.invert_tail(1e-12) == doctest::Approx(1e12).epsilon(1e-9));

    Segment ex = Segment::exponential(0.0, kInf, 2.0, 0.0);
    CHECK(ex.cdf(1.0) == doctest::Approx(1.0 - std::exp(-2.0)));
    CHECK(ex.tail(50.0) == doctest::Approx(std::exp(-100.0)).epsilon(1e-12));
    CHECK(ex.density(1.0) == doctest::Approx(2.0 * std::exp(-2.0)));
    CHECK(ex.invert(0.5) == doctest::Approx(std::log(2.0) / 2.0));

    Segment pe = Segment::power_of_er(1.0, kInf, 2.0);
    CHECK(pe.cdf(2.0) == doctest::Approx(std::sqrt(0.5)));
    CHECK(pe.tail(2.0) == doctest::Approx(1.0 - std::sqrt(0.5)));

    Segment un = Segment::uniform(0.0, 1.0);
    CHECK(un.cdf(0.25) == doctest::Approx(0.25));
    CHECK(un.density(0.5) == doctest::Approx(1.0));
    CHECK(un.partial_expectation(0.0, 1.0) == doctest::Approx(0.5));
    CHECK(un.tail_integral(0.0, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("piecewise distribution basics: uniform") {
    auto u = uniform_dist(0.0, 1.0);
    u.validate();
    CHECK(u.mean() == doctest::Approx(0.5));
    CHECK(u.cdf(0.3) == doctest::Approx(0.3));
    CHECK(u.tail(0.3) == doctest::Approx(0.7));
    CHECK(u.quantile_price(0.25) == doctest::Approx(0.75));
    CHECK(u.sample(0.4) == doctest::Approx(0.4));
    CHECK(u.density(0.5) == doctest::Approx(1.0));
    CHECK(u.virtual_value(0.6) == doctest::Approx(0.2));  // v - (1 - v)
    CHECK(u.boundary_revenue() == 0.0);
    CHECK(u.bounded());
    CHECK(u.support_inf() == 0.0);
    CHECK(u.support_sup() == 1.0);
}

TEST_CASE("piecewise distribution basics: exponential") {
    auto e = exponential_dist(1.0);
    CHECK(e.mean() == doctest::Approx(1.0));
    CHECK(e.hazard_rate(2.0) == doctest::Approx(1.0));
    CHECK(e.cum_hazard(2.5) == doctest::Approx(2.5));
    CHECK(e.virtual_value(3.0) == doctest::Approx(2.0));
    CHECK(e.tail(40.0) == doctest::Approx(std::exp(-40.0)).epsilon(1e-12));
    CHECK(e.quantile_price(std::exp(-1.0)) == doctest::Approx(1.0));
    CHECK_FALSE(e.bounded());
    // E[min(X, t)] after pushing the tail mass into an atom at t
    auto t = e.truncate(2.0);
    t.validate();
    CHECK(t.mean() == doctest::Approx(1.0 - std::exp(-2.0)));
    CHECK(t.cdf(2.0) == doctest::Approx(1.0));
    CHECK(t.cdf_left(2.0) == doctest::Approx(1.0 - std::exp(-2.0)));
}

TEST_CASE("equal-revenue law: every price earns one") {
    auto d = instances::er();
    for (double q : {1e-9, 1e-4, 0.3, 0.9, 1.0})
        CHECK(q * d.quantile_price(q) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(d.boundary_revenue() == doctest::Approx(1.0));
    CHECK(d.mean() == kInf);
    CHECK(d.partial_expectation(5.0) == kInf);
}

TEST_CASE("atoms and mixed laws") {
    auto pm = point_mass(2.0);
    CHECK(pm.cdf_left(2.0) == 0.0);
    CHECK(pm.cdf(2.0) == 1.0);
    CHECK(pm.mean() == doctest::Approx(2.0));
    CHECK(pm.is_discrete());

    auto d2 = discrete_dist({{1.0, 0.25}, {3.0, 0.75}});
    CHECK(d2.mean() == doctest::Approx(2.5));
    CHECK(d2.tail_left(3.0) == doctest::Approx(0.75));
    CHECK(d2.quantile_price(0.75) == doctest::Approx(3.0));
    CHECK(d2.quantile_price(0.76) == doctest::Approx(1.0));
    CHECK(d2.sample(0.2) == doctest::Approx(1.0));
    CHECK(d2.sample(0.3) == doctest::Approx(3.0));

    // atom at the left edge of an exponential tail
    auto f2 = instances::f2();
    CHECK(f2.cdf_left(1.0) == doctest::Approx(0.0));
    CHECK(f2.cdf(1.0) == doctest::Approx(1.0 - std::exp(-1.0)));
    CHECK(f2.tail(2.0) == doctest::Approx(std::exp(-2.0)));
    CHECK(f2.tail_left(1.0) == doctest::Approx(1.0));
}

TEST_CASE("partial expectation and tail integrals") {
    auto e = exponential_dist(1.0);
    // E[v 1{v >= t}] = (t + 1) e^{-t}
    CHECK(e.partial_expectation(2.0) == doctest::Approx(3.0 * std::exp(-2.0)));
    CHECK(e.tail_integral(0.0, kInf) == doctest::Approx(1.0));
    CHECK(e.tail_integral(1.0, 3.0) == doctest::Approx(std::exp(-1.0) - std::exp(-3.0)));

    auto d2 = discrete_dist({{1.0, 0.5}, {4.0, 0.5}});
    CHECK(d2.partial_expectation(1.0) == doctest::Approx(2.5));
    CHECK(d2.partial_expectation(1.5) == doctest::Approx(2.0));
    CHECK(d2.tail_integral(0.0, 10.0) == doctest::Approx(2.5));
}

TEST_CASE("validate rejects malformed inputs") {
    CHECK_THROWS_AS(discrete_dist({{1.0, 0.5}}).validate(), ValidationError);  // mass 0.5
    CHECK_THROWS_AS(discrete_dist({{1.0, -0.2}, {2.0, 1.2}}).validate(), ValidationError);
    // unsorted atoms, fed to the raw constructor
    CHECK_THROWS_AS(
        [] {
            PiecewiseDistribution d({{2.0, 0.5}, {1.0, 0.5}}, {});
            d.validate();
        }(),
        ValidationError);
    // CDF jumps between pieces without an atom
    CHECK_THROWS_AS(
        [] {
            PiecewiseDistribution d({}, {Segment::uniform_law(0.0, 0.4, 0.0, 0.8),
                                         Segment::uniform_law(0.6, 0.8, 0.2, 0.8)});
            d.validate();
        }(),
        ValidationError);
    // bad segment parameter
    CHECK_THROWS_AS(
        [] {
            PiecewiseDistribution d({}, {Segment::rational(1.0, kInf, -1.0, 0.0)});
            d.validate();
        }(),
        ValidationError);
}

TEST_CASE("char_values covers atoms and segment edges") {
    auto f2 = instances::f2();
    auto cv = f2.char_values();
    CHECK(cv.size() >= 1);
    bool has1 = false;
    for (double x : cv) has1 |= x == 1.0;
    CHECK(has1);
}

TEST_CASE("welfare witness has mean exactly three") {
    auto w = instances::welfare_witness();
    w.validate();
    CHECK(w.mean() == doctest::Approx(3.0).epsilon(1e-12));
}
