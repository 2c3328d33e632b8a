#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "auctionlab/dist.hpp"
#include "auctionlab/env.hpp"
#include "auctionlab/family.hpp"
#include "auctionlab/mechanisms.hpp"

namespace auctionlab::instances {

// ---- canonical distributions ----------------------------------------------

PiecewiseDistribution er();    // Rational(1,1): the equal-revenue law on [1, inf)
PiecewiseDistribution exp1();  // Exponential(1)
PiecewiseDistribution w2();    // regular + quasi-MHR, hazard rate not monotone
PiecewiseDistribution f2();    // atom + exponential tail: quasi-MHR, not regular
PiecewiseDistribution f1();    // atom + heavy tail: quasi-regular only
PiecewiseDistribution small_atom_exp();  // atom at 1 + Exponential(1/e) tail
PiecewiseDistribution welfare_witness();  // quasi-MHR with mean exactly 3

struct Witness {
    std::string name;
    PiecewiseDistribution dist;
    FamilyProfile profile;  // expected family membership
};
std::vector<Witness> hierarchy_witnesses();

// ---- canonical markets -----------------------------------------------------

// n near-ER buyers with an atom at a: the gap between the best anonymous
// reserve and the optimal mechanism approaches its worst case.
Market bom_bour_iid(int n = 2000, double a = 0.8725);
// n-th power-of-ER buyers: best uniform price 1 vs best reserve ~ zeta(2) gap.
Market bom_boup_iid(int n = 1000);
// point mass + equal-revenue buyer, tuned so duplicating either type is
// nearly tied.
Market spa_dup_asym();
// near-deterministic buyer + equal-revenue buyer: the single-sample price
// rule collects about 3/8 of the optimum.
Market single_sample_asym(double eps = 1e-3);
// iid version of the same phenomenon, ratio about 0.398.
Market single_sample_iid(int n = 2000, double a = 0.6016, double eps = 1e-3);
// two equal-revenue buyers: canonical reserve-learning instance.
Market rational_pair();

// Lookup used by the command line; throws ValidationError for unknown names.
Market named_market(const std::string& name);
std::vector<std::string> market_names();

// ---- seeded random generators ---------------------------------------------
// Each family generator samples from parametric constructions that provably
// stay inside the family, so fuzzing them must never produce a violation.

PiecewiseDistribution random_mhr(uint64_t seed, uint64_t salt);
PiecewiseDistribution random_regular(uint64_t seed, uint64_t salt);
PiecewiseDistribution random_quasi_mhr(uint64_t seed, uint64_t salt);
PiecewiseDistribution random_quasi_regular(uint64_t seed, uint64_t salt);
PiecewiseDistribution random_discrete(uint64_t seed, uint64_t salt, int max_support = 4);
PiecewiseDistribution random_arbitrary(uint64_t seed, uint64_t salt);

Environment random_explicit_environment(int n, uint64_t seed, uint64_t salt);

}  // namespace auctionlab::instances
