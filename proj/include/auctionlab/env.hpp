#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "auctionlab/mechanisms.hpp"

namespace auctionlab {

// A downward-closed feasibility structure over buyers.
//
// SingleItem / Explicit environments draw every buyer from the market.
// CapacityWithRival is the structured pattern used by the large reserve
// experiments: n "small" buyers of which at most `cap` can win, or instead a
// single deterministic "big" rival with value big_value (exclusive of all
// smalls).  The big rival lives at index n.
struct Environment {
    enum class Kind { SingleItem, Explicit, CapacityWithRival };
    Kind kind = Kind::SingleItem;
    int n = 0;  // number of market-drawn buyers

    // Explicit only: downward-closed feasible sets as bitmasks (incl. 0), and
    // the maximal antichain used by the optimizers.
    std::vector<uint32_t> feasible;
    std::vector<uint32_t> maximal;

    // CapacityWithRival only.
    int cap = 1;
    double big_value = 0.0;

    static Environment single_item(int n);
    static Environment explicit_sets(int n, const std::vector<std::vector<int>>& sets);
    static Environment capacity_with_rival(int small, int cap, double big_value);

    // Checks downward closure and size limits (Explicit enumeration needs
    // n <= 22).  Throws ValidationError / CapabilityError.
    void validate() const;
};

// One VCG run on a realized value profile.  For CapacityWithRival the profile
// covers the smalls and the big rival appears as winner index n.
struct VcgOutcome {
    std::vector<int> winners;      // ascending buyer indices
    std::vector<double> payments;  // aligned with winners
    double welfare = 0.0;          // value of the chosen feasible set
};

// Welfare-maximizing feasible set with externality payments
// p_i = OPT(without i) - (OPT - v_i).  Ties between equal-welfare sets break
// to the lexicographically smallest index sequence.
VcgOutcome vcg(const Environment& env, const std::vector<double>& values);

enum class ReserveMode { Eager, Lazy, AdaptiveLazy };
std::string reserve_mode_name(ReserveMode m);

// Monte Carlo revenue of VCG with per-buyer monopoly reserves.
//   Eager: drop buyers below their reserve, run VCG on the rest, winners pay
//     max(reserve, VCG payment).
//   Lazy: run VCG on everyone, winners meeting their reserve pay
//     max(reserve, threshold).
//   AdaptiveLazy: winners pay the best posted price no lower than their
//     threshold, and are dropped if their value misses it.
// diagnostics: "welfare" carries the realized allocated welfare.
MechanismReport monopoly_reserves_revenue(const Environment& env, const Market& market,
                                          ReserveMode mode, const McOptions& opts);

// Monte Carlo VCG revenue after duplicating every buyer (fresh i.i.d. copy;
// at most one member of each pair can be allocated).  SingleItem/Explicit
// environments only.
MechanismReport n_duplicate_vcg(const Environment& env, const Market& market,
                                const McOptions& opts);

// Monte Carlo benchmark: expected maximum nonnegative ironed virtual surplus
// over feasible sets, plus the boundary revenue carried by heavy tails.
MechanismReport bom_downward_closed(const Environment& env, const Market& market,
                                    const McOptions& opts, int grid_size = kDefaultGrid);

// Monte Carlo expected welfare of the VCG (welfare-optimal) allocation.
MechanismReport vcg_welfare(const Environment& env, const Market& market,
                            const McOptions& opts);

// The large capacity-with-rival reserve experiment: n smalls with an atom at 1
// and an Exponential(1/e) tail, cap and rival value scaled with n so that
// eager reserves collect roughly a 1/(e+1) share of the benchmark.
struct CapacityExperimentPoint {
    int m = 0;               // number of small buyers
    double eps = 0.0;        // shrinking slack sqrt(ln m / m)
    int cap = 0;
    double big_value = 0.0;
    double eager_revenue = 0.0;
    double bom = 0.0;
    double ratio = 0.0;      // eager / bom
    double std_error = 0.0;  // of the eager revenue estimate
};
CapacityExperimentPoint capacity_reserve_experiment(int m, uint64_t trials, uint64_t seed);

}  // namespace auctionlab
