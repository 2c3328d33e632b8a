#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "auctionlab/mechanisms.hpp"

namespace auctionlab {

// m value profiles: one row per profile, one column per buyer.  Deterministic
// in (market, m, seed); column j uses stream j of the counter-based generator.
struct SampleMatrix {
    int m = 0;
    int n = 0;
    std::vector<double> values;  // row-major
    uint64_t seed = 0;

    double at(int row, int col) const {
        return values[static_cast<size_t>(row) * n + col];
    }
};

SampleMatrix sample_matrix(const Market& market, int m, uint64_t seed);

// Revenue of the reserve-r second-price auction replayed on the sample.
double empirical_spa_revenue(const SampleMatrix& s, double r);

// Best empirical anonymous reserve.  The sample revenue is piecewise linear
// in r and only bends downward at observed row maxima, so sweeping those
// (ties -> larger reserve) finds the global maximizer.
double empirical_uniform_reserve(const SampleMatrix& s);

// Learned direct mechanism: per-buyer empirical value distributions from half
// the sample, truncated at a level calibrated on the other half, ironed, and
// run as a virtual-value maximizer with critical-value payments.
struct EmpiricalMyerson {
    double epsilon = 0.0;
    double truncation = 0.0;
    struct BuyerRule {
        std::vector<double> v;    // learned support, ascending
        std::vector<double> phi;  // ironed virtual value per support atom, nondecreasing
    };
    std::vector<BuyerRule> rule;

    // Allocation level of a realized value; -inf below the learned support.
    double virtual_of(int buyer, double value) const;
    // (winner, payment); winner -1 when every level is negative.  The payment
    // is the smallest learned support value at which the winner still wins.
    std::pair<int, double> outcome(const std::vector<double>& values) const;
};

EmpiricalMyerson empirical_myerson(const SampleMatrix& s, double epsilon);

// Expected revenue of the learned mechanism under the true market (fresh MC).
MechanismReport evaluate_learned(const EmpiricalMyerson& mech, const Market& market,
                                 const McOptions& opts);

struct ConvergencePoint {
    int m = 0;
    double eur_ratio = 0.0;  // mean over trials of SPA(learned reserve) / BOUR
    double eur_se = 0.0;
    double myerson_ratio = 0.0;  // mean over trials of learned revenue / BOM
    double myerson_se = 0.0;
};

// For each sample size: draw `trials` matrices, learn, evaluate against fresh
// draws (the reserve exactly, the learned mechanism by MC with myerson_mc
// samples; pass 0 to skip the mechanism track).
std::vector<ConvergencePoint> convergence_experiment(const Market& market,
                                                     const std::vector<int>& m_grid,
                                                     double epsilon, int trials, uint64_t seed,
                                                     uint64_t myerson_mc = 100000);

// How much of the optimal revenue survives truncating every buyer at the
// calibrated level?
enum class TruncationFlavor { QuasiMhrMarket, QuasiRegularSingleBuyer };
struct TruncationCheck {
    double t = 0.0;
    double bom_full = 0.0;
    double bom_truncated = 0.0;
    double bound = 0.0;  // required lower bound on bom_truncated
    bool passes = false;
};
TruncationCheck truncation_loss_check(const Market& market, double epsilon,
                                      TruncationFlavor flavor);

// Spearman rank correlation (average ranks on ties).
double spearman(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace auctionlab
