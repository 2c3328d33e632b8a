#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "auctionlab/common.hpp"

namespace auctionlab {

// A point mass at value v with probability p.
struct Atom {
    double v = 0.0;
    double p = 0.0;
};

enum class SegKind { Rational, Exponential, PowerOfER, Uniform, Affine };

// One analytic piece of a CDF on [lo, hi).  The formula gives the absolute
// (global) CDF on the interval; an atom sitting exactly at `lo` is part of the
// formula's jump there.
//
// Kinds and their CDFs:
//   Rational     F(v) = (v - b) / (v - b + a)            params a > 0, b >= 0
//   Exponential  F(v) = 1 - exp(-lambda * (v - shift))   params lambda > 0, shift >= 0
//   PowerOfER    F(v) = ((v - 1) / v)^(1/n)              param  n >= 1, support v >= 1
//   Uniform      F linear on the law's support [a, b]
//   Affine       F(v) = c0 + c1 * v
struct Segment {
    double lo = 0.0;
    double hi = 0.0;  // may be +inf for Rational / Exponential / PowerOfER
    SegKind kind = SegKind::Uniform;
    double p0 = 0.0;  // a / lambda / n / a  / c0
    double p1 = 0.0;  // b / shift  / - / b  / c1

    static Segment rational(double lo, double hi, double a, double b);
    static Segment exponential(double lo, double hi, double lambda, double shift);
    static Segment power_of_er(double lo, double hi, double n);
    static Segment uniform(double lo, double hi);
    static Segment uniform_law(double lo, double hi, double a, double b);
    static Segment affine(double lo, double hi, double c0, double c1);

    double cdf(double v) const;       // formula value, valid on [lo, hi]
    // 1 - cdf(v) in a cancellation-free form; exact even when cdf rounds to 1.
    double tail(double v) const;
    double density(double v) const;   // dF/dv on (lo, hi)
    double invert(double F) const;    // v with cdf(v) = F
    double invert_tail(double t) const;  // v with tail(v) = t, precise for small t
    // int_{x1}^{x2} (1 - cdf(v)) dv for lo <= x1 <= x2 <= hi; +inf if divergent.
    double tail_integral(double x1, double x2) const;
    // int_{x1}^{x2} v dF(v); +inf if divergent.
    double partial_expectation(double x1, double x2) const;
};

// A one-dimensional value distribution: a finite list of atoms plus piecewise
// analytic continuous parts.  The CDF is right-continuous; between pieces it is
// constant.  Supports mixed discrete/continuous laws and unbounded tails.
class PiecewiseDistribution {
  public:
    PiecewiseDistribution() = default;
    PiecewiseDistribution(std::vector<Atom> atoms, std::vector<Segment> segments);

    // Checks ordering, parameter ranges, continuity of the assembled CDF and
    // total mass 1 (tolerance 1e-9).  Throws ValidationError on failure.
    void validate() const;

    const std::vector<Atom>& atoms() const { return atoms_; }
    const std::vector<Segment>& segments() const { return segments_; }

    double support_inf() const { return support_inf_; }
    double support_sup() const { return support_sup_; }  // +inf for unbounded
    bool is_discrete() const { return segments_.empty(); }
    bool bounded() const { return std::isfinite(support_sup_); }

    double cdf(double v) const;        // F(v), right-continuous
    double cdf_left(double v) const;   // F(v-)
    // Survival functions.  Inside a continuous piece these use the piece's
    // exact tail formula, so they stay accurate when F is within an ulp of 1.
    double tail(double v) const;
    double tail_left(double v) const;

    // Largest value whose left-limit tail is still at least q:
    //   price(q) = sup { v : 1 - F(v-) >= q }.
    // price(1) = support_inf; price(0) = support_sup (may be +inf).
    double quantile_price(double q) const;

    // Inverse-CDF sampling: inf { v : F(v) >= u }, u in (0, 1).
    double sample(double u) const;

    // E[v * 1{v >= t}] counting an atom at t fully; +inf for heavy tails.
    double partial_expectation(double t) const;
    double mean() const { return partial_expectation(0.0); }

    // int_{x1}^{x2} (1 - F(v)) dv, valid for any 0 <= x1 <= x2 (may be +inf).
    double tail_integral(double x1, double x2) const;

    // lim_{v -> inf} v * (1 - F(v)): a for a Rational tail, 1/n for PowerOfER,
    // 0 otherwise.  This is the revenue available "at quantile zero".
    double boundary_revenue() const;

    // Moves all mass above t into an atom at t.  Requires t > support_inf.
    PiecewiseDistribution truncate(double t) const;

    // Density ops; throw ValidationError outside continuous-segment interiors.
    double density(double v) const;
    double virtual_value(double v) const;        // v - (1 - F(v)) / f(v)
    double hazard_rate(double v) const;          // f(v) / (1 - F(v))
    // Defined wherever F(v) < 1 resp. F(v) > 0; no density needed.
    double cum_hazard(double v) const;           // -ln(1 - F(v))
    double cum_hazard_left(double v) const;      // -ln(1 - F(v-))
    double ce_virtual_value(double v) const;     // -v (1 - F(v)) / F(v)
    double ce_hazard(double v) const;            // cum_hazard(v) / v

    // Characteristic values: atom positions and segment endpoints (finite ones).
    std::vector<double> char_values() const;

  private:
    std::vector<Atom> atoms_;
    std::vector<Segment> segments_;
    double support_inf_ = 0.0;
    double support_sup_ = 0.0;
    // Step table of the CDF: one entry per atom, segment start and finite
    // segment end, sorted by position; f_right is nondecreasing, which makes
    // both positions and levels binary searchable.
    struct Event {
        double x;
        double f_left;
        double f_right;
        int seg;  // owning segment for boundary events, -1 for atoms
        bool is_end;
    };
    std::vector<Event> events_;
    void build_index();

    const Segment* segment_containing(double v) const;
};

// Convenience constructors for distributions used throughout.
PiecewiseDistribution point_mass(double v);
PiecewiseDistribution uniform_dist(double lo, double hi);
PiecewiseDistribution exponential_dist(double lambda, double shift = 0.0);
PiecewiseDistribution rational_dist(double a, double b);  // support [b, inf)
PiecewiseDistribution power_of_er_dist(double n);         // support [1, inf)
PiecewiseDistribution discrete_dist(std::vector<Atom> atoms);

}  // namespace auctionlab
