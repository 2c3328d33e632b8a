#include "auctionlab/dist.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "auctionlab/quad.hpp"

namespace auctionlab {

namespace {

void require(bool cond, const std::string& msg) {
    if (!cond) throw ValidationError(msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// Segment

Segment Segment::rational(double lo, double hi, double a, double b) {
    Segment s;
    s.lo = lo;
    s.hi = hi;
    s.kind = SegKind::Rational;
    s.p0 = a;
    s.p1 = b;
    return s;
}

Segment Segment::exponential(double lo, double hi, double lambda, double shift) {
    Segment s;
    s.lo = lo;
    s.hi = hi;
    s.kind = SegKind::Exponential;
    s.p0 = lambda;
    s.p1 = shift;
    return s;
}

Segment Segment::power_of_er(double lo, double hi, double n) {
    Segment s;
    s.lo = lo;
    s.hi = hi;
    s.kind = SegKind::PowerOfER;
    s.p0 = n;
    return s;
}

Segment Segment::uniform(double lo, double hi) { return uniform_law(lo, hi, lo, hi); }

Segment Segment::uniform_law(double lo, double hi, double a, double b) {
    Segment s;
    s.lo = lo;
    s.hi = hi;
    s.kind = SegKind::Uniform;
    s.p0 = a;
    s.p1 = b;
    return s;
}

Segment Segment::affine(double lo, double hi, double c0, double c1) {
    Segment s;
    s.lo = lo;
    s.hi = hi;
    s.kind = SegKind::Affine;
    s.p0 = c0;
    s.p1 = c1;
    return s;
}

double Segment::cdf(double v) const {
    switch (kind) {
        case SegKind::Rational:
            return (v - p1) / (v - p1 + p0);
        case SegKind::Exponential:
            return 1.0 - std::exp(-p0 * (v - p1));
        case SegKind::PowerOfER:
            return std::pow((v - 1.0) / v, 1.0 / p0);
        case SegKind::Uniform:
            return (v - p0) / (p1 - p0);
        case SegKind::Affine:
            return p0 + p1 * v;
    }
    return 0.0;
}

double Segment::tail(double v) const {
    switch (kind) {
        case SegKind::Rational:
            return p0 / (v - p1 + p0);
        case SegKind::Exponential:
            return std::exp(-p0 * (v - p1));
        case SegKind::PowerOfER:
            // 1 - (1 - 1/v)^(1/n) without forming the near-1 power
            return -std::expm1(std::log1p(-1.0 / v) / p0);
        case SegKind::Uniform:
            return (p1 - v) / (p1 - p0);
        case SegKind::Affine:
            return (1.0 - p0) - p1 * v;
    }
    return 0.0;
}

double Segment::density(double v) const {
    switch (kind) {
        case SegKind::Rational:
            return p0 / ((v - p1 + p0) * (v - p1 + p0));
        case SegKind::Exponential:
            return p0 * std::exp(-p0 * (v - p1));
        case SegKind::PowerOfER:
            return std::pow((v - 1.0) / v, 1.0 / p0 - 1.0) / (p0 * v * v);
        case SegKind::Uniform:
            return 1.0 / (p1 - p0);
        case SegKind::Affine:
            return p1;
    }
    return 0.0;
}

double Segment::invert(double F) const {
    switch (kind) {
        case SegKind::Rational:
            if (F >= 1.0) return kInf;
            return p1 + p0 * F / (1.0 - F);
        case SegKind::Exponential:
            if (F >= 1.0) return kInf;
            return p1 - std::log1p(-F) / p0;
        case SegKind::PowerOfER: {
            if (F >= 1.0) return kInf;
            double fn = std::pow(F, p0);
            return 1.0 / (1.0 - fn);
        }
        case SegKind::Uniform:
            return p0 + F * (p1 - p0);
        case SegKind::Affine:
            return (F - p0) / p1;
    }
    return 0.0;
}

double Segment::invert_tail(double t) const {
    switch (kind) {
        case SegKind::Rational:
            if (t <= 0.0) return kInf;
            return p1 + p0 * (1.0 - t) / t;
        case SegKind::Exponential:
            if (t <= 0.0) return kInf;
            return p1 - std::log(t) / p0;
        case SegKind::PowerOfER: {
            if (t <= 0.0) return kInf;
            // tail = 1 - F, F^n = exp(n log(1 - t)), v = 1 / (1 - F^n)
            return 1.0 / -std::expm1(p0 * std::log1p(-t));
        }
        case SegKind::Uniform:
            return p1 - t * (p1 - p0);
        case SegKind::Affine:
            return ((1.0 - p0) - t) / p1;
    }
    return 0.0;
}

double Segment::tail_integral(double x1, double x2) const {
    if (x2 <= x1) return 0.0;
    switch (kind) {
        case SegKind::Rational: {
            if (!std::isfinite(x2)) return kInf;
            return p0 * std::log((x2 - p1 + p0) / (x1 - p1 + p0));
        }
        case SegKind::Exponential: {
            double hiterm = std::isfinite(x2) ? std::exp(-p0 * (x2 - p1)) : 0.0;
            return (std::exp(-p0 * (x1 - p1)) - hiterm) / p0;
        }
        case SegKind::PowerOfER: {
            if (!std::isfinite(x2)) return kInf;
            return quad::integrate([this](double v) { return 1.0 - cdf(v); }, x1, x2);
        }
        case SegKind::Uniform: {
            double d = p1 - p0;
            return ((p1 - x1) * (p1 - x1) - (p1 - x2) * (p1 - x2)) / (2.0 * d);
        }
        case SegKind::Affine:
            return (1.0 - p0) * (x2 - x1) - p1 * (x2 * x2 - x1 * x1) / 2.0;
    }
    return 0.0;
}

double Segment::partial_expectation(double x1, double x2) const {
    if (x2 <= x1) return 0.0;
    switch (kind) {
        case SegKind::Rational: {
            if (!std::isfinite(x2)) return kInf;
            double w1 = x1 - p1 + p0, w2 = x2 - p1 + p0;
            return p0 * (std::log(w2 / w1) + (p1 - p0) * (1.0 / w1 - 1.0 / w2));
        }
        case SegKind::Exponential: {
            auto term = [this](double x) {
                return std::isfinite(x) ? (x + 1.0 / p0) * std::exp(-p0 * (x - p1)) : 0.0;
            };
            return term(x1) - term(x2);
        }
        case SegKind::PowerOfER: {
            if (!std::isfinite(x2)) return kInf;
            return quad::integrate([this](double v) { return v * density(v); }, x1, x2);
        }
        case SegKind::Uniform:
            return (x2 * x2 - x1 * x1) / (2.0 * (p1 - p0));
        case SegKind::Affine:
            return p1 * (x2 * x2 - x1 * x1) / 2.0;
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// PiecewiseDistribution

PiecewiseDistribution::PiecewiseDistribution(std::vector<Atom> atoms, std::vector<Segment> segments)
    : atoms_(std::move(atoms)), segments_(std::move(segments)) {
    build_index();
}

void PiecewiseDistribution::build_index() {
    events_.clear();
    support_inf_ = kInf;
    support_sup_ = -kInf;
    for (const auto& a : atoms_) {
        support_inf_ = std::min(support_inf_, a.v);
        support_sup_ = std::max(support_sup_, a.v);
    }
    for (const auto& s : segments_) {
        support_inf_ = std::min(support_inf_, s.lo);
        support_sup_ = std::max(support_sup_, s.hi);
    }
    if (atoms_.empty() && segments_.empty()) {
        support_inf_ = support_sup_ = 0.0;
        return;
    }

    // Walk pieces in value order, tracking cumulative mass.  An atom exactly at
    // a segment's lo is part of that segment's initial jump, so it produces no
    // separate event.
    double running = 0.0;
    size_t ia = 0, is = 0;
    while (ia < atoms_.size() || is < segments_.size()) {
        bool take_atom = false;
        if (ia < atoms_.size() && is < segments_.size())
            take_atom = atoms_[ia].v < segments_[is].lo;
        else
            take_atom = ia < atoms_.size();
        if (take_atom) {
            const Atom& a = atoms_[ia++];
            events_.push_back({a.v, running, running + a.p, -1, false});
            running += a.p;
        } else {
            const Segment& s = segments_[is];
            if (ia < atoms_.size() && atoms_[ia].v == s.lo) ++ia;
            double f_lo = s.cdf(s.lo);
            events_.push_back({s.lo, running, f_lo, static_cast<int>(is), false});
            if (std::isfinite(s.hi)) {
                double f_hi = s.cdf(s.hi);
                events_.push_back({s.hi, f_hi, f_hi, static_cast<int>(is), true});
                running = f_hi;
            } else {
                running = 1.0;
            }
            ++is;
        }
    }
}

const Segment* PiecewiseDistribution::segment_containing(double v) const {
    auto it = std::upper_bound(segments_.begin(), segments_.end(), v,
                               [](double x, const Segment& s) { return x < s.lo; });
    if (it == segments_.begin()) return nullptr;
    --it;
    return (v >= it->lo && v < it->hi) ? &*it : nullptr;
}

void PiecewiseDistribution::validate() const {
    require(!atoms_.empty() || !segments_.empty(), "distribution has no mass");
    for (size_t i = 0; i < atoms_.size(); ++i) {
        const Atom& a = atoms_[i];
        require(std::isfinite(a.v) && a.v >= 0.0, "atom value must be finite and nonnegative");
        require(a.p > 0.0 && a.p <= 1.0 + 1e-9, "atom mass must lie in (0, 1]");
        if (i > 0) require(atoms_[i - 1].v < a.v, "atoms must be strictly increasing");
    }
    for (size_t i = 0; i < segments_.size(); ++i) {
        const Segment& s = segments_[i];
        require(std::isfinite(s.lo) && s.lo >= 0.0, "segment lo must be finite and nonnegative");
        require(s.hi > s.lo, "segment must have hi > lo");
        switch (s.kind) {
            case SegKind::Rational:
                require(s.p0 > 0.0, "rational segment needs a > 0");
                require(s.p1 >= 0.0 && s.lo >= s.p1, "rational segment needs 0 <= b <= lo");
                break;
            case SegKind::Exponential:
                require(s.p0 > 0.0, "exponential segment needs lambda > 0");
                require(s.lo >= s.p1, "exponential segment needs lo >= shift");
                break;
            case SegKind::PowerOfER:
                require(s.p0 >= 1.0, "power-of-er segment needs n >= 1");
                require(s.lo >= 1.0, "power-of-er segment lives on [1, inf)");
                break;
            case SegKind::Uniform:
                require(s.p1 > s.p0, "uniform segment needs law hi > lo");
                require(std::isfinite(s.hi), "uniform segment must be bounded");
                require(s.lo >= s.p0 - 1e-12 && s.hi <= s.p1 + 1e-12,
                        "uniform segment must sit inside its law's support");
                break;
            case SegKind::Affine:
                require(s.p1 > 0.0, "affine segment needs positive slope");
                require(std::isfinite(s.hi), "affine segment must be bounded");
                break;
        }
        if (i > 0) require(segments_[i - 1].hi <= s.lo + 1e-12, "segments must not overlap");
        if (i + 1 < segments_.size())
            require(std::isfinite(s.hi), "only the last segment may be unbounded");
        require(s.cdf(s.lo) >= -1e-9, "segment CDF must be nonnegative");
        double top = std::isfinite(s.hi) ? s.cdf(s.hi) : 1.0;
        require(top <= 1.0 + 1e-9, "segment CDF must not exceed 1");
        require(top >= s.cdf(s.lo) - 1e-12, "segment CDF must be nondecreasing");
    }
    for (const auto& a : atoms_) {
        for (const auto& s : segments_)
            require(!(a.v > s.lo && a.v < s.hi),
                    "atom may not sit in the interior of a segment");
    }

    // Continuity of the assembled CDF: each segment's starting value must match
    // the mass below it plus any atom folded at its lo; total mass must be 1.
    double running = 0.0;
    size_t ia = 0, is = 0;
    while (ia < atoms_.size() || is < segments_.size()) {
        bool take_atom = false;
        if (ia < atoms_.size() && is < segments_.size())
            take_atom = atoms_[ia].v < segments_[is].lo;
        else
            take_atom = ia < atoms_.size();
        if (take_atom) {
            const Atom& a = atoms_[ia];
            if (is < segments_.size())
                require(a.v <= segments_[is].lo, "atom ordering is inconsistent");
            running += a.p;
            ++ia;
        } else {
            const Segment& s = segments_[is];
            double fold = 0.0;
            if (ia < atoms_.size() && atoms_[ia].v == s.lo) {
                fold = atoms_[ia].p;
                ++ia;
            }
            std::ostringstream where;
            where << "segment starting at " << s.lo;
            require(std::fabs(s.cdf(s.lo) - (running + fold)) <= 1e-9,
                    where.str() + ": CDF value at lo does not match mass below plus atom");
            running = std::isfinite(s.hi) ? s.cdf(s.hi) : 1.0;
            ++is;
        }
    }
    require(std::fabs(running - 1.0) <= 1e-9, "total mass must be 1");
}

double PiecewiseDistribution::cdf(double v) const {
    if (const Segment* s = segment_containing(v)) return s->cdf(v);
    auto it = std::upper_bound(events_.begin(), events_.end(), v,
                               [](double x, const Event& e) { return x < e.x; });
    if (it == events_.begin()) return 0.0;
    return std::prev(it)->f_right;
}

double PiecewiseDistribution::cdf_left(double v) const {
    if (const Segment* s = segment_containing(v); s != nullptr && v > s->lo) return s->cdf(v);
    auto it = std::lower_bound(events_.begin(), events_.end(), v,
                               [](const Event& e, double x) { return e.x < x; });
    if (it != events_.end() && it->x == v) return it->f_left;
    if (it == events_.begin()) return 0.0;
    return std::prev(it)->f_right;
}

double PiecewiseDistribution::quantile_price(double q) const {
    if (q <= 0.0) return support_sup_;
    if (q > 1.0) q = 1.0;
    double c = 1.0 - q;
    // First event whose right CDF value strictly exceeds c; everything at or
    // below level c lies weakly left of the answer.
    auto it = std::upper_bound(events_.begin(), events_.end(), c,
                               [](double lvl, const Event& e) { return lvl < e.f_right; });
    if (it == events_.end()) {
        if (!segments_.empty() && !std::isfinite(segments_.back().hi)) {
            const Segment& s = segments_.back();
            if (c >= s.cdf(s.lo)) return s.invert_tail(q);
        }
        return support_sup_;
    }
    if (it->seg >= 0 && it->is_end) {
        // Level c is reached inside this segment; invert through the tail so
        // tiny quantiles don't lose precision to 1 - (1 - q) rounding.
        return segments_[static_cast<size_t>(it->seg)].invert_tail(q);
    }
    return it->x;
}

double PiecewiseDistribution::tail(double v) const {
    if (const Segment* s = segment_containing(v)) return s->tail(v);
    auto it = std::upper_bound(events_.begin(), events_.end(), v,
                               [](double x, const Event& e) { return x < e.x; });
    if (it == events_.begin()) return 1.0;
    return 1.0 - std::prev(it)->f_right;
}

double PiecewiseDistribution::tail_left(double v) const {
    if (const Segment* s = segment_containing(v); s != nullptr && v > s->lo) return s->tail(v);
    // F is continuous at a segment's upper end from the left.
    if (!events_.empty()) {
        auto it = std::lower_bound(events_.begin(), events_.end(), v,
                                   [](const Event& e, double x) { return e.x < x; });
        if (it != events_.end() && it->x == v) {
            if (it->seg >= 0 && it->is_end)
                return segments_[static_cast<size_t>(it->seg)].tail(v);
            return 1.0 - it->f_left;
        }
        if (it == events_.begin()) return 1.0;
        return 1.0 - std::prev(it)->f_right;
    }
    return 1.0;
}

double PiecewiseDistribution::sample(double u) const {
    if (u <= 0.0) return support_inf_;
    auto it = std::lower_bound(events_.begin(), events_.end(), u,
                               [](const Event& e, double lvl) { return e.f_right < lvl; });
    if (it == events_.end()) {
        if (!segments_.empty() && !std::isfinite(segments_.back().hi))
            return segments_.back().invert(u);
        return support_sup_;
    }
    if (it->seg >= 0 && it->is_end) {
        const Segment& s = segments_[static_cast<size_t>(it->seg)];
        if (u > s.cdf(s.lo)) return s.invert(u);
        return s.lo;
    }
    return it->x;
}

double PiecewiseDistribution::partial_expectation(double t) const {
    double total = 0.0;
    for (const auto& a : atoms_)
        if (a.v >= t) total += a.v * a.p;
    for (const auto& s : segments_) {
        double a = std::max(s.lo, t);
        if (a >= s.hi) continue;
        double part = s.partial_expectation(a, s.hi);
        if (!std::isfinite(part)) return kInf;
        total += part;
    }
    return total;
}

double PiecewiseDistribution::tail_integral(double x1, double x2) const {
    if (x2 <= x1) return 0.0;
    std::vector<double> cuts{x1};
    for (const auto& s : segments_) {
        if (s.lo > x1 && s.lo < x2) cuts.push_back(s.lo);
        if (std::isfinite(s.hi) && s.hi > x1 && s.hi < x2) cuts.push_back(s.hi);
    }
    for (const auto& a : atoms_)
        if (a.v > x1 && a.v < x2) cuts.push_back(a.v);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    double total = 0.0;
    for (size_t i = 0; i < cuts.size(); ++i) {
        double a = cuts[i];
        double b = (i + 1 < cuts.size()) ? cuts[i + 1] : x2;
        if (const Segment* s = segment_containing(a)) {
            double piece = s->tail_integral(a, std::min(b, s->hi));
            if (!std::isfinite(piece)) return kInf;
            total += piece;
        } else {
            double t = tail(a);
            if (!std::isfinite(b)) {
                if (t > 1e-12) return kInf;
                break;
            }
            total += t * (b - a);
        }
    }
    return total;
}

double PiecewiseDistribution::boundary_revenue() const {
    if (segments_.empty()) return 0.0;
    const Segment& s = segments_.back();
    if (std::isfinite(s.hi)) return 0.0;
    switch (s.kind) {
        case SegKind::Rational:
            return s.p0;
        case SegKind::PowerOfER:
            return 1.0 / s.p0;
        default:
            return 0.0;
    }
}

PiecewiseDistribution PiecewiseDistribution::truncate(double t) const {
    require(t > support_inf_, "truncation point must exceed the support infimum");
    if (t >= support_sup_) return *this;
    double tail_mass = tail_left(t);
    std::vector<Atom> atoms;
    for (const auto& a : atoms_)
        if (a.v < t) atoms.push_back(a);
    std::vector<Segment> segs;
    for (const auto& s : segments_) {
        if (s.hi <= t) {
            segs.push_back(s);
        } else if (s.lo < t) {
            Segment cut = s;
            cut.hi = t;
            segs.push_back(cut);
        }
    }
    if (tail_mass > 0.0) atoms.push_back({t, tail_mass});
    return PiecewiseDistribution(std::move(atoms), std::move(segs));
}

double PiecewiseDistribution::density(double v) const {
    const Segment* s = segment_containing(v);
    if (s == nullptr || v <= s->lo)
        throw ValidationError("density is only defined in the interior of a continuous segment");
    return s->density(v);
}

double PiecewiseDistribution::virtual_value(double v) const {
    return v - tail(v) / density(v);
}

double PiecewiseDistribution::hazard_rate(double v) const { return density(v) / tail(v); }

double PiecewiseDistribution::cum_hazard(double v) const {
    double f = cdf(v);
    if (f >= 1.0) return kInf;
    return -std::log1p(-f);
}

double PiecewiseDistribution::cum_hazard_left(double v) const {
    double f = cdf_left(v);
    if (f >= 1.0) return kInf;
    return -std::log1p(-f);
}

double PiecewiseDistribution::ce_virtual_value(double v) const {
    double f = cdf(v);
    require(f > 0.0, "conditional-expectation virtual value needs F(v) > 0");
    return -v * (1.0 - f) / f;
}

double PiecewiseDistribution::ce_hazard(double v) const {
    require(v > 0.0, "conditional-expectation hazard needs v > 0");
    return cum_hazard(v) / v;
}

std::vector<double> PiecewiseDistribution::char_values() const {
    std::vector<double> xs;
    for (const auto& a : atoms_) xs.push_back(a.v);
    for (const auto& s : segments_) {
        xs.push_back(s.lo);
        if (std::isfinite(s.hi)) xs.push_back(s.hi);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

// ---------------------------------------------------------------------------
// Convenience constructors

PiecewiseDistribution point_mass(double v) { return PiecewiseDistribution({{v, 1.0}}, {}); }

PiecewiseDistribution uniform_dist(double lo, double hi) {
    return PiecewiseDistribution({}, {Segment::uniform(lo, hi)});
}

PiecewiseDistribution exponential_dist(double lambda, double shift) {
    return PiecewiseDistribution({}, {Segment::exponential(shift, kInf, lambda, shift)});
}

PiecewiseDistribution rational_dist(double a, double b) {
    return PiecewiseDistribution({}, {Segment::rational(b, kInf, a, b)});
}

PiecewiseDistribution power_of_er_dist(double n) {
    return PiecewiseDistribution({}, {Segment::power_of_er(1.0, kInf, n)});
}

PiecewiseDistribution discrete_dist(std::vector<Atom> atoms) {
    std::sort(atoms.begin(), atoms.end(), [](const Atom& x, const Atom& y) { return x.v < y.v; });
    std::vector<Atom> merged;
    for (const auto& a : atoms) {
        if (!merged.empty() && merged.back().v == a.v)
            merged.back().p += a.p;
        else
            merged.push_back(a);
    }
    return PiecewiseDistribution(std::move(merged), {});
}

}  // namespace auctionlab
