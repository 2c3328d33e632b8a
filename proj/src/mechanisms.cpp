#include "auctionlab/mechanisms.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/tools/minima.hpp>

#include "auctionlab/quad.hpp"
#include "auctionlab/rng.hpp"

namespace auctionlab {

// ---------------------------------------------------------------------------
// Market

Market Market::iid(PiecewiseDistribution d, int n) {
    Market m;
    m.dists.push_back(std::move(d));
    m.copies.push_back(n);
    return m;
}

Market Market::of(std::vector<PiecewiseDistribution> ds) {
    Market m;
    m.dists = std::move(ds);
    m.copies.assign(m.dists.size(), 1);
    return m;
}

int Market::total() const {
    int n = 0;
    for (int c : copies) n += c;
    return n;
}

bool Market::discrete() const {
    for (const auto& d : dists)
        if (!d.is_discrete()) return false;
    return true;
}

bool Market::unbounded() const {
    for (const auto& d : dists)
        if (!d.bounded()) return true;
    return false;
}

void Market::validate() const {
    if (dists.empty() || dists.size() != copies.size())
        throw ValidationError("market must have aligned, nonempty type/copy lists");
    for (int c : copies)
        if (c < 1) throw ValidationError("copy counts must be positive");
    for (const auto& d : dists) d.validate();
}

std::string method_name(Method m) {
    switch (m) {
        case Method::ClosedForm:
            return "closed-form";
        case Method::Quadrature:
            return "quadrature";
        case Method::MonteCarlo:
            return "monte-carlo";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// Profile order-statistic CDFs

namespace {

double first_from(const std::vector<double>& f, const std::vector<int>& c) {
    double out = 1.0;
    for (size_t t = 0; t < f.size(); ++t) out *= std::pow(f[t], c[t]);
    return out;
}

// P[at most one draw exceeds], given per-type CDF values.
double second_from(const std::vector<double>& f, const std::vector<int>& c) {
    int zero_draws = 0;
    size_t zero_type = 0;
    for (size_t t = 0; t < f.size(); ++t)
        if (f[t] <= 0.0) {
            zero_draws += c[t];
            zero_type = t;
        }
    if (zero_draws >= 2) return 0.0;
    if (zero_draws == 1) {
        double out = 1.0;
        for (size_t t = 0; t < f.size(); ++t)
            if (t != zero_type) out *= std::pow(f[t], c[t]);
        return out;
    }
    double p0 = first_from(f, c);
    double sum = 1.0;
    for (size_t t = 0; t < f.size(); ++t) sum += c[t] * (1.0 - f[t]) / f[t];
    return p0 * sum;
}

std::vector<double> cdfs_at(const Market& m, double v, bool left) {
    std::vector<double> f(m.dists.size());
    for (size_t t = 0; t < m.dists.size(); ++t)
        f[t] = left ? m.dists[t].cdf_left(v) : m.dists[t].cdf(v);
    return f;
}

std::vector<double> tails_at(const Market& m, double v, bool left) {
    std::vector<double> x(m.dists.size());
    for (size_t t = 0; t < m.dists.size(); ++t)
        x[t] = left ? m.dists[t].tail_left(v) : m.dists[t].tail(v);
    return x;
}

// P[max > v] from per-type tails, in log space so values within an ulp of 0
// or 1 stay exact.
double first_tail_from(const std::vector<double>& x, const std::vector<int>& c) {
    double L = 0.0;
    for (size_t t = 0; t < x.size(); ++t) {
        if (x[t] >= 1.0) return 1.0;
        L += c[t] * std::log1p(-x[t]);
    }
    return -std::expm1(L);
}

// P[second-highest > v] from per-type tails.
double second_tail_from(const std::vector<double>& x, const std::vector<int>& c) {
    int certain = 0;
    size_t certain_t = 0;
    for (size_t t = 0; t < x.size(); ++t)
        if (x[t] >= 1.0) {
            certain += c[t];
            certain_t = t;
        }
    if (certain >= 2) return 1.0;
    if (certain == 1) {
        // exactly one draw surely above; second > v iff any other draw is
        std::vector<double> rest;
        std::vector<int> crest;
        for (size_t t = 0; t < x.size(); ++t) {
            int cc = t == certain_t ? c[t] - 1 : c[t];
            if (cc > 0) {
                rest.push_back(x[t]);
                crest.push_back(cc);
            }
        }
        return first_tail_from(rest, crest);
    }
    double L = 0.0, S = 0.0;
    for (size_t t = 0; t < x.size(); ++t) {
        L += c[t] * std::log1p(-x[t]);
        S += c[t] * x[t] / (1.0 - x[t]);
    }
    // 1 - P0 (1 + S) = (1 - P0) - P0 S
    return -std::expm1(L) - std::exp(L) * S;
}

double first_tail(const Market& m, double v) { return first_tail_from(tails_at(m, v, false), m.copies); }
double first_tail_left(const Market& m, double v) {
    return first_tail_from(tails_at(m, v, true), m.copies);
}
double second_tail(const Market& m, double v) {
    return second_tail_from(tails_at(m, v, false), m.copies);
}
double second_tail_dup(const Market& m, int t, double v) {
    std::vector<double> x = tails_at(m, v, false);
    std::vector<int> c = m.copies;
    c[static_cast<size_t>(t)] += 1;
    return second_tail_from(x, c);
}

std::vector<double> union_char_values(const Market& m) {
    std::vector<double> xs;
    for (const auto& d : m.dists)
        for (double x : d.char_values()) xs.push_back(x);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

double market_sup(const Market& m) {
    double s = 0.0;
    for (const auto& d : m.dists) s = std::max(s, d.support_sup());
    return s;
}

double sum_boundary(const Market& m) {
    double b = 0.0;
    for (size_t t = 0; t < m.dists.size(); ++t)
        b += m.copies[t] * m.dists[t].boundary_revenue();
    return b;
}

}  // namespace

double first_cdf(const Market& m, double v) { return first_from(cdfs_at(m, v, false), m.copies); }
double first_cdf_left(const Market& m, double v) {
    return first_from(cdfs_at(m, v, true), m.copies);
}
double second_cdf(const Market& m, double v) { return second_from(cdfs_at(m, v, false), m.copies); }
double second_cdf_left(const Market& m, double v) {
    return second_from(cdfs_at(m, v, true), m.copies);
}

double second_cdf_dup(const Market& m, int t, double v) {
    std::vector<double> f = cdfs_at(m, v, false);
    std::vector<int> c = m.copies;
    c[static_cast<size_t>(t)] += 1;
    return second_from(f, c);
}

// ---------------------------------------------------------------------------
// Expectations

namespace {

// int_0^inf g(v) dv for a nonincreasing tail-like integrand that is smooth
// between market breakpoints; g must vanish beyond the bounded support or
// decay at least quadratically on unbounded ones.
template <class G>
double integrate_tail_functional(const Market& m, G&& g) {
    std::vector<double> cuts = union_char_values(m);
    if (m.unbounded()) return quad::integrate_split(g, 0.0, kInf, cuts);
    return quad::integrate_split(g, 0.0, market_sup(m), cuts);
}

// Exact stepwise integral of a functional of the CDFs for discrete markets:
// int_lo^inf g(v) dv where g is constant between consecutive union atoms.
template <class G>
double discrete_step_integral(const Market& m, double lo, G&& g) {
    std::vector<double> xs = union_char_values(m);
    double total = 0.0;
    double prev = lo;
    for (double x : xs) {
        if (x <= lo) continue;
        total += g(prev) * (x - prev);
        prev = x;
    }
    return total;  // beyond the top atom every tail functional is zero
}

}  // namespace

double expected_max(const Market& m) {
    for (const auto& d : m.dists)
        if (d.boundary_revenue() > 0.0)
            throw DivergenceError("expected maximum diverges: a type has a heavy tail");
    auto g = [&](double v) { return first_tail(m, v); };
    if (m.discrete()) return discrete_step_integral(m, 0.0, g);
    return integrate_tail_functional(m, g);
}

double expected_second(const Market& m) {
    auto g = [&](double v) { return second_tail(m, v); };
    if (m.discrete()) return discrete_step_integral(m, 0.0, g);
    return integrate_tail_functional(m, g);
}

double expected_virtual_of_max(const PiecewiseDistribution& d, int n) {
    if (!d.atoms().empty())
        throw ValidationError("virtual value of the maximum needs a purely continuous law");
    double total = 0.0;
    for (const auto& s : d.segments()) {
        auto g = [&](double v) {
            double F = d.cdf(v);
            double f = s.density(v);
            // phi * F^{n-1} * n * f written as n F^{n-1} (v f - tail) so far
            // tails (f and tail both underflowing) give 0, not 0/0.
            return n * std::pow(F, n - 1) * (v * f - s.tail(v));
        };
        if (std::isfinite(s.hi))
            total += quad::integrate(g, s.lo, s.hi);
        else
            total += quad::integrate_split(g, s.lo, kInf, {});
    }
    return total;
}

// ---------------------------------------------------------------------------
// BOM

namespace {

struct TypeHull {
    std::vector<std::pair<double, double>> slope_len;  // positive slopes, descending
    double boundary = 0.0;
};

std::vector<TypeHull> market_hulls(const Market& m, int grid_size) {
    std::vector<TypeHull> hulls;
    hulls.reserve(m.dists.size());
    for (const auto& d : m.dists) {
        IronedCurve c = iron(d, grid_size);
        TypeHull h;
        h.boundary = c.boundary_mass();
        for (const auto& [s, len] : c.slope_lengths())
            if (s > 0.0) h.slope_len.emplace_back(s, len);
        // slope_lengths is slope-descending already (concave hull)
        hulls.push_back(std::move(h));
    }
    return hulls;
}

}  // namespace

MechanismReport bom_revenue(const Market& m, int grid_size) {
    std::vector<TypeHull> hulls = market_hulls(m, grid_size);
    // Distinct positive levels, descending.
    std::vector<double> levels;
    for (const auto& h : hulls)
        for (const auto& [s, len] : h.slope_len) levels.push_back(s);
    std::sort(levels.begin(), levels.end(), std::greater<>());
    levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

    size_t T = hulls.size();
    std::vector<size_t> ptr(T, 0);
    std::vector<double> q(T, 0.0);  // P[type's ironed virtual value >= current level]
    double integral = 0.0;
    for (size_t j = 0; j < levels.size(); ++j) {
        double x = levels[j];
        for (size_t t = 0; t < T; ++t) {
            while (ptr[t] < hulls[t].slope_len.size() && hulls[t].slope_len[ptr[t]].first >= x) {
                q[t] += hulls[t].slope_len[ptr[t]].second;
                ++ptr[t];
            }
        }
        double none = 1.0;
        for (size_t t = 0; t < T; ++t) none *= std::pow(1.0 - std::min(q[t], 1.0), m.copies[t]);
        double next = (j + 1 < levels.size()) ? levels[j + 1] : 0.0;
        integral += (x - next) * (1.0 - none);
    }

    MechanismReport rep;
    rep.mechanism = "bom";
    rep.revenue = sum_boundary(m) + integral;
    rep.method = m.discrete() ? Method::ClosedForm : Method::Quadrature;
    rep.diagnostics["boundary_mass"] = sum_boundary(m);
    return rep;
}

MechanismReport bom_revenue_mc(const Market& m, const McOptions& opts, int grid_size) {
    std::vector<IronedCurve> curves;
    for (const auto& d : m.dists) curves.push_back(iron(d, grid_size));
    // Map each buyer stream to its type.
    std::vector<int> type_of;
    for (size_t t = 0; t < m.dists.size(); ++t)
        for (int c = 0; c < m.copies[t]; ++c) type_of.push_back(static_cast<int>(t));

    MeanAccumulator acc = parallel_mc(opts.samples, [&](uint64_t b, uint64_t e,
                                                        MeanAccumulator& a) {
        for (uint64_t i = b; i < e; ++i) {
            double best = 0.0;
            for (size_t buyer = 0; buyer < type_of.size(); ++buyer) {
                double u = rng::uniform01(opts.seed, buyer, i);
                double phi = curves[static_cast<size_t>(type_of[buyer])].slope_at(u);
                if (phi > best) best = phi;
            }
            a.add(best);
        }
    });

    MechanismReport rep;
    rep.mechanism = "bom";
    rep.revenue = sum_boundary(m) + acc.mean();
    rep.method = Method::MonteCarlo;
    rep.mc_samples = opts.samples;
    rep.std_error = acc.std_error();
    rep.seed = opts.seed;
    rep.diagnostics["boundary_mass"] = sum_boundary(m);
    return rep;
}

// ---------------------------------------------------------------------------
// BOUP

namespace {

std::vector<double> market_price_grid(const Market& m, int grid_size) {
    std::vector<double> ps = union_char_values(m);
    int per = std::max(grid_size / static_cast<int>(m.dists.size()) / 4, 64);
    for (const auto& d : m.dists)
        for (double q : build_quantile_grid(d, per)) {
            double p = d.quantile_price(q);
            if (std::isfinite(p)) ps.push_back(p);
        }
    std::sort(ps.begin(), ps.end());
    ps.erase(std::unique(ps.begin(), ps.end()), ps.end());
    return ps;
}

// Deterministic 1-d polish: golden-section around the best bracket.
template <class F>
std::pair<double, double> polish_max(F&& f, double lo, double hi, double x0, double f0) {
    if (!(hi > lo)) return {x0, f0};
    auto neg = [&](double x) { return -f(x); };
    auto res = boost::math::tools::brent_find_minima(neg, lo, hi, 45);
    if (-res.second > f0) return {res.first, -res.second};
    return {x0, f0};
}

}  // namespace

MechanismReport boup_revenue(const Market& m, int grid_size) {
    auto objective = [&](double p) { return p * first_tail_left(m, p); };

    MechanismReport rep;
    rep.mechanism = "boup";
    double best_p = 0.0, best = 0.0;
    if (m.discrete()) {
        for (double p : union_char_values(m)) {
            double r = objective(p);
            if (r > best + 1e-15 || (r >= best - 1e-12 * std::max(1.0, best) && p > best_p)) {
                best = r;
                best_p = p;
            }
        }
        rep.method = Method::ClosedForm;
    } else {
        std::vector<double> ps = market_price_grid(m, grid_size);
        size_t best_i = 0;
        for (size_t i = 0; i < ps.size(); ++i) {
            double r = objective(ps[i]);
            // Ties resolve toward the larger candidate price.
            if (r > best + 1e-12 * std::max(1.0, best) ||
                (r >= best - 1e-12 * std::max(1.0, best) && ps[i] > best_p)) {
                best = r;
                best_p = ps[i];
                best_i = i;
            }
        }
        double lo = best_i > 0 ? ps[best_i - 1] : ps[best_i];
        double hi = best_i + 1 < ps.size() ? ps[best_i + 1] : ps[best_i];
        auto [bp, bv] = polish_max(objective, lo, hi, best_p, best);
        best_p = bp;
        best = bv;
        rep.method = Method::Quadrature;
    }
    // A heavy-tailed market approaches sum of boundary revenues as p -> inf;
    // only adopt that supremum when it strictly beats every finite price.
    double limit = sum_boundary(m);
    if (limit > best * (1.0 + 1e-12) + 1e-15) {
        best = limit;
        best_p = kInf;
    }
    rep.revenue = best;
    rep.opt_price = best_p;
    return rep;
}

// ---------------------------------------------------------------------------
// SPA with reserve / BOUR

double spa_revenue(const Market& m, double r) {
    if (r < 0.0) throw ValidationError("reserve must be nonnegative");
    double head = r > 0.0 ? r * first_tail_left(m, r) : 0.0;
    auto g = [&](double v) { return second_tail(m, v); };
    double tail_part;
    if (m.discrete()) {
        tail_part = discrete_step_integral(m, r, g);
    } else {
        std::vector<double> cuts = union_char_values(m);
        double hi = m.unbounded() ? kInf : market_sup(m);
        tail_part = r < hi ? quad::integrate_split(g, r, hi, cuts) : 0.0;
    }
    return head + tail_part;
}

MechanismReport bour_revenue(const Market& m, int grid_size) {
    MechanismReport rep;
    rep.mechanism = "bour";
    auto objective = [&](double r) { return spa_revenue(m, r); };

    std::vector<double> rs;
    rs.push_back(0.0);
    if (m.discrete()) {
        for (double p : union_char_values(m)) rs.push_back(p);
        double best = -1.0, best_r = 0.0;
        for (double r : rs) {
            double v = objective(r);
            if (v > best + 1e-15 || (v >= best - 1e-12 * std::max(1.0, best) && r > best_r)) {
                best = v;
                best_r = r;
            }
        }
        rep.revenue = best;
        rep.opt_price = best_r;
        rep.method = Method::ClosedForm;
        return rep;
    }

    for (double p : market_price_grid(m, std::min(grid_size, 1024))) rs.push_back(p);
    std::sort(rs.begin(), rs.end());
    rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
    double best = -1.0, best_r = 0.0;
    size_t best_i = 0;
    for (size_t i = 0; i < rs.size(); ++i) {
        double v = objective(rs[i]);
        if (v > best) {
            best = v;
            best_r = rs[i];
            best_i = i;
        }
    }
    double lo = best_i > 0 ? rs[best_i - 1] : rs[best_i];
    double hi = best_i + 1 < rs.size() ? rs[best_i + 1] : rs[best_i];
    auto [br, bv] = polish_max(objective, lo, hi, best_r, best);
    double limit = sum_boundary(m);
    if (limit > bv * (1.0 + 1e-12) + 1e-15) {
        bv = limit;
        br = kInf;
    }
    rep.revenue = bv;
    rep.opt_price = br;
    rep.method = Method::Quadrature;
    return rep;
}

// ---------------------------------------------------------------------------
// SPA + best single duplicate

MechanismReport spa_plus_dup_revenue(const Market& m) {
    MechanismReport rep;
    rep.mechanism = "spa-dup1";
    double best = -1.0;
    int best_t = -1;
    for (size_t t = 0; t < m.dists.size(); ++t) {
        auto g = [&](double v) { return second_tail_dup(m, static_cast<int>(t), v); };
        double val;
        if (m.discrete()) {
            val = discrete_step_integral(m, 0.0, g);
        } else {
            std::vector<double> cuts = union_char_values(m);
            double hi = m.unbounded() ? kInf : market_sup(m);
            val = quad::integrate_split(g, 0.0, hi, cuts);
        }
        if (val > best) {
            best = val;
            best_t = static_cast<int>(t);
        }
    }
    rep.revenue = best;
    rep.dup_index = best_t;
    rep.method = m.discrete() ? Method::ClosedForm : Method::Quadrature;
    return rep;
}

// ---------------------------------------------------------------------------
// Instant price

namespace {

// Density of the profile maximum at v (continuous parts only).
double first_density(const Market& m, double v) {
    std::vector<double> f = cdfs_at(m, v, false);
    size_t T = f.size();
    std::vector<double> dens(T, 0.0);
    for (size_t t = 0; t < T; ++t) {
        const Segment* s = nullptr;
        for (const auto& seg : m.dists[t].segments())
            if (v > seg.lo && v < seg.hi) s = &seg;
        dens[t] = s ? s->density(v) : 0.0;
    }
    // sum over types: c_t f_t F_t^{c_t - 1} prod_{s != t} F_s^{c_s}
    double total = 0.0;
    for (size_t t = 0; t < T; ++t) {
        if (dens[t] == 0.0) continue;
        double term = m.copies[t] * dens[t] * std::pow(f[t], m.copies[t] - 1);
        for (size_t s = 0; s < T; ++s)
            if (s != t) term *= std::pow(f[s], m.copies[s]);
        total += term;
    }
    return total;
}

}  // namespace

MechanismReport ip_revenue(const Market& m, const McOptions& opts) {
    MechanismReport rep;
    rep.mechanism = "ip";
    // Atom part: every value where the profile-max CDF jumps.
    double atom_part = 0.0;
    bool has_atoms = false;
    for (double x : union_char_values(m)) {
        double jump = first_tail_left(m, x) - first_tail(m, x);
        if (jump > 0.0) {
            has_atoms = true;
            atom_part += x * jump * first_tail_left(m, x);
        }
    }
    double cont_part = 0.0;
    if (!m.discrete()) {
        auto g = [&](double v) { return v * first_tail(m, v) * first_density(m, v); };
        std::vector<double> cuts = union_char_values(m);
        double hi = m.unbounded() ? kInf : market_sup(m);
        cont_part = quad::integrate_split(g, 0.0, hi, cuts);
    }
    rep.revenue = atom_part + cont_part;
    rep.method = m.discrete() ? Method::ClosedForm : Method::Quadrature;

    if (has_atoms && opts.samples > 0) {
        // Cross-check by simulation: price = max of one fresh sample per buyer,
        // sold against an independent profile at the left-limit tie rule.
        int n = m.total();
        MeanAccumulator acc = parallel_mc(opts.samples, [&](uint64_t b, uint64_t e,
                                                            MeanAccumulator& a) {
            for (uint64_t i = b; i < e; ++i) {
                double price = 0.0, actual = 0.0;
                int buyer = 0;
                for (size_t t = 0; t < m.dists.size(); ++t)
                    for (int c = 0; c < m.copies[t]; ++c, ++buyer) {
                        price = std::max(price,
                                         m.dists[t].sample(rng::uniform01(opts.seed,
                                                                          buyer, i)));
                        actual = std::max(
                            actual, m.dists[t].sample(rng::uniform01(
                                        opts.seed, static_cast<uint64_t>(buyer + n), i)));
                    }
                a.add(actual >= price ? price : 0.0);
            }
        });
        rep.diagnostics["mc_value"] = acc.mean();
        rep.diagnostics["mc_std_error"] = acc.std_error();
        rep.mc_samples = opts.samples;
        rep.seed = opts.seed;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// BOSP

namespace {

struct StageBest {
    double value = 0.0;
    double price = kInf;  // inf encodes "skip this buyer"
};

// max over p of s(p) * (p - w) with s(p) = P[v >= p], never below 0 (skip).
StageBest bosp_stage(const PiecewiseDistribution& d, double w) {
    StageBest best;
    best.value = std::max(0.0, d.boundary_revenue());  // p -> inf limit
    auto consider = [&](double p) {
        if (!(p >= w) || !std::isfinite(p)) return;
        double val = d.tail_left(p) * (p - w);
        if (val > best.value) {
            best.value = val;
            best.price = p;
        }
    };
    for (const auto& a : d.atoms()) consider(a.v);
    for (const auto& s : d.segments()) {
        consider(std::max(s.lo, w));
        if (std::isfinite(s.hi)) consider(s.hi);
        // closed-form stationary points: virtual value equal to w
        switch (s.kind) {
            case SegKind::Exponential:
                consider(w + 1.0 / s.p0);
                break;
            case SegKind::Uniform:
                consider((w + s.p1) / 2.0);
                break;
            case SegKind::Affine:
                consider((w + (1.0 - s.p0) / s.p1) / 2.0);
                break;
            case SegKind::Rational:
                break;  // constant virtual value; endpoints cover it
            case SegKind::PowerOfER: {
                // No closed-form stationary point; coarse scan, then polish
                // around the best bracket.
                double lo = std::max(s.lo, w);
                double hi = std::isfinite(s.hi) ? s.hi : d.quantile_price(1e-10);
                if (hi <= lo) break;
                auto obj = [&](double p) { return d.tail_left(p) * (p - w); };
                const int K = 33;
                int best_i = 0;
                double best_v = -kInf;
                for (int i = 0; i <= K; ++i) {
                    // geometric spacing: heavy tails peak far out
                    double p = lo * std::pow(hi / lo, static_cast<double>(i) / K);
                    if (lo <= 0.0) p = lo + (hi - lo) * i / K;
                    if (obj(p) > best_v) {
                        best_v = obj(p);
                        best_i = i;
                    }
                }
                auto at = [&](int i) {
                    if (lo <= 0.0) return lo + (hi - lo) * i / K;
                    return lo * std::pow(hi / lo, static_cast<double>(i) / K);
                };
                double blo = at(std::max(best_i - 1, 0));
                double bhi = at(std::min(best_i + 1, K));
                auto neg = [&](double p) { return -obj(p); };
                auto res = boost::math::tools::brent_find_minima(neg, blo, bhi, 40);
                consider(res.first);
                consider(at(best_i));
                break;
            }
        }
    }
    return best;
}

}  // namespace

MechanismReport bosp_revenue(const Market& m, const BospOptions& opts) {
    MechanismReport rep;
    rep.mechanism = "bosp";
    rep.method = m.discrete() ? Method::ClosedForm : Method::Quadrature;

    if (m.dists.size() == 1) {
        // Identical buyers: one rejection chain, linear in n.
        double w = 0.0;
        double last_price = kInf;
        for (int i = 0; i < m.copies[0]; ++i) {
            StageBest sb = bosp_stage(m.dists[0], w);
            w += sb.value;
            last_price = sb.price;
        }
        rep.revenue = w;
        rep.opt_price = last_price;  // price for the first buyer approached
        return rep;
    }

    if (opts.max_n_for_exact > 22)
        throw CapabilityError("exact sequential-pricing search is limited to 22 buyers");
    if (m.total() > opts.max_n_for_exact)
        throw CapabilityError("market too large for exact sequential-pricing search; raise "
                              "max_n_for_exact (hard cap 22) or reduce buyers");

    // DP over multisets of remaining buyers, mixed-radix encoded.
    size_t T = m.dists.size();
    std::vector<int> radix(T);
    size_t states = 1;
    for (size_t t = 0; t < T; ++t) {
        radix[t] = m.copies[t] + 1;
        states *= static_cast<size_t>(radix[t]);
    }
    std::vector<double> V(states, 0.0);
    std::vector<size_t> stride(T, 1);
    for (size_t t = 1; t < T; ++t) stride[t] = stride[t - 1] * static_cast<size_t>(radix[t - 1]);
    for (size_t s = 1; s < states; ++s) {
        double best = 0.0;
        size_t rem = s;
        for (size_t t = 0; t < T; ++t) {
            int cnt = static_cast<int>((rem / stride[t]) % static_cast<size_t>(radix[t]));
            if (cnt == 0) continue;
            size_t prev = s - stride[t];
            StageBest sb = bosp_stage(m.dists[t], V[prev]);
            best = std::max(best, V[prev] + sb.value);
        }
        V[s] = best;
    }
    rep.revenue = V[states - 1];
    return rep;
}

// ---------------------------------------------------------------------------
// Worst-case BOSP/BOUP constant

namespace {

// Dilogarithm on [0, 1): direct series for z <= 1/2, Euler reflection above.
double dilog(double z) {
    if (z > 0.5) {
        constexpr double pi2_6 = 1.6449340668482264365;
        return pi2_6 - std::log(z) * std::log1p(-z) - dilog(1.0 - z);
    }
    double sum = 0.0, pw = 1.0;
    for (int k = 1; k < 2000; ++k) {
        pw *= z;
        double term = pw / (static_cast<double>(k) * k);
        sum += term;
        if (term < 1e-18 * sum) break;
    }
    return sum;
}

}  // namespace

double bosp_boup_constant() {
    auto Q = [](double x) {
        double x2 = x * x;
        return std::log(x2 / (x2 - 1.0)) - 0.5 * dilog(1.0 / x2);
    };
    // int_1^inf (1 - e^{-Q(x)}) dx with x = 1/t.  The integrand tends to 1/2
    // at t -> 0 and to 1 at t -> 1 with a (1-t)^2 log(1-t) correction, so use
    // dyadic panels packed toward t = 1; each panel is smooth at its scale.
    auto g = [&](double t) {
        if (t <= 0.0) return 0.5;
        double x = 1.0 / t;
        return (1.0 - std::exp(-Q(x))) / (t * t);
    };
    using G = boost::math::quadrature::gauss<double, 61>;
    double integral = G::integrate(g, 0.0, 0.5);
    double lo = 0.5;
    for (int k = 1; k <= 52; ++k) {
        double hi = 1.0 - std::ldexp(1.0, -k - 1);
        integral += G::integrate(g, lo, hi);
        lo = hi;
    }
    integral += 1.0 - lo;
    return 1.0 / (2.0 + integral);
}

// ---------------------------------------------------------------------------
// Triangular reduction

PiecewiseDistribution triangular_reduction(const PiecewiseDistribution& d, double price) {
    if (!(price > 0.0)) throw ValidationError("triangular reduction needs a positive price");
    double F = d.cdf(price);
    if (F >= 1.0 - 1e-15) throw ValidationError("triangular reduction needs F(price) < 1");
    if (F <= 0.0) return point_mass(price);
    double c = price * (1.0 - F) / F;
    std::vector<Atom> atoms{{price, 1.0 - F}};
    std::vector<Segment> segs{Segment::rational(0.0, price, c, 0.0)};
    return PiecewiseDistribution(std::move(atoms), std::move(segs));
}

}  // namespace auctionlab
