#include "auctionlab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "auctionlab/common.hpp"

namespace auctionlab::io {

namespace {

double number_field(const json& j, const char* key, const std::string& ctx) {
    if (!j.contains(key) || !j[key].is_number())
        throw ValidationError(ctx + ": missing numeric field '" + key + "'");
    return j[key].get<double>();
}

double param(const json& seg, const char* key) {
    if (!seg.contains("params") || !seg["params"].contains(key) ||
        !seg["params"][key].is_number())
        throw ValidationError("segment params: missing numeric '" + std::string(key) + "'");
    return seg["params"][key].get<double>();
}

json hi_field(double hi) {
    if (std::isinf(hi)) return json("inf");
    return json(hi);
}

double parse_hi(const json& seg) {
    if (!seg.contains("hi")) throw ValidationError("segment: missing field 'hi'");
    const json& h = seg["hi"];
    if (h.is_string()) {
        if (h.get<std::string>() == "inf") return kInf;
        throw ValidationError("segment: 'hi' must be a number or \"inf\"");
    }
    if (!h.is_number()) throw ValidationError("segment: 'hi' must be a number or \"inf\"");
    return h.get<double>();
}

const char* kind_name(SegKind k) {
    switch (k) {
        case SegKind::Rational:
            return "rational";
        case SegKind::Exponential:
            return "exponential";
        case SegKind::PowerOfER:
            return "power_of_er";
        case SegKind::Uniform:
            return "uniform";
        case SegKind::Affine:
            return "affine";
    }
    return "?";
}

std::vector<int> indices_from_json(const json& set, int n) {
    if (!set.is_array()) throw ValidationError("environment: feasible sets must be arrays");
    std::vector<int> out;
    for (const auto& e : set) {
        if (!e.is_number_integer())
            throw ValidationError("environment: feasible set entries must be integer indices");
        long long i = e.get<long long>();
        if (i < 0 || i >= n)
            throw ValidationError("environment: buyer index " + std::to_string(i) +
                                  " out of range [0, " + std::to_string(n) + ")");
        out.push_back(static_cast<int>(i));
    }
    return out;
}

}  // namespace

json dist_to_json(const PiecewiseDistribution& d) {
    json atoms = json::array();
    for (const auto& a : d.atoms()) atoms.push_back(json{{"v", a.v}, {"p", a.p}});
    json segs = json::array();
    for (const auto& s : d.segments()) {
        json ps;
        switch (s.kind) {
            case SegKind::Rational:
                ps = json{{"a", s.p0}, {"b", s.p1}};
                break;
            case SegKind::Exponential:
                ps = json{{"lambda", s.p0}, {"shift", s.p1}};
                break;
            case SegKind::PowerOfER:
                ps = json{{"n", s.p0}};
                break;
            case SegKind::Uniform:
                ps = json{{"a", s.p0}, {"b", s.p1}};
                break;
            case SegKind::Affine:
                ps = json{{"c0", s.p0}, {"c1", s.p1}};
                break;
        }
        segs.push_back(json{
            {"lo", s.lo}, {"hi", hi_field(s.hi)}, {"kind", kind_name(s.kind)}, {"params", ps}});
    }
    return json{{"atoms", atoms}, {"segments", segs}};
}

PiecewiseDistribution dist_from_json(const json& j) {
    if (!j.is_object()) throw ValidationError("distribution: expected an object");
    std::vector<Atom> atoms;
    if (j.contains("atoms")) {
        if (!j["atoms"].is_array()) throw ValidationError("distribution: 'atoms' must be an array");
        for (const auto& a : j["atoms"])
            atoms.push_back({number_field(a, "v", "atom"), number_field(a, "p", "atom")});
    }
    std::vector<Segment> segs;
    if (j.contains("segments")) {
        if (!j["segments"].is_array())
            throw ValidationError("distribution: 'segments' must be an array");
        for (const auto& s : j["segments"]) {
            double lo = number_field(s, "lo", "segment");
            double hi = parse_hi(s);
            if (!s.contains("kind") || !s["kind"].is_string())
                throw ValidationError("segment: missing string field 'kind'");
            std::string kind = s["kind"].get<std::string>();
            if (kind == "rational")
                segs.push_back(Segment::rational(lo, hi, param(s, "a"), param(s, "b")));
            else if (kind == "exponential")
                segs.push_back(Segment::exponential(lo, hi, param(s, "lambda"), param(s, "shift")));
            else if (kind == "power_of_er")
                segs.push_back(Segment::power_of_er(lo, hi, param(s, "n")));
            else if (kind == "uniform")
                segs.push_back(Segment::uniform_law(lo, hi, param(s, "a"), param(s, "b")));
            else if (kind == "affine")
                segs.push_back(Segment::affine(lo, hi, param(s, "c0"), param(s, "c1")));
            else
                throw ValidationError("segment: unknown kind '" + kind + "'");
        }
    }
    PiecewiseDistribution d(std::move(atoms), std::move(segs));
    d.validate();
    return d;
}

json buyers_to_json(const Market& m) {
    json buyers = json::array();
    for (size_t t = 0; t < m.dists.size(); ++t) {
        json b = dist_to_json(m.dists[t]);
        if (m.copies[t] != 1) b["copies"] = m.copies[t];
        buyers.push_back(std::move(b));
    }
    return buyers;
}

Market buyers_from_json(const json& j) {
    if (!j.is_array() || j.empty())
        throw ValidationError("instance: 'buyers' must be a non-empty array");
    Market m;
    for (const auto& b : j) {
        m.dists.push_back(dist_from_json(b));
        int copies = 1;
        if (b.contains("copies")) {
            if (!b["copies"].is_number_integer() || b["copies"].get<long long>() < 1)
                throw ValidationError("buyer: 'copies' must be a positive integer");
            copies = b["copies"].get<int>();
        }
        m.copies.push_back(copies);
    }
    m.validate();
    return m;
}

json environment_to_json(const Environment& e) {
    switch (e.kind) {
        case Environment::Kind::SingleItem:
            return json{{"type", "single_item"}};
        case Environment::Kind::Explicit: {
            json sets = json::array();
            for (uint32_t mask : e.feasible) {
                if (mask == 0) continue;  // implied, re-added on parse
                json set = json::array();
                for (int i = 0; i < e.n; ++i)
                    if (mask >> i & 1u) set.push_back(i);
                sets.push_back(std::move(set));
            }
            return json{{"type", "explicit"}, {"feasible", sets}};
        }
        case Environment::Kind::CapacityWithRival:
            return json{{"type", "capacity_with_rival"},
                        {"small", e.n},
                        {"cap", e.cap},
                        {"big_value", e.big_value}};
    }
    throw ValidationError("environment: unknown kind");
}

Environment environment_from_json(const json& j, int n_buyers) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string())
        throw ValidationError("environment: missing string field 'type'");
    std::string type = j["type"].get<std::string>();
    if (type == "single_item") return Environment::single_item(n_buyers);
    if (type == "explicit") {
        if (!j.contains("feasible") || !j["feasible"].is_array())
            throw ValidationError("environment: 'feasible' must be an array of index sets");
        std::vector<std::vector<int>> sets;
        for (const auto& set : j["feasible"]) sets.push_back(indices_from_json(set, n_buyers));
        return Environment::explicit_sets(n_buyers, sets);
    }
    if (type == "capacity_with_rival") {
        double small = number_field(j, "small", "environment");
        double cap = number_field(j, "cap", "environment");
        if (small < 1 || small != std::floor(small) || cap < 0 || cap != std::floor(cap))
            throw ValidationError("environment: 'small' and 'cap' must be integers, small >= 1");
        return Environment::capacity_with_rival(static_cast<int>(small), static_cast<int>(cap),
                                                number_field(j, "big_value", "environment"));
    }
    throw ValidationError("environment: unknown type '" + type + "'");
}

json instance_to_json(const InstanceFile& inst) {
    json j;
    j["buyers"] = buyers_to_json(inst.market);
    if (inst.environment) j["environment"] = environment_to_json(*inst.environment);
    if (!inst.metadata.is_null()) j["metadata"] = inst.metadata;
    return j;
}

InstanceFile instance_from_json(const json& j) {
    if (!j.is_object() || !j.contains("buyers"))
        throw ValidationError("instance: expected an object with a 'buyers' array");
    InstanceFile inst;
    inst.market = buyers_from_json(j["buyers"]);
    if (j.contains("environment")) {
        Environment env = environment_from_json(j["environment"], inst.market.total());
        if (env.kind == Environment::Kind::CapacityWithRival && env.n != inst.market.total())
            throw ValidationError("instance: capacity environment 'small' (" +
                                  std::to_string(env.n) + ") must equal the buyer count (" +
                                  std::to_string(inst.market.total()) + ")");
        inst.environment = std::move(env);
    }
    if (j.contains("metadata")) inst.metadata = j["metadata"];
    return inst;
}

InstanceFile load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open instance file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return instance_from_json(parse_json(ss.str(), path));
}

json report_to_json(const MechanismReport& rep) {
    json j;
    j["mechanism"] = rep.mechanism;
    j["revenue"] = rep.revenue;
    j["method"] = method_name(rep.method);
    if (std::isfinite(rep.opt_price)) j["opt_price"] = rep.opt_price;
    if (rep.dup_index >= 0) j["dup_index"] = rep.dup_index;
    if (rep.method == Method::MonteCarlo) {
        j["mc_samples"] = rep.mc_samples;
        j["std_error"] = rep.std_error;
        j["seed"] = rep.seed;
    }
    if (!rep.diagnostics.empty()) {
        json d;
        for (const auto& [k, v] : rep.diagnostics) d[k] = v;
        j["diagnostics"] = std::move(d);
    }
    return j;
}

json family_report_to_json(const FamilyReport& rep) {
    return json{{"family", family_name(rep.family)},
                {"passes", rep.passes},
                {"max_violation", rep.max_violation},
                {"witness_x", rep.witness_x},
                {"points", rep.points}};
}

json parse_json(const std::string& text, const std::string& what) {
    try {
        return json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(what + ": " + e.what());
    }
}

}  // namespace auctionlab::io
