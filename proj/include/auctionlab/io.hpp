#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "auctionlab/dist.hpp"
#include "auctionlab/env.hpp"
#include "auctionlab/family.hpp"
#include "auctionlab/mechanisms.hpp"

namespace auctionlab::io {

using json = nlohmann::ordered_json;

// Distribution schema:
//   {"atoms":[{"v":..,"p":..}],
//    "segments":[{"lo":..,"hi":..|"inf","kind":..,"params":{..}}]}
// kinds: rational (a,b), exponential (lambda,shift), power_of_er (n),
// uniform (a,b), affine (c0,c1).
json dist_to_json(const PiecewiseDistribution& d);
PiecewiseDistribution dist_from_json(const json& j);

// Buyer list; a repeated type may carry "copies": N.
json buyers_to_json(const Market& m);
Market buyers_from_json(const json& j);

// {"type":"explicit","feasible":[[..indices..]]} or
// {"type":"capacity_with_rival","small":m,"cap":k,"big_value":x}.
// n_buyers fixes the ground-set size for explicit environments.
json environment_to_json(const Environment& e);
Environment environment_from_json(const json& j, int n_buyers);

struct InstanceFile {
    Market market;
    std::optional<Environment> environment;
    json metadata;  // free-form, preserved verbatim
};

json instance_to_json(const InstanceFile& inst);
InstanceFile instance_from_json(const json& j);
// Reads and validates a {"buyers":[..], "environment"?:.., "metadata"?:..} file.
InstanceFile load_instance(const std::string& path);

json report_to_json(const MechanismReport& rep);
json family_report_to_json(const FamilyReport& rep);

// Strict wrapper around json::parse that rethrows as ValidationError.
json parse_json(const std::string& text, const std::string& what);

}  // namespace auctionlab::io
