#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace auctionlab::reproduce {

struct Row {
    std::string label;
    std::string computed;
    std::string reference;
    bool pass = false;
};

struct Report {
    std::string target;
    std::vector<Row> rows;
    std::vector<std::string> notes;  // extra summary lines below the table
    bool all_pass = false;
};

const std::vector<std::string>& targets();  // ratios, hierarchy, closure, downward, prophet

// Runs one target.  All randomness derives from `seed`; output is identical
// across runs and thread counts for a fixed seed.
Report run(const std::string& target, uint64_t seed);

// Fixed-width table, one row per check, then notes, then "result: PASS|FAIL".
std::string render(const Report& rep);
// label,computed,reference,status lines for plotting / spreadsheets.
std::string render_csv(const Report& rep);

}  // namespace auctionlab::reproduce
