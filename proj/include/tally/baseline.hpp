#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tally/ballots.hpp"

namespace tally {

// One seeded random decision, kept for the audit trail.
struct TieDraw {
    std::string context;              // what was being decided
    std::vector<std::string> among;   // tied candidate names
    std::string chosen;
};

// Plurality / approval / score outcome.
struct TallyResult {
    std::string method;
    std::vector<std::string> candidates;  // ballot-paper order
    ValidationReport validation;
    std::vector<double> totals;     // per candidate, ballot-paper order
    std::vector<int> display_order; // candidate indices, best support first
    std::vector<int> elected;       // candidate indices, best first
    int seats = 1;
    bool larger_wins = true;        // sort orientation (false only for score)
    std::vector<TieDraw> draws;
};

TallyResult count_plurality(const BallotMatrix& b, int seats, uint64_t seed);
TallyResult count_approval(const BallotMatrix& b, int seats, uint64_t seed);
TallyResult count_score(const BallotMatrix& b, int seats, bool larger_wins, double fill,
                        uint64_t seed);

}  // namespace tally
