#pragma once

#include <cstdint>
#include <vector>

#include "tally/ballots.hpp"
#include "tally/baseline.hpp"

namespace tally {

// Two-round runoff, counted in one pass over ranked ballots: round one on
// first preferences; if nobody holds a strict majority the top two meet in a
// runoff where each ballot backs whichever finalist it ranks better.
struct TwoRoundResult {
    ValidationReport validation;
    std::vector<double> first_totals;    // per candidate, ballot-paper order
    std::vector<double> first_percent;   // of valid ballots
    std::vector<double> runoff_totals;   // zero for non-finalists
    std::vector<double> runoff_percent;  // of non-exhausted runoff ballots
    int finalists[2] = {-1, -1};         // candidate indices; unset on majority
    bool majority_round1 = false;
    int elected = -1;
    int exhausted_count = 0;             // valid ballots ranking neither finalist
    std::vector<TieDraw> draws;
    BallotMatrix data;                   // valid ballots (for plots)
};

TwoRoundResult count_two_round(const BallotMatrix& b, uint64_t seed);

// Head-to-head wins. wins[i][j] = 1 iff strictly more valid ballots prefer i
// over j than j over i. A ballot prefers i over j iff it ranks i and either
// leaves j unranked or ranks j worse.
struct PairwiseMatrix {
    std::vector<std::vector<int>> wins;  // M x M, zero diagonal
    std::vector<int> totals;             // row sums
    int winner = -1;                     // row total M-1, if any
    int loser = -1;                      // loses all M-1 comparisons, if any
};

PairwiseMatrix pairwise_matrix(const BallotMatrix& b);

struct CondorcetResult {
    ValidationReport validation;
    PairwiseMatrix pairwise;             // over the full candidate set
    int winner = -1;
    int loser = -1;
    bool runoff_requested = false;
    int runoff_winner = -1;              // found by restricting to argmax sets
    std::vector<std::vector<std::string>> runoff_trace;  // shrinking subsets tried
    BallotMatrix data;                   // valid ballots (for plots)
};

CondorcetResult condorcet(const BallotMatrix& b, bool runoff);

}  // namespace tally
