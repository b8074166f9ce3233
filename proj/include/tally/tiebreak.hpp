#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tally/ballots.hpp"

namespace tally {

// preference_counts(b)[j][p-1] = how many ballots give candidate j preference p.
// Expects validated ballots (integer ranks 1..M, e.g. post-correction data).
std::vector<std::vector<int>> preference_counts(const BallotMatrix& b);

// Pre-count ordering used by the Ordered tie-break stage: candidates sorted
// ascending lexicographically on their preference-count rows, so rank 1 is the
// first to eliminate and rank M the first to elect. Candidates with identical
// rows get their relative order from a seeded draw and carry sampled = true.
struct OrderedRanking {
    std::vector<int> rank;      // per candidate, permutation of 1..M
    std::vector<bool> sampled;  // true where a draw decided the rank
    std::vector<int> group;     // candidates share a group iff rows identical
};

OrderedRanking ordered_ranking(const BallotMatrix& b, uint64_t seed);
OrderedRanking ordered_ranking_from_counts(const std::vector<std::vector<int>>& counts,
                                           uint64_t seed);

enum class TieDirection { ForElection, ForElimination };

struct TieDecision {
    int chosen = -1;
    std::string tag;  // one of f, b, fo, bo, fos, bos
};

// The cascade: stage 1 scans the per-count totals history forwards (policy
// 'f') or backwards ('b'), iteratively keeping the extremal subset; a lone
// survivor tags "f"/"b". Stage 2 consults the ordered ranking (lowest rank
// eliminated, highest elected), tagging "fo"/"bo", or "fos"/"bos" when the
// decision rests on a sampled ordering among the survivors.
TieDecision break_tie(const std::vector<int>& tied, TieDirection direction,
                      const std::vector<std::vector<double>>& history,
                      const OrderedRanking& ordered, char policy);

// Spec-shaped convenience overload: derives the ordering from the ballots.
struct TieContext {
    std::vector<int> tied;
    std::vector<std::vector<double>> history;  // totals per completed count
    BallotMatrix original_ballots;
    TieDirection direction = TieDirection::ForElimination;
    uint64_t seed = 0;
};

TieDecision break_tie(const TieContext& ctx, char policy);

}  // namespace tally
