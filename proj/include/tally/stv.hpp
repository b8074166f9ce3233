#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tally/ballots.hpp"
#include "tally/tiebreak.hpp"

namespace tally {

enum class QuotaPolicy { Adaptive, Constant };

struct ReservedSpec {
    int count = 0;                     // g: seats that must go to marked candidates
    std::vector<std::string> members;  // the marked (eligible) candidates
};

struct StvOptions {
    int seats = 1;
    double epsilon = 0.001;
    QuotaPolicy quota = QuotaPolicy::Adaptive;
    bool equal_ranking = false;
    char ties = 'f';           // 'f' forwards, 'b' backwards
    bool legacy_ties = false;  // positional rule from the earliest implementation
    std::optional<ReservedSpec> reserved;
    uint64_t seed = 0;
    bool complete_ranking = false;  // include the ranking section in reports
};

struct CountEvent {
    enum Kind { Elected, Eliminated } kind = Eliminated;
    int candidate = -1;
    std::string tie_tag;      // empty when no tie was broken
    bool tie_by_legacy = false;
    bool below_quota = false; // last-seats election under the quota
    double surplus = 0.0;     // transferred mass (elections only)
};

// One audit row per count: what everyone had, what moved, and what happened.
struct CountRecord {
    int count = 0;
    double quota = 0.0;
    std::vector<double> totals;     // per candidate; NaN once retired before this count
    std::vector<double> transfers;  // delta arriving into this count; NaN where blank
    CountEvent event;
    double exhausted = 0.0;         // mass that left play after this count's event
    double weight_min = 1.0;        // ballot-weight bounds after the transfer
    double weight_max = 1.0;
};

struct StvResult {
    StvOptions opts;
    ValidationReport validation;
    std::vector<std::string> candidates;
    std::vector<bool> marked;            // reserved-group membership
    std::vector<int> elected;            // candidate indices, election order
    std::vector<int> elected_counts;     // count at which each was elected
    std::vector<int> eliminated;         // elimination order
    std::vector<int> eliminated_counts;
    std::vector<CountRecord> records;
    std::vector<int> ranking;            // complete ranking, all M candidates
    OrderedRanking ordered;              // pre-count ordering used for ties
    BallotMatrix data;                   // post-correction valid ballots
    bool any_equal_prefs = false;
};

// Kernels, exposed for direct testing.

double compute_quota(double current_total, int remaining_seats, double epsilon,
                     QuotaPolicy policy, double initial_quota);

// Weighted first preferences: per-candidate totals v over the working ranks.
// Base mode credits a ballot's whole weight to its rank-1 candidate; equal
// mode splits the weight uniformly across all rank-1 candidates.
std::vector<double> weighted_first_prefs(const std::vector<std::vector<int>>& ranks,
                                         const std::vector<double>& weights,
                                         bool equal_ranking, int candidate_count);

// Surplus transfer for elected candidate k with fraction S = (v-Q)/v. Only
// ballots holding k at rank 1 change weight.
void transfer_surplus(const std::vector<std::vector<int>>& ranks, std::vector<double>& weights,
                      int k, double surplus_fraction, bool equal_ranking);

// Retire candidate k: on every ballot ranking k, ranks above k's position
// shift down one; k's column is zeroed.
void retire_candidate(std::vector<std::vector<int>>& ranks, int k);

StvResult count_stv(const BallotMatrix& b, const StvOptions& opts);

// Elected first (election order), then the rest in reverse elimination order;
// never-eliminated hopefuls outrank all eliminated ones.
std::vector<int> complete_ranking(const StvResult& r);

}  // namespace tally
