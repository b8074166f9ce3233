#include "tally/tiebreak.hpp"

#include <algorithm>
#include <cmath>

#include "tally/rng.hpp"

namespace tally {

std::vector<std::vector<int>> preference_counts(const BallotMatrix& b) {
    const int m = b.candidate_count();
    std::vector<std::vector<int>> counts(m, std::vector<int>(m, 0));
    for (const auto& row : b.rows) {
        for (int j = 0; j < m; ++j) {
            if (is_missing(row[j])) continue;
            int p = static_cast<int>(row[j]);
            if (p >= 1 && p <= m) ++counts[j][p - 1];
        }
    }
    return counts;
}

OrderedRanking ordered_ranking_from_counts(const std::vector<std::vector<int>>& counts,
                                           uint64_t seed) {
    const int m = static_cast<int>(counts.size());
    OrderedRanking out;
    out.rank.assign(m, 0);
    out.sampled.assign(m, false);
    out.group.assign(m, 0);

    // Weakest first: ascending lexicographic comparison of preference-count
    // rows, so rank 1 goes to the candidate eliminated first on ties.
    std::vector<int> order(m);
    for (int j = 0; j < m; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int c) { return counts[a] < counts[c]; });

    SeededRng rng(seed);
    int next_group = 0;
    size_t i = 0;
    while (i < order.size()) {
        size_t k = i + 1;
        while (k < order.size() && counts[order[k]] == counts[order[i]]) ++k;
        std::vector<int> block(order.begin() + i, order.begin() + k);
        if (block.size() > 1) {
            rng.shuffle(block);
            for (int j : block) out.sampled[j] = true;
        }
        for (int j : block) out.group[j] = next_group;
        std::copy(block.begin(), block.end(), order.begin() + i);
        ++next_group;
        i = k;
    }
    for (int r = 0; r < m; ++r) out.rank[order[r]] = r + 1;
    return out;
}

OrderedRanking ordered_ranking(const BallotMatrix& b, uint64_t seed) {
    return ordered_ranking_from_counts(preference_counts(b), seed);
}

TieDecision break_tie(const std::vector<int>& tied, TieDirection direction,
                      const std::vector<std::vector<double>>& history,
                      const OrderedRanking& ordered, char policy) {
    const bool want_min = direction == TieDirection::ForElimination;
    std::vector<int> survivors = tied;
    TieDecision d;

    const int counts_seen = static_cast<int>(history.size());
    for (int step = 0; step < counts_seen && survivors.size() > 1; ++step) {
        int c = policy == 'b' ? counts_seen - 1 - step : step;
        const auto& v = history[c];
        double extreme = v[survivors[0]];
        for (int j : survivors) {
            if (want_min ? v[j] < extreme : v[j] > extreme) extreme = v[j];
        }
        std::vector<int> keep;
        for (int j : survivors) {
            if (v[j] == extreme) keep.push_back(j);
        }
        survivors = std::move(keep);
    }
    if (survivors.size() == 1) {
        d.chosen = survivors[0];
        d.tag = std::string(1, policy);
        return d;
    }

    // Still tied across every count: fall back to the precomputed ordering of
    // all candidates by their full preference profile.
    int chosen = survivors[0];
    for (int j : survivors) {
        bool better = want_min ? ordered.rank[j] < ordered.rank[chosen]
                               : ordered.rank[j] > ordered.rank[chosen];
        if (better) chosen = j;
    }
    d.chosen = chosen;
    d.tag = std::string(1, policy) + "o";
    for (int j : survivors) {
        if (j != chosen && ordered.group[j] == ordered.group[chosen]) {
            d.tag += "s";
            break;
        }
    }
    return d;
}

TieDecision break_tie(const TieContext& ctx, char policy) {
    OrderedRanking ord = ordered_ranking(ctx.original_ballots, ctx.seed);
    return break_tie(ctx.tied, ctx.direction, ctx.history, ord, policy);
}

}  // namespace tally
