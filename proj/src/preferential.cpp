#include "tally/preferential.hpp"

#include <algorithm>
#include <cmath>

#include "tally/rng.hpp"

namespace tally {

namespace {

BallotMatrix valid_rows_only(const BallotMatrix& b, const ValidationReport& rep) {
    BallotMatrix out;
    out.candidates = b.candidates;
    out.kind = b.kind;
    for (int i = 0; i < b.ballot_count(); ++i) {
        if (rep.row_valid[i]) out.rows.push_back(b.rows[i]);
    }
    return out;
}

// Candidates holding the extremal total among `pool`.
std::vector<int> extremal_set(const std::vector<double>& totals, const std::vector<int>& pool,
                              bool want_max) {
    double best = totals[pool[0]];
    for (int j : pool) {
        if (want_max ? totals[j] > best : totals[j] < best) best = totals[j];
    }
    std::vector<int> out;
    for (int j : pool) {
        if (totals[j] == best) out.push_back(j);
    }
    return out;
}

int draw_one(std::vector<int>& set, SeededRng& rng, const std::vector<std::string>& names,
             const std::string& context, std::vector<TieDraw>& draws) {
    if (set.size() == 1) {
        int only = set[0];
        set.clear();
        return only;
    }
    size_t pick = rng.pick(set.size());
    int chosen = set[pick];
    TieDraw d;
    d.context = context;
    for (int j : set) d.among.push_back(names[j]);
    d.chosen = names[chosen];
    draws.push_back(std::move(d));
    set.erase(set.begin() + pick);
    return chosen;
}

// Head-to-head preference tallies over pre-validated ranked rows. For every
// ballot, each ranked candidate is preferred over all worse-ranked and all
// unranked candidates.
std::vector<std::vector<int>> preference_tallies(const BallotMatrix& data) {
    const int m = data.candidate_count();
    std::vector<std::vector<int>> prefers(m, std::vector<int>(m, 0));
    std::vector<int> ranked, unranked;
    for (const auto& row : data.rows) {
        ranked.clear();
        unranked.clear();
        for (int j = 0; j < m; ++j) {
            (is_missing(row[j]) ? unranked : ranked).push_back(j);
        }
        std::sort(ranked.begin(), ranked.end(),
                  [&](int a, int c) { return row[a] < row[c]; });
        for (size_t p = 0; p < ranked.size(); ++p) {
            for (size_t q = p + 1; q < ranked.size(); ++q) {
                ++prefers[ranked[p]][ranked[q]];
            }
            for (int u : unranked) ++prefers[ranked[p]][u];
        }
    }
    return prefers;
}

PairwiseMatrix pairwise_from_data(const BallotMatrix& data) {
    const int m = data.candidate_count();
    auto prefers = preference_tallies(data);
    PairwiseMatrix p;
    p.wins.assign(m, std::vector<int>(m, 0));
    p.totals.assign(m, 0);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            if (i != j && prefers[i][j] > prefers[j][i]) {
                p.wins[i][j] = 1;
                ++p.totals[i];
            }
        }
    }
    for (int i = 0; i < m; ++i) {
        if (p.totals[i] == m - 1) p.winner = i;
        bool loses_all = true;
        for (int j = 0; j < m; ++j) {
            if (j != i && !p.wins[j][i]) loses_all = false;
        }
        if (m > 1 && loses_all) p.loser = i;
    }
    return p;
}

}  // namespace

TwoRoundResult count_two_round(const BallotMatrix& b, uint64_t seed) {
    const int m = b.candidate_count();
    if (m < 2) throw ConfigError("two-round runoff needs at least two candidates");
    TwoRoundResult r;
    r.validation = validate_ballots(b, ValidationMode::StrictRanked);
    if (r.validation.valid_count == 0) throw DataError("no valid ballots");
    r.data = valid_rows_only(b, r.validation);
    const int n = r.data.ballot_count();

    r.first_totals.assign(m, 0.0);
    for (const auto& row : r.data.rows) {
        for (int j = 0; j < m; ++j) {
            if (!is_missing(row[j]) && row[j] == 1.0) {
                r.first_totals[j] += 1.0;
                break;
            }
        }
    }
    r.first_percent.assign(m, 0.0);
    for (int j = 0; j < m; ++j) r.first_percent[j] = 100.0 * r.first_totals[j] / n;

    r.runoff_totals.assign(m, 0.0);
    r.runoff_percent.assign(m, 0.0);

    std::vector<int> all(m);
    for (int j = 0; j < m; ++j) all[j] = j;
    SeededRng rng(seed);

    std::vector<int> top = extremal_set(r.first_totals, all, /*want_max=*/true);
    if (r.first_totals[top[0]] > n / 2.0) {
        // Strict majority on first preferences: no runoff redistribution.
        r.majority_round1 = true;
        r.elected = draw_one(top, rng, b.candidates, "majority winner", r.draws);
        r.runoff_totals[r.elected] = r.first_totals[r.elected];
        r.runoff_percent[r.elected] = 100.0;
        r.exhausted_count = n - static_cast<int>(r.first_totals[r.elected]);
        return r;
    }

    int f1, f2;
    if (top.size() == 2) {
        // Both tied leaders advance: nothing to decide.
        f1 = top[0];
        f2 = top[1];
    } else if (top.size() > 2) {
        f1 = draw_one(top, rng, b.candidates, "first finalist", r.draws);
        f2 = draw_one(top, rng, b.candidates, "second finalist", r.draws);
    } else {
        f1 = top[0];
        std::vector<int> rest;
        for (int j = 0; j < m; ++j)
            if (j != f1) rest.push_back(j);
        std::vector<int> second = extremal_set(r.first_totals, rest, /*want_max=*/true);
        f2 = draw_one(second, rng, b.candidates, "second finalist", r.draws);
    }
    r.finalists[0] = f1;
    r.finalists[1] = f2;

    for (const auto& row : r.data.rows) {
        double a = is_missing(row[f1]) ? std::numeric_limits<double>::infinity() : row[f1];
        double c = is_missing(row[f2]) ? std::numeric_limits<double>::infinity() : row[f2];
        if (a < c) {
            r.runoff_totals[f1] += 1.0;
        } else if (c < a) {
            r.runoff_totals[f2] += 1.0;
        } else {
            ++r.exhausted_count;  // ranks neither finalist
        }
    }
    double ro_sum = r.runoff_totals[f1] + r.runoff_totals[f2];
    if (ro_sum > 0) {
        r.runoff_percent[f1] = 100.0 * r.runoff_totals[f1] / ro_sum;
        r.runoff_percent[f2] = 100.0 * r.runoff_totals[f2] / ro_sum;
    }
    std::vector<int> leaders =
        extremal_set(r.runoff_totals, {f1, f2}, /*want_max=*/true);
    r.elected = draw_one(leaders, rng, b.candidates, "runoff winner", r.draws);
    return r;
}

PairwiseMatrix pairwise_matrix(const BallotMatrix& b) {
    ValidationReport rep = validate_ballots(b, ValidationMode::StrictRanked);
    if (rep.valid_count == 0) throw DataError("no valid ballots");
    return pairwise_from_data(valid_rows_only(b, rep));
}

CondorcetResult condorcet(const BallotMatrix& b, bool runoff) {
    CondorcetResult r;
    r.runoff_requested = runoff;
    r.validation = validate_ballots(b, ValidationMode::StrictRanked);
    if (r.validation.valid_count == 0) throw DataError("no valid ballots");
    r.data = valid_rows_only(b, r.validation);
    r.pairwise = pairwise_from_data(r.data);
    r.winner = r.pairwise.winner;
    r.loser = r.pairwise.loser;
    if (r.winner >= 0 || !runoff) return r;

    // Run-off: restrict to the candidates with the most pairwise wins and
    // retry, until a winner emerges or the subset stops shrinking.
    BallotMatrix current = r.data;
    PairwiseMatrix pw = r.pairwise;
    for (int rounds = 0; rounds < b.candidate_count(); ++rounds) {
        std::vector<int> all(current.candidate_count());
        for (size_t j = 0; j < all.size(); ++j) all[j] = static_cast<int>(j);
        std::vector<int> keep;
        int best = *std::max_element(pw.totals.begin(), pw.totals.end());
        for (int j : all) {
            if (pw.totals[j] == best) keep.push_back(j);
        }
        if (static_cast<int>(keep.size()) == current.candidate_count()) break;
        std::vector<std::string> drop;
        std::vector<std::string> kept_names;
        for (int j = 0; j < current.candidate_count(); ++j) {
            bool k = std::find(keep.begin(), keep.end(), j) != keep.end();
            (k ? kept_names : drop).push_back(current.candidates[j]);
        }
        r.runoff_trace.push_back(kept_names);
        current = remove_candidates(current, drop);
        pw = pairwise_from_data(current);
        if (pw.winner >= 0) {
            r.runoff_winner = b.index_of(current.candidates[pw.winner]);
            break;
        }
    }
    return r;
}

}  // namespace tally
