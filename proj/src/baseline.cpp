#include "tally/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "tally/rng.hpp"

namespace tally {

namespace {

void check_seats(int seats, int m_candidates) {
    if (seats < 1) throw ConfigError("seats must be at least 1");
    // A one-candidate election may fill its single seat; otherwise at least
    // one candidate has to miss out for counting to mean anything.
    if (m_candidates > 1 && seats >= m_candidates) {
        throw ConfigError("seats must be fewer than the number of candidates");
    }
}

// Shared tail of the three counts: order candidates best-first, cut the top
// `seats`, drawing lots where the cut falls inside a tied group.
void finish_tally(TallyResult& r, const BallotMatrix& b, uint64_t seed, bool positive_only) {
    const int m = b.candidate_count();
    auto better = [&](int a, int c) {
        return r.larger_wins ? r.totals[a] > r.totals[c] : r.totals[a] < r.totals[c];
    };
    r.display_order.resize(m);
    for (int j = 0; j < m; ++j) r.display_order[j] = j;
    std::stable_sort(r.display_order.begin(), r.display_order.end(), better);

    std::vector<int> eligible;
    for (int j : r.display_order) {
        if (!positive_only || r.totals[j] > 0.0) eligible.push_back(j);
    }
    int want = std::min<size_t>(r.seats, eligible.size());
    if (want == 0) return;

    double cut = r.totals[eligible[want - 1]];
    std::vector<int> sure, tied;
    for (int j : eligible) {
        if (r.totals[j] == cut) {
            tied.push_back(j);
        } else if (better(j, eligible[want - 1])) {
            sure.push_back(j);
        }
    }
    r.elected = sure;
    int open = want - static_cast<int>(sure.size());
    if (static_cast<int>(tied.size()) == open) {
        r.elected.insert(r.elected.end(), tied.begin(), tied.end());
        return;
    }
    SeededRng rng(seed);
    while (open-- > 0) {
        size_t pick = rng.pick(tied.size());
        int chosen = tied[pick];
        TieDraw draw;
        draw.context = "seat cut at total " + std::to_string(cut);
        for (int j : tied) draw.among.push_back(b.candidates[j]);
        draw.chosen = b.candidates[chosen];
        r.draws.push_back(std::move(draw));
        tied.erase(tied.begin() + pick);
        r.elected.push_back(chosen);
    }
}

TallyResult count_indicator(const BallotMatrix& b, int seats, uint64_t seed,
                            ValidationMode mode, const std::string& method) {
    if (b.kind != BallotKind::Indicator) throw ConfigError(method + " expects indicator ballots");
    check_seats(seats, b.candidate_count());
    TallyResult r;
    r.method = method;
    r.candidates = b.candidates;
    r.seats = seats;
    r.larger_wins = true;
    r.validation = validate_ballots(b, mode);
    if (r.validation.valid_count == 0) throw DataError("no valid ballots");
    r.totals.assign(b.candidate_count(), 0.0);
    for (int i = 0; i < b.ballot_count(); ++i) {
        if (!r.validation.row_valid[i]) continue;
        for (int j = 0; j < b.candidate_count(); ++j) {
            if (!is_missing(b.rows[i][j]) && b.rows[i][j] == 1.0) r.totals[j] += 1.0;
        }
    }
    finish_tally(r, b, seed, /*positive_only=*/true);
    return r;
}

}  // namespace

TallyResult count_plurality(const BallotMatrix& b, int seats, uint64_t seed) {
    return count_indicator(b, seats, seed, ValidationMode::IndicatorSingle, "plurality");
}

TallyResult count_approval(const BallotMatrix& b, int seats, uint64_t seed) {
    return count_indicator(b, seats, seed, ValidationMode::IndicatorMulti, "approval");
}

TallyResult count_score(const BallotMatrix& b, int seats, bool larger_wins, double fill,
                        uint64_t seed) {
    if (b.kind != BallotKind::Score) throw ConfigError("score expects score ballots");
    check_seats(seats, b.candidate_count());
    if (!std::isfinite(fill)) throw ConfigError("fill score must be finite");
    // The fill is the worst admissible score, which fixes the valid range.
    double lo = 0.0, hi = 0.0;
    if (larger_wins) {
        lo = fill;
        hi = std::numeric_limits<double>::infinity();
    } else {
        if (fill < 0.0) throw ConfigError("fill score below the score range");
        lo = 0.0;
        hi = fill;
    }
    TallyResult r;
    r.method = "score";
    r.candidates = b.candidates;
    r.seats = seats;
    r.larger_wins = larger_wins;
    r.validation = validate_ballots(b, ValidationMode::Score, lo, hi);
    if (r.validation.valid_count == 0) throw DataError("no valid ballots");
    r.totals.assign(b.candidate_count(), 0.0);
    for (int i = 0; i < b.ballot_count(); ++i) {
        if (!r.validation.row_valid[i]) continue;
        for (int j = 0; j < b.candidate_count(); ++j) {
            double v = b.rows[i][j];
            r.totals[j] += is_missing(v) ? fill : v;
        }
    }
    finish_tally(r, b, seed, /*positive_only=*/false);
    return r;
}

}  // namespace tally
