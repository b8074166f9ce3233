#include "tally/stv.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tally {

namespace {

bool rows_differ(const std::vector<double>& a, const std::vector<double>& b) {
    for (size_t j = 0; j < a.size(); ++j) {
        bool ma = is_missing(a[j]), mb = is_missing(b[j]);
        if (ma != mb) return true;
        if (!ma && a[j] != b[j]) return true;
    }
    return false;
}

bool row_has_equal_prefs(const std::vector<double>& row) {
    for (size_t i = 0; i < row.size(); ++i) {
        if (is_missing(row[i])) continue;
        for (size_t j = i + 1; j < row.size(); ++j) {
            if (!is_missing(row[j]) && row[i] == row[j]) return true;
        }
    }
    return false;
}

std::vector<int> extremal_subset(const std::vector<double>& v, const std::vector<int>& pool,
                                 bool want_max) {
    double best = v[pool[0]];
    for (int j : pool) {
        if (want_max ? v[j] > best : v[j] < best) best = v[j];
    }
    std::vector<int> out;
    for (int j : pool) {
        if (v[j] == best) out.push_back(j);
    }
    return out;
}

}  // namespace

double compute_quota(double current_total, int remaining_seats, double epsilon,
                     QuotaPolicy policy, double initial_quota) {
    if (policy == QuotaPolicy::Constant) return initial_quota;
    return current_total / (remaining_seats + 1) + epsilon;
}

std::vector<double> weighted_first_prefs(const std::vector<std::vector<int>>& ranks,
                                         const std::vector<double>& weights,
                                         bool equal_ranking, int candidate_count) {
    std::vector<double> v(candidate_count, 0.0);
    for (size_t i = 0; i < ranks.size(); ++i) {
        const auto& row = ranks[i];
        if (equal_ranking) {
            int firsts = 0;
            for (int j = 0; j < candidate_count; ++j) {
                if (row[j] == 1) ++firsts;
            }
            if (firsts == 0) continue;
            double share = weights[i] / firsts;
            for (int j = 0; j < candidate_count; ++j) {
                if (row[j] == 1) v[j] += share;
            }
        } else {
            for (int j = 0; j < candidate_count; ++j) {
                if (row[j] == 1) {
                    v[j] += weights[i];
                    break;
                }
            }
        }
    }
    return v;
}

void transfer_surplus(const std::vector<std::vector<int>>& ranks, std::vector<double>& weights,
                      int k, double surplus_fraction, bool equal_ranking) {
    const double S = surplus_fraction;
    for (size_t i = 0; i < ranks.size(); ++i) {
        if (ranks[i][k] != 1) continue;
        if (equal_ranking) {
            int firsts = 0;
            for (int r : ranks[i]) {
                if (r == 1) ++firsts;
            }
            // w <- w - u_k + u_k*S with u_k = w/firsts; firsts = 1 reduces to w*S.
            double uk = weights[i] / firsts;
            weights[i] = weights[i] - uk + uk * S;
        } else {
            weights[i] *= S;
        }
    }
}

void retire_candidate(std::vector<std::vector<int>>& ranks, int k) {
    for (auto& row : ranks) {
        int rk = row[k];
        if (rk <= 0) continue;
        for (int& rj : row) {
            if (rj > rk) --rj;
        }
        row[k] = 0;
    }
}

StvResult count_stv(const BallotMatrix& b, const StvOptions& opts) {
    const int M = b.candidate_count();
    if (b.kind != BallotKind::Ranked) throw ConfigError("single transferable vote needs ranked ballots");
    if (opts.seats < 1) throw ConfigError("number of seats must be at least 1");
    if (opts.seats >= M) throw ConfigError("number of seats must be less than the number of candidates");
    if (!(opts.epsilon > 0)) throw ConfigError("epsilon must be positive");
    if (opts.ties != 'f' && opts.ties != 'b') throw ConfigError("ties policy must be 'f' or 'b'");

    StvResult r;
    r.opts = opts;
    r.candidates = b.candidates;
    r.marked.assign(M, false);
    int g = 0, n_marked = 0;
    if (opts.reserved) {
        g = opts.reserved->count;
        if (g < 1) throw ConfigError("number of reserved seats must be at least 1");
        if (g > opts.seats) throw ConfigError("reserved seats cannot exceed the number of seats");
        if (opts.reserved->members.empty())
            throw ConfigError("reserved seats need a non-empty group of eligible candidates");
        for (const auto& name : opts.reserved->members) {
            int idx = b.index_of(name);
            if (idx < 0) throw ConfigError("unknown reserved-group candidate: " + name);
            r.marked[idx] = true;
        }
        for (int j = 0; j < M; ++j) n_marked += r.marked[j] ? 1 : 0;
        if (n_marked < g) throw ConfigError("fewer eligible candidates than reserved seats");
    }

    r.validation = validate_ballots(
        b, opts.equal_ranking ? ValidationMode::EqualRanked : ValidationMode::StrictRanked);
    if (r.validation.valid_count == 0) throw DataError("no valid ballots");

    r.data.candidates = b.candidates;
    r.data.kind = BallotKind::Ranked;
    for (int i = 0; i < b.ballot_count(); ++i) {
        if (!r.validation.row_valid[i]) continue;
        if (opts.equal_ranking) {
            std::vector<double> corrected = correct_ranking(b.rows[i]);
            if (rows_differ(corrected, b.rows[i]))
                r.validation.corrected_rows.push_back(i + 1);
            r.data.rows.push_back(std::move(corrected));
        } else {
            r.data.rows.push_back(b.rows[i]);
        }
    }
    for (const auto& row : r.data.rows) {
        if (row_has_equal_prefs(row)) {
            r.any_equal_prefs = true;
            break;
        }
    }

    const int N = r.data.ballot_count();
    std::vector<std::vector<int>> Y(N, std::vector<int>(M, 0));
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < M; ++j) {
            if (!is_missing(r.data.rows[i][j])) Y[i][j] = static_cast<int>(r.data.rows[i][j]);
        }
    }
    std::vector<double> w(N, 1.0);

    r.ordered = ordered_ranking(r.data, opts.seed);

    enum Status { Hopeful, Out };
    std::vector<Status> status(M, Hopeful);
    int L = opts.seats;
    int unmarked_elected = 0;
    int marked_in_play = n_marked;  // marked hopefuls plus marked electeds
    const double initial_quota = static_cast<double>(N) / (opts.seats + 1) + opts.epsilon;
    std::vector<std::vector<double>> history;
    int c = 0;

    while (L > 0) {
        ++c;
        std::vector<double> v = weighted_first_prefs(Y, w, opts.equal_ranking, M);
        double total = std::accumulate(v.begin(), v.end(), 0.0);
        double Q = compute_quota(total, L, opts.epsilon, opts.quota, initial_quota);
        history.push_back(v);

        CountRecord rec;
        rec.count = c;
        rec.quota = Q;
        rec.totals.assign(M, missing_value());
        std::vector<int> hopefuls;
        for (int j = 0; j < M; ++j) {
            if (status[j] == Hopeful) {
                rec.totals[j] = v[j];
                hopefuls.push_back(j);
            }
        }

        const bool cap_reached = opts.reserved && unmarked_elected >= opts.seats - g;
        const bool last_seats = static_cast<int>(hopefuls.size()) == L;
        double vmax = v[hopefuls[0]];
        for (int j : hopefuls) vmax = std::max(vmax, v[j]);

        bool electing = false;
        bool below_quota = false;
        std::vector<int> pool;
        if (vmax >= Q || last_seats) {
            pool = extremal_subset(v, hopefuls, /*want_max=*/true);
            if (cap_reached) {
                std::vector<int> marked_only;
                for (int j : pool) {
                    if (r.marked[j]) marked_only.push_back(j);
                }
                if (!marked_only.empty()) {
                    pool = std::move(marked_only);
                } else if (!last_seats) {
                    pool.clear();  // leader is unmarked: skip to elimination
                }
            }
            if (!pool.empty()) {
                electing = true;
                below_quota = vmax < Q;
            }
        }
        if (!electing) {
            std::vector<int> elim_pool;
            if (opts.reserved && (marked_in_play <= g || cap_reached)) {
                for (int j : hopefuls) {
                    if (!r.marked[j]) elim_pool.push_back(j);
                }
            }
            if (elim_pool.empty()) elim_pool = hopefuls;
            pool = extremal_subset(v, elim_pool, /*want_max=*/false);
        }

        CountEvent ev;
        ev.kind = electing ? CountEvent::Elected : CountEvent::Eliminated;
        ev.below_quota = below_quota;
        int k;
        if (pool.size() == 1) {
            k = pool[0];
        } else if (opts.legacy_ties) {
            // Earliest-implementation rule: elect the last-named, eliminate the
            // first-named (ballot-paper order).
            k = electing ? pool.back() : pool.front();
            ev.tie_by_legacy = true;
        } else {
            TieDecision td =
                break_tie(pool, electing ? TieDirection::ForElection : TieDirection::ForElimination,
                          history, r.ordered, opts.ties);
            k = td.chosen;
            ev.tie_tag = td.tag;
        }
        ev.candidate = k;

        std::vector<int> supporters;
        for (int i = 0; i < N; ++i) {
            if (Y[i][k] > 0) supporters.push_back(i);
        }

        if (electing) {
            double S = below_quota ? 0.0 : (v[k] - Q) / v[k];
            ev.surplus = below_quota ? 0.0 : v[k] - Q;
            transfer_surplus(Y, w, k, S, opts.equal_ranking);
            r.elected.push_back(k);
            r.elected_counts.push_back(c);
            --L;
            if (!r.marked[k]) ++unmarked_elected;
        } else {
            r.eliminated.push_back(k);
            r.eliminated_counts.push_back(c);
            if (r.marked[k]) --marked_in_play;
        }
        status[k] = Out;
        retire_candidate(Y, k);

        double exhausted = 0.0;
        for (int i : supporters) {
            bool rankless = true;
            for (int j = 0; j < M; ++j) {
                if (Y[i][j] > 0) {
                    rankless = false;
                    break;
                }
            }
            if (rankless) exhausted += w[i];
        }
        rec.exhausted = exhausted;
        rec.event = ev;
        rec.weight_min = w.empty() ? 1.0 : *std::min_element(w.begin(), w.end());
        rec.weight_max = w.empty() ? 1.0 : *std::max_element(w.begin(), w.end());
        r.records.push_back(rec);
    }

    // Incoming transfer deltas: what each count's totals gained or lost
    // relative to the previous count, with the retiring candidate showing the
    // outgoing mass (surplus when elected, full total when eliminated).
    for (size_t ci = 0; ci < r.records.size(); ++ci) {
        auto& rec = r.records[ci];
        rec.transfers.assign(M, missing_value());
        if (ci == 0) continue;
        const CountRecord& prev = r.records[ci - 1];
        int k_prev = prev.event.candidate;
        for (int j = 0; j < M; ++j) {
            if (j == k_prev) {
                rec.transfers[j] = prev.event.kind == CountEvent::Elected
                                       ? -prev.event.surplus
                                       : -prev.totals[j];
            } else if (!is_missing(rec.totals[j]) && !is_missing(prev.totals[j])) {
                rec.transfers[j] = rec.totals[j] - prev.totals[j];
            }
        }
    }

    r.ranking = complete_ranking(r);
    return r;
}

std::vector<int> complete_ranking(const StvResult& r) {
    const int M = static_cast<int>(r.candidates.size());
    std::vector<int> ranking = r.elected;
    std::vector<bool> placed(M, false);
    for (int j : ranking) placed[j] = true;
    for (int j : r.eliminated) placed[j] = true;

    // Hopefuls left when the seats filled: order by final totals, best first.
    std::vector<int> hopefuls;
    for (int j = 0; j < M; ++j) {
        if (!placed[j]) hopefuls.push_back(j);
    }
    const std::vector<double>& final_totals = r.records.back().totals;
    std::stable_sort(hopefuls.begin(), hopefuls.end(),
                     [&](int a, int c) { return final_totals[a] > final_totals[c]; });
    ranking.insert(ranking.end(), hopefuls.begin(), hopefuls.end());

    for (auto it = r.eliminated.rbegin(); it != r.eliminated.rend(); ++it) {
        ranking.push_back(*it);
    }
    return ranking;
}

}  // namespace tally
