#include "tally/report.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numeric>
#include <utility>

#include "json.hpp"

namespace tally {

std::string fixed_digits(double v, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    std::string s = buf;
    // A value that rounds to zero prints unsigned.
    if (!s.empty() && s[0] == '-' && s.find_first_not_of("-0.") == std::string::npos)
        s.erase(0, 1);
    return s;
}

std::string shortest_number(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

bool has_equal_preferences(const BallotMatrix& b) {
    for (const auto& row : b.rows) {
        std::vector<double> present;
        for (double v : row)
            if (!is_missing(v)) present.push_back(v);
        std::sort(present.begin(), present.end());
        if (std::adjacent_find(present.begin(), present.end()) != present.end()) return true;
    }
    return false;
}

namespace {

using nlohmann::json;

enum class Align { Left, Right, Center };

struct Col {
    std::string header;
    Align align = Align::Left;
    std::vector<std::string> cells;
};

std::string justify(const std::string& s, int width, Align align) {
    int pad = width - static_cast<int>(s.size());
    if (pad <= 0) return s;
    if (align == Align::Left) return s + std::string(pad, ' ');
    if (align == Align::Right) return std::string(pad, ' ') + s;
    int lp = pad / 2;
    return std::string(lp, ' ') + s + std::string(pad - lp, ' ');
}

void render_table(std::string& out, const std::vector<Col>& cols) {
    size_t rows = 0;
    std::vector<int> width(cols.size());
    for (size_t c = 0; c < cols.size(); ++c) {
        size_t w = cols[c].header.size();
        for (const auto& cell : cols[c].cells) w = std::max(w, cell.size());
        width[c] = static_cast<int>(w) + (cols[c].align == Align::Center ? 2 : 1);
        width[c] = std::max(width[c], 4);
        rows = std::max(rows, cols[c].cells.size());
    }
    auto emit = [&](const std::function<std::string(size_t)>& cell_of) {
        out += '|';
        for (size_t c = 0; c < cols.size(); ++c) {
            out += justify(cell_of(c), width[c], cols[c].align);
            out += '|';
        }
        out += '\n';
    };
    emit([&](size_t c) { return cols[c].header; });
    out += '|';
    for (size_t c = 0; c < cols.size(); ++c) {
        int w = width[c];
        if (cols[c].align == Align::Left)
            out += ':' + std::string(w - 1, '-');
        else if (cols[c].align == Align::Right)
            out += std::string(w - 1, '-') + ':';
        else
            out += ':' + std::string(w - 2, '-') + ':';
        out += '|';
    }
    out += '\n';
    for (size_t i = 0; i < rows; ++i)
        emit([&](size_t c) { return i < cols[c].cells.size() ? cols[c].cells[i] : std::string(); });
}

// True when v rounded to `digits` carries nothing after the decimal point.
bool whole_at(double v, int digits) {
    std::string s = fixed_digits(v, digits);
    auto dot = s.find('.');
    return dot == std::string::npos || s.find_first_not_of('0', dot + 1) == std::string::npos;
}

// One numeric column: missing values blank; a column whose every value is
// whole after rounding collapses to integers unless decimals are forced.
std::vector<std::string> number_cells(const std::vector<double>& vals, int digits,
                                      bool force_decimals) {
    bool whole = !force_decimals;
    for (double v : vals) {
        if (!is_missing(v) && !whole_at(v, digits)) {
            whole = false;
            break;
        }
    }
    std::vector<std::string> cells;
    cells.reserve(vals.size());
    for (double v : vals) cells.push_back(is_missing(v) ? "" : fixed_digits(v, whole ? 0 : digits));
    return cells;
}

std::string header_block(const std::string& title, const ValidationReport& val, int candidates,
                         int seats, const ReservedSpec* reserved, int eligible) {
    std::string banner = "Results of " + title;
    std::vector<std::pair<std::string, std::string>> lines = {
        {"Number of valid votes:", std::to_string(val.valid_count)},
        {"Number of invalid votes:", std::to_string(val.invalid_count)},
        {"Number of candidates:", std::to_string(candidates)},
        {"Number of seats:", std::to_string(seats)},
    };
    size_t w = 1;
    for (const auto& [label, value] : lines) w = std::max(w, value.size());
    int end_col = 25 + static_cast<int>(w);
    std::string out = banner + '\n';
    out += std::string(banner.size(), '=') + std::string(end_col, ' ') + '\n';
    for (const auto& [label, value] : lines) {
        int pad = end_col - static_cast<int>(label.size() + value.size());
        out += label + std::string(std::max(pad, 1), ' ') + value + '\n';
    }
    if (reserved) {
        auto extra = [&](const std::string& label, int value) {
            std::string v = std::to_string(value);
            int pad = 36 - static_cast<int>(label.size() + v.size());
            out += label + std::string(std::max(pad, 1), ' ') + v + " \n";
        };
        extra("Number of reserved seats:", reserved->count);
        extra("Eligible for reserved seats:", eligible);
    }
    out += "\n\n";
    return out;
}

std::string elected_footer(const std::vector<std::string>& names) {
    std::string out = "\nElected: ";
    for (size_t i = 0; i < names.size(); ++i) {
        if (i) out += ", ";
        out += names[i];
    }
    out += " \n";
    return out;
}

json validation_json(const ValidationReport& v) {
    json invalid = json::array();
    for (const auto& row : v.invalid_rows)
        invalid.push_back({{"row", row.row}, {"reason", row.reason}});
    return {{"valid", v.valid_count},
            {"invalid", v.invalid_count},
            {"invalid_rows", invalid},
            {"corrected_rows", v.corrected_rows}};
}

json totals_json(const std::vector<std::string>& names, const std::vector<double>& vals) {
    json t = json::object();
    for (size_t j = 0; j < names.size(); ++j) t[names[j]] = vals[j];
    return t;
}

json names_json(const std::vector<std::string>& all, const std::vector<int>& idx) {
    json a = json::array();
    for (int j : idx) a.push_back(all[j]);
    return a;
}

json draws_json(const std::vector<TieDraw>& draws) {
    json a = json::array();
    for (const auto& d : draws)
        a.push_back({{"method", "draw"}, {"context", d.context}, {"among", d.among}, {"chosen", d.chosen}});
    return a;
}

std::string baseline_title(const std::string& method) {
    if (method == "plurality") return "Plurality voting";
    if (method == "approval") return "Approval voting";
    return "Score voting";
}

}  // namespace

std::string render_markdown(const TallyResult& r, int digits) {
    std::string out = header_block(baseline_title(r.method), r.validation,
                                   static_cast<int>(r.candidates.size()), r.seats, nullptr, 0);
    Col idx{"", Align::Left, {}};
    Col cand{"Candidate", Align::Left, {}};
    Col elected{"Elected", Align::Center, {}};
    std::vector<double> totals;
    for (size_t i = 0; i < r.display_order.size(); ++i) {
        int j = r.display_order[i];
        idx.cells.push_back(std::to_string(i + 1));
        cand.cells.push_back(r.candidates[j]);
        totals.push_back(r.totals[j]);
        bool won = std::find(r.elected.begin(), r.elected.end(), j) != r.elected.end();
        elected.cells.emplace_back(won ? "x" : "");
    }
    idx.cells.emplace_back("Sum");
    cand.cells.emplace_back("");
    totals.push_back(std::accumulate(r.totals.begin(), r.totals.end(), 0.0));
    elected.cells.emplace_back("");
    Col total{"Total", Align::Right, number_cells(totals, digits, false)};
    render_table(out, {idx, cand, total, elected});
    std::vector<std::string> winners;
    for (int j : r.elected) winners.push_back(r.candidates[j]);
    out += elected_footer(winners);
    return out;
}

std::string render_markdown(const TwoRoundResult& r, int digits) {
    const auto& names = r.data.candidates;
    int m = static_cast<int>(names.size());
    std::string out =
        header_block("two-round-runoff voting", r.validation, m, 1, nullptr, 0);
    Col idx{"", Align::Left, {}};
    Col cand{"Candidate", Align::Left, {}};
    Col elected{"Elected", Align::Center, {}};
    std::vector<double> first, firstp, ro, rop;
    for (int j = 0; j < m; ++j) {
        idx.cells.push_back(std::to_string(j + 1));
        cand.cells.push_back(names[j]);
        first.push_back(r.first_totals[j]);
        firstp.push_back(r.first_percent[j]);
        ro.push_back(r.runoff_totals[j]);
        rop.push_back(r.runoff_percent[j]);
        elected.cells.emplace_back(j == r.elected ? "x" : "");
    }
    idx.cells.emplace_back("Sum");
    cand.cells.emplace_back("");
    elected.cells.emplace_back("");
    double first_sum = std::accumulate(first.begin(), first.end(), 0.0);
    double ro_sum = std::accumulate(ro.begin(), ro.end(), 0.0);
    first.push_back(first_sum);
    firstp.push_back(r.validation.valid_count > 0 ? 100.0 * first_sum / r.validation.valid_count
                                                  : 0.0);
    ro.push_back(ro_sum);
    rop.push_back(ro_sum > 0 ? 100.0 : 0.0);
    Col total{"Total", Align::Right, number_cells(first, digits, false)};
    Col percent{"Percent", Align::Right, number_cells(firstp, 1, true)};
    Col rtotal{"ROTotal", Align::Right, number_cells(ro, digits, false)};
    Col rpercent{"ROPercent", Align::Right, number_cells(rop, 1, true)};
    render_table(out, {idx, cand, total, percent, rtotal, rpercent, elected});
    std::vector<std::string> winners;
    if (r.elected >= 0) winners.push_back(names[r.elected]);
    out += elected_footer(winners);
    return out;
}

std::string render_markdown(const CondorcetResult& r, int digits) {
    (void)digits;  // the matrix is integral
    const auto& names = r.data.candidates;
    int m = static_cast<int>(names.size());
    std::string out = header_block("Condorcet voting", r.validation, m,
                                   r.winner >= 0 ? 1 : 0, nullptr, 0);
    std::vector<Col> cols;
    cols.push_back({"", Align::Left, names});
    for (int j = 0; j < m; ++j) {
        Col c{names[j], Align::Right, {}};
        for (int i = 0; i < m; ++i) c.cells.push_back(std::to_string(r.pairwise.wins[i][j]));
        cols.push_back(std::move(c));
    }
    Col total{"Total", Align::Right, {}};
    for (int i = 0; i < m; ++i) total.cells.push_back(std::to_string(r.pairwise.totals[i]));
    cols.push_back(std::move(total));
    if (r.winner >= 0) {
        Col w{"Winner", Align::Center, {}};
        for (int i = 0; i < m; ++i) w.cells.emplace_back(i == r.winner ? "x" : "");
        cols.push_back(std::move(w));
    }
    if (r.loser >= 0) {
        Col l{"Loser", Align::Center, {}};
        for (int i = 0; i < m; ++i) l.cells.emplace_back(i == r.loser ? "x" : "");
        cols.push_back(std::move(l));
    }
    render_table(out, cols);
    out += '\n';
    if (r.winner >= 0)
        out += "Condorcet winner: " + names[r.winner] + '\n';
    else
        out += "There is no condorcet winner (no candidate won over all other candidates).\n";
    if (r.loser >= 0)
        out += "Condorcet loser: " + names[r.loser] + '\n';
    else
        out += "There is no condorcet loser (no candidate lost to all other candidates).\n";
    if (r.runoff_requested && r.winner < 0) {
        if (r.runoff_winner >= 0)
            out += "Condorcet winner after run-off: " + names[r.runoff_winner] + '\n';
        else
            out += "There is no condorcet winner after run-off.\n";
    }
    return out;
}

std::string render_markdown(const StvResult& r, int digits) {
    std::string title = r.opts.equal_ranking ? "Single transferable vote with equal preferences"
                                             : "Single transferable vote";
    int m = static_cast<int>(r.candidates.size());
    int eligible = static_cast<int>(std::count(r.marked.begin(), r.marked.end(), true));
    std::string out = header_block(title, r.validation, m, r.opts.seats,
                                   r.opts.reserved ? &*r.opts.reserved : nullptr, eligible);
    bool any_tags = false;
    for (const auto& rec : r.records)
        if (!rec.event.tie_tag.empty()) any_tags = true;

    Col labels{"", Align::Left, {}};
    labels.cells.emplace_back("Quota");
    for (int j = 0; j < m; ++j)
        labels.cells.push_back(r.candidates[j] +
                               (j < static_cast<int>(r.marked.size()) && r.marked[j] ? "*" : ""));
    if (any_tags) labels.cells.emplace_back("Tie-breaks");
    labels.cells.emplace_back("Elected");
    labels.cells.emplace_back("Eliminated");
    std::vector<Col> cols{labels};

    for (size_t ci = 0; ci < r.records.size(); ++ci) {
        const auto& rec = r.records[ci];
        if (ci > 0) {
            std::vector<double> tv{missing_value()};  // quota row stays blank
            for (int j = 0; j < m; ++j) tv.push_back(rec.transfers[j]);
            Col trans{std::to_string(rec.count) + "-trans", Align::Right,
                      number_cells(tv, digits, false)};
            if (any_tags) trans.cells.emplace_back("");
            trans.cells.emplace_back("");
            trans.cells.emplace_back("");
            cols.push_back(std::move(trans));
        }
        std::vector<double> cv{rec.quota};
        for (int j = 0; j < m; ++j) cv.push_back(rec.totals[j]);
        Col count{std::to_string(rec.count), Align::Right, number_cells(cv, digits, false)};
        if (any_tags) count.cells.push_back(rec.event.tie_tag);
        bool elected = rec.event.kind == CountEvent::Elected && rec.event.candidate >= 0;
        bool eliminated = rec.event.kind == CountEvent::Eliminated && rec.event.candidate >= 0;
        count.cells.push_back(elected ? r.candidates[rec.event.candidate] : "");
        count.cells.push_back(eliminated ? r.candidates[rec.event.candidate] : "");
        cols.push_back(std::move(count));
    }
    render_table(out, cols);

    if (r.opts.complete_ranking) {
        out += "\nComplete Ranking\n================\n\n";
        Col rank{"Rank", Align::Right, {}};
        Col cand{"Candidate", Align::Left, {}};
        Col elected{"Elected", Align::Center, {}};
        for (size_t i = 0; i < r.ranking.size(); ++i) {
            int j = r.ranking[i];
            rank.cells.push_back(std::to_string(i + 1));
            cand.cells.push_back(r.candidates[j]);
            bool won = std::find(r.elected.begin(), r.elected.end(), j) != r.elected.end();
            elected.cells.emplace_back(won ? "x" : "");
        }
        render_table(out, {rank, cand, elected});
    }

    std::vector<std::string> winners;
    for (int j : r.elected) winners.push_back(r.candidates[j]);
    out += elected_footer(winners);
    return out;
}

std::string render_json(const TallyResult& r, int digits) {
    json j;
    j["method"] = r.method;
    j["config"] = {{"seats", r.seats}, {"digits", digits}};
    if (r.method == "score") j["config"]["larger_wins"] = r.larger_wins;
    j["validation"] = validation_json(r.validation);
    j["counts"] = json::array({json{{"count", 1}, {"totals", totals_json(r.candidates, r.totals)}}});
    j["totals"] = totals_json(r.candidates, r.totals);
    j["elected"] = names_json(r.candidates, r.elected);
    j["ranking"] = names_json(r.candidates, r.display_order);
    j["tiebreaks"] = draws_json(r.draws);
    return j.dump(2) + "\n";
}

std::string render_json(const TwoRoundResult& r, int digits) {
    const auto& names = r.data.candidates;
    json j;
    j["method"] = "tworound";
    j["config"] = {{"digits", digits}};
    j["validation"] = validation_json(r.validation);
    json round1 = {{"round", 1},
                   {"totals", totals_json(names, r.first_totals)},
                   {"percent", totals_json(names, r.first_percent)}};
    json finalists = json::array();
    for (int f : r.finalists)
        if (f >= 0) finalists.push_back(names[f]);
    json round2 = {{"round", 2},
                   {"held", !r.majority_round1},
                   {"finalists", finalists},
                   {"totals", totals_json(names, r.runoff_totals)},
                   {"percent", totals_json(names, r.runoff_percent)},
                   {"exhausted", r.exhausted_count}};
    j["counts"] = json::array({round1, round2});
    j["totals"] = totals_json(names, r.runoff_totals);
    j["elected"] = json::array();
    if (r.elected >= 0) j["elected"].push_back(names[r.elected]);
    j["tiebreaks"] = draws_json(r.draws);
    return j.dump(2) + "\n";
}

std::string render_json(const CondorcetResult& r, int digits) {
    const auto& names = r.data.candidates;
    json j;
    j["method"] = "condorcet";
    j["config"] = {{"digits", digits}, {"runoff", r.runoff_requested}};
    j["validation"] = validation_json(r.validation);
    j["counts"] = json::array();
    std::vector<double> totals(r.pairwise.totals.begin(), r.pairwise.totals.end());
    j["totals"] = totals_json(names, totals);
    json pw;
    pw["candidates"] = names;
    pw["wins"] = r.pairwise.wins;
    pw["totals"] = r.pairwise.totals;
    pw["winner"] = r.winner >= 0 ? json(names[r.winner]) : json();
    pw["loser"] = r.loser >= 0 ? json(names[r.loser]) : json();
    pw["runoff_winner"] = r.runoff_winner >= 0 ? json(names[r.runoff_winner]) : json();
    pw["runoff_trace"] = r.runoff_trace;
    j["pairwise"] = pw;
    j["elected"] = json::array();
    if (r.winner >= 0)
        j["elected"].push_back(names[r.winner]);
    else if (r.runoff_winner >= 0)
        j["elected"].push_back(names[r.runoff_winner]);
    j["tiebreaks"] = json::array();
    return j.dump(2) + "\n";
}

std::string render_json(const StvResult& r, int digits) {
    const auto& names = r.candidates;
    int m = static_cast<int>(names.size());
    json j;
    j["method"] = "stv";
    json config = {{"seats", r.opts.seats},
                   {"epsilon", r.opts.epsilon},
                   {"quota", r.opts.quota == QuotaPolicy::Adaptive ? "adaptive" : "constant"},
                   {"equal_ranking", r.opts.equal_ranking},
                   {"ties", std::string(1, r.opts.ties)},
                   {"legacy_ties", r.opts.legacy_ties},
                   {"seed", r.opts.seed},
                   {"digits", digits},
                   {"complete_ranking", r.opts.complete_ranking}};
    if (r.opts.reserved)
        config["reserved"] = {{"count", r.opts.reserved->count},
                              {"members", r.opts.reserved->members}};
    else
        config["reserved"] = nullptr;
    j["config"] = config;
    j["validation"] = validation_json(r.validation);

    json counts = json::array();
    json tiebreaks = json::array();
    for (const auto& rec : r.records) {
        json event;
        event["action"] = rec.event.kind == CountEvent::Elected ? "elected" : "eliminated";
        event["candidate"] = rec.event.candidate >= 0 ? json(names[rec.event.candidate]) : json();
        if (rec.event.kind == CountEvent::Elected) {
            event["surplus"] = rec.event.surplus;
            event["below_quota"] = rec.event.below_quota;
        }
        if (!rec.event.tie_tag.empty()) event["tie_tag"] = rec.event.tie_tag;
        if (rec.event.tie_by_legacy) event["tie_by_legacy"] = true;
        counts.push_back({{"count", rec.count},
                          {"quota", rec.quota},
                          {"totals", totals_json(names, rec.totals)},
                          {"transfers", totals_json(names, rec.transfers)},
                          {"event", event},
                          {"exhausted", rec.exhausted},
                          {"weight_min", rec.weight_min},
                          {"weight_max", rec.weight_max}});
        if (!rec.event.tie_tag.empty() || rec.event.tie_by_legacy) {
            tiebreaks.push_back(
                {{"count", rec.count},
                 {"candidate", rec.event.candidate >= 0 ? json(names[rec.event.candidate]) : json()},
                 {"method", rec.event.tie_by_legacy ? std::string("legacy") : rec.event.tie_tag},
                 {"for", rec.event.kind == CountEvent::Elected ? "election" : "elimination"}});
        }
    }
    j["counts"] = counts;

    // Final standing: each candidate's vote at the count of their retirement,
    // or at the last count if they stayed in play.
    std::vector<double> final_totals(m, missing_value());
    for (int jc = 0; jc < m; ++jc)
        for (auto it = r.records.rbegin(); it != r.records.rend(); ++it)
            if (!is_missing(it->totals[jc])) {
                final_totals[jc] = it->totals[jc];
                break;
            }
    j["totals"] = totals_json(names, final_totals);
    j["elected"] = names_json(names, r.elected);
    j["ranking"] = names_json(names, r.ranking);
    j["tiebreaks"] = tiebreaks;
    return j.dump(2) + "\n";
}

std::vector<PlotDataset> plot_datasets(const StvResult& r) {
    PlotDataset ev;
    ev.name = "count_evolution";
    ev.header = {"count", "quota"};
    for (const auto& name : r.candidates) ev.header.push_back(name);
    for (const auto& rec : r.records) {
        std::vector<std::string> row{std::to_string(rec.count), shortest_number(rec.quota)};
        for (double v : rec.totals) row.push_back(is_missing(v) ? "" : shortest_number(v));
        ev.rows.push_back(std::move(row));
    }
    std::vector<PlotDataset> sets{std::move(ev)};
    for (auto& s : plot_datasets(r.data)) sets.push_back(std::move(s));
    return sets;
}

std::vector<PlotDataset> plot_datasets(const BallotMatrix& valid_data) {
    if (valid_data.kind != BallotKind::Ranked)
        throw ConfigError("plot datasets need ranked ballots");
    if (has_equal_preferences(valid_data))
        throw DataError("plot datasets cannot be built from equal-preference ballots");
    int m = valid_data.candidate_count();
    auto counts = preference_counts(valid_data);

    PlotDataset prefs;
    prefs.name = "all_preferences";
    prefs.header = {"candidate"};
    for (int p = 1; p <= m; ++p) prefs.header.push_back(std::to_string(p));
    for (int j = 0; j < m; ++j) {
        std::vector<std::string> row{valid_data.candidates[j]};
        for (int p = 0; p < m; ++p) row.push_back(std::to_string(counts[j][p]));
        prefs.rows.push_back(std::move(row));
    }

    std::vector<std::vector<int>> joint(m, std::vector<int>(m, 0));
    for (const auto& row : valid_data.rows) {
        int first = -1, second = -1;
        for (int j = 0; j < m; ++j) {
            if (is_missing(row[j])) continue;
            if (row[j] == 1.0) first = j;
            if (row[j] == 2.0) second = j;
        }
        if (first >= 0 && second >= 0) ++joint[first][second];
    }
    PlotDataset jc;
    jc.name = "joint_first_second_counts";
    jc.header = {"candidate"};
    for (const auto& name : valid_data.candidates) jc.header.push_back(name);
    for (int a = 0; a < m; ++a) {
        std::vector<std::string> row{valid_data.candidates[a]};
        for (int b = 0; b < m; ++b) row.push_back(std::to_string(joint[a][b]));
        jc.rows.push_back(std::move(row));
    }

    PlotDataset jp;
    jp.name = "joint_first_second_proportions";
    jp.header = jc.header;
    for (int a = 0; a < m; ++a) {
        std::vector<std::string> row{valid_data.candidates[a]};
        double denom = counts[a][0];
        for (int b = 0; b < m; ++b)
            row.push_back(shortest_number(denom > 0 ? joint[a][b] / denom : 0.0));
        jp.rows.push_back(std::move(row));
    }

    return {std::move(prefs), std::move(jc), std::move(jp)};
}

namespace {

const char* const kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
                                "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

double parse_cell(const std::string& s) { return s.empty() ? missing_value() : std::stod(s); }

std::string svg_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

// Votes per count as polylines, one per candidate, plus a dashed quota line.
std::string line_chart_svg(const PlotDataset& s) {
    const double width = 720, height = 480, left = 70, right = 560, top = 40, bottom = 430;
    size_t series_count = s.header.size() - 1;
    size_t points = s.rows.size();
    double vmax = 1.0;
    for (const auto& row : s.rows)
        for (size_t c = 1; c < row.size(); ++c)
            if (!row[c].empty()) vmax = std::max(vmax, parse_cell(row[c]));
    auto xmap = [&](size_t i) {
        return points > 1 ? left + (right - left) * static_cast<double>(i) / (points - 1)
                          : (left + right) / 2;
    };
    auto ymap = [&](double v) { return bottom - (bottom - top) * v / vmax; };
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      shortest_number(width) + "\" height=\"" + shortest_number(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<line x1=\"70\" y1=\"430\" x2=\"560\" y2=\"430\" stroke=\"black\"/>\n";
    svg += "<line x1=\"70\" y1=\"40\" x2=\"70\" y2=\"430\" stroke=\"black\"/>\n";
    for (size_t i = 0; i < points; ++i) {
        svg += "<text x=\"" + shortest_number(xmap(i)) + "\" y=\"448\" font-size=\"12\" "
               "text-anchor=\"middle\">" + svg_escape(s.rows[i][0]) + "</text>\n";
    }
    for (int tick = 0; tick <= 4; ++tick) {
        double v = vmax * tick / 4;
        svg += "<text x=\"62\" y=\"" + shortest_number(ymap(v) + 4) +
               "\" font-size=\"12\" text-anchor=\"end\">" + fixed_digits(v, 1) + "</text>\n";
    }
    for (size_t c = 0; c < series_count; ++c) {
        std::string pts;
        for (size_t i = 0; i < points; ++i) {
            const std::string& cell = s.rows[i][c + 1];
            if (cell.empty()) continue;
            pts += shortest_number(xmap(i)) + "," + shortest_number(ymap(parse_cell(cell))) + " ";
        }
        bool quota = c == 0;
        std::string color = quota ? "black" : kPalette[(c - 1) % 10];
        svg += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"" +
               (quota ? " stroke-dasharray=\"6 4\"" : "") + " points=\"" + pts + "\"/>\n";
        double ly = top + 18.0 * static_cast<double>(c);
        svg += "<line x1=\"575\" y1=\"" + shortest_number(ly - 4) + "\" x2=\"600\" y2=\"" +
               shortest_number(ly - 4) + "\" stroke=\"" + color + "\" stroke-width=\"2\"" +
               (quota ? " stroke-dasharray=\"6 4\"" : "") + "/>\n";
        svg += "<text x=\"606\" y=\"" + shortest_number(ly) + "\" font-size=\"12\">" +
               svg_escape(s.header[c + 1]) + "</text>\n";
    }
    svg += "</svg>\n";
    return svg;
}

// Matrix datasets as a white-to-blue heatmap with value labels.
std::string heatmap_svg(const PlotDataset& s) {
    int rows = static_cast<int>(s.rows.size());
    int cols = static_cast<int>(s.header.size()) - 1;
    const double cw = 64, ch = 30, left = 150, top = 60;
    double width = left + cw * cols + 20, height = top + ch * rows + 20;
    double vmax = 0.0;
    for (const auto& row : s.rows)
        for (size_t c = 1; c < row.size(); ++c)
            if (!row[c].empty()) vmax = std::max(vmax, parse_cell(row[c]));
    auto shade = [&](double v) {
        double t = vmax > 0 ? v / vmax : 0.0;
        int r = static_cast<int>(255 + t * (70 - 255));
        int g = static_cast<int>(255 + t * (130 - 255));
        int b = static_cast<int>(255 + t * (180 - 255));
        return "rgb(" + std::to_string(r) + "," + std::to_string(g) + "," + std::to_string(b) + ")";
    };
    std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
                      shortest_number(width) + "\" height=\"" + shortest_number(height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (int c = 0; c < cols; ++c) {
        svg += "<text x=\"" + shortest_number(left + cw * c + cw / 2) + "\" y=\"" +
               shortest_number(top - 10) + "\" font-size=\"11\" text-anchor=\"middle\">" +
               svg_escape(s.header[c + 1]) + "</text>\n";
    }
    for (int i = 0; i < rows; ++i) {
        svg += "<text x=\"" + shortest_number(left - 8) + "\" y=\"" +
               shortest_number(top + ch * i + ch / 2 + 4) +
               "\" font-size=\"11\" text-anchor=\"end\">" + svg_escape(s.rows[i][0]) + "</text>\n";
        for (int c = 0; c < cols; ++c) {
            const std::string& cell = s.rows[i][c + 1];
            double v = cell.empty() ? 0.0 : parse_cell(cell);
            svg += "<rect x=\"" + shortest_number(left + cw * c) + "\" y=\"" +
                   shortest_number(top + ch * i) + "\" width=\"" + shortest_number(cw) +
                   "\" height=\"" + shortest_number(ch) + "\" fill=\"" + shade(v) +
                   "\" stroke=\"#cccccc\"/>\n";
            svg += "<text x=\"" + shortest_number(left + cw * c + cw / 2) + "\" y=\"" +
                   shortest_number(top + ch * i + ch / 2 + 4) +
                   "\" font-size=\"11\" text-anchor=\"middle\">" + svg_escape(cell) + "</text>\n";
        }
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace

void write_plots(const std::vector<PlotDataset>& sets, const std::string& dir, char separator) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(dir, ec);
    for (const auto& s : sets) {
        fs::path csv = fs::path(dir) / (s.name + ".csv");
        std::ofstream out(csv);
        if (!out) throw DataError("cannot write " + csv.string());
        auto emit = [&](const std::vector<std::string>& cells) {
            for (size_t i = 0; i < cells.size(); ++i) {
                if (i) out << separator;
                out << cells[i];
            }
            out << '\n';
        };
        emit(s.header);
        for (const auto& row : s.rows) emit(row);
        out.close();
        if (!out) throw DataError("cannot write " + csv.string());

        fs::path svg_path = fs::path(dir) / (s.name + ".svg");
        std::ofstream svg(svg_path);
        if (!svg) throw DataError("cannot write " + svg_path.string());
        svg << (s.name == "count_evolution" ? line_chart_svg(s) : heatmap_svg(s));
    }
}

}  // namespace tally
