#include <cstdint>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tally/ballots.hpp"
#include "tally/baseline.hpp"
#include "tally/preferential.hpp"
#include "tally/report.hpp"
#include "tally/stv.hpp"

namespace {

bool pure_indicator(const tally::BallotMatrix& b) {
    for (const auto& row : b.rows)
        for (double v : row)
            if (!tally::is_missing(v) && v != 1.0) return false;
    return true;
}

// Ranked input becomes an indicator matrix: marks at the requested ranks, or
// first preferences only / any present preference when no ranks are given.
tally::BallotMatrix to_indicator(const tally::BallotMatrix& b, const std::vector<int>& ranks,
                                 bool first_only) {
    if (!ranks.empty()) return tally::threshold_indicator(b, ranks);
    if (pure_indicator(b) || !first_only) return tally::indicator_from_present(b);
    return tally::threshold_indicator(b, {1});
}

void note_corrections(const std::vector<int>& rows) {
    if (rows.empty()) return;
    std::string list;
    for (size_t i = 0; i < rows.size(); ++i) {
        if (i) list += ", ";
        list += std::to_string(rows[i]);
    }
    std::cerr << "Votes " << list << " were corrected to comply with the required format.\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Count an election from a delimited ballot file"};
    app.get_formatter()->column_width(34);

    std::string method, file;
    app.add_option("method", method, "plurality, approval, score, tworound, condorcet, or stv")
        ->required()
        ->check(CLI::IsMember({"plurality", "approval", "score", "tworound", "condorcet", "stv"}));
    app.add_option("ballots-file", file, "delimited file; first record holds candidate names")
        ->required();

    std::string sep = ",";
    int seats = 1;
    double eps = 0.001;
    bool constant_quota = false, equal_ranking = false, larger_wins = false, runoff = false,
         complete_ranking = false;
    std::string ties = "f";
    int reserve_seats = 0;
    std::vector<std::string> reserve_group;
    std::uint64_t seed = 0;
    int digits = 3;
    double fill_score = 0.0;
    std::vector<int> ranks_as_approval;
    std::string format = "markdown", plots_dir;

    app.add_option("--sep", sep, "field separator character (default ,)");
    auto* o_seats = app.add_option("--seats", seats, "number of seats to fill")
                        ->check(CLI::PositiveNumber);
    auto* o_eps = app.add_option("--eps", eps, "quota epsilon (default 0.001)");
    auto* o_cq = app.add_flag("--constant-quota", constant_quota, "freeze the first-count quota");
    auto* o_eq = app.add_flag("--equal-ranking", equal_ranking, "allow equal preferences");
    auto* o_ties =
        app.add_option("--ties", ties, "tie-breaking scan direction: f (forwards) or b (backwards)")
            ->check(CLI::IsMember({"f", "b"}));
    auto* o_rs = app.add_option("--reserve-seats", reserve_seats, "seats reserved for the group")
                     ->check(CLI::PositiveNumber);
    auto* o_rg = app.add_option("--reserve-group", reserve_group, "names eligible for reserved seats")
                     ->delimiter(',');
    app.add_option("--seed", seed, "seed for any random draws");
    app.add_option("--digits", digits, "display decimals (default 3)")
        ->check(CLI::Range(0, 12));
    auto* o_lw = app.add_flag("--larger-wins", larger_wins, "higher scores are better");
    auto* o_fill = app.add_option("--fill-score", fill_score, "score assigned to a non-vote");
    auto* o_raa = app.add_option("--ranks-as-approval", ranks_as_approval,
                                 "treat these ranks of a ranked file as marks")
                      ->delimiter(',');
    auto* o_runoff = app.add_flag("--runoff", runoff, "run off between the most-winning candidates");
    auto* o_cr = app.add_flag("--complete-ranking", complete_ranking, "append the full ranking");
    app.add_option("--format", format, "markdown or json")
        ->check(CLI::IsMember({"markdown", "json"}));
    auto* o_plots = app.add_option("--plots", plots_dir, "write plot datasets and SVGs here");

    CLI11_PARSE(app, argc, argv);

    try {
        struct Gate {
            CLI::Option* opt;
            std::set<std::string> methods;
        };
        const std::vector<Gate> gates = {
            {o_seats, {"plurality", "approval", "score", "stv"}},
            {o_eps, {"stv"}},
            {o_cq, {"stv"}},
            {o_eq, {"stv"}},
            {o_ties, {"stv"}},
            {o_rs, {"stv"}},
            {o_rg, {"stv"}},
            {o_lw, {"score"}},
            {o_fill, {"score"}},
            {o_raa, {"plurality", "approval"}},
            {o_runoff, {"condorcet"}},
            {o_cr, {"stv"}},
            {o_plots, {"tworound", "condorcet", "stv"}},
        };
        for (const auto& g : gates)
            if (g.opt->count() > 0 && g.methods.count(method) == 0)
                throw tally::ConfigError(g.opt->get_name() + " is not valid for method '" +
                                         method + "'");
        if (o_rs->count() != o_rg->count() && (o_rs->count() == 0 || o_rg->count() == 0))
            throw tally::ConfigError("--reserve-seats and --reserve-group must be given together");
        if (sep.size() != 1) {
            if (sep == "\\t" || sep == "tab")
                sep = "\t";
            else
                throw tally::ConfigError("--sep needs a single character");
        }
        if (method == "score" && o_fill->count() == 0)
            throw tally::ConfigError("score needs --fill-score (the score assigned to a non-vote)");

        tally::BallotMatrix ballots = tally::parse_ballots_file(file, sep[0]);

        std::string report;
        std::vector<tally::PlotDataset> plots;
        if (method == "plurality" || method == "approval") {
            tally::BallotMatrix ind =
                to_indicator(ballots, ranks_as_approval, method == "plurality");
            tally::TallyResult r = method == "plurality"
                                       ? tally::count_plurality(ind, seats, seed)
                                       : tally::count_approval(ind, seats, seed);
            report = format == "json" ? tally::render_json(r, digits)
                                      : tally::render_markdown(r, digits);
        } else if (method == "score") {
            ballots.kind = tally::BallotKind::Score;
            tally::TallyResult r =
                tally::count_score(ballots, seats, larger_wins, fill_score, seed);
            report = format == "json" ? tally::render_json(r, digits)
                                      : tally::render_markdown(r, digits);
        } else if (method == "tworound") {
            tally::TwoRoundResult r = tally::count_two_round(ballots, seed);
            report = format == "json" ? tally::render_json(r, digits)
                                      : tally::render_markdown(r, digits);
            if (o_plots->count() > 0) plots = tally::plot_datasets(r.data);
        } else if (method == "condorcet") {
            tally::CondorcetResult r = tally::condorcet(ballots, runoff);
            report = format == "json" ? tally::render_json(r, digits)
                                      : tally::render_markdown(r, digits);
            if (o_plots->count() > 0) plots = tally::plot_datasets(r.data);
        } else {
            tally::StvOptions opts;
            opts.seats = seats;
            opts.epsilon = eps;
            opts.quota = constant_quota ? tally::QuotaPolicy::Constant : tally::QuotaPolicy::Adaptive;
            opts.equal_ranking = equal_ranking;
            opts.ties = ties[0];
            opts.seed = seed;
            opts.complete_ranking = complete_ranking;
            if (o_rs->count() > 0)
                opts.reserved = tally::ReservedSpec{reserve_seats, reserve_group};
            tally::StvResult r = tally::count_stv(ballots, opts);
            note_corrections(r.validation.corrected_rows);
            report = format == "json" ? tally::render_json(r, digits)
                                      : tally::render_markdown(r, digits);
            if (o_plots->count() > 0) plots = tally::plot_datasets(r);
        }

        std::cout << report;
        if (o_plots->count() > 0) tally::write_plots(plots, plots_dir, sep[0]);
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
