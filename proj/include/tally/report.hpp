#pragma once

#include <string>
#include <vector>

#include "tally/baseline.hpp"
#include "tally/preferential.hpp"
#include "tally/stv.hpp"

namespace tally {

// %.Nf formatting (ties resolve to even as in R's display rounding); negative
// zero prints as plain zero; digits == 0 yields integers without a point.
std::string fixed_digits(double v, int digits);

// Shortest decimal form that parses back to the same double ("1", "2.5").
std::string shortest_number(double v);

// True if any row carries a duplicated present rank.
bool has_equal_preferences(const BallotMatrix& b);

// Markdown reports shaped like the published tables: banner, vote-count
// header block, pipe table, winners footer.
std::string render_markdown(const TallyResult& r, int digits);
std::string render_markdown(const TwoRoundResult& r, int digits);
std::string render_markdown(const CondorcetResult& r, int digits);
std::string render_markdown(const StvResult& r, int digits);

// Full-precision JSON with the schema
// {method, config, validation, counts[], totals, elected[], ranking?, pairwise?, tiebreaks[]}.
std::string render_json(const TallyResult& r, int digits);
std::string render_json(const TwoRoundResult& r, int digits);
std::string render_json(const CondorcetResult& r, int digits);
std::string render_json(const StvResult& r, int digits);

// Data series behind the standard election figures.
struct PlotDataset {
    std::string name;  // count_evolution, all_preferences, joint_* ...
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;  // cells preformatted; "" = blank
};

// STV gets count_evolution + the three preference datasets; plain ranked
// results get the three. Equal-preference data is rejected.
std::vector<PlotDataset> plot_datasets(const StvResult& r);
std::vector<PlotDataset> plot_datasets(const BallotMatrix& valid_data);

// Writes <dir>/<name>.csv and a companion <name>.svg for each dataset.
void write_plots(const std::vector<PlotDataset>& sets, const std::string& dir,
                 char separator = ',');

}  // namespace tally
