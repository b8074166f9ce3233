#pragma once

#include <cmath>
#include <iosfwd>
#include <limits>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tally {

// Bad input file (structure, not ballot content).
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bad election configuration (seats, fill score, reserved spec, ...).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Data that cannot be counted at all (e.g. no valid ballots).
struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A cell with no preference/score is carried as NaN.
inline double missing_value() { return std::numeric_limits<double>::quiet_NaN(); }
inline bool is_missing(double v) { return std::isnan(v); }

enum class BallotKind { Ranked, Indicator, Score };

// N ballots over M candidates; column order is ballot-paper order and is
// preserved by every transform (legacy tie rules depend on it).
struct BallotMatrix {
    std::vector<std::string> candidates;
    std::vector<std::vector<double>> rows;  // entries: value or NaN
    BallotKind kind = BallotKind::Ranked;

    int candidate_count() const { return static_cast<int>(candidates.size()); }
    int ballot_count() const { return static_cast<int>(rows.size()); }
    // Position of a candidate name, -1 when absent.
    int index_of(const std::string& name) const;
};

struct InvalidBallot {
    int row = 0;  // 1-based, as in the printed warnings
    std::string reason;
};

struct ValidationReport {
    int valid_count = 0;
    int invalid_count = 0;
    std::vector<InvalidBallot> invalid_rows;
    std::vector<int> corrected_rows;  // 1-based; equal-ranking mode only
    std::vector<bool> row_valid;      // per input row
};

enum class ValidationMode {
    StrictRanked,     // present ranks are exactly 1..k, integers, no repeats
    EqualRanked,      // any positive present entry; correction happens downstream
    IndicatorSingle,  // 0/1 entries, exactly one mark
    IndicatorMulti,   // 0/1 entries, at least one mark
    Score,            // present entries within [score_min, score_max]
};

std::set<std::string> default_missing_tokens();

// Delimited text -> matrix. First record is the header of candidate names;
// every following record needs exactly M fields. Fields matching a missing
// token become NaN; everything else must parse as a positive finite number.
BallotMatrix parse_ballots(std::istream& in, char separator = ',',
                           const std::set<std::string>& missing_tokens = default_missing_tokens());
BallotMatrix parse_ballots_file(const std::string& path, char separator = ',',
                                const std::set<std::string>& missing_tokens = default_missing_tokens());

// Canonical form: missing cells are empty fields, numbers carry no trailing
// zeros, so parse(serialize(parse(x))) == parse(x) byte for byte.
std::string serialize_ballots(const BallotMatrix& b, char separator = ',');

ValidationReport validate_ballots(const BallotMatrix& b, ValidationMode mode,
                                  double score_min = 0.0,
                                  double score_max = std::numeric_limits<double>::infinity());

// Competition ranking: each present entry r becomes 1 + #(present entries < r).
// Ties and order are preserved; idempotent. Throws DataError on entries <= 0.
std::vector<double> correct_ranking(const std::vector<double>& row);

// Drop named columns and re-rank every row over what remains.
BallotMatrix remove_candidates(const BallotMatrix& b, const std::vector<std::string>& names);

// Ranked -> indicator: cell is 1 iff present and its rank is in `ranks`.
BallotMatrix threshold_indicator(const BallotMatrix& b, const std::vector<int>& ranks);

// Ranked -> indicator: cell is 1 iff any preference is present (approval view).
BallotMatrix indicator_from_present(const BallotMatrix& b);

}  // namespace tally
