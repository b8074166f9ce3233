#include "tally/ballots.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <sstream>

namespace tally {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char ch : line) {
        if (ch == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    out.push_back(cur);
    return out;
}

bool parse_number(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = begin + s.size();
    auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end;
}

bool row_all_missing(const std::vector<double>& row) {
    return std::all_of(row.begin(), row.end(), [](double v) { return is_missing(v); });
}

bool is_integral(double v) { return v == std::floor(v); }

}  // namespace

int BallotMatrix::index_of(const std::string& name) const {
    for (int j = 0; j < candidate_count(); ++j) {
        if (candidates[j] == name) return j;
    }
    return -1;
}

std::set<std::string> default_missing_tokens() { return {"", "NA", "0"}; }

BallotMatrix parse_ballots(std::istream& in, char separator,
                           const std::set<std::string>& missing_tokens) {
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(line);
    }
    // A trailing newline leaves no phantom row; interior blank lines do not
    // count as ballots either (a blank ballot must spell out its separators).
    while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
    if (lines.empty()) throw ParseError("empty file");

    BallotMatrix b;
    for (const std::string& name : split_fields(lines[0], separator)) {
        std::string t = trim(name);
        if (t.empty()) throw ParseError("empty candidate name in header");
        if (b.index_of(t) >= 0) throw ParseError("duplicate candidate name: " + t);
        b.candidates.push_back(t);
    }
    const int m = b.candidate_count();
    if (lines.size() == 1) throw ParseError("no ballots");

    for (size_t r = 1; r < lines.size(); ++r) {
        std::vector<std::string> fields = split_fields(lines[r], separator);
        if (static_cast<int>(fields.size()) != m) {
            throw ParseError("row " + std::to_string(r) + " has " +
                             std::to_string(fields.size()) + " fields, expected " +
                             std::to_string(m));
        }
        std::vector<double> row(m, missing_value());
        for (int j = 0; j < m; ++j) {
            std::string f = trim(fields[j]);
            if (missing_tokens.count(f)) continue;
            double v = 0.0;
            if (!parse_number(f, v) || !std::isfinite(v)) {
                throw ParseError("row " + std::to_string(r) + ", column " +
                                 std::to_string(j + 1) + ": cannot read '" + f +
                                 "' as a number");
            }
            if (v <= 0.0) {
                throw ParseError("row " + std::to_string(r) + ", column " +
                                 std::to_string(j + 1) + ": value must be positive, got '" +
                                 f + "'");
            }
            row[j] = v;
        }
        b.rows.push_back(std::move(row));
    }
    return b;
}

BallotMatrix parse_ballots_file(const std::string& path, char separator,
                                const std::set<std::string>& missing_tokens) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    return parse_ballots(in, separator, missing_tokens);
}

std::string serialize_ballots(const BallotMatrix& b, char separator) {
    std::ostringstream out;
    for (int j = 0; j < b.candidate_count(); ++j) {
        if (j) out << separator;
        out << b.candidates[j];
    }
    out << '\n';
    char buf[64];
    for (const auto& row : b.rows) {
        for (int j = 0; j < b.candidate_count(); ++j) {
            if (j) out << separator;
            if (is_missing(row[j])) continue;
            auto res = std::to_chars(buf, buf + sizeof(buf), row[j]);
            out.write(buf, res.ptr - buf);
        }
        out << '\n';
    }
    return out.str();
}

ValidationReport validate_ballots(const BallotMatrix& b, ValidationMode mode, double score_min,
                                  double score_max) {
    ValidationReport rep;
    rep.row_valid.resize(b.ballot_count(), false);
    for (int i = 0; i < b.ballot_count(); ++i) {
        const auto& row = b.rows[i];
        std::string reason;
        if (row_all_missing(row)) {
            reason = "blank ballot";
        } else {
            switch (mode) {
                case ValidationMode::StrictRanked: {
                    std::vector<double> present;
                    for (double v : row)
                        if (!is_missing(v)) present.push_back(v);
                    if (std::any_of(present.begin(), present.end(),
                                    [](double v) { return v <= 0.0; })) {
                        reason = "non-positive rank";
                        break;
                    }
                    bool integral = std::all_of(present.begin(), present.end(), is_integral);
                    if (!integral) {
                        reason = "non-integer rank";
                        break;
                    }
                    std::sort(present.begin(), present.end());
                    if (std::adjacent_find(present.begin(), present.end()) != present.end()) {
                        reason = "duplicate ranks";
                        break;
                    }
                    for (size_t p = 0; p < present.size(); ++p) {
                        if (present[p] != static_cast<double>(p + 1)) {
                            reason = "non-consecutive ranks";
                            break;
                        }
                    }
                    break;
                }
                case ValidationMode::EqualRanked:
                    // Any positive present entry counts; correction runs later.
                    for (double v : row) {
                        if (!is_missing(v) && v <= 0.0) {
                            reason = "non-positive rank";
                            break;
                        }
                    }
                    break;
                case ValidationMode::IndicatorSingle:
                case ValidationMode::IndicatorMulti: {
                    int marks = 0;
                    for (double v : row) {
                        if (is_missing(v)) continue;
                        if (v != 0.0 && v != 1.0) {
                            reason = "non-binary mark";
                            break;
                        }
                        if (v == 1.0) ++marks;
                    }
                    if (!reason.empty()) break;
                    if (marks == 0) {
                        reason = "blank ballot";
                    } else if (mode == ValidationMode::IndicatorSingle && marks > 1) {
                        reason = "multiple marks";
                    }
                    break;
                }
                case ValidationMode::Score: {
                    for (double v : row) {
                        if (is_missing(v)) continue;
                        if (v < score_min || v > score_max) {
                            reason = "score out of range";
                            break;
                        }
                    }
                    break;
                }
            }
        }
        if (reason.empty()) {
            rep.row_valid[i] = true;
            ++rep.valid_count;
        } else {
            ++rep.invalid_count;
            rep.invalid_rows.push_back({i + 1, reason});
        }
    }
    return rep;
}

std::vector<double> correct_ranking(const std::vector<double>& row) {
    for (double v : row) {
        if (!is_missing(v) && v <= 0.0) throw DataError("rank entries must be positive");
    }
    std::vector<double> out(row.size(), missing_value());
    for (size_t j = 0; j < row.size(); ++j) {
        if (is_missing(row[j])) continue;
        int better = 0;
        for (double v : row) {
            if (!is_missing(v) && v < row[j]) ++better;
        }
        out[j] = 1.0 + better;
    }
    return out;
}

BallotMatrix remove_candidates(const BallotMatrix& b, const std::vector<std::string>& names) {
    std::vector<bool> drop(b.candidate_count(), false);
    for (const std::string& name : names) {
        int j = b.index_of(name);
        if (j < 0) throw DataError("unknown candidate: " + name);
        drop[j] = true;
    }
    BallotMatrix out;
    out.kind = b.kind;
    for (int j = 0; j < b.candidate_count(); ++j) {
        if (!drop[j]) out.candidates.push_back(b.candidates[j]);
    }
    if (out.candidates.empty()) throw DataError("no candidates remain");
    for (const auto& row : b.rows) {
        std::vector<double> kept;
        kept.reserve(out.candidates.size());
        for (int j = 0; j < b.candidate_count(); ++j) {
            if (!drop[j]) kept.push_back(row[j]);
        }
        out.rows.push_back(correct_ranking(kept));
    }
    return out;
}

BallotMatrix threshold_indicator(const BallotMatrix& b, const std::vector<int>& ranks) {
    if (ranks.empty()) throw ConfigError("empty rank set");
    BallotMatrix out;
    out.candidates = b.candidates;
    out.kind = BallotKind::Indicator;
    for (const auto& row : b.rows) {
        std::vector<double> ind(row.size(), 0.0);
        for (size_t j = 0; j < row.size(); ++j) {
            if (is_missing(row[j])) continue;
            for (int r : ranks) {
                if (row[j] == static_cast<double>(r)) {
                    ind[j] = 1.0;
                    break;
                }
            }
        }
        out.rows.push_back(std::move(ind));
    }
    return out;
}

BallotMatrix indicator_from_present(const BallotMatrix& b) {
    BallotMatrix out;
    out.candidates = b.candidates;
    out.kind = BallotKind::Indicator;
    for (const auto& row : b.rows) {
        std::vector<double> ind(row.size(), 0.0);
        for (size_t j = 0; j < row.size(); ++j) {
            if (!is_missing(row[j])) ind[j] = 1.0;
        }
        out.rows.push_back(std::move(ind));
    }
    return out;
}

}  // namespace tally
