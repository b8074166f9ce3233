#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "tally/ballots.hpp"

namespace fixtures {

// The four elections used throughout the tests, embedded so the expected
// numbers and the inputs travel together. data/*.csv must stay identical;
// a test asserts that.

inline const char* kFood =
    "Oranges,Pears,Chocolate,Strawberries,Sweets\n"
    ",,1,2,\n"
    ",,1,2,\n"
    ",,1,2,\n"
    "2,1,,,\n"
    ",,,1,\n"
    "1,,,,\n"
    ",,,,1\n"
    "1,,,,\n"
    ",,1,2,\n"
    ",,1,,2\n"
    "1,,,,\n"
    ",,1,2,\n"
    ",,1,2,\n"
    ",,1,2,\n"
    ",,1,,2\n"
    "1,,,,\n"
    ",,1,,2\n"
    "2,1,,,\n"
    ",,1,,2\n"
    ",,1,2,\n";

// food with the first three ballots giving equal first preferences to
// Chocolate and Strawberries.
inline const char* kFood2 =
    "Oranges,Pears,Chocolate,Strawberries,Sweets\n"
    ",,1,1,\n"
    ",,1,1,\n"
    ",,1,1,\n"
    "2,1,,,\n"
    ",,,1,\n"
    "1,,,,\n"
    ",,,,1\n"
    "1,,,,\n"
    ",,1,2,\n"
    ",,1,,2\n"
    "1,,,,\n"
    ",,1,2,\n"
    ",,1,2,\n"
    ",,1,2,\n"
    ",,1,,2\n"
    "1,,,,\n"
    ",,1,,2\n"
    "2,1,,,\n"
    ",,1,,2\n"
    ",,1,2,\n";

// food without ballots 12-15, so nobody wins outright on first preferences.
inline const char* kFood3 =
    "Oranges,Pears,Chocolate,Strawberries,Sweets\n"
    ",,1,2,\n"
    ",,1,2,\n"
    ",,1,2,\n"
    "2,1,,,\n"
    ",,,1,\n"
    "1,,,,\n"
    ",,,,1\n"
    "1,,,,\n"
    ",,1,2,\n"
    ",,1,,2\n"
    "1,,,,\n"
    "1,,,,\n"
    ",,1,,2\n"
    "2,1,,,\n"
    ",,1,,2\n"
    ",,1,2,\n";

inline const char* kFaculty =
    "Cauchy,Gauss,Laplace,Nightingale,Poisson\n"
    "3,4,5,1,2\n"
    "4,1,2,3,5\n"
    "4,2,1,5,3\n"
    "4,2,3,1,5\n"
    "4,2,1,3,5\n"
    "5,2,3,1,4\n"
    "4,2,3,5,1\n"
    "5,2,4,1,3\n"
    "5,2,4,1,3\n"
    "5,4,1,2,3\n";

// faculty with ballots 1, 4, 9, 10 rewritten to carry equal preferences.
inline const char* kFaculty2 =
    "Cauchy,Gauss,Laplace,Nightingale,Poisson\n"
    "2,2,3,1,1\n"
    "4,1,2,3,5\n"
    "4,2,1,5,3\n"
    "3,1,2,1,3\n"
    "4,2,1,3,5\n"
    "5,2,3,1,4\n"
    "4,2,3,5,1\n"
    "5,2,4,1,3\n"
    "4,1,3,1,2\n"
    "2,1,1,1,1\n";

inline tally::BallotMatrix parse(const char* text, char sep = ',') {
    std::istringstream in(text);
    return tally::parse_ballots(in, sep);
}

inline std::string data_dir() {
#ifdef TALLY_DATA_DIR
    return TALLY_DATA_DIR;
#else
    return "data";
#endif
}

inline std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline bool close(double a, double b, double tol = 5e-4) { return std::fabs(a - b) <= tol; }

inline std::vector<double> row(std::initializer_list<double> vals) { return vals; }

constexpr double kMiss = std::numeric_limits<double>::quiet_NaN();

}  // namespace fixtures
