#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "property_suite.hpp"
#include "tally/baseline.hpp"
#include "tally/preferential.hpp"
#include "tally/report.hpp"
#include "tally/stv.hpp"

using namespace tally;

namespace {

// One gate per published result. Each records the first failed expectation;
// the runner prints exactly one PASS/FAIL/SKIP line per criterion.
struct Gate {
    bool ok = true;
    std::string first_failure;

    void expect(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
    void near(double got, double want, double tol, const std::string& what) {
        expect(std::fabs(got - want) <= tol,
               what + " (got " + std::to_string(got) + ", want " + std::to_string(want) + ")");
    }
    // A blank in the printed table: the candidate must already be retired.
    void cell(double got, double want, double tol, const std::string& what) {
        if (std::isnan(want))
            expect(is_missing(got), what + " should be blank");
        else
            near(got, want, tol, what);
    }
};

int failures = 0;

void run(int num, const std::string& label, double budget_s,
         const std::function<void(Gate&)>& body) {
    Gate gate;
    auto start = std::chrono::steady_clock::now();
    body(gate);
    double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    gate.expect(elapsed <= budget_s, "over the " + std::to_string(budget_s) + " s budget");
    if (gate.ok) {
        std::printf("PASS  criterion %2d: %s (%.3f s)\n", num, label.c_str(), elapsed);
    } else {
        std::printf("FAIL  criterion %2d: %s: %s (%.3f s)\n", num, label.c_str(),
                    gate.first_failure.c_str(), elapsed);
        ++failures;
    }
}

void skip(int num, const std::string& label, const std::string& why) {
    std::printf("SKIP  criterion %2d: %s (%s)\n", num, label.c_str(), why.c_str());
}

StvOptions stv_opts(int seats) {
    StvOptions o;
    o.seats = seats;
    return o;
}

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

}  // namespace

int main(int argc, char** argv) {
    std::string dir = argc > 1 ? argv[1] : "data";

    run(1, "plurality on the food election", 0.1, [](Gate& g) {
        auto r = count_plurality(threshold_indicator(fixtures::parse(fixtures::kFood), {1}), 1, 0);
        std::vector<double> want{4, 2, 12, 1, 1};
        g.expect(r.totals == want, "first-preference totals");
        g.expect(r.elected == std::vector<int>{2}, "winner Chocolate");
    });

    run(2, "two-round runoff on food_election3", 0.1, [](Gate& g) {
        auto r = count_two_round(fixtures::parse(fixtures::kFood3), 0);
        g.expect(r.first_totals == std::vector<double>{4, 2, 8, 1, 1}, "round-one totals");
        std::vector<std::string> want_pct{"25.0", "12.5", "50.0", "6.2", "6.2"};
        for (int j = 0; j < 5; ++j)
            g.expect(fixed_digits(r.first_percent[j], 1) == want_pct[j],
                     "round-one percent of candidate " + std::to_string(j + 1));
        g.expect(!r.majority_round1, "no majority in round one");
        g.expect(r.runoff_totals == std::vector<double>{6, 0, 8, 0, 0}, "runoff totals");
        g.expect(fixed_digits(r.runoff_percent[0], 1) == "42.9", "Oranges runoff percent");
        g.expect(fixed_digits(r.runoff_percent[2], 1) == "57.1", "Chocolate runoff percent");
        g.expect(r.elected == 2, "winner Chocolate");
    });

    run(3, "approval and score on the food election", 0.1, [](Gate& g) {
        auto food = fixtures::parse(fixtures::kFood);
        auto a = count_approval(indicator_from_present(food), 2, 0);
        g.expect(a.totals == std::vector<double>{6, 2, 12, 9, 5}, "approval totals");
        g.expect(std::accumulate(a.totals.begin(), a.totals.end(), 0.0) == 34, "approval sum");
        g.expect(a.elected == std::vector<int>{2, 3}, "approval winners");
        auto scored = food;
        scored.kind = BallotKind::Score;
        auto s = count_score(scored, 2, false, 6.0, 0);
        g.expect(s.totals == std::vector<double>{92, 110, 60, 83, 99}, "score totals");
        g.expect(std::accumulate(s.totals.begin(), s.totals.end(), 0.0) == 444, "score sum");
        g.expect(s.elected == std::vector<int>{2, 3}, "score winners");
    });

    run(4, "condorcet on food and faculty", 0.1, [](Gate& g) {
        auto food = condorcet(fixtures::parse(fixtures::kFood), false);
        g.expect(food.pairwise.totals == std::vector<int>{2, 0, 4, 3, 1}, "food win totals");
        g.expect(food.winner == 2 && food.loser == 1, "food winner/loser");
        auto fac = condorcet(fixtures::parse(fixtures::kFaculty), false);
        g.expect(fac.pairwise.totals == std::vector<int>{0, 3, 2, 3, 1}, "faculty win totals");
        g.expect(fac.winner == -1 && fac.loser == 0, "faculty has no winner, loser Cauchy");
    });

    run(5, "stv on the food election, two seats", 0.1, [](Gate& g) {
        auto r = count_stv(fixtures::parse(fixtures::kFood), stv_opts(2));
        g.expect(r.records.size() == 4, "four counts");
        double quotas[] = {6.668, 6.667, 6.667, 5.278};
        double totals[4][5] = {{4, 2, 12, 1, 1},
                               {4, 2, kNan, 4.555, 2.777},
                               {6, kNan, kNan, 4.555, 2.777},
                               {6, kNan, kNan, 4.555, kNan}};
        double trans[4][5] = {{kNan, kNan, kNan, kNan, kNan},
                              {0, 0, -5.332, 3.555, 1.777},
                              {2, -2, kNan, 0, 0},
                              {0, kNan, kNan, 0, -2.777}};
        for (int i = 0; i < 4; ++i) {
            g.near(r.records[i].quota, quotas[i], 5e-4, "quota at count " + std::to_string(i + 1));
            for (int j = 0; j < 5; ++j) {
                auto at = " of candidate " + std::to_string(j + 1) + " at count " +
                          std::to_string(i + 1);
                g.cell(r.records[i].totals[j], totals[i][j], 5e-4, "total" + at);
                g.cell(r.records[i].transfers[j], trans[i][j], 5e-4, "transfer" + at);
            }
        }
        auto ev = [&](int i, CountEvent::Kind k, int cand, const std::string& what) {
            g.expect(r.records[i].event.kind == k && r.records[i].event.candidate == cand, what);
        };
        ev(0, CountEvent::Elected, 2, "Chocolate elected at count 1");
        ev(1, CountEvent::Eliminated, 1, "Pears eliminated at count 2");
        ev(2, CountEvent::Eliminated, 4, "Sweets eliminated at count 3");
        ev(3, CountEvent::Elected, 0, "Oranges elected at count 4");
        g.expect(r.ranking == std::vector<int>{2, 0, 3, 4, 1}, "complete ranking");
    });

    run(6, "stv with equal preferences on food_election2", 0.1, [](Gate& g) {
        StvOptions o = stv_opts(2);
        o.equal_ranking = true;
        auto r = count_stv(fixtures::parse(fixtures::kFood2), o);
        g.near(r.records[0].totals[2], 10.500, 5e-4, "Chocolate at count 1");
        g.near(r.records[0].totals[3], 2.500, 5e-4, "Strawberries at count 1");
        g.near(r.records[1].transfers[3], 2.372, 5e-4, "Strawberries transfer");
        g.near(r.records[1].transfers[4], 1.460, 5e-4, "Sweets transfer");
        g.near(r.records.back().quota, 5.437, 5e-4, "final quota");
        g.expect(r.elected == std::vector<int>{2, 0}, "elected Chocolate, Oranges");
    });

    run(7, "stv on faculty (two seats) and faculty2 with equal preferences", 0.1, [](Gate& g) {
        StvOptions o = stv_opts(2);
        o.complete_ranking = true;
        auto r = count_stv(fixtures::parse(fixtures::kFaculty), o);
        g.expect(r.records.size() == 4, "four counts");
        for (int i = 0; i < 4; ++i)
            g.near(r.records[i].quota, 3.33, 5e-3, "quota at count " + std::to_string(i + 1));
        double gauss[] = {1.00, 2.33, 2.33, 3.67};
        for (int i = 0; i < 4; ++i)
            g.near(r.records[i].totals[1], gauss[i], 5e-3,
                   "Gauss at count " + std::to_string(i + 1));
        g.expect(r.elected == std::vector<int>{3, 1}, "elected Nightingale, Gauss");
        g.expect(r.ranking == std::vector<int>{3, 1, 2, 4, 0}, "complete ranking order");
        g.expect(render_markdown(r, 2).find("Complete Ranking") != std::string::npos,
                 "complete ranking section printed");

        StvOptions oe = stv_opts(2);
        oe.equal_ranking = true;
        auto r2 = count_stv(fixtures::parse(fixtures::kFaculty2), oe);
        double firsts[] = {0.00, 2.25, 2.25, 3.75, 1.75};
        for (int j = 0; j < 5; ++j)
            g.near(r2.records[0].totals[j], firsts[j], 5e-3,
                   "faculty2 count-1 total of candidate " + std::to_string(j + 1));
        g.expect(r2.validation.corrected_rows == std::vector<int>{1, 4, 9, 10}, "corrected rows");
        g.expect(r2.data.rows[0] == std::vector<double>{3, 3, 5, 1, 1}, "corrected first row");
    });

    run(8, "stv on faculty with a reserved seat", 0.1, [](Gate& g) {
        StvOptions o = stv_opts(2);
        o.reserved = ReservedSpec{1, {"Laplace", "Poisson", "Cauchy"}};
        auto r = count_stv(fixtures::parse(fixtures::kFaculty), o);
        g.expect(r.records.size() == 3, "three counts");
        g.expect(r.records[1].event.kind == CountEvent::Eliminated &&
                     r.records[1].event.candidate == 1,
                 "Gauss eliminated at count 2");
        g.near(r.records[2].transfers[1], -2.33, 5e-3, "Gauss leaving transfer");
        g.near(r.records[2].transfers[2], 1.67, 5e-3, "Laplace transfer");
        g.near(r.records[2].totals[2], 4.67, 5e-3, "Laplace at count 3");
        g.near(r.records[2].transfers[4], 0.67, 5e-3, "Poisson transfer");
        g.near(r.records[2].totals[4], 2.00, 5e-3, "Poisson at count 3");
        g.expect(r.records[2].event.kind == CountEvent::Elected &&
                     r.records[2].event.candidate == 2,
                 "Laplace elected at count 3");
        g.expect(r.elected == std::vector<int>{3, 2}, "elected Nightingale, Laplace");
    });

    run(9, "stv on faculty, single seat, with tie tags", 0.1, [](Gate& g) {
        auto r = count_stv(fixtures::parse(fixtures::kFaculty), stv_opts(1));
        g.expect(r.records.size() == 5, "five counts");
        g.expect(r.records[1].event.kind == CountEvent::Eliminated &&
                     r.records[1].event.candidate == 4 && r.records[1].event.tie_tag == "fo",
                 "count 2 eliminates Poisson by tag fo");
        g.expect(r.records[3].event.kind == CountEvent::Eliminated &&
                     r.records[3].event.candidate == 2 && r.records[3].event.tie_tag == "f",
                 "count 4 eliminates Laplace by tag f");
        g.expect(r.records[4].event.kind == CountEvent::Elected &&
                     r.records[4].event.candidate == 3,
                 "Nightingale elected at count 5");
        g.near(r.records[4].totals[3], 10.000, 5e-3, "Nightingale final total");
        g.near(r.records[4].quota, 5.001, 5e-3, "final quota");

        StvOptions ob = stv_opts(1);
        ob.ties = 'b';
        auto rb = count_stv(fixtures::parse(fixtures::kFaculty), ob);
        g.expect(rb.records[3].event.candidate == 2 && rb.records[3].event.tie_tag == "b",
                 "backwards policy still eliminates Laplace at count 4, tag b");

        auto ord = ordered_ranking(fixtures::parse(fixtures::kFaculty), 0);
        g.expect(ord.rank == std::vector<int>{1, 3, 4, 5, 2}, "ordered ranking of faculty");
        g.expect(std::none_of(ord.sampled.begin(), ord.sampled.end(), [](bool s) { return s; }),
                 "no sampled flags");
    });

    run(10, "randomized property suite", 60.0, [](Gate& g) {
        auto results = run_property_suite(1200, 20260815ULL);
        for (const auto& p : results)
            g.expect(p.pass, p.name + " — " + p.detail);
    });

    const std::string dublin = dir + "/dublin_west.csv";
    if (!std::filesystem::exists(dublin)) {
        skip(11, "dublin west 2002 (external data)", dublin + " not supplied");
    } else {
        run(11, "dublin west 2002 (external data)", 30.0, [&](Gate& g) {
            auto b = parse_ballots_file(dublin);
            int lenihan = b.index_of("Lenihan"), higgins = b.index_of("Higgins");
            int burton = b.index_of("Burton"), smyth = b.index_of("Smyth");
            g.expect(lenihan >= 0 && higgins >= 0 && burton >= 0 && smyth >= 0,
                     "expected candidate names present");
            if (!g.ok) return;

            auto p = count_plurality(threshold_indicator(b, {1}), 1, 0);
            g.expect(p.totals[lenihan] == 8086 && p.totals[higgins] == 6442 &&
                         p.totals[burton] == 3810 && p.totals[smyth] == 134,
                     "plurality totals");
            g.expect(p.elected == std::vector<int>{lenihan}, "plurality winner Lenihan");

            auto t = count_two_round(b, 0);
            g.expect(t.runoff_totals[lenihan] == 13900 && t.runoff_totals[higgins] == 12457,
                     "runoff totals");
            g.expect(fixed_digits(t.runoff_percent[lenihan], 1) == "52.7" &&
                         fixed_digits(t.runoff_percent[higgins], 1) == "47.3",
                     "runoff percents");
            g.expect(t.elected == lenihan, "runoff winner Lenihan");

            auto c = condorcet(b, false);
            g.expect(c.winner == lenihan && c.pairwise.totals[lenihan] == 8,
                     "condorcet winner Lenihan with total 8");
            g.expect(c.loser == smyth, "condorcet loser Smyth");

            StvOptions o = stv_opts(3);
            o.epsilon = 1.0;
            auto start = std::chrono::steady_clock::now();
            auto r = count_stv(b, o);
            double stv_s =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            g.expect(stv_s < 2.0, "stv count took " + std::to_string(stv_s) + " s (budget 2 s)");
            g.expect(r.records.size() == 8, "eight counts");
            const char* quotas[] = {"7498", "7491", "7486", "7465",
                                    "7303", "7233", "7043", "6143"};
            const char* burton_path[] = {"3810", "3865", "3869", "4076",
                                         "4372", "4583", "5345", "6536"};
            for (int i = 0; i < 8 && i < static_cast<int>(r.records.size()); ++i) {
                g.expect(fixed_digits(r.records[i].quota, 0) == quotas[i],
                         "quota at count " + std::to_string(i + 1));
                g.expect(fixed_digits(r.records[i].totals[burton], 0) == burton_path[i],
                         "Burton at count " + std::to_string(i + 1));
            }
            g.expect(r.elected == std::vector<int>{lenihan, higgins, burton},
                     "elected Lenihan, Higgins, Burton");
        });
    }

    std::printf("%s: %d criterion failure%s\n", failures ? "FAIL" : "OK", failures,
                failures == 1 ? "" : "s");
    return failures ? 1 : 0;
}
