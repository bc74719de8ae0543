#include <vector>

#include "doctest.h"
#include "lp.hpp"
#include "test_util.hpp"

using namespace tripack;
using testutil::Rng;

namespace {

LinearProgram tiny_max_x() {
    LinearProgram lp = LinearProgram::with_vars(1);
    lp.objective[0] = -1;
    lp.lower[0] = Rat(0);
    lp.add_row({Rat(1)}, Rel::LE, Rat(1));
    return lp;
}

}  // namespace

TEST_CASE("one-variable optima and verdicts") {
    {
        LpSolution s = solve_lp(tiny_max_x());
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.primal[0] == 1);
        CHECK(s.objective_value == -1);
        CHECK(s.dual[0] == 1);
        CHECK(verify_solution(tiny_max_x(), s));
    }
    {
        LinearProgram lp = LinearProgram::with_vars(1);
        lp.lower[0] = Rat(0);
        lp.add_row({Rat(1)}, Rel::LE, Rat(-1));
        CHECK(solve_lp(lp).status == LpStatus::Infeasible);
    }
    {
        LinearProgram lp = LinearProgram::with_vars(1);
        lp.objective[0] = -1;
        lp.lower[0] = Rat(0);
        CHECK(solve_lp(lp).status == LpStatus::Unbounded);
    }
    {
        // Free variable pinned by an equality.
        LinearProgram lp = LinearProgram::with_vars(1);
        lp.add_row({Rat(1)}, Rel::EQ, Rat(7));
        LpSolution s = solve_lp(lp);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.primal[0] == 7);
    }
    {
        LinearProgram lp = LinearProgram::with_vars(1);
        lp.objective[0] = 1;
        lp.add_row({Rat(1)}, Rel::GE, Rat(3));
        LpSolution s = solve_lp(lp);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.objective_value == 3);
        CHECK(sgn(s.dual[0]) <= 0);
    }
    {
        LinearProgram lp = LinearProgram::with_vars(1);
        lp.objective[0] = 1;
        lp.lower[0] = Rat(3);
        lp.upper[0] = Rat(3);
        LpSolution s = solve_lp(lp);
        REQUIRE(s.status == LpStatus::Optimal);
        CHECK(s.objective_value == 3);
    }
    {
        LinearProgram lp = LinearProgram::with_vars(0);
        CHECK(solve_lp(lp).status == LpStatus::Optimal);
        lp.add_row({}, Rel::LE, Rat(-1));
        CHECK(solve_lp(lp).status == LpStatus::Infeasible);
    }
}

TEST_CASE("equalities and bound flips") {
    LinearProgram lp = LinearProgram::with_vars(2);
    lp.objective = {Rat(1), Rat(1)};
    lp.lower = {Rat(0), Rat(0)};
    lp.upper = {Rat(5), Rat(5)};
    lp.add_row({Rat(1), Rat(1)}, Rel::EQ, Rat(2));
    LpSolution s = solve_lp(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective_value == 2);
    CHECK(verify_solution(lp, s));

    LinearProgram f = LinearProgram::with_vars(2);
    f.objective = {Rat(-1), Rat(-1)};
    f.lower = {Rat(0), Rat(0)};
    f.upper = {Rat(1), Rat(2)};
    f.add_row({Rat(1), Rat(1)}, Rel::LE, Rat(2));
    LpSolution t = solve_lp(f);
    REQUIRE(t.status == LpStatus::Optimal);
    CHECK(t.objective_value == -2);
    CHECK(verify_solution(f, t));
}

TEST_CASE("degenerate program known to cycle under naive pivoting") {
    LinearProgram lp = LinearProgram::with_vars(4);
    lp.objective = {Rat(-3, 4), Rat(150), Rat(-1, 50), Rat(6)};
    for (int j = 0; j < 4; ++j) lp.lower[j] = Rat(0);
    lp.add_row({Rat(1, 4), Rat(-60), Rat(-1, 25), Rat(9)}, Rel::LE, Rat(0));
    lp.add_row({Rat(1, 2), Rat(-90), Rat(-1, 50), Rat(3)}, Rel::LE, Rat(0));
    lp.add_row({Rat(0), Rat(0), Rat(1), Rat(0)}, Rel::LE, Rat(1));
    LpSolution s = solve_lp(lp, SolveMode::ExactOnly);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.objective_value == Rat(-1, 20));
    CHECK(verify_solution(lp, s));
}

TEST_CASE("verify_solution rejects perturbed certificates") {
    LinearProgram lp = tiny_max_x();
    LpSolution s = solve_lp(lp);
    REQUIRE(verify_solution(lp, s));
    LpSolution bad = s;
    bad.primal[0] += Rat(1, 1000000);
    CHECK_FALSE(verify_solution(lp, bad));
    bad = s;
    bad.dual[0] += Rat(1, 1000000);
    CHECK_FALSE(verify_solution(lp, bad));
    bad = s;
    bad.objective_value += Rat(1, 1000000);
    CHECK_FALSE(verify_solution(lp, bad));
    bad = s;
    bad.status = LpStatus::Infeasible;
    CHECK_FALSE(verify_solution(lp, bad));
}

TEST_CASE("exact and float-first paths agree on random programs") {
    Rng rng(7);
    int optimal = 0, infeasible = 0, unbounded = 0;
    for (int iter = 0; iter < 250; ++iter) {
        int n = 1 + (int)rng.below(5);
        int m = (int)rng.below(5);
        LinearProgram lp = LinearProgram::with_vars(n);
        for (int j = 0; j < n; ++j) {
            lp.objective[j] = rat_of((long)rng.below(11) - 5, 1 + (long)rng.below(2));
            switch (rng.below(4)) {
                case 0: break;  // free
                case 1: lp.lower[j] = Rat(-(long)rng.below(3)); break;
                case 2: lp.upper[j] = Rat((long)rng.below(4)); break;
                default:
                    lp.lower[j] = Rat(-(long)rng.below(3));
                    lp.upper[j] = *lp.lower[j] + Rat((long)rng.below(5));
            }
        }
        for (int i = 0; i < m; ++i) {
            std::vector<Rat> row(n);
            for (int j = 0; j < n; ++j) row[j] = Rat((long)rng.below(7) - 3);
            Rel rel = rng.below(3) == 0 ? Rel::EQ
                      : rng.below(2) == 0 ? Rel::LE
                                          : Rel::GE;
            lp.add_row(row, rel, Rat((long)rng.below(9) - 4));
        }
        LpSolution a = solve_lp(lp, SolveMode::ExactOnly);
        LpSolution b = solve_lp(lp, SolveMode::FloatFirst);
        CHECK(a.status == b.status);
        if (a.status == LpStatus::Optimal) {
            ++optimal;
            CHECK(a.objective_value == b.objective_value);
            CHECK(verify_solution(lp, a));
            CHECK(verify_solution(lp, b));
        } else if (a.status == LpStatus::Infeasible) {
            ++infeasible;
        } else {
            ++unbounded;
        }
    }
    // The generator must actually exercise all three verdicts.
    CHECK(optimal > 30);
    CHECK(infeasible > 30);
    CHECK(unbounded > 30);
}

TEST_CASE("float presolve handles a larger structured program") {
    // Transportation-style program, large enough that Auto takes the float
    // path first.
    Rng rng(8);
    int ns = 6, nd = 8;
    int n = ns * nd;
    LinearProgram lp = LinearProgram::with_vars(n);
    std::vector<long> supply(ns), demand(nd);
    long total = 0;
    for (int d = 0; d < nd; ++d) {
        demand[d] = 1 + (long)rng.below(5);
        total += demand[d];
    }
    for (int s = 0; s < ns; ++s) supply[s] = total;  // slack supply
    for (int s = 0; s < ns; ++s)
        for (int d = 0; d < nd; ++d) {
            int j = s * nd + d;
            lp.objective[j] = Rat(1 + (long)rng.below(9));
            lp.lower[j] = Rat(0);
        }
    for (int s = 0; s < ns; ++s) {
        std::vector<Rat> row(n, Rat(0));
        for (int d = 0; d < nd; ++d) row[s * nd + d] = 1;
        lp.add_row(row, Rel::LE, Rat(supply[s]));
    }
    for (int d = 0; d < nd; ++d) {
        std::vector<Rat> row(n, Rat(0));
        for (int s = 0; s < ns; ++s) row[s * nd + d] = 1;
        lp.add_row(row, Rel::GE, Rat(demand[d]));
    }
    LpSolution a = solve_lp(lp, SolveMode::Auto);
    LpSolution b = solve_lp(lp, SolveMode::ExactOnly);
    REQUIRE(a.status == LpStatus::Optimal);
    CHECK(a.objective_value == b.objective_value);
    CHECK(verify_solution(lp, a));
}

TEST_CASE("rationalize recovers simple fractions") {
    CHECK(rationalize(0.5, 10) == Rat(1, 2));
    CHECK(rationalize(0.333333, 10) == Rat(1, 3));
    CHECK(rationalize(0.142857142857, 100) == Rat(1, 7));
    CHECK(rationalize(0.1, 100) == Rat(1, 10));
    CHECK(rationalize(-0.5, 10) == Rat(-1, 2));
    CHECK(rationalize(0.6, 1) == Rat(1));
    CHECK(rationalize(2.0, 5) == Rat(2));
    CHECK(rationalize(0.0, 7) == Rat(0));
    // Exact when the denominator already fits.
    CHECK(rationalize(0.375, 1000) == Rat(3, 8));
    // Best approximations of pi.
    CHECK(rationalize(3.14159265358979, 10) == Rat(22, 7));
    CHECK(rationalize(3.14159265358979, 400) == Rat(355, 113));
    CHECK_THROWS_AS(rationalize(0.5, 0), Error);
}
