#pragma once

#include <optional>
#include <vector>

#include "rat.hpp"

namespace tripack {

enum class Rel { LE, EQ, GE };

struct LpRow {
    std::vector<Rat> coeffs;
    Rel rel;
    Rat rhs;
};

// Minimize objective . x subject to the rows and per-variable bounds.
// An absent bound means that side is unbounded.
struct LinearProgram {
    int num_vars = 0;
    std::vector<Rat> objective;
    std::vector<LpRow> rows;
    std::vector<std::optional<Rat>> lower, upper;

    static LinearProgram with_vars(int n) {
        LinearProgram lp;
        lp.num_vars = n;
        lp.objective.assign(n, Rat(0));
        lp.lower.assign(n, std::optional<Rat>{});
        lp.upper.assign(n, std::optional<Rat>{});
        return lp;
    }
    void add_row(std::vector<Rat> coeffs, Rel rel, Rat rhs) {
        require((int)coeffs.size() == num_vars, "row length mismatch");
        rows.push_back(LpRow{std::move(coeffs), rel, std::move(rhs)});
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// dual has one entry per original row: nonnegative for LE rows, nonpositive
// for GE rows, free for EQ rows, in the convention where the Lagrangian is
// objective + dual . (row value - rhs).
struct LpSolution {
    LpStatus status;
    std::vector<Rat> primal;
    std::vector<Rat> dual;
    Rat objective_value;
};

enum class SolveMode {
    Auto,        // float presolve for large programs, exact otherwise
    ExactOnly,   // exact simplex from scratch
    FloatFirst,  // force the float presolve + exact refactorization path
};

// Exact optimum with a dual certificate, or an exact infeasible/unbounded
// verdict. Optimal results always pass verify_solution before being
// returned; the float path merely proposes a basis, every number that
// leaves this function was computed in rational arithmetic.
LpSolution solve_lp(const LinearProgram& lp, SolveMode mode = SolveMode::Auto);

// Exact check that sol is an optimal pair for lp: primal feasibility, dual
// sign conditions, and equality of primal objective, claimed objective, and
// the dual bound. Returns false for non-optimal statuses.
bool verify_solution(const LinearProgram& lp, const LpSolution& sol);

// Exact feasibility check of a bare point against rows and bounds.
bool verify_feasible(const LinearProgram& lp, const std::vector<Rat>& x);

// Stops as soon as any feasible point with objective <= bound is certain.
// Such a result carries primal values and objective_value only; dual is left
// empty because the search stopped short of optimality. When the true
// optimum exceeds bound the fully certified optimum is returned instead, so
// callers can read the gap. Infeasible/Unbounded verdicts pass through.
LpSolution solve_lp_bounded(const LinearProgram& lp, const Rat& bound,
                            SolveMode mode = SolveMode::Auto);

// Best rational approximation of x with denominator at most `bound`, via
// continued fractions with a final semiconvergent refinement.
Rat rationalize(double x, const Int& bound);

}  // namespace tripack
