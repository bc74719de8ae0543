#include "lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>

namespace tripack {

namespace {

// Rows in the normalized form A x <= b. src records (original row, sign):
// GE rows are negated, EQ rows appear twice with both signs.
struct NormLp {
    int nvars = 0;
    std::vector<std::vector<Rat>> A;
    std::vector<Rat> b;
    std::vector<std::pair<int, int>> src;
};

NormLp normalize(const LinearProgram& lp) {
    NormLp nl;
    nl.nvars = lp.num_vars;
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        const LpRow& r = lp.rows[i];
        require((int)r.coeffs.size() == lp.num_vars, "row length mismatch");
        if (r.rel == Rel::LE || r.rel == Rel::EQ) {
            nl.A.push_back(r.coeffs);
            nl.b.push_back(r.rhs);
            nl.src.emplace_back((int)i, +1);
        }
        if (r.rel == Rel::GE || r.rel == Rel::EQ) {
            std::vector<Rat> neg(r.coeffs.size());
            for (size_t j = 0; j < r.coeffs.size(); ++j) neg[j] = -r.coeffs[j];
            nl.A.push_back(std::move(neg));
            nl.b.push_back(-r.rhs);
            nl.src.emplace_back((int)i, -1);
        }
    }
    return nl;
}

struct RatField {
    using T = Rat;
    static bool pos(const T& x) { return sgn(x) > 0; }
    static bool neg(const T& x) { return sgn(x) < 0; }
    static bool zero(const T& x) { return sgn(x) == 0; }
    static T conv(const Rat& r) { return r; }
    static double to_double(const T& x) { return x.get_d(); }
};

struct DoubleField {
    using T = double;
    static constexpr double eps = 1e-9;
    static bool pos(double x) { return x > eps; }
    static bool neg(double x) { return x < -eps; }
    static bool zero(double x) { return x >= -eps && x <= eps; }
    static double conv(const Rat& r) { return r.get_d(); }
    static double to_double(double x) { return x; }
};

enum VState : uint8_t { Basic, AtLower, AtUpper, FreeZero };

// Bounded-variable two-phase primal simplex on a dense tableau. The exact
// instantiation uses Bland's rule throughout, so it cannot cycle; the float
// instantiation starts greedy and degrades to Bland's rule under stalling,
// with an iteration cap as the last resort.
template <class F>
struct Engine {
    using T = typename F::T;

    int m = 0, nv = 0, K = 0;
    std::vector<std::vector<T>> tab;
    std::vector<T> beta, zrow, cost;
    std::vector<int> basis;
    std::vector<VState> st;
    std::vector<char> lof, hif, art;
    std::vector<T> lo, hi;
    std::vector<int> art_rows;
    std::vector<double> gamma;  // devex reference weights, greedy mode only
    bool bland = true;
    long iter_cap = -1;
    long total_iters = 0;
    long p1_iters = 0;
    bool cap_hit = false;
    bool stop_phase2 = false;
    bool stop_enabled = false;
    bool stopped = false;
    T stop_at{};

    T xval(int j) const {
        if (st[j] == AtLower) return lo[j];
        if (st[j] == AtUpper) return hi[j];
        return T(0);
    }

    bool is_fixed(int j) const {
        return lof[j] && hif[j] && !F::pos(hi[j] - lo[j]);
    }

    void rebuild_zrow() {
        zrow = cost;
        for (int i = 0; i < m; ++i) {
            const T& cb = cost[basis[i]];
            if (F::zero(cb)) continue;
            for (int j = 0; j < K; ++j) zrow[j] -= cb * tab[i][j];
        }
    }

    T current_objective() const {
        T obj(0);
        for (int i = 0; i < m; ++i) obj += cost[basis[i]] * beta[i];
        for (int j = 0; j < K; ++j)
            if (st[j] != Basic && !F::zero(cost[j])) obj += cost[j] * xval(j);
        return obj;
    }

    void pivot(int r, int e, const T& t, int dir, bool to_upper) {
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            const T& d = tab[i][e];
            if (!F::zero(d)) beta[i] -= T(dir) * t * d;
        }
        T enter_val = xval(e) + T(dir) * t;
        int leave = basis[r];
        st[leave] = to_upper ? AtUpper : AtLower;
        T piv = tab[r][e];
        for (int j = 0; j < K; ++j) tab[r][j] /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == r) continue;
            T f = tab[i][e];
            if (F::zero(f)) continue;
            for (int j = 0; j < K; ++j) tab[i][j] -= f * tab[r][j];
            tab[i][e] = T(0);
        }
        T zf = zrow[e];
        if (!F::zero(zf))
            for (int j = 0; j < K; ++j) zrow[j] -= zf * tab[r][j];
        zrow[e] = T(0);
        basis[r] = e;
        st[e] = Basic;
        beta[r] = enter_val;
        if (!bland && !gamma.empty()) {
            double gq = gamma[e];
            double apq = F::to_double(piv);
            double gmax = 1.0;
            for (int j = 0; j < K; ++j) {
                if (st[j] == Basic) continue;
                double arj = F::to_double(tab[r][j]);
                double cand = arj * arj * gq;
                if (cand > gamma[j]) gamma[j] = cand;
                if (gamma[j] > gmax) gmax = gamma[j];
            }
            double gl = gq / (apq * apq);
            gamma[leave] = gl > 1.0 ? gl : 1.0;
            if (gmax > 1e12) gamma.assign(K, 1.0);
        }
    }

    // Returns Optimal when no entering variable exists (or the cap fires,
    // flagged in cap_hit), Unbounded when a direction has no blocking bound.
    LpStatus iterate() {
        long iters = 0, since_improve = 0;
        T best_obj = current_objective();
        while (true) {
            if (stop_enabled && !(current_objective() > stop_at)) {
                stopped = true;
                return LpStatus::Optimal;
            }
            if (iter_cap >= 0 && iters++ >= iter_cap) {
                cap_hit = true;
                return LpStatus::Optimal;
            }
            ++total_iters;
            int e = -1, dir = 0;
            double score = 0;
            for (int j = 0; j < K; ++j) {
                if (st[j] == Basic || is_fixed(j)) continue;
                int d;
                if ((st[j] == AtLower || st[j] == FreeZero) && F::neg(zrow[j]))
                    d = +1;
                else if ((st[j] == AtUpper || st[j] == FreeZero) && F::pos(zrow[j]))
                    d = -1;
                else
                    continue;
                if (bland) {
                    e = j;
                    dir = d;
                    break;
                }
                double s = F::to_double(d > 0 ? -zrow[j] : zrow[j]);
                double sc = gamma.empty() ? s : s * s / gamma[j];
                if (e < 0 || sc > score) {
                    e = j;
                    dir = d;
                    score = sc;
                }
            }
            if (e < 0) return LpStatus::Optimal;

            bool has_span = lof[e] && hif[e];
            T span = has_span ? T(hi[e] - lo[e]) : T(0);
            bool unlimited = true;
            T tmin(0);
            int lrow = -1;
            bool to_upper = false;
            for (int i = 0; i < m; ++i) {
                const T& d = tab[i][e];
                T step = dir > 0 ? d : T(-d);
                int k = basis[i];
                T t;
                bool up;
                if (F::pos(step)) {
                    if (!lof[k]) continue;
                    t = (beta[i] - lo[k]) / step;
                    up = false;
                } else if (F::neg(step)) {
                    if (!hif[k]) continue;
                    t = (hi[k] - beta[i]) / -step;
                    up = true;
                } else {
                    continue;
                }
                if (F::neg(t)) t = T(0);  // degenerate beyond-bound guard
                if (unlimited || t < tmin ||
                    (!(tmin < t) && lrow >= 0 && k < basis[lrow])) {
                    unlimited = false;
                    tmin = t;
                    lrow = i;
                    to_upper = up;
                }
            }
            if (has_span && (unlimited || !(span > tmin))) {
                // Bound flip: the entering variable crosses its whole range
                // before any basic variable hits a bound.
                for (int i = 0; i < m; ++i) {
                    const T& d = tab[i][e];
                    if (!F::zero(d)) beta[i] -= T(dir) * span * d;
                }
                st[e] = st[e] == AtLower ? AtUpper : AtLower;
            } else if (unlimited) {
                return LpStatus::Unbounded;
            } else {
                pivot(lrow, e, tmin, dir, to_upper);
            }
            if (!bland) {
                T obj = current_objective();
                if (obj < best_obj - T(DoubleField::eps)) {
                    best_obj = obj;
                    since_improve = 0;
                } else if (++since_improve > 60) {
                    bland = true;
                }
            }
        }
    }

    LpStatus run(const LinearProgram& lp, const NormLp& nl) {
        m = (int)nl.A.size();
        nv = nl.nvars;
        int base = nv + m;
        lof.assign(base, 0);
        hif.assign(base, 0);
        lo.assign(base, T(0));
        hi.assign(base, T(0));
        art.assign(base, 0);
        st.assign(base, AtLower);
        for (int j = 0; j < nv; ++j) {
            if (lp.lower[j]) {
                lof[j] = 1;
                lo[j] = F::conv(*lp.lower[j]);
            }
            if (lp.upper[j]) {
                hif[j] = 1;
                hi[j] = F::conv(*lp.upper[j]);
            }
            st[j] = lof[j] ? AtLower : (hif[j] ? AtUpper : FreeZero);
        }
        for (int i = 0; i < m; ++i) lof[nv + i] = 1;  // slacks in [0, inf)

        std::vector<T> rho(m);
        for (int i = 0; i < m; ++i) {
            T r = F::conv(nl.b[i]);
            for (int j = 0; j < nv; ++j) {
                if (st[j] == FreeZero) continue;
                T v = xval(j);
                if (!F::zero(v)) r -= F::conv(nl.A[i][j]) * v;
            }
            rho[i] = r;
            if (F::neg(r)) art_rows.push_back(i);
        }
        K = base + (int)art_rows.size();
        lof.resize(K, 1);
        hif.resize(K, 0);
        lo.resize(K, T(0));
        hi.resize(K, T(0));
        art.resize(K, 0);
        st.resize(K, AtLower);
        for (int t = 0; t < (int)art_rows.size(); ++t) art[base + t] = 1;

        tab.assign(m, std::vector<T>(K, T(0)));
        beta.assign(m, T(0));
        basis.assign(m, -1);
        if (!bland) gamma.assign(K, 1.0);
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < nv; ++j) tab[i][j] = F::conv(nl.A[i][j]);
            tab[i][nv + i] = T(1);
        }
        for (int t = 0; t < (int)art_rows.size(); ++t)
            tab[art_rows[t]][base + t] = T(-1);
        for (int i = 0; i < m; ++i) {
            basis[i] = nv + i;
            beta[i] = rho[i];
            st[nv + i] = Basic;
        }
        for (int t = 0; t < (int)art_rows.size(); ++t) {
            int i = art_rows[t];
            for (int j = 0; j < K; ++j) tab[i][j] = -tab[i][j];
            beta[i] = -rho[i];
            st[nv + i] = AtLower;
            basis[i] = base + t;
            st[base + t] = Basic;
        }

        if (!art_rows.empty()) {
            cost.assign(K, T(0));
            for (int t = 0; t < (int)art_rows.size(); ++t) cost[base + t] = T(1);
            rebuild_zrow();
            LpStatus p1 = iterate();
            p1_iters = total_iters;
            require(p1 != LpStatus::Unbounded,
                    "internal error: infeasibility phase diverged");
            if (cap_hit) return LpStatus::Optimal;
            if (F::pos(current_objective())) return LpStatus::Infeasible;
            // Fix artificials at zero; drive basic ones out where possible.
            for (int t = 0; t < (int)art_rows.size(); ++t) hif[base + t] = 1;
            for (int r = 0; r < m; ++r) {
                if (!art[basis[r]]) continue;
                for (int j = 0; j < base; ++j) {
                    if (st[j] == Basic || is_fixed(j) || F::zero(tab[r][j]))
                        continue;
                    pivot(r, j, T(0), +1, false);
                    break;
                }
            }
        }

        cost.assign(K, T(0));
        for (int j = 0; j < nv; ++j) cost[j] = F::conv(lp.objective[j]);
        rebuild_zrow();
        stop_enabled = stop_phase2;
        return iterate();
    }
};

// Exact Gaussian elimination; returns false when the matrix is singular.
bool solve_system(std::vector<std::vector<Rat>> a, std::vector<Rat> rhs,
                  std::vector<Rat>& out) {
    int n = (int)a.size();
    for (int k = 0; k < n; ++k) {
        int pr = -1;
        for (int i = k; i < n; ++i)
            if (sgn(a[i][k]) != 0) {
                pr = i;
                break;
            }
        if (pr < 0) return false;
        std::swap(a[k], a[pr]);
        std::swap(rhs[k], rhs[pr]);
        Rat inv = 1 / a[k][k];
        for (int j = k; j < n; ++j) a[k][j] *= inv;
        rhs[k] *= inv;
        for (int i = 0; i < n; ++i) {
            if (i == k || sgn(a[i][k]) == 0) continue;
            Rat f = a[i][k];
            for (int j = k; j < n; ++j) a[i][j] -= f * a[k][j];
            rhs[i] -= f * rhs[k];
        }
    }
    out = rhs;
    return true;
}

// Rebuild only the primal side of a float basis in exact arithmetic; accept
// it when feasible, and under `bound` when one is given.
std::optional<LpSolution> crash_primal(const LinearProgram& lp, const NormLp& nl,
                                       const std::vector<int>& basis,
                                       const std::vector<VState>& st,
                                       const std::vector<int>& art_rows,
                                       const std::optional<Rat>& bound) {
    int m = (int)nl.A.size(), nv = nl.nvars;
    int base = nv + m;
    int K = base + (int)art_rows.size();

    auto column = [&](int j) {
        std::vector<Rat> c(m, Rat(0));
        if (j < nv) {
            for (int i = 0; i < m; ++i) c[i] = nl.A[i][j];
        } else if (j < base) {
            c[j - nv] = 1;
        } else {
            c[art_rows[j - base]] = -1;
        }
        return c;
    };
    auto lower_of = [&](int j) -> std::optional<Rat> {
        if (j < nv) return lp.lower[j];
        return Rat(0);
    };
    auto upper_of = [&](int j) -> std::optional<Rat> {
        if (j < nv) return lp.upper[j];
        if (j < base) return std::optional<Rat>{};
        return Rat(0);  // artificials are fixed at zero
    };
    auto xval = [&](int j) -> Rat {
        if (st[j] == AtLower) return lower_of(j).value();
        if (st[j] == AtUpper) return upper_of(j).value();
        return Rat(0);
    };

    std::vector<Rat> rhs = nl.b;
    for (int j = 0; j < K; ++j) {
        if (st[j] == Basic) continue;
        Rat v = xval(j);
        if (sgn(v) == 0) continue;
        std::vector<Rat> c = column(j);
        for (int i = 0; i < m; ++i)
            if (sgn(c[i]) != 0) rhs[i] -= c[i] * v;
    }
    std::vector<std::vector<Rat>> B(m, std::vector<Rat>(m));
    for (int i = 0; i < m; ++i) {
        std::vector<Rat> c = column(basis[i]);
        for (int r = 0; r < m; ++r) B[r][i] = c[r];
    }
    std::vector<Rat> xb;
    if (!solve_system(B, rhs, xb)) return std::nullopt;
    for (int i = 0; i < m; ++i) {
        int j = basis[i];
        auto l = lower_of(j), u = upper_of(j);
        if (l && xb[i] < *l) return std::nullopt;
        if (u && xb[i] > *u) return std::nullopt;
    }

    LpSolution sol;
    sol.status = LpStatus::Optimal;
    sol.primal.assign(nv, Rat(0));
    for (int j = 0; j < nv; ++j)
        if (st[j] != Basic) sol.primal[j] = xval(j);
    for (int i = 0; i < m; ++i)
        if (basis[i] < nv) sol.primal[basis[i]] = xb[i];
    sol.objective_value = 0;
    for (int j = 0; j < nv; ++j)
        sol.objective_value += lp.objective[j] * sol.primal[j];
    if (bound && sol.objective_value > *bound) return std::nullopt;
    return sol;
}

// Rebuild the float engine's final basis in exact arithmetic and accept it
// only if it satisfies the optimality conditions exactly.
std::optional<LpSolution> crash_basis(const LinearProgram& lp, const NormLp& nl,
                                      const std::vector<int>& basis,
                                      const std::vector<VState>& st,
                                      const std::vector<int>& art_rows) {
    std::optional<LpSolution> primal =
        crash_primal(lp, nl, basis, st, art_rows, std::nullopt);
    if (!primal) return std::nullopt;
    int m = (int)nl.A.size(), nv = nl.nvars;
    int base = nv + m;
    int K = base + (int)art_rows.size();

    auto column = [&](int j) {
        std::vector<Rat> c(m, Rat(0));
        if (j < nv) {
            for (int i = 0; i < m; ++i) c[i] = nl.A[i][j];
        } else if (j < base) {
            c[j - nv] = 1;
        } else {
            c[art_rows[j - base]] = -1;
        }
        return c;
    };
    auto lower_of = [&](int j) -> std::optional<Rat> {
        if (j < nv) return lp.lower[j];
        return Rat(0);
    };
    auto upper_of = [&](int j) -> std::optional<Rat> {
        if (j < nv) return lp.upper[j];
        if (j < base) return std::optional<Rat>{};
        return Rat(0);
    };

    std::vector<std::vector<Rat>> B(m, std::vector<Rat>(m));
    for (int i = 0; i < m; ++i) {
        std::vector<Rat> c = column(basis[i]);
        for (int r = 0; r < m; ++r) B[r][i] = c[r];
    }
    std::vector<Rat> cb(m, Rat(0));
    for (int i = 0; i < m; ++i)
        if (basis[i] < nv) cb[i] = lp.objective[basis[i]];
    std::vector<std::vector<Rat>> BT(m, std::vector<Rat>(m));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) BT[i][j] = B[j][i];
    std::vector<Rat> y;
    if (!solve_system(BT, cb, y)) return std::nullopt;

    for (int j = 0; j < K; ++j) {
        if (st[j] == Basic) continue;
        auto l = lower_of(j), u = upper_of(j);
        if (l && u && *l == *u) continue;  // fixed: any reduced cost
        Rat cj = j < nv ? lp.objective[j] : Rat(0);
        std::vector<Rat> c = column(j);
        Rat z = cj;
        for (int i = 0; i < m; ++i)
            if (sgn(c[i]) != 0) z -= y[i] * c[i];
        int s = sgn(z);
        if (st[j] == AtLower && s < 0) return std::nullopt;
        if (st[j] == AtUpper && s > 0) return std::nullopt;
        if (st[j] == FreeZero && s != 0) return std::nullopt;
    }

    LpSolution sol = *primal;
    sol.dual.assign(lp.rows.size(), Rat(0));
    for (int i = 0; i < m; ++i) {
        Rat mu = -y[i];
        sol.dual[nl.src[i].first] += Rat(nl.src[i].second) * mu;
    }
    return sol;
}

LpSolution extract_exact(const LinearProgram& lp, const NormLp& nl,
                         Engine<RatField>& eng, LpStatus status) {
    LpSolution sol;
    sol.status = status;
    sol.objective_value = 0;
    if (status != LpStatus::Optimal) return sol;
    int nv = nl.nvars;
    sol.primal.assign(nv, Rat(0));
    for (int j = 0; j < nv; ++j)
        if (eng.st[j] != Basic) sol.primal[j] = eng.xval(j);
    for (int i = 0; i < eng.m; ++i)
        if (eng.basis[i] < nv) sol.primal[eng.basis[i]] = eng.beta[i];
    sol.dual.assign(lp.rows.size(), Rat(0));
    for (int i = 0; i < eng.m; ++i)
        sol.dual[nl.src[i].first] += Rat(nl.src[i].second) * eng.zrow[nv + i];
    for (int j = 0; j < nv; ++j)
        sol.objective_value += lp.objective[j] * sol.primal[j];
    return sol;
}

void validate_program(const LinearProgram& lp) {
    require((int)lp.objective.size() == lp.num_vars &&
                (int)lp.lower.size() == lp.num_vars &&
                (int)lp.upper.size() == lp.num_vars,
            "malformed program: vector sizes disagree");
    auto check_canon = [](const Rat& r) {
        require(rat_canonical(r), "malformed program: rational not in lowest terms");
    };
    for (int j = 0; j < lp.num_vars; ++j) {
        check_canon(lp.objective[j]);
        if (lp.lower[j]) check_canon(*lp.lower[j]);
        if (lp.upper[j]) check_canon(*lp.upper[j]);
        if (lp.lower[j] && lp.upper[j])
            require(*lp.lower[j] <= *lp.upper[j], "variable bounds cross");
    }
    for (const LpRow& r : lp.rows) {
        for (const Rat& c : r.coeffs) check_canon(c);
        check_canon(r.rhs);
    }
}

}  // namespace

LpSolution solve_lp(const LinearProgram& lp, SolveMode mode) {
    validate_program(lp);
    NormLp nl = normalize(lp);
    bool try_float = mode == SolveMode::FloatFirst ||
                     (mode == SolveMode::Auto &&
                      lp.num_vars + (int)nl.A.size() > 40);
    if (try_float) {
        Engine<DoubleField> fe;
        fe.bland = false;
        fe.iter_cap = 2000 + 20L * (lp.num_vars + 2 * (long)nl.A.size());
        LpStatus fs = fe.run(lp, nl);
        if (!fe.cap_hit && fs == LpStatus::Optimal) {
            auto sol = crash_basis(lp, nl, fe.basis, fe.st, fe.art_rows);
            if (sol && verify_solution(lp, *sol)) return *sol;
        }
    }

    Engine<RatField> ee;
    LpStatus status = ee.run(lp, nl);
    LpSolution sol = extract_exact(lp, nl, ee, status);
    if (status == LpStatus::Optimal)
        require(verify_solution(lp, sol),
                "internal error: exact simplex produced an uncertified optimum");
    return sol;
}

LpSolution solve_lp_bounded(const LinearProgram& lp, const Rat& bound,
                            SolveMode mode) {
    validate_program(lp);
    require(rat_canonical(bound), "malformed bound: rational not in lowest terms");
    NormLp nl = normalize(lp);
    const bool dbg = std::getenv("TRIPACK_LP_DEBUG") != nullptr;
    bool try_float = mode == SolveMode::FloatFirst ||
                     (mode == SolveMode::Auto &&
                      lp.num_vars + (int)nl.A.size() > 40);
    if (try_float) {
        Engine<DoubleField> fe;
        fe.bland = false;
        fe.iter_cap = 2000 + 20L * (lp.num_vars + 2 * (long)nl.A.size());
        double bd = bound.get_d();
        fe.stop_phase2 = true;
        fe.stop_at = bd - 1e-7 * std::max(1.0, std::fabs(bd));
        LpStatus fs = fe.run(lp, nl);
        if (dbg)
            fprintf(stderr, "[lpb] nv=%d rows=%zu float st=%d cap=%d stopped=%d it=%ld/%ld\n",
                    lp.num_vars, nl.A.size(), (int)fs, (int)fe.cap_hit, (int)fe.stopped,
                    fe.p1_iters, fe.total_iters);
        if (fs == LpStatus::Optimal && !fe.cap_hit && fe.stopped) {
            auto sol = crash_primal(lp, nl, fe.basis, fe.st, fe.art_rows, bound);
            if (sol && verify_feasible(lp, sol->primal)) return *sol;
            if (dbg) fprintf(stderr, "[lpb] stopped crash_primal failed (null=%d)\n", (int)!sol);
            fe.stop_enabled = false;
            fs = fe.iterate();
        }
        if (fs == LpStatus::Optimal && !fe.cap_hit) {
            // A within-bound point is all the caller asked for, and primal
            // feasibility survives rounding far more often than the exact
            // optimality conditions do; only a point above the bound needs
            // the certified optimum.
            auto sol = crash_primal(lp, nl, fe.basis, fe.st, fe.art_rows, bound);
            if (sol && verify_feasible(lp, sol->primal)) return *sol;
            if (dbg) fprintf(stderr, "[lpb] optimal crash_primal failed (null=%d)\n", (int)!sol);
            auto opt = crash_basis(lp, nl, fe.basis, fe.st, fe.art_rows);
            if (opt && verify_solution(lp, *opt)) return *opt;
            if (dbg) fprintf(stderr, "[lpb] crash_basis failed (null=%d)\n", (int)!opt);
        }
    }

    Engine<RatField> ee;
    ee.stop_phase2 = true;
    ee.stop_at = bound;
    LpStatus status = ee.run(lp, nl);
    if (dbg)
        fprintf(stderr, "[lpb] exact st=%d stopped=%d it=%ld/%ld\n", (int)status,
                (int)ee.stopped, ee.p1_iters, ee.total_iters);
    LpSolution sol = extract_exact(lp, nl, ee, status);
    if (status == LpStatus::Optimal && ee.stopped) {
        sol.dual.clear();  // stopped short of optimality: no certificate
        require(verify_feasible(lp, sol.primal) && sol.objective_value <= bound,
                "internal error: stopped simplex left an unusable point");
        return sol;
    }
    if (status == LpStatus::Optimal)
        require(verify_solution(lp, sol),
                "internal error: exact simplex produced an uncertified optimum");
    return sol;
}

bool verify_feasible(const LinearProgram& lp, const std::vector<Rat>& x) {
    if ((int)x.size() != lp.num_vars) return false;
    for (int j = 0; j < lp.num_vars; ++j) {
        if (lp.lower[j] && x[j] < *lp.lower[j]) return false;
        if (lp.upper[j] && x[j] > *lp.upper[j]) return false;
    }
    for (const LpRow& r : lp.rows) {
        Rat val(0);
        for (int j = 0; j < lp.num_vars; ++j)
            if (sgn(r.coeffs[j]) != 0) val += r.coeffs[j] * x[j];
        if (r.rel == Rel::LE && val > r.rhs) return false;
        if (r.rel == Rel::GE && val < r.rhs) return false;
        if (r.rel == Rel::EQ && val != r.rhs) return false;
    }
    return true;
}

bool verify_solution(const LinearProgram& lp, const LpSolution& sol) {
    if (sol.status != LpStatus::Optimal) return false;
    if ((int)sol.primal.size() != lp.num_vars) return false;
    if (sol.dual.size() != lp.rows.size()) return false;
    for (int j = 0; j < lp.num_vars; ++j) {
        if (lp.lower[j] && sol.primal[j] < *lp.lower[j]) return false;
        if (lp.upper[j] && sol.primal[j] > *lp.upper[j]) return false;
    }
    Rat dual_obj(0);
    for (size_t i = 0; i < lp.rows.size(); ++i) {
        const LpRow& r = lp.rows[i];
        Rat val(0);
        for (int j = 0; j < lp.num_vars; ++j)
            if (sgn(r.coeffs[j]) != 0) val += r.coeffs[j] * sol.primal[j];
        const Rat& lam = sol.dual[i];
        switch (r.rel) {
            case Rel::LE:
                if (val > r.rhs || sgn(lam) < 0) return false;
                break;
            case Rel::GE:
                if (val < r.rhs || sgn(lam) > 0) return false;
                break;
            case Rel::EQ:
                if (val != r.rhs) return false;
                break;
        }
        dual_obj -= lam * r.rhs;
    }
    for (int j = 0; j < lp.num_vars; ++j) {
        Rat rj = lp.objective[j];
        for (size_t i = 0; i < lp.rows.size(); ++i)
            if (sgn(sol.dual[i]) != 0 && sgn(lp.rows[i].coeffs[j]) != 0)
                rj += sol.dual[i] * lp.rows[i].coeffs[j];
        int s = sgn(rj);
        if (s > 0) {
            if (!lp.lower[j]) return false;
            dual_obj += rj * *lp.lower[j];
        } else if (s < 0) {
            if (!lp.upper[j]) return false;
            dual_obj += rj * *lp.upper[j];
        }
    }
    Rat primal_obj(0);
    for (int j = 0; j < lp.num_vars; ++j)
        primal_obj += lp.objective[j] * sol.primal[j];
    return primal_obj == sol.objective_value && dual_obj == sol.objective_value;
}

Rat rationalize(double x, const Int& bound) {
    require(std::isfinite(x), "rationalize: input must be finite");
    require(bound >= 1, "rationalize: bound must be at least 1");
    Rat v(x);
    v.canonicalize();
    if (v.get_den() <= bound) return v;

    Int num = v.get_num(), den = v.get_den();
    Int pp(1), qp(0), pc, qc;
    {
        Int a;
        mpz_fdiv_q(a.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
        pc = a;
        qc = 1;
        Int rem = num - a * den;
        num = den;
        den = rem;
    }
    while (den != 0) {
        Int a, rem;
        mpz_fdiv_qr(a.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(),
                    den.get_mpz_t());
        Int qn = a * qc + qp;
        if (qn > bound) break;
        Int pn = a * pc + pp;
        pp = pc;
        qp = qc;
        pc = pn;
        qc = qn;
        num = den;
        den = rem;
    }
    Rat conv(pc, qc);
    conv.canonicalize();
    Int steps = (bound - qp) / qc;
    if (steps <= 0) return conv;
    Rat semi(pp + steps * pc, qp + steps * qc);
    semi.canonicalize();
    Rat dc = abs(v - conv), ds = abs(v - semi);
    return ds < dc ? semi : conv;
}

}  // namespace tripack
