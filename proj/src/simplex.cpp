#include "polycomm/simplex.hpp"

#include <stdexcept>

namespace polycomm {

namespace {

// Dense tableau: rows 0..m-1 are constraints (basis column has a unit), row m
// is the objective in reduced-cost form (maximization: entry > 0 can improve).
struct Tableau {
    int m = 0, n = 0;  // constraints, columns (excluding rhs)
    MatQ t;            // (m+1) x (n+1); last column is rhs / objective value
    std::vector<int> basis;

    void pivot(int pr, int pc) {
        Rat inv = t[pr][pc];
        for (int j = 0; j <= n; ++j) t[pr][j] /= inv;
        for (int i = 0; i <= m; ++i) {
            if (i == pr || t[i][pc] == 0) continue;
            Rat f = t[i][pc];
            for (int j = 0; j <= n; ++j)
                if (t[pr][j] != 0) t[i][j] -= f * t[pr][j];
        }
        basis[pr] = pc;
    }

    // Bland's rule; returns false when optimal, throws on unbounded.
    bool step() {
        int pc = -1;
        for (int j = 0; j < n; ++j)
            if (t[m][j] > 0) {
                pc = j;
                break;
            }
        if (pc < 0) return false;
        int pr = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (t[i][pc] <= 0) continue;
            Rat ratio = t[i][n] / t[i][pc];
            if (pr < 0 || ratio < best || (ratio == best && basis[i] < basis[pr])) {
                pr = i;
                best = ratio;
            }
        }
        if (pr < 0) throw Unboundedness{};
        pivot(pr, pc);
        return true;
    }

    struct Unboundedness {};
};

}  // namespace

LpResult lp_maximize(const MatQ& A, const std::vector<int>& rel, const VecQ& b, const VecQ& c) {
    int m = static_cast<int>(A.size());
    int n = m == 0 ? static_cast<int>(c.size()) : static_cast<int>(A[0].size());

    // Normalize to b >= 0, then append slack columns for <= rows and
    // artificial columns for = and >= rows (>= first gets a surplus column).
    MatQ rows = A;
    VecQ rhs = b;
    std::vector<int> r = rel;
    for (int i = 0; i < m; ++i) {
        if (rhs[i] < 0) {
            for (Rat& x : rows[i]) x = -x;
            rhs[i] = -rhs[i];
            r[i] = -r[i];
        }
    }
    int n_slack = 0, n_art = 0;
    for (int i = 0; i < m; ++i) {
        if (r[i] != 0) ++n_slack;
        if (r[i] >= 0) ++n_art;
    }
    int total = n + n_slack + n_art;

    Tableau tab;
    tab.m = m;
    tab.n = total;
    tab.t.assign(m + 1, VecQ(total + 1, Rat(0)));
    tab.basis.assign(m, -1);

    int slack_at = n, art_at = n + n_slack;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) tab.t[i][j] = rows[i][j];
        tab.t[i][total] = rhs[i];
        if (r[i] == -1) {
            tab.t[i][slack_at] = 1;
            tab.basis[i] = slack_at++;
        } else if (r[i] == 1) {
            tab.t[i][slack_at] = -1;
            ++slack_at;
            tab.t[i][art_at] = 1;
            tab.basis[i] = art_at++;
        } else {
            tab.t[i][art_at] = 1;
            tab.basis[i] = art_at++;
        }
    }

    LpResult res;
    try {
        if (n_art > 0) {
            // Phase 1: maximize -(sum of artificials).
            for (int j = n + n_slack; j < total; ++j) tab.t[m][j] = -1;
            for (int i = 0; i < m; ++i)
                if (tab.basis[i] >= n + n_slack)
                    for (int j = 0; j <= total; ++j) tab.t[m][j] += tab.t[i][j];
            while (tab.step()) {
            }
            if (tab.t[m][total] != 0) {
                res.status = LpStatus::Infeasible;
                return res;
            }
            // Drive leftover artificials out of the basis where possible.
            for (int i = 0; i < m; ++i) {
                if (tab.basis[i] < n + n_slack) continue;
                int pc = -1;
                for (int j = 0; j < n + n_slack; ++j)
                    if (tab.t[i][j] != 0) {
                        pc = j;
                        break;
                    }
                if (pc >= 0) tab.pivot(i, pc);
            }
            // Remove artificial columns from play.
            for (int i = 0; i <= m; ++i)
                for (int j = n + n_slack; j < total; ++j) tab.t[i][j] = 0;
        }

        // Phase 2 objective.
        for (int j = 0; j <= total; ++j) tab.t[m][j] = 0;
        for (int j = 0; j < n; ++j) tab.t[m][j] = c[j];
        for (int i = 0; i < m; ++i) {
            int bj = tab.basis[i];
            if (bj < n && c[bj] != 0) {
                Rat f = c[bj];
                for (int j = 0; j <= total; ++j)
                    if (tab.t[i][j] != 0) tab.t[m][j] -= f * tab.t[i][j];
            }
        }
        // Degenerate rows still holding an artificial must stay pinned at 0.
        while (tab.step()) {
        }
    } catch (const Tableau::Unboundedness&) {
        res.status = LpStatus::Unbounded;
        return res;
    }

    res.status = LpStatus::Optimal;
    res.x.assign(n, Rat(0));
    for (int i = 0; i < m; ++i)
        if (tab.basis[i] < n) res.x[tab.basis[i]] = tab.t[i][total];
    res.value = Rat(0);
    for (int j = 0; j < n; ++j)
        if (c[j] != 0 && res.x[j] != 0) res.value += c[j] * res.x[j];
    return res;
}

}  // namespace polycomm
