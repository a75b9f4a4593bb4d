#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eqdesign/rational.hpp"

namespace eqdesign {

enum class Rel { Ge, Eq };

struct LPRow {
    std::vector<std::pair<int, Rational>> coef; // (variable, coefficient), sparse
    Rel rel = Rel::Ge;
    Rational rhs;
};

/// Pure feasibility program over nonnegative edge variables. All
/// coefficients are exact rationals; the nonnegativity rows are part of the
/// instance so the row set matches the written system.
struct LPInstance {
    int num_vars = 0;
    std::vector<LPRow> rows;
    std::vector<int> var_edge; // variable -> edge id in the source subgraph

    /// Plain-text matrix dump: one row per constraint, coefficients as
    /// p/q, then the relation and the right-hand side.
    std::string dump() const {
        std::ostringstream os;
        for (const LPRow& row : rows) {
            std::vector<Rational> dense(num_vars);
            for (const auto& [v, c] : row.coef)
                dense[v] += c;
            for (int v = 0; v < num_vars; ++v)
                os << (v ? " " : "") << dense[v].str();
            os << (row.rel == Rel::Ge ? " >= " : " = ") << row.rhs.str() << "\n";
        }
        return os.str();
    }
};

struct FeasiblePoint {
    std::vector<Rational> x;
};

inline bool satisfies(const LPInstance& lp, const FeasiblePoint& p) {
    for (const auto& v : p.x)
        if (v < Rational(0))
            return false;
    for (const LPRow& row : lp.rows) {
        Rational lhs;
        for (const auto& [v, c] : row.coef)
            lhs += c * p.x[v];
        if (row.rel == Rel::Eq ? lhs != row.rhs : lhs < row.rhs)
            return false;
    }
    return true;
}

/// Exact-rational phase-1 simplex with Bland's smallest-index rule, so the
/// search terminates and identical instances yield identical points.
/// Structural variables are nonnegative. Returns a satisfying assignment or
/// definitively reports infeasibility.
inline std::optional<FeasiblePoint> lp_feasible(const LPInstance& lp) {
    int n = lp.num_vars;
    int m = static_cast<int>(lp.rows.size());

    // Tableau columns: structural vars, one surplus per >= row, one
    // artificial per row, then the right-hand side.
    int num_surplus = 0;
    for (const LPRow& r : lp.rows)
        if (r.rel == Rel::Ge)
            ++num_surplus;
    int cols = n + num_surplus + m + 1;
    int rhs_col = cols - 1;
    std::vector<std::vector<Rational>> tab(m, std::vector<Rational>(cols));

    int surplus_at = n;
    std::vector<int> basis(m);
    for (int r = 0; r < m; ++r) {
        const LPRow& row = lp.rows[r];
        for (const auto& [v, c] : row.coef)
            tab[r][v] += c;
        tab[r][rhs_col] = row.rhs;
        if (row.rel == Rel::Ge)
            tab[r][surplus_at++] = Rational(-1);
        // normalize to a nonnegative right-hand side
        if (tab[r][rhs_col] < Rational(0))
            for (int c = 0; c < cols; ++c)
                tab[r][c] = -tab[r][c];
        int artificial = n + num_surplus + r;
        tab[r][artificial] = Rational(1);
        basis[r] = artificial;
    }

    // Phase-1 objective: minimize the sum of artificials. Reduced costs are
    // kept as an extra row, starting as -(sum of constraint rows) over the
    // non-artificial columns.
    std::vector<Rational> obj(cols);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < cols; ++c)
            if (c < n + num_surplus || c == rhs_col)
                obj[c] -= tab[r][c];

    int art_begin = n + num_surplus;
    while (true) {
        int entering = -1;
        for (int c = 0; c < rhs_col; ++c) {
            if (c >= art_begin)
                continue; // artificials never re-enter
            if (obj[c] < Rational(0)) {
                entering = c;
                break;
            }
        }
        if (entering == -1)
            break;
        int leaving = -1;
        Rational best_ratio;
        for (int r = 0; r < m; ++r) {
            if (tab[r][entering] <= Rational(0))
                continue;
            Rational ratio = tab[r][rhs_col] / tab[r][entering];
            if (leaving == -1 || ratio < best_ratio ||
                (ratio == best_ratio && basis[r] < basis[leaving])) {
                leaving = r;
                best_ratio = ratio;
            }
        }
        if (leaving == -1)
            throw InternalError("phase-1 simplex unbounded");
        Rational pivot = tab[leaving][entering];
        for (int c = 0; c < cols; ++c)
            tab[leaving][c] /= pivot;
        for (int r = 0; r < m; ++r) {
            if (r == leaving || tab[r][entering].is_zero())
                continue;
            Rational f = tab[r][entering];
            for (int c = 0; c < cols; ++c)
                tab[r][c] -= f * tab[leaving][c];
        }
        if (!obj[entering].is_zero()) {
            Rational f = obj[entering];
            for (int c = 0; c < cols; ++c)
                obj[c] -= f * tab[leaving][c];
        }
        basis[leaving] = entering;
    }

    // Feasible iff every artificial ended at zero.
    for (int r = 0; r < m; ++r)
        if (basis[r] >= art_begin && !tab[r][rhs_col].is_zero())
            return std::nullopt;

    FeasiblePoint point;
    point.x.assign(n, Rational(0));
    for (int r = 0; r < m; ++r)
        if (basis[r] < n)
            point.x[basis[r]] = tab[r][rhs_col];
    if (!satisfies(lp, point))
        throw InternalError("simplex produced a non-satisfying point");
    return point;
}

} // namespace eqdesign
