"""Small exact linear-algebra utilities: integer matrix rank and a two-phase
simplex with Fraction pivots for problems of the form

    max c.x   subject to   A x = b,  x >= 0.

Everything here is exact; no floats.  The simplex is deliberately plain
(Bland's rule, dense tableau): it only ever sees desk-scale systems, and its
main job is to serve as the independent cross-check for the fast
combinatorial feasibility solver in :mod:`permuto.tropical`.
"""

from __future__ import annotations

from fractions import Fraction


def int_rank(rows) -> int:
    """Rank over Q of a list of integer row vectors (fraction-free elimination)."""
    mat = [list(r) for r in rows if any(r)]
    rank = 0
    ncols = len(mat[0]) if mat else 0
    col = 0
    while rank < len(mat) and col < ncols:
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            col += 1
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        for i in range(rank + 1, len(mat)):
            if mat[i][col]:
                a, b = prow[col], mat[i][col]
                mat[i] = [a * x - b * y for x, y in zip(mat[i], prow)]
        rank += 1
        col += 1
    return rank


class _Tableau:
    """Dense simplex tableau over Fractions; rows ``m``, structural cols ``n``."""

    def __init__(self, columns, rhs):
        self.m = len(rhs)
        self.n = len(columns)
        rows = [[Fraction(columns[j][i]) for j in range(self.n)] for i in range(self.m)]
        b = [Fraction(v) for v in rhs]
        for i in range(self.m):
            if b[i] < 0:
                b[i] = -b[i]
                rows[i] = [-x for x in rows[i]]
        # append artificial identity and rhs
        self.t = [rows[i] + [Fraction(int(k == i)) for k in range(self.m)] + [b[i]]
                  for i in range(self.m)]
        self.basis = list(range(self.n, self.n + self.m))

    def _optimize(self, cost, ncols):
        """Minimize, in place, a reduced-cost row over columns [0, ncols)."""
        t, m, basis = self.t, self.m, self.basis
        while True:
            enter = next((j for j in range(ncols) if cost[j] < 0), None)
            if enter is None:
                return cost
            ratio, leave = None, None
            for i in range(m):
                if t[i][enter] > 0:
                    r = t[i][-1] / t[i][enter]
                    if ratio is None or r < ratio or (r == ratio and basis[i] < basis[leave]):
                        ratio, leave = r, i
            if leave is None:
                return None  # unbounded
            piv = t[leave][enter]
            t[leave] = [x / piv for x in t[leave]]
            for i in range(m):
                if i != leave and t[i][enter]:
                    f = t[i][enter]
                    t[i] = [x - f * y for x, y in zip(t[i], t[leave])]
            if cost[enter]:
                f = cost[enter]
                cost = [x - f * y for x, y in zip(cost, t[leave])]
            basis[leave] = enter

    def _reduced(self, objective):
        """Reduced-cost row for minimizing ``objective`` given the current basis."""
        width = len(self.t[0]) if self.t else 1
        cost = [Fraction(objective[k]) if k < len(objective) else Fraction(0)
                for k in range(width)]
        for i, bj in enumerate(self.basis):
            f = cost[bj]
            if f:
                cost = [x - f * y for x, y in zip(cost, self.t[i])]
        return cost


def lp_max(columns, rhs, objective):
    """Exact maximum of objective.x over {x >= 0 : sum_j x_j columns[j] = rhs}.

    Returns a Fraction, or None if infeasible, or raises on unbounded
    (callers here only pose bounded problems).
    """
    tab = _Tableau(columns, rhs)
    phase1 = [Fraction(0)] * tab.n + [Fraction(1)] * tab.m + [Fraction(0)]
    cost = tab._reduced(phase1)
    cost = tab._optimize(cost, tab.n + tab.m)
    if cost is None or -cost[-1] != 0:
        return None
    # pivot leftover basic artificials out (their level is 0); a row with no
    # structural entry is a redundant constraint and is dropped
    for i in range(tab.m - 1, -1, -1):
        if tab.basis[i] >= tab.n:
            enter = next((j for j in range(tab.n) if tab.t[i][j] != 0), None)
            if enter is None:
                del tab.t[i], tab.basis[i]
                tab.m -= 1
                continue
            piv = tab.t[i][enter]
            tab.t[i] = [x / piv for x in tab.t[i]]
            for k in range(tab.m):
                if k != i and tab.t[k][enter]:
                    f = tab.t[k][enter]
                    tab.t[k] = [x - f * y for x, y in zip(tab.t[k], tab.t[i])]
            tab.basis[i] = enter
    neg = [-Fraction(c) for c in objective] + [Fraction(0)] * (len(tab.t[0]) - len(objective))
    cost = tab._reduced(neg)
    cost = tab._optimize(cost, tab.n)
    if cost is None:
        raise ArithmeticError("unbounded objective")
    return cost[-1]


def feasible_eq(columns, rhs) -> bool:
    """Exact feasibility of  sum_j x_j * columns[j] = rhs,  x >= 0."""
    return lp_max(columns, rhs, [0] * len(columns)) is not None


def in_convex_hull(point, vertices) -> bool:
    """Exact test for membership of a point in conv(vertices)."""
    if not vertices:
        return False
    cols = [tuple(v) + (1,) for v in vertices]
    return feasible_eq(cols, tuple(point) + (1,))


def is_polytope_edge(v1, v2, others) -> bool:
    """Whether [v1, v2] is an edge of conv({v1, v2} | others), all exact.

    The midpoint of an edge admits no convex representation placing positive
    mass outside {v1, v2}; maximize that outside mass and compare with 0.
    """
    mid = tuple(Fraction(a + b, 2) for a, b in zip(v1, v2))
    verts = [tuple(v1), tuple(v2)] + [tuple(u) for u in others]
    cols = [v + (1,) for v in verts]
    mass = lp_max(cols, mid + (1,), [0, 0] + [1] * len(others))
    if mass is None:
        raise ArithmeticError("midpoint of two vertices must lie in the hull")
    return mass == 0
