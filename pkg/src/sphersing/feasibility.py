"""Exact rational linear programming (two-phase tableau simplex, Bland's rule).

Small and dense by design: the systems built by the klt-pair search have a
few dozen variables at most.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


@dataclass(frozen=True)
class LPResult:
    status: str  # "optimal" | "infeasible" | "unbounded"
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None


def _pivot(T: list[list[Fraction]], obj: list[Fraction], basis: list[int], r: int, col: int) -> None:
    inv = 1 / T[r][col]
    T[r] = [v * inv for v in T[r]]
    for i, row in enumerate(T):
        if i != r and row[col] != 0:
            f = row[col]
            T[i] = [a - f * b for a, b in zip(row, T[r])]
    if obj[col] != 0:
        f = obj[col]
        obj[:] = [a - f * b for a, b in zip(obj, T[r])]
    basis[r] = col


def _run(T, obj, basis, allowed) -> str:
    while True:
        col = next((j for j in allowed if obj[j] > 0), None)
        if col is None:
            return "optimal"
        best = None
        for i, row in enumerate(T):
            if row[col] > 0:
                ratio = row[-1] / row[col]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return "unbounded"
        _pivot(T, obj, basis, best[1], col)


def maximize(
    c: Sequence,
    A_ub: Sequence[Sequence] = (),
    b_ub: Sequence = (),
    A_eq: Sequence[Sequence] = (),
    b_eq: Sequence = (),
    free: Sequence[int] = (),
) -> LPResult:
    """Maximize c.x subject to A_ub x <= b_ub, A_eq x = b_eq, x_j >= 0 unless j in ``free``."""
    n = len(c)
    free = sorted(set(free))
    # column layout: x (n) | negative parts of free vars | slacks | artificials
    cols_x = n + len(free)

    def expand(row):
        row = [Fraction(v) for v in row]
        return row + [-row[j] for j in free]

    rows = [(expand(a), Fraction(b), True) for a, b in zip(A_ub, b_ub)]
    rows += [(expand(a), Fraction(b), False) for a, b in zip(A_eq, b_eq)]
    n_slack = sum(1 for _, _, ub in rows if ub)
    m = len(rows)
    width = cols_x + n_slack + m
    T = []
    s = 0
    for i, (a, b, ub) in enumerate(rows):
        row = a + [Fraction(0)] * (n_slack + m) + [b]
        if ub:
            row[cols_x + s] = Fraction(1)
            s += 1
        if b < 0:
            row = [-v for v in row]
        row[cols_x + n_slack + i] = Fraction(1)
        T.append(row)
    basis = [cols_x + n_slack + i for i in range(m)]
    art = set(basis)

    obj = [Fraction(0)] * (width + 1)
    for row in T:
        for j in range(width + 1):
            if j not in art:
                obj[j] += row[j]
    _run(T, obj, basis, [j for j in range(width) if j not in art])
    if obj[-1] != 0:
        return LPResult("infeasible")

    keep = []
    for i in range(len(T)):
        if basis[i] in art:
            col = next((j for j in range(cols_x + n_slack) if T[i][j] != 0), None)
            if col is None:
                continue
            _pivot(T, obj, basis, i, col)
        keep.append(i)
    T = [T[i] for i in keep]
    basis = [basis[i] for i in keep]

    cost = [Fraction(v) for v in c] + [-Fraction(c[j]) for j in free] + [Fraction(0)] * (n_slack + m)
    obj = cost + [Fraction(0)]
    for i, b in enumerate(basis):
        if obj[b] != 0:
            f = obj[b]
            obj = [a - f * v for a, v in zip(obj, T[i])]
    status = _run(T, obj, basis, list(range(cols_x + n_slack)))
    if status == "unbounded":
        return LPResult("unbounded")
    values = [Fraction(0)] * width
    for i, b in enumerate(basis):
        values[b] = T[i][-1]
    x = list(values[:n])
    for k, j in enumerate(free):
        x[j] -= values[n + k]
    return LPResult("optimal", tuple(x), sum(Fraction(ci) * xi for ci, xi in zip(c, x)))


def is_feasible(A_ub=(), b_ub=(), A_eq=(), b_eq=(), n: int = 0, free: Sequence[int] = ()) -> bool:
    return maximize([0] * n, A_ub, b_ub, A_eq, b_eq, free).status != "infeasible"
