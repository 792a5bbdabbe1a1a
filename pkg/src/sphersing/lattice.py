"""Exact integer and rational linear algebra on N = Z^r and M = Hom(N, Z).

Vectors are plain tuples (of ``int`` for lattice points, of ``int`` or
``Fraction`` for covectors); matrices are lists of rows. M is written in the
dual basis, so the pairing <m, x> is the dot product.
"""

from __future__ import annotations

from fractions import Fraction
from functools import reduce
from itertools import product
from math import gcd
from typing import Iterator, Sequence

from .errors import DependentFamily, NotSaturated, ZeroVector

Vector = tuple  # tuple of int / Fraction
IntMatrix = list  # list of lists of int


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def identity(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    cols = list(zip(*B))
    return [[dot(row, col) for col in cols] for row in A]


def transpose(A: Sequence[Sequence]) -> list:
    return [list(col) for col in zip(*A)]


def is_integral(v: Sequence) -> bool:
    return all(Fraction(c).denominator == 1 for c in v)


def as_int_vector(v: Sequence) -> tuple[int, ...]:
    if not is_integral(v):
        raise ValueError(f"vector {v} is not integral")
    return tuple(int(Fraction(c)) for c in v)


def primitive_of(v: Sequence) -> tuple[int, ...]:
    """Return v divided by the gcd of its coordinates (sign preserved).

    Rational input is first cleared of denominators, so this also gives the
    primitive lattice vector on the ray through any nonzero rational point.
    """
    if all(type(c) is int for c in v):
        g = reduce(gcd, v, 0)
        if g == 0:
            raise ZeroVector("primitive_of: zero vector")
        return tuple(c // g for c in v)
    fr = [Fraction(c) for c in v]
    if all(c == 0 for c in fr):
        raise ZeroVector("primitive_of: zero vector")
    den = reduce(lambda a, b: a * b // gcd(a, b), (c.denominator for c in fr), 1)
    ints = [int(c * den) for c in fr]
    g = reduce(gcd, (abs(c) for c in ints))
    return tuple(c // g for c in ints)


def smith_normal_form(A: Sequence[Sequence[int]]) -> tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Smith normal form ``(U, S, V)`` with ``U @ A @ V == S``.

    U and V are unimodular, S is diagonal with d_1 | d_2 | ... and d_i >= 0.
    Pivoting always takes the entry of smallest absolute value, scanning rows
    then columns, so the output is deterministic.
    """
    U, S, V, _ = _snf(A)
    return U, S, V


def _snf(A: Sequence[Sequence[int]]):
    """Smith normal form that also tracks V^{-1}: returns (U, S, V, Vinv)."""
    m = len(A)
    n = len(A[0]) if m else 0
    S = [[int(x) for x in row] for row in A]
    U = identity(m)
    V = identity(n)
    Vinv = identity(n)

    def swap_rows(i, j):
        S[i], S[j] = S[j], S[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in S:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]
        Vinv[i], Vinv[j] = Vinv[j], Vinv[i]

    def add_row(dst, src, q):  # row_dst += q * row_src
        S[dst] = [a + q * b for a, b in zip(S[dst], S[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, q):  # col_dst += q * col_src
        for row in S:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]
        # inverse of the column operation is a row operation on Vinv
        Vinv[src] = [a - q * b for a, b in zip(Vinv[src], Vinv[dst])]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if S[i][j] and (best is None or abs(S[i][j]) < abs(S[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        while True:
            p = S[t][t]
            for i in range(t + 1, m):
                q = S[i][t] // p
                if q:
                    add_row(i, t, -q)
            for j in range(t + 1, n):
                q = S[t][j] // p
                if q:
                    add_col(j, t, -q)
            # any nonzero remainder is smaller than |p|: move it to the pivot
            rem = None
            for i in range(t + 1, m):
                if S[i][t] and (rem is None or abs(S[i][t]) < abs(rem[2])):
                    rem = ("r", i, S[i][t])
            for j in range(t + 1, n):
                if S[t][j] and (rem is None or abs(S[t][j]) < abs(rem[2])):
                    rem = ("c", j, S[t][j])
            if rem is not None:
                if rem[0] == "r":
                    swap_rows(t, rem[1])
                else:
                    swap_cols(t, rem[1])
                continue
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if S[i][j] % p),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], 1)
        if S[t][t] < 0:
            S[t] = [-x for x in S[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, S, V, Vinv


def smith_divisors(A: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith normal form of A."""
    if not A:
        return []
    _, S, _ = smith_normal_form(A)
    return [S[i][i] for i in range(min(len(S), len(S[0]))) if S[i][i]]


def rank(A: Sequence[Sequence]) -> int:
    return len(_rref(A)[1])


def _rref(A: Sequence[Sequence]):
    """Reduced row echelon form over Q; returns (rows, pivot columns)."""
    M = [[Fraction(x) for x in row] for row in A]
    if not M:
        return [], []
    n = len(M[0])
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def row_space_basis(A: Sequence[Sequence], n: int | None = None) -> list[tuple[int, ...]]:
    """Canonical integer basis of the rational row space (primitive RREF rows)."""
    rows, _ = _rref(A)
    return [primitive_of(r) for r in rows]


def nullspace(A: Sequence[Sequence], n: int) -> list[tuple[int, ...]]:
    """Integer basis (primitive vectors) of {x in Q^n : A x = 0}."""
    rows, pivots = _rref(A) if A else ([], [])
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for row, pc in zip(rows, pivots):
            v[pc] = -row[f]
        basis.append(primitive_of(v))
    return basis


def solve_rational(A: Sequence[Sequence], b: Sequence, n: int) -> tuple[Fraction, ...] | None:
    """A particular solution of A x = b over Q (free variables set to 0)."""
    if not A:
        return tuple(Fraction(0) for _ in range(n))
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    rows, pivots = _rref(aug)
    if n in pivots:
        return None
    x = [Fraction(0)] * n
    for row, pc in zip(rows, pivots):
        x[pc] = row[n]
    return tuple(x)


def solve_integer(A: Sequence[Sequence[int]], b: Sequence, n: int) -> tuple[int, ...] | None:
    """An integer solution of A x = b (A integral, b rational), or None."""
    if not A:
        return tuple(0 for _ in range(n))
    U, S, V = smith_normal_form(A)
    c = [sum(Fraction(u) * Fraction(bi) for u, bi in zip(row, b)) for row in U]
    y = [0] * n
    for i, ci in enumerate(c):
        d = S[i][i] if i < n else 0
        if d == 0:
            if ci != 0:
                return None
            continue
        q = ci / d
        if q.denominator != 1:
            return None
        y[i] = int(q)
    return tuple(int(dot(row, y)) for row in V)


def det(A: Sequence[Sequence]) -> Fraction:
    M = [[Fraction(x) for x in row] for row in A]
    n = len(M)
    result = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            result = -result
        result *= M[c][c]
        for i in range(c + 1, n):
            f = M[i][c] / M[c][c]
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[c])]
    return result


def saturation_index(E: Sequence[Sequence[int]]) -> int:
    """Index of the lattice spanned by E in its saturation.

    Equals 1 exactly when E can be completed to a basis of Z^r.
    """
    E = [list(map(int, e)) for e in E]
    if not E:
        return 1
    divs = smith_divisors(E)
    if len(divs) < len(E):
        raise DependentFamily(f"family {E} is linearly dependent")
    return reduce(lambda a, b: a * b, divs, 1)


def extend_to_basis(E: Sequence[Sequence[int]], r: int | None = None) -> list[tuple[int, ...]]:
    """Vectors F such that E together with F is a basis of Z^r."""
    E = [list(map(int, e)) for e in E]
    if not E:
        if r is None:
            raise ValueError("extend_to_basis: ambient rank needed for an empty family")
        return [tuple(row) for row in identity(r)]
    k = len(E)
    idx = saturation_index(E)
    if idx != 1:
        raise NotSaturated(f"family {E} has saturation index {idx}")
    _, _, _, Vinv = _snf(E)
    return [tuple(row) for row in Vinv[k:]]


def saturation_coset_reps(R: Sequence[Sequence[int]]) -> Iterator[tuple[int, ...]]:
    """Representatives of (Z^n intersected with span R) / (Z-span of R).

    R must have independent rows. There are ``saturation_index(R)`` of them.
    """
    R = [list(map(int, r)) for r in R]
    _, S, _, Vinv = _snf(R)
    k = len(R)
    ds = [S[i][i] for i in range(k)]
    W = Vinv[:k]
    for z in product(*(range(d) for d in ds)):
        yield tuple(sum(zi * W[i][j] for i, zi in enumerate(z)) for j in range(len(W[0])))
