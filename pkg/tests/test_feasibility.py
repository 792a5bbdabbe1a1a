from fractions import Fraction
from itertools import combinations

from hypothesis import given, settings
from hypothesis import strategies as st

from sphersing import lattice as lt
from sphersing.feasibility import is_feasible, maximize


def _vertex_oracle(c, A, b):
    """Max of c.x over {A x <= b, x >= 0} by enumerating basic solutions (bounded case)."""
    n = len(c)
    rows = [(list(a), Fraction(v)) for a, v in zip(A, b)] + [([-int(i == j) for j in range(n)], Fraction(0))
                                                             for i in range(n)]
    best = None
    for S in combinations(rows, n):
        M = [r for r, _ in S]
        if lt.rank(M) < n:
            continue
        x = lt.solve_rational(M, [v for _, v in S], n)
        if all(lt.dot(r, x) <= v for r, v in rows):
            val = lt.dot(c, x)
            best = val if best is None or val > best else best
    return best


coef = st.integers(-4, 4)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(
    st.lists(coef, min_size=n, max_size=n),
    st.lists(st.lists(coef, min_size=n, max_size=n), min_size=0, max_size=4),
    st.lists(st.integers(-3, 6), min_size=4, max_size=4))))
@settings(max_examples=200, deadline=None)
def test_matches_vertex_enumeration(data):
    c, A, b = data
    n = len(c)
    b = b[:len(A)]
    # box constraints keep the problem bounded
    A = A + [[int(i == j) for j in range(n)] for i in range(n)]
    b = b + [5] * n
    res = maximize(c, A, b)
    expect = _vertex_oracle(c, A, b)
    if expect is None:
        assert res.status == "infeasible"
    else:
        assert res.status == "optimal" and res.value == expect
        assert all(lt.dot(a, res.x) <= v for a, v in zip(A, b)) and all(x >= 0 for x in res.x)


def test_equalities_and_free_variables():
    # x - y = -3 with y <= 1, y >= 0 and x free: maximize x -> x = -2
    res = maximize([1, 0], [[0, 1]], [1], [[1, -1]], [-3], free=[0])
    assert res.status == "optimal" and res.x == (-2, 1)


def test_unbounded_and_infeasible():
    assert maximize([1], [[-1]], [0]).status == "unbounded"
    assert not is_feasible([[1]], [-1], n=1)
    assert is_feasible([[1]], [1], n=1)


def test_exact_fraction_optimum():
    res = maximize([1, 1], [[3, 1], [1, 3]], [1, 1])
    assert res.value == Fraction(1, 2) and res.x == (Fraction(1, 4), Fraction(1, 4))
