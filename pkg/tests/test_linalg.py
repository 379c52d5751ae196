from itertools import combinations
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from frobeniuskit.linalg import (
    cokernel,
    determinant,
    identity,
    is_torsion,
    matmul,
    smith_normal_form,
)


def determinantal_divisors(a):
    """Oracle: d_1 ... d_k = gcd of the k x k minors."""
    rows, cols = len(a), len(a[0]) if a else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                g = gcd(g, determinant(tuple(tuple(a[r][c] for c in cs) for r in rs)))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


matrices = st.integers(1, 4).flatmap(lambda r: st.integers(1, 4).flatmap(
    lambda c: st.lists(st.lists(st.integers(-9, 9), min_size=c, max_size=c),
                       min_size=r, max_size=r)))


def test_empty():
    snf = smith_normal_form([])
    assert snf.S == () and snf.diagonal == ()


def test_identity():
    assert smith_normal_form(identity(3)).S == identity(3)


def test_veronese_matrix():
    assert smith_normal_form([[1, 0], [1, 2]]).diagonal == (1, 2)


def test_known_invariants():
    m = [[12, 6, 4, 8], [3, 9, 6, 12], [2, 16, 14, 28], [20, 10, 10, 20]]
    assert smith_normal_form(m).diagonal == (1, 10, 30, 0)


@settings(max_examples=150, deadline=None)
@given(matrices)
def test_snf_properties(a):
    snf = smith_normal_form(a)
    assert matmul(matmul(snf.U, tuple(map(tuple, a))), snf.V) == snf.S
    assert abs(determinant(snf.U)) == 1 and abs(determinant(snf.V)) == 1
    diag = snf.diagonal
    assert all(x >= 0 for x in diag)
    for x, y in zip(diag, diag[1:]):
        assert (y == 0) or (x != 0 and y % x == 0)
    off = [snf.S[i][j] for i in range(len(a)) for j in range(len(a[0])) if i != j]
    assert not any(off)
    assert [x for x in diag if x] == determinantal_divisors(a)


def test_cokernel_examples():
    assert cokernel([[0]]).free_rank == 1
    g = cokernel([[1, 0], [1, 2]])
    assert (g.free_rank, g.torsion_invariants) == (0, (2,))
    g = cokernel([[2]])
    assert (g.free_rank, g.torsion_invariants) == (0, (2,))


def test_reduce_examples():
    g = cokernel([[2]])
    assert g.reduce([3]).coords == (1,)
    g = cokernel([[1, 0], [1, 2]])
    assert g.reduce([1, 1]).is_zero()
    with pytest.raises(ValueError):
        g.reduce([1])


def test_is_torsion_examples():
    z = cokernel([[0]])
    assert is_torsion(z.zero())
    assert not is_torsion(z.reduce([1]))
    assert is_torsion(cokernel([[2]]).reduce([1]))


@settings(max_examples=100, deadline=None)
@given(matrices, st.data())
def test_cokernel_invariance_and_homomorphism(a, data):
    g = cokernel(a)
    n = len(a)
    counts = (g.free_rank, g.torsion_invariants)
    assert g.free_rank + len(g.torsion_invariants) + sum(
        1 for d in g.snf.diagonal if d == 1) == g.generator_count
    # append a relation already in the column span
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=len(a[0]), max_size=len(a[0])))
    extra = [sum(c * row[j] for j, c in enumerate(coeffs)) for row in a]
    g2 = cokernel([list(row) + [x] for row, x in zip(a, extra)])
    assert (g2.free_rank, g2.torsion_invariants) == counts
    vec = st.lists(st.integers(-20, 20), min_size=n, max_size=n)
    v, w = data.draw(vec), data.draw(vec)
    assert g.reduce([x + y for x, y in zip(v, w)]) == g.reduce(v) + g.reduce(w)
    for j in range(len(a[0])):
        col = [row[j] for row in a]
        assert g.reduce([x + y for x, y in zip(v, col)]) == g.reduce(v)
        assert g.reduce(col).is_zero()
