"""Exact integer linear algebra: Smith normal form and finitely generated
abelian groups presented as cokernels.

Matrices are plain tuples of row tuples of Python ints, so there is no
overflow anywhere. A matrix ``a`` with ``rows x cols`` entries is read as a
map ``Z^cols -> Z^rows``; its cokernel is ``Z^rows / (column span of a)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

IntMatrix = tuple[tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]], ncols: int | None = None) -> IntMatrix:
    """Coerce nested sequences (ints or decimal strings) to an ``IntMatrix``."""
    m = tuple(tuple(int(x) for x in row) for row in rows)
    widths = {len(row) for row in m}
    if len(widths) > 1:
        raise ValueError("ragged matrix rows")
    if ncols is not None and m and widths != {ncols}:
        raise ValueError(f"expected {ncols} columns")
    return m


def shape(a: IntMatrix) -> tuple[int, int]:
    return len(a), (len(a[0]) if a else 0)


def identity(n: int) -> IntMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def matmul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    cols_b = list(zip(*b)) if b else []
    if not a:
        return ()
    if not cols_b:
        return tuple(() for _ in a)
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols_b) for row in a)


def matvec(a: IntMatrix, v: Sequence[int]) -> tuple[int, ...]:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def transpose(a: IntMatrix, ncols: int = 0) -> IntMatrix:
    if not a:
        return tuple(() for _ in range(ncols))
    return tuple(zip(*a))


def determinant(a: IntMatrix) -> int:
    """Bareiss fraction-free determinant."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(row) for row in a]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def rank(a: IntMatrix) -> int:
    return sum(1 for d in smith_normal_form(a).diagonal if d != 0)


@dataclass(frozen=True)
class SmithDecomposition:
    """``U @ A @ V == S`` with ``U``, ``V`` unimodular and ``S`` diagonal."""

    U: IntMatrix
    S: IntMatrix
    V: IntMatrix

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(len(self.S), len(self.S[0]) if self.S else 0)
        return tuple(self.S[i][i] for i in range(n))


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithDecomposition:
    """Smith normal form by elementary operations, pivoting on the entry of
    least absolute value. Diagonal entries are non-negative and form a
    divisibility chain."""
    a = as_matrix(a)
    nr, nc = shape(a)
    m = [list(row) for row in a]
    u = [list(row) for row in identity(nr)]
    v = [list(row) for row in identity(nc)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, k):
        # row[dst] += k * row[src]
        m[dst] = [x + k * y for x, y in zip(m[dst], m[src])]
        u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):
        for row in m:
            row[dst] += k * row[src]
        for row in v:
            row[dst] += k * row[src]

    for t in range(min(nr, nc)):
        while True:
            pivot = None
            for i in range(t, nr):
                for j in range(t, nc):
                    if m[i][j] and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                        pivot = (i, j)
            if pivot is None:
                break
            swap_rows(t, pivot[0])
            swap_cols(t, pivot[1])
            done = True
            for i in range(t + 1, nr):
                q = m[i][t] // m[t][t]
                if q:
                    add_row(t, i, -q)
                if m[i][t]:
                    done = False
            for j in range(t + 1, nc):
                q = m[t][j] // m[t][t]
                if q:
                    add_col(t, j, -q)
                if m[t][j]:
                    done = False
            if not done:
                continue
            # pivot must divide the remaining block
            bad = next((i for i in range(t + 1, nr)
                        for j in range(t + 1, nc) if m[i][j] % m[t][t]), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if t < nr and t < nc and m[t][t] < 0:
            m[t] = [-x for x in m[t]]
            u[t] = [-x for x in u[t]]
    return SmithDecomposition(
        U=tuple(map(tuple, u)), S=tuple(map(tuple, m)), V=tuple(map(tuple, v))
    )


@dataclass(frozen=True, eq=False)
class AbelianGroup:
    """The cokernel of ``relation_matrix``: one generator per row, one
    relation per column.

    Canonical coordinates of an element are the torsion coordinates (each in
    ``[0, d_i)``) followed by the free coordinates; coordinates for trivial
    invariants ``d_i = 1`` are dropped.
    """

    generator_count: int
    relation_matrix: IntMatrix
    snf: SmithDecomposition
    free_rank: int
    torsion_invariants: tuple[int, ...]
    _torsion_rows: tuple[int, ...] = field(repr=False)
    _free_rows: tuple[int, ...] = field(repr=False)

    def __eq__(self, other):
        return (isinstance(other, AbelianGroup)
                and self.generator_count == other.generator_count
                and self.relation_matrix == other.relation_matrix)

    def __hash__(self):
        return hash((self.generator_count, self.relation_matrix))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion_invariants

    def zero(self) -> GroupElement:
        return GroupElement(self, (0,) * (len(self.torsion_invariants) + self.free_rank))

    def reduce(self, v: Sequence[int]) -> GroupElement:
        if len(v) != self.generator_count:
            raise ValueError(
                f"vector has length {len(v)}, group has {self.generator_count} generators")
        w = matvec(self.snf.U, [int(x) for x in v])
        tors = tuple(w[i] % d for i, d in zip(self._torsion_rows, self.torsion_invariants))
        free = tuple(w[i] for i in self._free_rows)
        return GroupElement(self, tors + free)

    def element(self, coords: Sequence[int]) -> GroupElement:
        """Build an element from canonical coordinates (torsion reduced here)."""
        k = len(self.torsion_invariants)
        if len(coords) != k + self.free_rank:
            raise ValueError("wrong number of coordinates")
        tors = tuple(int(c) % d for c, d in zip(coords[:k], self.torsion_invariants))
        return GroupElement(self, tors + tuple(int(c) for c in coords[k:]))

    def generators(self) -> list[GroupElement]:
        """Elements of the standard basis: torsion generators then free ones."""
        n = len(self.torsion_invariants) + self.free_rank
        return [self.element([int(i == j) for j in range(n)]) for i in range(n)]

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion_invariants]
        if self.free_rank:
            parts.insert(0, "Z" if self.free_rank == 1 else f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def cokernel(a: Sequence[Sequence[int]], generator_count: int | None = None) -> AbelianGroup:
    """``Z^rows / colspan(a)``.

    ``generator_count`` is needed only to disambiguate a matrix with no
    columns (every row is then empty).
    """
    a = as_matrix(a)
    nr = len(a) if generator_count is None else generator_count
    if generator_count is not None and len(a) not in (0, nr):
        raise ValueError("generator_count disagrees with the matrix")
    if not a:
        a = tuple(() for _ in range(nr))
    snf = smith_normal_form(a) if nr and a[0] else SmithDecomposition(identity(nr), a, ())
    diag = snf.diagonal
    torsion_rows, torsion = [], []
    for i, d in enumerate(diag):
        if d > 1:
            torsion_rows.append(i)
            torsion.append(d)
    r = sum(1 for d in diag if d)
    return AbelianGroup(
        generator_count=nr,
        relation_matrix=a,
        snf=snf,
        free_rank=nr - r,
        torsion_invariants=tuple(torsion),
        _torsion_rows=tuple(torsion_rows),
        _free_rows=tuple(range(r, nr)),
    )


@dataclass(frozen=True)
class GroupElement:
    """An element of an ``AbelianGroup`` in canonical coordinates.

    Equality and hashing use the coordinates only, so elements of one group
    can key a dict directly.
    """

    group: AbelianGroup = field(compare=False, repr=False)
    coords: tuple[int, ...]

    @property
    def torsion_coords(self) -> tuple[int, ...]:
        return self.coords[: len(self.group.torsion_invariants)]

    @property
    def free_coords(self) -> tuple[int, ...]:
        return self.coords[len(self.group.torsion_invariants):]

    def is_zero(self) -> bool:
        return not any(self.coords)

    def _check(self, other):
        if not isinstance(other, GroupElement):
            return NotImplemented
        if other.group != self.group:
            raise ValueError("elements belong to different groups")
        return other

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.group.element([x + y for x, y in zip(self.coords, other.coords)])

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return self.group.element([x - y for x, y in zip(self.coords, other.coords)])

    def __neg__(self):
        return self.group.element([-x for x in self.coords])

    def __mul__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        return self.group.element([k * x for x in self.coords])

    __rmul__ = __mul__


def is_torsion(x: GroupElement) -> bool:
    return not any(x.free_coords)
