"""Cones, fans, Weil divisors and divisor class groups of toric varieties.

Conventions: rays ``v_rho`` live in ``N = Z^d`` and are the inner normals of
the facets of the dual cone in ``M = Z^d``. The class group is presented on
one generator ``D_rho`` per ray, with relations ``div(chi^m)``, i.e. it is the
cokernel of the ray matrix (rays as rows). The canonical divisor is
``-sum D_rho``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .linalg import AbelianGroup, GroupElement, cokernel, determinant, is_torsion, rank

Vector = tuple[int, ...]
DivisorClass = GroupElement


class ConeError(ValueError):
    """Invalid cone, fan or semigroup data."""


def primitive(v: Sequence[int]) -> Vector:
    g = math.gcd(*v)
    if g == 0:
        raise ConeError("zero vector has no primitive representative")
    return tuple(int(x) // g for x in v)


def pairing(m: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(m, v))


def _normal_vector(vectors: Sequence[Vector], d: int) -> Vector | None:
    """Primitive integer normal to ``d - 1`` vectors in ``Z^d`` via cofactors,
    or None if they are dependent."""
    normal = []
    for i in range(d):
        minor = tuple(tuple(row[j] for j in range(d) if j != i) for row in vectors)
        normal.append((-1) ** i * determinant(minor))
    if not any(normal):
        return None
    return primitive(normal)


def facet_normals(generators: Iterable[Sequence[int]], d: int) -> list[Vector]:
    """Primitive inner facet normals of the cone spanned by ``generators``.

    Brute force over ``(d-1)``-subsets of generators: a candidate normal is
    kept when it is non-negative on every generator. Assumes the generators
    span ``Q^d``.
    """
    gens = sorted({tuple(int(x) for x in g) for g in generators if any(g)})
    if d == 1:
        signs = {1 if g[0] > 0 else -1 for g in gens}
        return sorted((s,) for s in signs) if len(signs) == 1 else []
    found = set()
    for subset in combinations(gens, d - 1):
        n = _normal_vector(subset, d)
        if n is None:
            continue
        vals = [pairing(g, n) for g in gens]
        if all(x >= 0 for x in vals):
            cand = n
        elif all(x <= 0 for x in vals):
            cand = tuple(-x for x in n)
        else:
            continue
        tight = [g for g, x in zip(gens, vals) if x == 0]
        if rank(tight) == d - 1:
            found.add(cand)
    return sorted(found)


def dualize(generators: Iterable[Sequence[int]]) -> list[Vector]:
    """Extremal primitive rays of the dual of the cone spanned by
    ``generators``, sorted lexicographically.

    The input cone must be full-dimensional and strongly convex so that the
    dual is too.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    if not gens:
        raise ConeError("no generators")
    d = len(gens[0])
    if any(len(g) != d for g in gens):
        raise ConeError("generators have different lengths")
    if rank(gens) != d:
        raise ConeError("generators do not span Q^d (cone not full-dimensional)")
    rays = facet_normals(gens, d)
    if len(rays) < d or rank(rays) != d:
        raise ConeError("cone spanned by the generators is not strongly convex")
    return rays


def extremal_rays(generators: Iterable[Sequence[int]]) -> list[Vector]:
    """Extremal primitive rays of the cone spanned by ``generators``."""
    return dualize(dualize(generators))


def _check_rays(rays: Sequence[Sequence[int]], d: int) -> tuple[Vector, ...]:
    out = []
    for r in rays:
        r = tuple(int(x) for x in r)
        if len(r) != d:
            raise ConeError(f"ray {r} does not have length {d}")
        if not any(r):
            raise ConeError("zero ray")
        if math.gcd(*r) != 1:
            raise ConeError(f"ray {r} is not primitive")
        out.append(r)
    if len(set(out)) != len(out):
        raise ConeError("duplicate rays")
    return tuple(out)


class _RayData:
    """Shared divisor machinery for cones and fans: both present their
    divisor class group as the cokernel of the ray matrix."""

    lattice_rank: int
    rays: tuple[Vector, ...]

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    @cached_property
    def class_group(self) -> AbelianGroup:
        return cokernel(self.rays, generator_count=self.n_rays)

    def principal_divisor(self, m: Sequence[int]) -> WeilDivisor:
        if len(m) != self.lattice_rank:
            raise ValueError("lattice point has the wrong dimension")
        return WeilDivisor(tuple(pairing(m, v) for v in self.rays))

    def divisor_class(self, divisor: WeilDivisor | Sequence[int]) -> DivisorClass:
        coeffs = divisor.coefficients if isinstance(divisor, WeilDivisor) else tuple(divisor)
        if len(coeffs) != self.n_rays:
            raise ValueError(f"divisor has {len(coeffs)} coefficients, expected {self.n_rays}")
        if not all(isinstance(c, int) or Fraction(c).denominator == 1 for c in coeffs):
            raise ValueError("divisor class of a non-integral divisor")
        return self.class_group.reduce([int(c) for c in coeffs])

    def canonical_divisor(self) -> WeilDivisor:
        return WeilDivisor((-1,) * self.n_rays)

    def canonical_class(self) -> DivisorClass:
        return self.divisor_class(self.canonical_divisor())

    def is_q_gorenstein(self) -> bool:
        return is_torsion(self.canonical_class())


@dataclass(frozen=True)
class Cone(_RayData):
    """A full-dimensional strongly convex rational polyhedral cone in
    ``N = Z^d``, given by its extremal primitive rays."""

    lattice_rank: int
    rays: tuple[Vector, ...]

    def __post_init__(self):
        rays = _check_rays(self.rays, self.lattice_rank)
        object.__setattr__(self, "rays", rays)
        if rank(rays) != self.lattice_rank:
            raise ConeError("rays do not span Q^d")
        if sorted(rays) != extremal_rays(rays):
            raise ConeError("rays are not the extremal rays of a strongly convex cone")

    @classmethod
    def from_generators(cls, generators: Sequence[Sequence[int]]) -> Cone:
        """Cone whose dual is spanned by the given lattice points of ``M``."""
        gens = [tuple(int(x) for x in g) for g in generators]
        return cls(len(gens[0]), tuple(dualize(gens)))

    def dual_contains(self, m: Sequence[int]) -> bool:
        return all(pairing(m, v) >= 0 for v in self.rays)

    def to_json(self) -> dict:
        return {"lattice_rank": self.lattice_rank, "rays": [list(r) for r in self.rays]}


@dataclass(frozen=True)
class Fan(_RayData):
    """A smooth fan; completeness is checked only in dimension at most 2."""

    lattice_rank: int
    rays: tuple[Vector, ...]
    maximal_cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        d = self.lattice_rank
        rays = _check_rays(self.rays, d)
        object.__setattr__(self, "rays", rays)
        cones = tuple(tuple(sorted(int(i) for i in c)) for c in self.maximal_cones)
        object.__setattr__(self, "maximal_cones", cones)
        for c in cones:
            if len(c) != d or len(set(c)) != d or not all(0 <= i < len(rays) for i in c):
                raise ConeError(f"maximal cone {c} does not index {d} distinct rays")
            if abs(determinant(tuple(rays[i] for i in c))) != 1:
                raise ConeError(f"maximal cone {c} is not smooth")
        if d == 1:
            if sorted(rays) != [(-1,), (1,)] or sorted(cones) != [(0,), (1,)]:
                raise ConeError("a complete fan in dimension 1 has rays (1) and (-1)")
        elif d == 2:
            self._check_complete_2d()

    def _check_complete_2d(self):
        order = sorted(range(len(self.rays)),
                       key=lambda i: math.atan2(self.rays[i][1], self.rays[i][0]))
        expected = set()
        for a, b in zip(order, order[1:] + order[:1]):
            u, v = self.rays[a], self.rays[b]
            if u[0] * v[1] - u[1] * v[0] <= 0:
                raise ConeError("fan is not complete: angular gap of at least pi")
            expected.add(tuple(sorted((a, b))))
        if expected != set(self.maximal_cones):
            raise ConeError("fan is not complete: maximal cones are not the angular sectors")

    def degree(self, cls: DivisorClass) -> int:
        """Integer coordinate of a class when the class group is ``Z``,
        oriented so that each ``D_rho`` class is positive on ``P^n``."""
        g = self.class_group
        if g.free_rank != 1 or g.torsion_invariants:
            raise ValueError("degree is defined only when the class group is Z")
        ref = self.divisor_class([1] + [0] * (self.n_rays - 1)).free_coords[0]
        return cls.free_coords[0] * (1 if ref > 0 else -1)

    def to_json(self) -> dict:
        return {"lattice_rank": self.lattice_rank,
                "rays": [list(r) for r in self.rays],
                "maximal_cones": [list(c) for c in self.maximal_cones]}


def projective_space(n: int) -> Fan:
    """The fan of ``P^n``: rays ``e_1, ..., e_n, -(e_1 + ... + e_n)``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    rays.append(tuple([-1] * n))
    cones = list(combinations(range(n + 1), n))
    return Fan(n, tuple(rays), tuple(cones))


@dataclass(frozen=True)
class WeilDivisor:
    """Torus-invariant (Q-)Weil divisor: one coefficient per ray.

    Coefficients are ints, or Fractions for Q-divisors.
    """

    coefficients: tuple

    def __add__(self, other):
        if len(other.coefficients) != len(self.coefficients):
            raise ValueError("divisors on different ray sets")
        return WeilDivisor(tuple(_norm(a + b) for a, b in
                                 zip(self.coefficients, other.coefficients)))

    def __neg__(self):
        return WeilDivisor(tuple(-a for a in self.coefficients))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> WeilDivisor:
        return WeilDivisor(tuple(_norm(c * a) for a in self.coefficients))

    @property
    def is_integral(self) -> bool:
        return all(Fraction(a).denominator == 1 for a in self.coefficients)


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x)
    return x


def round_down(divisor: WeilDivisor) -> WeilDivisor:
    return WeilDivisor(tuple(math.floor(a) for a in divisor.coefficients))


@dataclass(frozen=True)
class SemigroupRing:
    """``k[sigma^vee cap M]`` with a user-supplied generating set of the
    semigroup (normally its Hilbert basis)."""

    cone: Cone
    semigroup_generators: tuple[Vector, ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.semigroup_generators)
        object.__setattr__(self, "semigroup_generators", gens)
        for g in gens:
            if len(g) != self.cone.lattice_rank:
                raise ConeError(f"generator {g} has the wrong dimension")
            if not any(g):
                raise ConeError("zero semigroup generator")
            if not self.cone.dual_contains(g):
                raise ConeError(f"generator {g} is not in the dual cone")

    @classmethod
    def from_generators(cls, generators: Sequence[Sequence[int]]) -> SemigroupRing:
        return cls(Cone.from_generators(generators), tuple(map(tuple, generators)))

    @property
    def dimension(self) -> int:
        return self.cone.lattice_rank

    def to_json(self) -> dict:
        return {"cone": self.cone.to_json(),
                "semigroup_generators": [list(g) for g in self.semigroup_generators]}
