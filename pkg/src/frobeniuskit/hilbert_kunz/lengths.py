"""Exact Hilbert-Kunz lengths ``l(A / I^[q])``.

Two engines:

* ``hk_length_toric``: monomial ideals of a normal semigroup ring, by
  enumerating semigroup elements in a certified box.
* ``hk_length_hypersurface``: ``F_p[x] / (f)`` with ``I`` the maximal ideal,
  as ``q^n - rank(f * -)`` on ``F_p[x] / (x_i^q)``, split into blocks by the
  finest grading for which ``f`` is homogeneous.

The Groebner route (``groebner_length``) is the independent oracle for both.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .._config import check_budget, require_prime
from ..linalg import cokernel
from ..toric import SemigroupRing, Vector
from .groebner import groebner_basis, standard_monomial_count
from .polynomials import PrimeFieldIdeal, PrimeFieldPoly, frobenius_power_poly

DEFAULT_K_MAX = 64
DEFAULT_HYPERSURFACE_CAP = 5 * 10**5


class NotMPrimary(ValueError):
    pass


@dataclass(frozen=True)
class MonomialIdeal:
    """Monomial ideal of a semigroup ring, generated by lattice points."""

    ring: SemigroupRing
    generators: tuple[Vector, ...]

    def __post_init__(self):
        gens = tuple(tuple(int(x) for x in g) for g in self.generators)
        if not gens:
            raise ValueError("monomial ideal needs at least one generator")
        for g in gens:
            if len(g) != self.ring.dimension or not self.ring.cone.dual_contains(g):
                raise ValueError(f"generator {g} is not a point of the semigroup")
        object.__setattr__(self, "generators", gens)

    @classmethod
    def maximal(cls, ring: SemigroupRing) -> MonomialIdeal:
        return cls(ring, ring.semigroup_generators)

    def contains(self, m: Sequence[int]) -> bool:
        cone = self.ring.cone
        return any(cone.dual_contains([a - b for a, b in zip(m, g)]) for g in self.generators)

    def to_json(self) -> dict:
        return {"generators": [list(g) for g in self.generators]}


def _is_power_of(q: int, p: int) -> bool:
    while q % p == 0 and q > 1:
        q //= p
    return q == 1


def frobenius_power(ideal, q: int):
    """Generators raised to the q-th power: ``g -> q g`` for monomial ideals,
    ``f -> f^q`` for polynomial ideals (``q`` must be a power of ``p``)."""
    if isinstance(ideal, MonomialIdeal):
        return MonomialIdeal(ideal.ring, tuple(tuple(q * x for x in g) for g in ideal.generators))
    if isinstance(ideal, PrimeFieldPoly):
        if not _is_power_of(q, ideal.p):
            raise ValueError(f"{q} is not a power of {ideal.p}")
        return frobenius_power_poly(ideal, q)
    if isinstance(ideal, PrimeFieldIdeal):
        if not _is_power_of(q, ideal.p):
            raise ValueError(f"{q} is not a power of {ideal.p}")
        return PrimeFieldIdeal(ideal.p, ideal.nvars,
                               tuple(frobenius_power_poly(f, q) for f in ideal.polynomials))
    raise TypeError(f"cannot take a Frobenius power of {type(ideal).__name__}")


def certify_m_primary(ideal: MonomialIdeal, k_max: int = DEFAULT_K_MAX) -> list[int]:
    """Least ``k_i`` with ``k_i a_i`` in the ideal, per semigroup generator."""
    ks = []
    for a in ideal.ring.semigroup_generators:
        for k in range(1, k_max + 1):
            if ideal.contains([k * x for x in a]):
                ks.append(k)
                break
        else:
            raise NotMPrimary(f"no power up to {k_max} of generator {a} lies in the ideal")
    return ks


def hk_length_toric(ideal: MonomialIdeal, p: int, e: int, k_max: int = DEFAULT_K_MAX,
                    budget: int | None = None) -> int:
    """``#{m in semigroup : m not in I^[q] semigroup ideal}``.

    Points are generated as sums ``sum c_i a_i``. A point with some
    ``c_i >= q k_i`` already lies in ``I^[q]``, and the ideal absorbs further
    additions, so points found in ``I^[q]`` are dropped as soon as they
    appear; what survives to the end is exactly the complement.
    """
    require_prime(p)
    q = p ** e
    ks = certify_m_primary(ideal, k_max)
    rays = np.array(ideal.ring.cone.rays, dtype=np.int64).T
    thresholds = q * (np.array(ideal.generators, dtype=np.int64) @ rays)

    def outside(points: np.ndarray) -> np.ndarray:
        vals = points @ rays
        inside = (vals[:, None, :] >= thresholds[None, :, :]).all(axis=2).any(axis=1)
        return points[~inside]

    d = ideal.ring.dimension
    current = outside(np.zeros((1, d), dtype=np.int64))
    enumerated = 1
    for a, k in zip(ideal.ring.semigroup_generators, ks):
        step = np.array(a, dtype=np.int64)
        layers = [current]
        shifted = current
        for _ in range(1, q * k):
            shifted = outside(shifted + step)
            if not len(shifted):
                break
            layers.append(shifted)
            enumerated += len(shifted)
            check_budget(enumerated, budget, "toric Hilbert-Kunz enumeration")
        current = np.unique(np.concatenate(layers), axis=0)
    return int(len(current))


# -- hypersurface engine --------------------------------------------------

def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank over F_p by Gaussian elimination (entries reduced mod p)."""
    m = np.array(matrix, dtype=np.int64) % p
    rows, cols = m.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if not len(nz):
            continue
        piv = r + nz[0]
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        below = m[r + 1:, c]
        mask = np.nonzero(below)[0]
        if len(mask):
            idx = r + 1 + mask
            m[idx] = (m[idx] - np.outer(m[idx, c], m[r])) % p
        r += 1
    return r


def _grading(f: PrimeFieldPoly):
    """Class group ``Z^n / L``, L spanned by the differences of the exponents
    of ``f``; multiplication by ``f`` shifts classes by the class of any term."""
    terms = sorted(f.terms)
    base = terms[0]
    diffs = [tuple(t[i] - base[i] for i in range(f.nvars)) for t in terms[1:]]
    group = cokernel([list(col) for col in zip(*diffs)] if diffs else [], generator_count=f.nvars)
    return group, group.reduce(base).coords


def _labels(exps: np.ndarray, group) -> np.ndarray:
    u = np.array(group.snf.U, dtype=np.int64)
    w = exps @ u.T
    cols = [w[:, i] % dmod for i, dmod in zip(group._torsion_rows, group.torsion_invariants)]
    cols += [w[:, i] for i in group._free_rows]
    return np.stack(cols, axis=1) if cols else np.zeros((len(exps), 0), dtype=np.int64)


def hk_length_hypersurface(f: PrimeFieldPoly, p: int, e: int,
                           cap: int = DEFAULT_HYPERSURFACE_CAP) -> int:
    """``dim_k F_p[x] / ((x_i^q) + (f))`` for ``q = p^e``."""
    if p != f.p:
        raise ValueError(f"f is defined over F_{f.p}, not F_{p}")
    if f.is_zero():
        raise ValueError("f must be nonzero")
    if (0,) * f.nvars in f.terms:
        raise ValueError("f must vanish at the origin")
    n = f.nvars
    require_prime(p)
    q = p ** e
    total = q ** n
    check_budget(total, cap, "hypersurface monomial basis")

    grids = np.meshgrid(*[np.arange(q, dtype=np.int64)] * n, indexing="ij")
    exps = np.stack([g.ravel() for g in grids], axis=1)
    group, shift = _grading(f)
    torsion = group.torsion_invariants
    labels = _labels(exps, group)
    uniq, inverse = np.unique(labels, axis=0, return_inverse=True)
    inverse = inverse.ravel()
    order = np.argsort(inverse, kind="stable")
    bounds = np.searchsorted(inverse[order], np.arange(len(uniq) + 1))
    block_of = {tuple(int(x) for x in row): k for k, row in enumerate(uniq)}
    # position of each monomial inside its block
    position = np.empty(total, dtype=np.int64)
    for k in range(len(uniq)):
        members = order[bounds[k]:bounds[k + 1]]
        position[members] = np.arange(len(members))

    coeffs = [(np.array(t, dtype=np.int64), c) for t, c in f.terms.items()]
    strides = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    rank = 0
    for k, row in enumerate(uniq):
        target_label = _shift_label(row, shift, torsion)
        t = block_of.get(target_label)
        if t is None:
            continue
        src = order[bounds[k]:bounds[k + 1]]
        tgt_size = bounds[t + 1] - bounds[t]
        mat = np.zeros((tgt_size, len(src)), dtype=np.int64)
        for texp, c in coeffs:
            prod = exps[src] + texp
            ok = (prod < q).all(axis=1)
            if not ok.any():
                continue
            idx = prod[ok] @ strides
            mat[position[idx], np.nonzero(ok)[0]] += c
        rank += rank_mod_p(mat, p)
    return total - rank


def _shift_label(row, shift, torsion):
    k = len(torsion)
    out = [(int(a) + b) % d for a, b, d in zip(row[:k], shift[:k], torsion)]
    out += [int(a) + b for a, b in zip(row[k:], shift[k:])]
    return tuple(out)


def groebner_length(ring_ideal: PrimeFieldIdeal, e: int, order: str = "grevlex",
                    ideal: PrimeFieldIdeal | None = None) -> int:
    """``dim_k F_p[x] / (J + I^[q])`` via a reduced Groebner basis; ``I``
    defaults to the ideal of the variables."""
    p, n = ring_ideal.p, ring_ideal.nvars
    q = p ** e
    ideal = PrimeFieldIdeal.maximal(p, n) if ideal is None else ideal
    basis = groebner_basis(ring_ideal + frobenius_power(ideal, q), order)
    return standard_monomial_count(basis, order)
