"""Buchberger's algorithm over F_p and standard monomial counting.

Polynomials are handled internally as ``{exponent tuple: coefficient}``
dicts; the public functions take and return ``PrimeFieldPoly``.
"""
from __future__ import annotations

import heapq

from .polynomials import Monomial, PrimeFieldIdeal, PrimeFieldPoly, order_key


class NotZeroDimensional(ValueError):
    pass


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a, b):
    return tuple(max(x, y) for x, y in zip(a, b))


def _coprime(a, b):
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _monic(f: dict, lm, p) -> dict:
    inv = pow(f[lm], -1, p)
    return {m: c * inv % p for m, c in f.items()}


def _sub_mul(f: dict, g: dict, c: int, shift, p) -> None:
    """In place: f -= c * x^shift * g."""
    for m, a in g.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        v = (f.get(mm, 0) - c * a) % p
        if v:
            f[mm] = v
        else:
            f.pop(mm, None)


def _normal_form(f: dict, basis: list[tuple], key, p) -> dict:
    """Fully reduce ``f`` modulo ``basis`` (list of ``(lm, monic dict)``)."""
    f = dict(f)
    rem: dict = {}
    while f:
        lt = max(f, key=key)
        for lm, g in basis:
            if _divides(lm, lt):
                shift = tuple(x - y for x, y in zip(lt, lm))
                _sub_mul(f, g, f[lt], shift, p)
                break
        else:
            rem[lt] = f.pop(lt)
    return rem


def groebner_basis(ideal: PrimeFieldIdeal | list[PrimeFieldPoly],
                   order: str = "grevlex") -> list[PrimeFieldPoly]:
    """Reduced Groebner basis, sorted by leading monomial (descending).

    Buchberger with the normal selection strategy, the coprime-leading-term
    criterion and the chain criterion.
    """
    polys = list(ideal.polynomials if isinstance(ideal, PrimeFieldIdeal) else ideal)
    if not polys:
        return []
    p, n = polys[0].p, polys[0].nvars
    key = order_key(order)

    basis: list[tuple] = []
    for f in polys:
        if f.is_zero():
            continue
        g = _normal_form(dict(f.terms), basis, key, p) if basis else dict(f.terms)
        if g:
            lm = max(g, key=key)
            basis.append((lm, _monic(g, lm, p)))
    if any(not any(lm) for lm, _ in basis):
        return [PrimeFieldPoly(p, n, {(0,) * n: 1})]

    # live pairs in a set for the chain criterion, a heap for selection
    pairs: set = set()
    queue: list = []

    def add_pair(i, j):
        pairs.add((i, j))
        heapq.heappush(queue, (sum(_lcm(basis[i][0], basis[j][0])), i, j))

    for j in range(len(basis)):
        for i in range(j):
            add_pair(i, j)
    while queue:
        _, i, j = heapq.heappop(queue)
        pairs.discard((i, j))
        lmi, gi = basis[i]
        lmj, gj = basis[j]
        if _coprime(lmi, lmj):
            continue
        lcm = _lcm(lmi, lmj)
        if any(k not in (i, j) and _divides(basis[k][0], lcm)
               and (min(i, k), max(i, k)) not in pairs
               and (min(j, k), max(j, k)) not in pairs
               for k in range(len(basis))):
            continue
        s: dict = {}
        _sub_mul(s, gi, -1, tuple(a - b for a, b in zip(lcm, lmi)), p)
        _sub_mul(s, gj, 1, tuple(a - b for a, b in zip(lcm, lmj)), p)
        h = _normal_form(s, basis, key, p)
        if not h:
            continue
        lm = max(h, key=key)
        if not any(lm):
            return [PrimeFieldPoly(p, n, {(0,) * n: 1})]
        basis.append((lm, _monic(h, lm, p)))
        k = len(basis) - 1
        for a in range(k):
            add_pair(a, k)

    # minimalize, then interreduce
    minimal = []
    for idx, (lm, g) in enumerate(basis):
        if any(_divides(lm2, lm) and (lm2 != lm or idx2 < idx)
               for idx2, (lm2, _) in enumerate(basis) if idx2 != idx):
            continue
        minimal.append((lm, g))
    reduced = []
    for idx, (lm, g) in enumerate(minimal):
        others = [b for k, b in enumerate(minimal) if k != idx]
        tail = _normal_form({m: c for m, c in g.items() if m != lm}, others, key, p)
        tail[lm] = 1
        reduced.append((lm, tail))
    reduced.sort(key=lambda b: key(b[0]), reverse=True)
    return [PrimeFieldPoly(p, n, g) for _, g in reduced]


def leading_monomials(basis: list[PrimeFieldPoly], order: str = "grevlex") -> list[Monomial]:
    return [f.leading_monomial(order) for f in basis]


def standard_monomial_count(basis: list[PrimeFieldPoly], order: str = "grevlex") -> int:
    """Number of monomials outside the leading term ideal, i.e. the
    dimension of the quotient ring. The basis must be zero-dimensional."""
    if not basis:
        raise NotZeroDimensional("empty basis: the quotient is the whole ring")
    lms = leading_monomials(basis, order)
    n = len(lms[0])
    bounds = []
    for i in range(n):
        pure = [m[i] for m in lms if all(x == 0 for j, x in enumerate(m) if j != i) and m[i] > 0]
        if not pure and not any(not any(m) for m in lms):
            raise NotZeroDimensional(f"no pure power of variable {i} among leading terms")
        bounds.append(min(pure) if pure else 0)
    if any(not any(m) for m in lms):
        return 0

    count = 0

    def walk(prefix: list[int]):
        nonlocal count
        i = len(prefix)
        if i == n:
            count += 1
            return
        for a in range(bounds[i]):
            cand = prefix + [a]
            # prune on leading monomials supported in the first i+1 variables
            if any(all(m[j] == 0 for j in range(i + 1, n)) and
                   all(m[j] <= cand[j] for j in range(i + 1)) for m in lms):
                break
            walk(cand)

    walk([])
    return count
