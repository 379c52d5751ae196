"""Sparse multivariate polynomials over a prime field F_p."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .._config import require_prime

Monomial = tuple[int, ...]


def _lex(m):
    return m


def _grlex(m):
    return (sum(m), m)


def _grevlex(m):
    return (sum(m), tuple(-x for x in reversed(m)))


MONOMIAL_ORDERS = {"lex": _lex, "grlex": _grlex, "grevlex": _grevlex}


def order_key(order: str):
    try:
        return MONOMIAL_ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}; "
                         f"choose from {sorted(MONOMIAL_ORDERS)}") from None


@dataclass(frozen=True)
class PrimeFieldPoly:
    p: int
    nvars: int
    terms: Mapping[Monomial, int]

    def __post_init__(self):
        clean = {}
        for mono, c in dict(self.terms).items():
            mono = tuple(int(x) for x in mono)
            if len(mono) != self.nvars or any(x < 0 for x in mono):
                raise ValueError(f"bad exponent vector {mono}")
            c = (clean.get(mono, 0) + int(c)) % self.p
            if c:
                clean[mono] = c
            else:
                clean.pop(mono, None)
        object.__setattr__(self, "terms", clean)

    def __hash__(self):
        return hash((self.p, self.nvars, frozenset(self.terms.items())))

    @classmethod
    def variable(cls, p: int, nvars: int, i: int) -> PrimeFieldPoly:
        return cls(p, nvars, {tuple(int(j == i) for j in range(nvars)): 1})

    @classmethod
    def monomial(cls, p: int, exps: Iterable[int], coeff: int = 1) -> PrimeFieldPoly:
        exps = tuple(exps)
        return cls(p, len(exps), {exps: coeff})

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def _same_ring(self, other):
        if (self.p, self.nvars) != (other.p, other.nvars):
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: PrimeFieldPoly) -> PrimeFieldPoly:
        self._same_ring(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return PrimeFieldPoly(self.p, self.nvars, terms)

    def __neg__(self):
        return PrimeFieldPoly(self.p, self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return PrimeFieldPoly(self.p, self.nvars, {m: c * other for m, c in self.terms.items()})
        self._same_ring(other)
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                terms[m] = (terms.get(m, 0) + c1 * c2) % self.p
        return PrimeFieldPoly(self.p, self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> PrimeFieldPoly:
        out = PrimeFieldPoly(self.p, self.nvars, {(0,) * self.nvars: 1})
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def leading_monomial(self, order: str = "grevlex") -> Monomial:
        return max(self.terms, key=order_key(order))

    def to_json(self) -> list[dict]:
        return [{"exponents": list(m), "coefficient": c} for m, c in sorted(self.terms.items())]

    @classmethod
    def from_json(cls, p: int, nvars: int, data: list[dict]) -> PrimeFieldPoly:
        return cls(p, nvars, {tuple(t["exponents"]): int(t["coefficient"]) for t in data})


@dataclass(frozen=True)
class PrimeFieldIdeal:
    p: int
    nvars: int
    polynomials: tuple[PrimeFieldPoly, ...]

    def __post_init__(self):
        require_prime(self.p)
        polys = tuple(self.polynomials)
        for f in polys:
            if (f.p, f.nvars) != (self.p, self.nvars):
                raise ValueError("generator lives in a different ring")
        object.__setattr__(self, "polynomials", polys)

    def __add__(self, other: PrimeFieldIdeal) -> PrimeFieldIdeal:
        if (self.p, self.nvars) != (other.p, other.nvars):
            raise ValueError("ideals live in different rings")
        return PrimeFieldIdeal(self.p, self.nvars, self.polynomials + other.polynomials)

    @classmethod
    def maximal(cls, p: int, nvars: int) -> PrimeFieldIdeal:
        return cls(p, nvars, tuple(PrimeFieldPoly.variable(p, nvars, i) for i in range(nvars)))

    def to_json(self) -> dict:
        return {"characteristic": self.p, "variables": self.nvars,
                "polynomials": [f.to_json() for f in self.polynomials]}

    @classmethod
    def from_json(cls, data: dict) -> PrimeFieldIdeal:
        p, n = int(data["characteristic"]), int(data["variables"])
        return cls(p, n, tuple(PrimeFieldPoly.from_json(p, n, f) for f in data["polynomials"]))


def frobenius_power_poly(f: PrimeFieldPoly, q: int) -> PrimeFieldPoly:
    """``f^q``; in characteristic p this is ``sum c^q m^q`` term by term."""
    return PrimeFieldPoly(f.p, f.nvars,
                          {tuple(q * x for x in m): pow(c, q, f.p) for m, c in f.terms.items()})
