"""Two-point exact fits of ``l(q) = a q^d + b q^(d-1)`` to Hilbert-Kunz
samples, and exact evaluation of closed forms ``sum c_i r_i^e``."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence


@dataclass(frozen=True)
class HKSample:
    e: int
    q: int
    length: int


@dataclass
class HKEstimate:
    """``pairs[i]`` is the exact solution through samples ``i`` and ``i+1``.

    ``residuals`` holds ``l - (a q^d + b q^(d-1))`` for every sample under
    the last pair; they are diagnostics only.
    """

    d: int
    samples: list[HKSample]
    pairs: list[tuple[Fraction, Fraction]] = field(default_factory=list)
    residuals: list[Fraction] = field(default_factory=list)

    @property
    def e_hk(self) -> Fraction:
        return self.pairs[-1][0]

    @property
    def beta(self) -> Fraction:
        return self.pairs[-1][1]

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "pairs": [{"e": s.e, "e_next": t.e, "e_hk": str(a), "beta": str(b)}
                      for (a, b), s, t in zip(self.pairs, self.samples, self.samples[1:])],
            "e_hk_estimate": str(self.e_hk),
            "beta_estimate": str(self.beta),
            "residuals": [str(r) for r in self.residuals],
        }


def solve_two_point(q1: int, l1: int, q2: int, l2: int, d: int) -> tuple[Fraction, Fraction]:
    """Solve ``a q^d + b q^(d-1) = l`` at two values of ``q`` (Cramer's rule)."""
    a11, a12 = Fraction(q1) ** d, Fraction(q1) ** (d - 1)
    a21, a22 = Fraction(q2) ** d, Fraction(q2) ** (d - 1)
    det = a11 * a22 - a12 * a21
    if det == 0:
        raise ZeroDivisionError(f"singular system for q = {q1}, {q2}")
    a = (l1 * a22 - a12 * l2) / det
    b = (a11 * l2 - l1 * a21) / det
    return a, b


def estimate_ehk_beta(samples: Sequence[HKSample], d: int) -> HKEstimate:
    if d < 1:
        raise ValueError("dimension must be at least 1")
    samples = sorted(samples, key=lambda s: s.e)
    if len(samples) < 2:
        raise ValueError("need at least two samples")
    for s, t in zip(samples, samples[1:]):
        if t.e != s.e + 1:
            raise ValueError("samples must be at consecutive e")
    est = HKEstimate(d, list(samples))
    for s, t in zip(samples, samples[1:]):
        est.pairs.append(solve_two_point(s.q, s.length, t.q, t.length, d))
    a, b = est.pairs[-1]
    est.residuals = [s.length - (a * Fraction(s.q) ** d + b * Fraction(s.q) ** (d - 1))
                     for s in samples]
    return est


def evaluate_closed_form(terms: Iterable[tuple[Fraction | int | str, int]], e: int) -> Fraction:
    return sum((Fraction(c) * Fraction(r) ** e for c, r in terms), Fraction(0))
