"""Seeded random cones and a batch check of the Frobenius class identity
over all of them."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from ._config import check_budget, default_budget
from .frobenius import (
    AS_STATED,
    ORIENTATIONS,
    SIGN_FLIPPED,
    VerificationReport,
    _compare,
    frobenius_decompose_affine,
    tau_top,
)
from .toric import Cone, ConeError, extremal_rays

MAX_ATTEMPTS = 10_000
DEFAULT_SEED = 2026


def random_cones(seed: int, count: int, dims: Sequence[int] = (2, 3, 4),
                 box: int = 4) -> list[Cone]:
    """``count`` cones, dimensions taken round-robin from ``dims``. Each is
    the cone over a few random points of ``[-box, box]^d``; samples that are
    not full-dimensional or not pointed are redrawn."""
    rng = random.Random(seed)
    cones = []
    for i in range(count):
        d = dims[i % len(dims)]
        for _ in range(MAX_ATTEMPTS):
            k = rng.randint(d + 1, d + 3)
            cands = [tuple(rng.randint(-box, box) for _ in range(d)) for _ in range(k)]
            cands = [c for c in cands if any(c)]
            try:
                cones.append(Cone(d, tuple(extremal_rays(cands))))
                break
            except ConeError:
                continue
        else:
            raise RuntimeError(f"no valid cone in dimension {d} after {MAX_ATTEMPTS} draws")
    return cones


def tau_identities(cone: Cone, dec) -> bool:
    """The three top-term identities, compared in free coordinates."""
    k = cone.canonical_class()
    half_k = tuple(Fraction(x, 2) for x in k.free_coords)
    q, d = dec.q, cone.lattice_rank
    zero = cone.class_group.zero()
    return (tau_top(cone, zero, 1) == half_k
            and tau_top(cone, k, 1) == tuple(-x for x in half_k)
            and tau_top(cone, dec.class_sum(), q ** d)
            == tuple(q ** (d - 1) * x for x in half_k))


@dataclass
class CorpusCase:
    cone_index: int
    cone: Cone
    p: int
    e: int
    reports: dict[str, VerificationReport]
    tau_ok: bool


@dataclass
class CorpusReport:
    cases: list[CorpusCase] = field(default_factory=list)
    skipped: list[tuple[int, int, int]] = field(default_factory=list)

    @property
    def orientation(self) -> str | None:
        """The single orientation under which every case passes, if any."""
        for o in ORIENTATIONS:
            if all(c.reports[o].passed for c in self.cases):
                return o
        return None

    @property
    def passed(self) -> bool:
        return self.orientation is not None and all(c.tau_ok for c in self.cases)

    def to_json(self) -> dict:
        o = self.orientation
        return {
            "cases": [{
                "cone": c.cone.to_json(), "p": c.p, "e": c.e,
                "class_group": c.cone.class_group.describe(),
                "pass": c.reports[o or AS_STATED].passed,
                "tau_identities": c.tau_ok,
            } for c in self.cases],
            "skipped": [{"cone_index": i, "p": p, "e": e} for i, p, e in self.skipped],
            "orientation": o,
            "pass": self.passed,
        }


def run_corpus(cones: Sequence[Cone], primes: Sequence[int] = (2, 3, 5), e_max: int = 2,
               budget: int | None = None, workers: int = 1) -> CorpusReport:
    budget = default_budget() if budget is None else budget
    report = CorpusReport()
    for idx, cone in enumerate(cones):
        for p in primes:
            for e in range(1, e_max + 1):
                try:
                    check_budget((p ** e) ** cone.lattice_rank, budget, "corpus case")
                except RuntimeError:
                    report.skipped.append((idx, p, e))
                    continue
                dec = frobenius_decompose_affine(cone, p, e, budget=budget, workers=workers)
                reports = {o: _compare(dec, o, exact=False) for o in (AS_STATED, SIGN_FLIPPED)}
                report.cases.append(
                    CorpusCase(idx, cone, p, e, reports, tau_identities(cone, dec)))
    return report
