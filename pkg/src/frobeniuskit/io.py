"""JSON schemas for cones, rings, fans, ideals, decompositions and samples.

Integers that may outgrow 64 bits (lengths, multiplicities, class
coordinates) are written as decimal strings; readers accept either form.
"""
from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .frobenius import FrobeniusDecomposition, Summand
from .hilbert_kunz.estimate import HKSample
from .hilbert_kunz.lengths import MonomialIdeal
from .hilbert_kunz.polynomials import PrimeFieldIdeal
from .toric import Cone, ConeError, Fan, SemigroupRing, WeilDivisor


class InputError(ValueError):
    """Malformed input; the message names the offending field."""


def load_json(source: str) -> Any:
    """Parse inline JSON (text starting with ``{`` or ``[``) or a file path."""
    text = source.strip()
    origin = "<inline>"
    if not text.startswith(("{", "[")):
        path = Path(source)
        try:
            text = path.read_text()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from None
        origin = str(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{origin}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _field(data: dict, name: str, where: str):
    if not isinstance(data, dict):
        raise InputError(f"{where}: expected a JSON object")
    if name not in data:
        raise InputError(f"{where}: missing field '{name}'")
    return data[name]


def _int(x, where: str) -> int:
    if isinstance(x, bool):
        raise InputError(f"{where}: expected an integer, got {x!r}")
    try:
        return int(x)
    except (TypeError, ValueError):
        raise InputError(f"{where}: expected an integer, got {x!r}") from None


def _int_rows(rows, where: str) -> list[list[int]]:
    if not isinstance(rows, list):
        raise InputError(f"{where}: expected an array of arrays")
    out = []
    for i, row in enumerate(rows):
        if not isinstance(row, list):
            raise InputError(f"{where}[{i}]: expected an array")
        out.append([_int(x, f"{where}[{i}]") for x in row])
    return out


def _ints(xs) -> list[str]:
    return [str(x) for x in xs]


def cone_from_json(data: dict) -> Cone:
    d = _int(_field(data, "lattice_rank", "cone"), "cone.lattice_rank")
    rays = _int_rows(_field(data, "rays", "cone"), "cone.rays")
    try:
        return Cone(d, tuple(map(tuple, rays)))
    except ConeError as exc:
        raise InputError(f"cone: {exc}") from None


def fan_from_json(data: dict) -> Fan:
    d = _int(_field(data, "lattice_rank", "fan"), "fan.lattice_rank")
    rays = _int_rows(_field(data, "rays", "fan"), "fan.rays")
    cones = _int_rows(_field(data, "maximal_cones", "fan"), "fan.maximal_cones")
    try:
        return Fan(d, tuple(map(tuple, rays)), tuple(map(tuple, cones)))
    except ConeError as exc:
        raise InputError(f"fan: {exc}") from None


def ring_from_json(data: dict) -> SemigroupRing:
    gens = _int_rows(_field(data, "semigroup_generators", "ring"), "ring.semigroup_generators")
    if not gens:
        raise InputError("ring.semigroup_generators: empty")
    try:
        if "cone" in data:
            return SemigroupRing(cone_from_json(data["cone"]), tuple(map(tuple, gens)))
        return SemigroupRing.from_generators(gens)
    except ConeError as exc:
        raise InputError(f"ring: {exc}") from None


def variety_from_json(data: dict):
    """A cone, fan or ring object, told apart by its fields."""
    if isinstance(data, dict) and "maximal_cones" in data:
        return fan_from_json(data)
    if isinstance(data, dict) and "semigroup_generators" in data:
        return ring_from_json(data).cone
    return cone_from_json(data)


def monomial_ideal_from_json(ring: SemigroupRing, data: dict) -> MonomialIdeal:
    gens = _int_rows(_field(data, "generators", "ideal"), "ideal.generators")
    try:
        return MonomialIdeal(ring, tuple(map(tuple, gens)))
    except ValueError as exc:
        raise InputError(f"ideal: {exc}") from None


def prime_field_ideal_from_json(data: dict) -> PrimeFieldIdeal:
    p = _int(_field(data, "characteristic", "ideal"), "ideal.characteristic")
    n = _int(_field(data, "variables", "ideal"), "ideal.variables")
    polys = _field(data, "polynomials", "ideal")
    if not isinstance(polys, list):
        raise InputError("ideal.polynomials: expected an array")
    clean = []
    for i, poly in enumerate(polys):
        where = f"ideal.polynomials[{i}]"
        if not isinstance(poly, list):
            raise InputError(f"{where}: expected an array of terms")
        terms = []
        for j, term in enumerate(poly):
            exps = _field(term, "exponents", f"{where}[{j}]")
            if not isinstance(exps, list) or len(exps) != n:
                raise InputError(f"{where}[{j}].exponents: expected {n} integers")
            terms.append({"exponents": [_int(x, f"{where}[{j}].exponents") for x in exps],
                          "coefficient": _int(_field(term, "coefficient", f"{where}[{j}]"),
                                              f"{where}[{j}].coefficient")})
        clean.append(terms)
    try:
        return PrimeFieldIdeal.from_json({"characteristic": p, "variables": n,
                                          "polynomials": clean})
    except ValueError as exc:
        raise InputError(f"ideal: {exc}") from None


# -- decompositions -------------------------------------------------------

def decomposition_to_json(dec: FrobeniusDecomposition, report=None) -> dict:
    v = dec.variety
    is_fan = isinstance(v, Fan)
    group = v.class_group
    summands = []
    for s in dec.sorted_summands():
        item = {
            "class": _ints(s.cls.coords),
            "multiplicity": str(s.multiplicity),
            "witness_s": list(s.witness_s),
            "witness_divisor": _ints(s.witness_divisor.coefficients),
        }
        if is_fan and group.free_rank == 1 and not group.torsion_invariants:
            item["degree"] = str(v.degree(s.cls))
        summands.append(item)
    out = {
        "kind": "projective" if is_fan else "affine",
        "p": dec.p,
        "e": dec.e,
        "q": str(dec.q),
        ("fan" if is_fan else "cone"): v.to_json(),
        "class_group": {"free_rank": group.free_rank,
                        "torsion_invariants": _ints(group.torsion_invariants),
                        "description": group.describe()},
        "canonical_class": _ints(v.canonical_class().coords),
        "rank": str(dec.rank),
        "summands": summands,
        "class_sum": _ints(dec.class_sum().coords),
    }
    if dec.twist is not None:
        out["twist"] = _ints(dec.twist)
    if report is not None:
        out["report"] = report.to_json()
    return out


def decomposition_from_json(data: dict) -> FrobeniusDecomposition:
    kind = _field(data, "kind", "decomposition")
    if kind == "projective":
        variety = fan_from_json(_field(data, "fan", "decomposition"))
    elif kind == "affine":
        variety = cone_from_json(_field(data, "cone", "decomposition"))
    else:
        raise InputError(f"decomposition.kind: unknown kind {kind!r}")
    group = variety.class_group
    summands = {}
    for i, item in enumerate(_field(data, "summands", "decomposition")):
        where = f"decomposition.summands[{i}]"
        coords = [_int(x, where) for x in _field(item, "class", where)]
        try:
            cls = group.element(coords)
        except ValueError as exc:
            raise InputError(f"{where}.class: {exc}") from None
        div = WeilDivisor(tuple(_int(x, where) for x in _field(item, "witness_divisor", where)))
        if variety.divisor_class(div) != cls:
            raise InputError(f"{where}: witness divisor does not lie in the stated class")
        summands[cls] = Summand(cls, _int(_field(item, "multiplicity", where), where),
                                tuple(_int(x, where) for x in _field(item, "witness_s", where)),
                                div)
    twist = data.get("twist")
    return FrobeniusDecomposition(
        _int(_field(data, "p", "decomposition"), "decomposition.p"),
        _int(_field(data, "e", "decomposition"), "decomposition.e"),
        variety, summands,
        None if twist is None else tuple(_int(x, "decomposition.twist") for x in twist))


# -- Hilbert-Kunz samples -------------------------------------------------

def samples_to_json(samples: list[HKSample]) -> list[dict]:
    return [{"e": s.e, "q": str(s.q), "length": str(s.length)} for s in samples]


def samples_from_json(data: dict) -> tuple[list[HKSample], int | None]:
    """Read ``{"d": ..., "rows": [{"e", "q", "length"}]}`` (the ``hk`` output)
    or the same with the key ``samples``."""
    rows = data.get("rows", data.get("samples")) if isinstance(data, dict) else None
    if not isinstance(rows, list):
        raise InputError("samples: expected a field 'rows' or 'samples' holding an array")
    p = data.get("p")
    out = []
    for i, row in enumerate(rows):
        where = f"samples[{i}]"
        e = _int(_field(row, "e", where), f"{where}.e")
        if "q" in row:
            q = _int(row["q"], f"{where}.q")
        elif p is not None:
            q = _int(p, "samples.p") ** e
        else:
            raise InputError(f"{where}: need 'q' or a top-level 'p'")
        out.append(HKSample(e, q, _int(_field(row, "length", where), f"{where}.length")))
    d = data.get("d")
    return out, (None if d is None else _int(d, "samples.d"))
