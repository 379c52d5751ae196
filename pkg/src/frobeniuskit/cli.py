"""Command-line front end.

Exit status: 0 on success, 1 when a verification fails, 2 on bad input or
an exceeded budget.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import io
from ._config import BudgetExceeded, default_budget, is_prime
from .corpus import DEFAULT_SEED, random_cones, run_corpus
from .frobenius import (
    ORIENTATIONS,
    c2_projective_space,
    frobenius_decompose,
    verify_theorem_analogue,
    verify_theorem_main,
)
from .hilbert_kunz import (
    HKSample,
    MonomialIdeal,
    NotMPrimary,
    NotZeroDimensional,
    estimate_ehk_beta,
    groebner_length,
    hk_length_hypersurface,
    hk_length_toric,
)
from .toric import Cone, Fan


@dataclass
class JobSpec:
    subcommand: str
    p: int | None
    e_min: int
    e_max: int
    budget: int
    workers: int
    fmt: str

    def __post_init__(self):
        if self.p is not None and not is_prime(self.p):
            raise io.InputError(f"--p: {self.p} is not prime")
        if not 1 <= self.e_min <= self.e_max:
            raise io.InputError(f"--e: need 1 <= e_min <= e_max, got {self.e_min}..{self.e_max}")
        if self.budget < 1:
            raise io.InputError("--budget must be at least 1")
        if self.workers < 1:
            raise io.InputError("--workers must be at least 1")


def parse_e_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise io.InputError(f"--e: expected N or A..B, got {text!r}") from None


def _emit(payload: dict, table: str, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(table)


def _variety(args):
    if getattr(args, "fan", None):
        return io.fan_from_json(io.load_json(args.fan))
    if getattr(args, "ring", None):
        return io.ring_from_json(io.load_json(args.ring)).cone
    if getattr(args, "cone", None):
        return io.cone_from_json(io.load_json(args.cone))
    raise io.InputError("one of --cone, --ring or --fan is required")


def _class_str(v, cls) -> str:
    if isinstance(v, Fan) and v.class_group.free_rank == 1 and not v.class_group.torsion_invariants:
        return f"deg {v.degree(cls)}"
    return "(" + ", ".join(map(str, cls.coords)) + ")"


# -- subcommands ----------------------------------------------------------

def cmd_clgroup(args, job):
    v = _variety(args)
    g = v.class_group
    payload = {"rays": [list(r) for r in v.rays], "free_rank": g.free_rank,
               "torsion_invariants": [str(d) for d in g.torsion_invariants],
               "description": g.describe()}
    _emit(payload, f"rays: {[list(r) for r in v.rays]}\nclass group: {g.describe()}", job.fmt)
    return 0


def cmd_canonical(args, job):
    v = _variety(args)
    k = v.canonical_class()
    payload = {"canonical_class": [str(c) for c in k.coords],
               "class_group": v.class_group.describe(),
               "q_gorenstein": v.is_q_gorenstein()}
    table = (f"class group: {v.class_group.describe()}\n"
             f"canonical class: {_class_str(v, k)}\nQ-Gorenstein: {v.is_q_gorenstein()}")
    _emit(payload, table, job.fmt)
    return 0


def _decompose(args, job, v, e):
    return frobenius_decompose(v, job.p, e, budget=job.budget, workers=job.workers)


def cmd_frobdec(args, job):
    v = _variety(args)
    outputs, lines = [], []
    for e in range(job.e_min, job.e_max + 1):
        dec = _decompose(args, job, v, e)
        outputs.append(io.decomposition_to_json(dec))
        lines.append(f"p={job.p} e={e} q={dec.q} rank={dec.rank}")
        lines.append(f"  {'class':>16}  {'mult':>8}  witness s")
        for s in dec.sorted_summands():
            lines.append(f"  {_class_str(v, s.cls):>16}  {s.multiplicity:>8}  {list(s.witness_s)}")
        lines.append(f"  class sum: {_class_str(v, dec.class_sum())}")
    payload = outputs[0] if len(outputs) == 1 else {"decompositions": outputs}
    _emit(payload, "\n".join(lines), job.fmt)
    return 0


def _cmd_verify(args, job, kind):
    v = _variety(args)
    if kind == "main" and not isinstance(v, Cone):
        raise io.InputError("verify-main needs --cone or --ring")
    if kind == "analogue" and not isinstance(v, Fan):
        raise io.InputError("verify-analogue needs --fan")
    verify = verify_theorem_main if kind == "main" else verify_theorem_analogue
    outputs, lines, ok = [], [], True
    for e in range(job.e_min, job.e_max + 1):
        dec = _decompose(args, job, v, e)
        rep = verify(v, job.p, e, orientation=args.orientation, decomposition=dec)
        ok &= rep.passed
        outputs.append(io.decomposition_to_json(dec, rep))
        lines.append(f"p={job.p} e={e}: 2*class_sum={_class_str(v, rep.lhs)} "
                     f"(q^d-q^(d-1))*K={_class_str(v, rep.rhs)} "
                     f"{'PASS' if rep.passed else 'FAIL'} [{rep.orientation_used}]")
    payload = outputs[0] if len(outputs) == 1 else {"decompositions": outputs}
    _emit(payload, "\n".join(lines), job.fmt)
    return 0 if ok else 1


def cmd_chern(args, job):
    rows, lines, ok = [], [], True
    for e in range(job.e_min, job.e_max + 1):
        lhs, rhs = c2_projective_space(args.n, job.p, e, budget=job.budget, workers=job.workers)
        ok &= lhs == rhs
        rows.append({"n": args.n, "p": job.p, "e": e,
                     "c2_decomposition": str(lhs), "c2_closed_form": str(rhs),
                     "equal": lhs == rhs})
        lines.append(f"P^{args.n} p={job.p} e={e}: c2 from summands = {lhs}, "
                     f"closed form = {rhs} {'PASS' if lhs == rhs else 'FAIL'}")
    _emit({"rows": rows}, "\n".join(lines), job.fmt)
    return 0 if ok else 1


def _hk_output(engine, p, d, samples, fmt):
    payload = {"engine": engine, "p": p, "rows": io.samples_to_json(samples)}
    lines = [f"{'e':>3} {'q':>8} {'length':>14}"]
    lines += [f"{s.e:>3} {s.q:>8} {s.length:>14}" for s in samples]
    if d is not None:
        payload["d"] = d
        if len(samples) >= 2:
            est = estimate_ehk_beta(samples, d)
            payload["estimate"] = est.to_json()
            lines.append(_estimate_lines(est))
    _emit(payload, "\n".join(lines), fmt)
    return 0


def _estimate_lines(est) -> str:
    lines = ["two-point fits of l = a q^d + b q^(d-1):"]
    for (a, b), s, t in zip(est.pairs, est.samples, est.samples[1:]):
        lines.append(f"  e={s.e},{t.e}: a = {a} ({float(a):.6f}), b = {b} ({float(b):.6f})")
    return "\n".join(lines)


def cmd_hk(args, job):
    ring = io.ring_from_json(io.load_json(args.ring))
    if args.ideal == "maximal":
        ideal = MonomialIdeal.maximal(ring)
    else:
        ideal = io.monomial_ideal_from_json(ring, io.load_json(args.ideal))
    samples = [HKSample(e, job.p ** e, hk_length_toric(ideal, job.p, e, k_max=args.k_max,
                                                       budget=job.budget))
               for e in range(job.e_min, job.e_max + 1)]
    return _hk_output("toric", job.p, ring.dimension, samples, job.fmt)


def cmd_hk_groebner(args, job):
    ideal = io.prime_field_ideal_from_json(io.load_json(args.ideal))
    samples = [HKSample(e, ideal.p ** e, groebner_length(ideal, e, order=args.order))
               for e in range(job.e_min, job.e_max + 1)]
    return _hk_output("groebner", ideal.p, args.dim, samples, job.fmt)


def cmd_hk_hypersurface(args, job):
    ideal = io.prime_field_ideal_from_json(io.load_json(args.poly))
    if len(ideal.polynomials) != 1:
        raise io.InputError("--poly: expected exactly one polynomial")
    f = ideal.polynomials[0]
    samples = [HKSample(e, f.p ** e, hk_length_hypersurface(f, f.p, e))
               for e in range(job.e_min, job.e_max + 1)]
    return _hk_output("hypersurface", f.p, f.nvars - 1, samples, job.fmt)


def cmd_estimate(args, job):
    samples, d = io.samples_from_json(io.load_json(args.samples))
    d = args.dim if args.dim is not None else d
    if d is None:
        raise io.InputError("dimension unknown: pass --dim or include 'd' in the samples")
    try:
        est = estimate_ehk_beta(samples, d)
    except ValueError as exc:
        raise io.InputError(f"samples: {exc}") from None
    _emit(est.to_json(), _estimate_lines(est), job.fmt)
    return 0


def cmd_corpus(args, job):
    dims = [int(x) for x in args.dims.split(",")]
    primes = [int(x) for x in args.primes.split(",")]
    if any(not is_prime(p) for p in primes):
        raise io.InputError("--primes: all entries must be prime")
    if any(d < 1 for d in dims):
        raise io.InputError("--dims: dimensions must be positive")
    cones = random_cones(args.seed, args.count, dims)
    report = run_corpus(cones, primes, args.e_max, budget=job.budget, workers=job.workers)
    lines = [f"{len(report.cases)} cases over {len(cones)} cones, "
             f"{len(report.skipped)} skipped for budget"]
    o = report.orientation
    for c in report.cases:
        status = "PASS" if c.reports[o or "as-stated"].passed and c.tau_ok else "FAIL"
        lines.append(f"  cone {c.cone_index} (d={c.cone.lattice_rank}, "
                     f"Cl={c.cone.class_group.describe()}) p={c.p} e={c.e}: {status}")
    lines.append(f"global orientation: {o or 'none passes every case'}")
    _emit(report.to_json(), "\n".join(lines), job.fmt)
    return 0 if report.passed else 1


# -- parser ---------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="frobeniuskit",
        description="Frobenius pushforwards, toric class groups and Hilbert-Kunz lengths.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, p=True, e=True):
        if p:
            sp.add_argument("--p", type=int, required=True, help="prime characteristic")
        if e:
            sp.add_argument("--e", default="1", help="Frobenius exponent N or range A..B")
        sp.add_argument("--budget", type=int, default=None,
                        help="enumeration budget (default: $FROBENIUSKIT_BUDGET or 1e8)")
        sp.add_argument("--workers", type=int, default=1)
        sp.add_argument("--format", dest="fmt", choices=("table", "json"), default="table")

    def variety(sp, kinds=("cone", "ring", "fan")):
        group = sp.add_mutually_exclusive_group(required=True)
        for k in kinds:
            group.add_argument(f"--{k}", help=f"{k} JSON file or inline JSON")

    sp = sub.add_parser("clgroup", help="divisor class group")
    variety(sp)
    common(sp, p=False, e=False)

    sp = sub.add_parser("canonical", help="canonical class and Q-Gorenstein test")
    variety(sp)
    common(sp, p=False, e=False)

    sp = sub.add_parser("frobdec", help="split F^e_* O into rank one summands")
    variety(sp)
    common(sp)

    for name, kinds in (("verify-main", ("cone", "ring")), ("verify-analogue", ("fan",))):
        sp = sub.add_parser(name, help="check 2 cl(F^e_*O) = (q^d - q^(d-1)) K")
        variety(sp, kinds)
        common(sp)
        sp.add_argument("--orientation", choices=ORIENTATIONS, default=None,
                        help="force one orientation instead of trying both")

    sp = sub.add_parser("chern", help="c_2 of F^e_* O on P^n, two ways")
    sp.add_argument("--n", type=int, required=True)
    common(sp)

    sp = sub.add_parser("hk", help="Hilbert-Kunz lengths of a toric ring")
    sp.add_argument("--ring", required=True)
    sp.add_argument("--ideal", default="maximal", help="'maximal' or ideal JSON")
    sp.add_argument("--k-max", type=int, default=64)
    common(sp)

    sp = sub.add_parser("hk-groebner", help="lengths of F_p[x]/(J + m^[q]) by Groebner bases")
    sp.add_argument("--ideal", required=True, help="ideal JSON defining the ring")
    sp.add_argument("--order", choices=("grevlex", "grlex", "lex"), default="grevlex")
    sp.add_argument("--dim", type=int, default=None, help="Krull dimension, for the estimate")
    common(sp, p=False)

    sp = sub.add_parser("hk-hypersurface", help="lengths of F_p[x]/(f) by blocked ranks")
    sp.add_argument("--poly", required=True, help="ideal JSON holding one polynomial")
    common(sp, p=False)

    sp = sub.add_parser("estimate", help="two-point e_HK and beta fits")
    sp.add_argument("--samples", required=True)
    sp.add_argument("--dim", type=int, default=None)
    common(sp, p=False, e=False)

    sp = sub.add_parser("corpus", help="seeded random-cone check of the class identity")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--dims", default="2,3,4")
    sp.add_argument("--primes", default="2,3,5")
    sp.add_argument("--e-max", type=int, default=2)
    common(sp, p=False, e=False)
    return parser


COMMANDS = {
    "clgroup": cmd_clgroup, "canonical": cmd_canonical, "frobdec": cmd_frobdec,
    "verify-main": lambda a, j: _cmd_verify(a, j, "main"),
    "verify-analogue": lambda a, j: _cmd_verify(a, j, "analogue"),
    "chern": cmd_chern, "hk": cmd_hk, "hk-groebner": cmd_hk_groebner,
    "hk-hypersurface": cmd_hk_hypersurface, "estimate": cmd_estimate, "corpus": cmd_corpus,
}


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    try:
        e_min, e_max = parse_e_range(args.e) if hasattr(args, "e") else (1, 1)
        job = JobSpec(args.command, getattr(args, "p", None), e_min, e_max,
                      default_budget() if args.budget is None else args.budget,
                      args.workers, args.fmt)
        if args.command == "corpus" and args.count < 0:
            raise io.InputError("--count must be non-negative")
        return COMMANDS[args.command](args, job)
    except (io.InputError, BudgetExceeded, NotMPrimary, NotZeroDimensional) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
