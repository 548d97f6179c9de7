"""Command-line front end: ``exacthall <command> QUIVER [options]``.

QUIVER is a path to a quiver document or one of the builtin names. Objects
are written as ``+``-separated indecomposable labels with optional
multiplicities, e.g. ``2*S1+1.1.0``; ``0`` is the zero object.

Exit status: 0 on success, 1 when a verification fails, 2 on bad usage or input.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .cones import cone_C, cone_D, face_lattice, k0_quotient, linear_text, membership
from .degen import classify_valuation, load_valuation, verify_degeneration, verify_valuation_degeneration, weight_function
from .errors import ExactHallError
from .exact import enumerate_structures, injectives, parse_structure, projectives
from .fqrep import category, format_object, parse_object
from .hall import INTERPOLATION_PRIMES, multiply, pairs_up_to, total_dim
from .quiver import BUILTIN_QUIVERS, ARQuiver, ar_quiver
from .suites import SUITES, run_suite

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _budget(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("budget must be at least 1")
    return v


def _prime(text: str) -> int:
    v = int(text)
    if v not in INTERPOLATION_PRIMES:
        raise argparse.ArgumentTypeError(f"q must be one of {', '.join(map(str, INTERPOLATION_PRIMES))}")
    return v


def _coeff(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


class Output:
    """Collects table lines or JSON records and writes them in order."""

    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.stream = stream or sys.stdout

    def text(self, line: str = "") -> None:
        if self.fmt == "table":
            print(line, file=self.stream)

    def record(self, rec: dict) -> None:
        if self.fmt == "records":
            print(json.dumps(rec, separators=(",", ":")), file=self.stream)


def _names(ar: ARQuiver, ids) -> list[str]:
    return [ar.indecs[i].label for i in sorted(ids)]


# -- commands ---------------------------------------------------------------


def cmd_info(args, ar: ARQuiver, out: Output) -> int:
    q = ar.quiver
    out.text(f"vertices: {q.n}  ({' '.join(q.vertices)})")
    out.text(f"arrows: {len(q.arrows)}  ({' '.join(f'{s}->{t}' for s, t in q.arrows)})")
    out.text(f"indecomposables: {ar.n_indecs}")
    out.text(f"meshes: {len(ar.meshes)}")
    out.text(f"exact structures: 2^{len(ar.meshes)}")
    out.record({"kind": "quiver", "vertices": list(q.vertices), "arrows": [list(a) for a in q.arrows],
                "indecomposables": ar.n_indecs, "meshes": len(ar.meshes)})
    return EXIT_OK


def cmd_indecs(args, ar: ARQuiver, out: Output) -> int:
    cat = category(ar, args.q, args.seed) if args.reps else None
    for u in ar.indecs:
        tags = sorted(k for k, v in ar.names.items() if v == u.id and k[:1] in "SPI" and k != u.label)
        out.text(f"M{u.id + 1}  {u.label}  {' '.join(tags)}".rstrip())
        rec = {"kind": "indecomposable", "index": u.id + 1, "label": u.label, "dim": list(u.dim), "names": tags}
        if cat is not None:
            rep = cat.indec_reps[u.id]
            for (s, t), m in zip(ar.quiver.arrows, rep.maps):
                out.text(f"    {s}->{t}: {[list(r) for r in m.entries]}")
            rec["maps"] = [[list(r) for r in m.entries] for m in rep.maps]
        out.record(rec)
    return EXIT_OK


def cmd_ar(args, ar: ARQuiver, out: Output) -> int:
    for k, m in enumerate(ar.meshes):
        mid = " + ".join(x.label for x in m.middle)
        out.text(f"mesh {k + 1}: {m.tau_end.label} >-> {mid} ->> {m.end.label}")
        out.record({"kind": "mesh", "index": k + 1, "tau_end": m.tau_end.label,
                    "middle": [x.label for x in m.middle], "end": m.end.label})
    out.text(f"projectives: {' '.join(_names(ar, ar.projectives_max))}")
    out.text(f"injectives: {' '.join(_names(ar, ar.injectives_max))}")
    return EXIT_OK


def cmd_structures(args, ar: ARQuiver, out: Output) -> int:
    for e in enumerate_structures(ar, args.budget):
        k0 = k0_quotient(e)
        proj, inj = _names(ar, projectives(e)), _names(ar, injectives(e))
        out.text(f"{e.label:>8}  K0 rank {k0.rank}  projectives {' '.join(proj)}  injectives {' '.join(inj)}")
        out.record({"kind": "structure", "label": e.label, "meshes": [k + 1 for k in sorted(e.meshes)],
                    "projectives": proj, "injectives": inj, "k0_rank": k0.rank,
                    "k0_relations": [list(r) for r in k0.relations], "k0_torsion": list(k0.torsion)})
    return EXIT_OK


def _product_record(ar, e, a, c, q, prod) -> dict:
    return {"kind": "product", "structure": e.label, "q": q, "a": format_object(ar, a), "c": format_object(ar, c),
            "terms": [{"b": format_object(ar, b), "coeff": _coeff(v)} for b, v in prod.items()]}


def _product_text(ar, e, a, c, prod) -> str:
    rhs = " + ".join(f"{_coeff(v)} [{format_object(ar, b)}]" for b, v in prod.items()) or "0"
    return f"[{format_object(ar, a)}] *_{e.label} [{format_object(ar, c)}] = {rhs}"


def cmd_hall(args, ar: ARQuiver, out: Output) -> int:
    e = parse_structure(ar, args.structure)
    a, c = parse_object(ar, args.a), parse_object(ar, args.c)
    if total_dim(ar, a) + total_dim(ar, c) > args.budget:
        raise ExactHallError(f"total dimension {total_dim(ar, a) + total_dim(ar, c)} exceeds --budget {args.budget}")
    prod = multiply(e, a, c, args.q)
    out.text(_product_text(ar, e, a, c, prod))
    out.record(_product_record(ar, e, a, c, args.q, prod))
    return EXIT_OK


def cmd_table(args, ar: ARQuiver, out: Output) -> int:
    e = parse_structure(ar, args.structure)
    for a, c in pairs_up_to(ar, args.budget):
        prod = multiply(e, a, c, args.q)
        out.text(_product_text(ar, e, a, c, prod))
        out.record(_product_record(ar, e, a, c, args.q, prod))
    return EXIT_OK


def cmd_degen(args, ar: ARQuiver, out: Output) -> int:
    e = parse_structure(ar, args.source)
    if args.w:
        w = load_valuation(ar, Path(args.w).read_text())
        cls = classify_valuation(w, e)
        out.text(f"valuation {list(w.weights)}: {cls.kind}")
        if not cls.is_valuation:
            out.record({"kind": "valuation", "weights": list(w.weights), "class": cls.kind})
            return EXIT_FAIL
        if args.target is not None and cls.characteristic_for != parse_structure(ar, args.target):
            out.text(f"expected characteristic for {args.target}")
            out.record({"kind": "valuation", "weights": list(w.weights), "class": cls.kind, "ok": False})
            return EXIT_FAIL
        rep = verify_valuation_degeneration(e, w, args.q, args.budget)
    else:
        if args.target is None:
            raise UsageError("degen needs --to or --w")
        target = parse_structure(ar, args.target)
        w = weight_function(e, target)
        out.text(f"weight function {list(w.weights)}")
        rep = verify_degeneration(e, target, args.q, args.budget)
    out.text(f"gr H({rep.source}) vs H({rep.target}) at q={rep.p}: {rep.checked} pairs, {len(rep.mismatches)} mismatches")
    for a, c, got, want in rep.mismatches:
        out.text(f"  [{format_object(ar, a)}]*[{format_object(ar, c)}]: got {got}, want {want}")
    out.record({"kind": "degeneration", "source": rep.source, "target": rep.target, "q": rep.p,
                "weights": list(w.weights), "checked": rep.checked, "mismatches": len(rep.mismatches), "ok": rep.ok})
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_cones(args, ar: ARQuiver, out: Output) -> int:
    e, f = parse_structure(ar, args.source), parse_structure(ar, args.target)
    c, d = cone_C(e, f), cone_D(e, f)
    names = [f"x{i + 1}" for i in range(ar.n_indecs)]
    gens = [linear_text(g, names) for g in c.generators]
    w = weight_function(e, f)
    inside = membership(w.weights, d)
    out.text(f"C({e.label}, {f.label}) generated by: {', '.join(gens) or '(origin)'}")
    out.text(f"  dimension {c.dimension}, simplicial {c.is_simplicial}")
    out.text(f"D({e.label}, {f.label}):")
    for row in d.describe():
        out.text(f"  {row}")
    out.text(f"  closure dimension {d.closure_dimension}, lineality dimension {d.lineality_dimension}")
    out.text(f"weight function {list(w.weights)} in D: {inside}")
    out.record({"kind": "cone", "source": e.label, "target": f.label, "C_generators": [list(g) for g in c.generators],
                "C_dimension": c.dimension, "D_rows": d.describe(), "D_closure_dimension": d.closure_dimension,
                "D_lineality_dimension": d.lineality_dimension, "weights": list(w.weights), "weights_in_D": inside})
    if args.faces:
        for face in face_lattice(e, args.budget):
            out.text(f"face {face.bitmask:0{len(ar.meshes)}b}: {face.structure.label}")
            out.record({"kind": "face", "bitmask": face.bitmask, "structure": face.structure.label})
    return EXIT_OK


def cmd_verify(args, out: Output) -> int:
    ar = ar_quiver(args.quiver) if args.quiver else None
    kw = {"max_dim": args.budget}
    if args.q:
        kw["primes"] = tuple(args.q)
    res = run_suite(args.suite, ar, **kw)
    for line in res.lines():
        out.text(line)
    for ch in res.checks:
        out.record({"kind": "check", "suite": res.suite, "name": ch.name, "ok": ch.ok, "detail": ch.detail})
    return EXIT_OK if res.ok else EXIT_FAIL


# -- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "records"), default="table")
    common.add_argument("--seed", type=int, default=0, help="seed for sampling explicit representations")

    withq = argparse.ArgumentParser(add_help=False, parents=[common])
    withq.add_argument("quiver", help=f"quiver document path or builtin name ({', '.join(BUILTIN_QUIVERS)})")
    withq.add_argument("--q", type=_prime, default=2, help="prime field size")

    p = argparse.ArgumentParser(prog="exacthall", description="Hall algebras of exact structures on Dynkin quivers")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("info", parents=[withq], help="vertex, arrow, indecomposable and mesh counts")
    s = sub.add_parser("indecs", parents=[withq], help="indecomposables with dimension vectors")
    s.add_argument("--reps", action="store_true", help="also print explicit matrices over F_q")
    sub.add_parser("ar", parents=[withq], help="meshes of the AR quiver")
    s = sub.add_parser("structures", parents=[withq], help="all exact structures")
    s.add_argument("--budget", type=_budget, default=16, help="maximal number of meshes to enumerate over")

    s = sub.add_parser("hall", parents=[withq], help="one Hall product")
    s.add_argument("--structure", default="max")
    s.add_argument("--a", required=True)
    s.add_argument("--c", required=True)
    s.add_argument("--budget", type=_budget, default=8, help="maximal total dimension of A + C")

    s = sub.add_parser("table", parents=[withq], help="multiplication table up to a total dimension")
    s.add_argument("--structure", default="max")
    s.add_argument("--budget", type=_budget, default=3, help="maximal total dimension of A + C")

    s = sub.add_parser("degen", parents=[withq], help="check a degeneration of Hall algebras")
    s.add_argument("--from", dest="source", default="max")
    s.add_argument("--to", dest="target")
    s.add_argument("--w", help="valuation file mapping indecomposable labels to weights")
    s.add_argument("--budget", type=_budget, default=4, help="maximal total dimension of compared pairs")

    s = sub.add_parser("cones", parents=[withq], help="the cones C and D of a pair of structures")
    s.add_argument("--from", dest="source", default="max")
    s.add_argument("--to", dest="target", default="add")
    s.add_argument("--faces", action="store_true", help="also list the faces of C(from, add)")
    s.add_argument("--budget", type=_budget, default=16)

    s = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    s.add_argument("suite", choices=sorted(SUITES))
    s.add_argument("--quiver", help="run the suite on another quiver")
    s.add_argument("--q", type=_prime, action="append", help="prime(s) to use; repeatable")
    s.add_argument("--budget", type=_budget, default=4, help="maximal total dimension")
    return p


COMMANDS = {
    "info": cmd_info,
    "indecs": cmd_indecs,
    "ar": cmd_ar,
    "structures": cmd_structures,
    "hall": cmd_hall,
    "table": cmd_table,
    "degen": cmd_degen,
    "cones": cmd_cones,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    out = Output(args.format)
    try:
        if args.command == "verify":
            return cmd_verify(args, out)
        return COMMANDS[args.command](args, ar_quiver(args.quiver), out)
    except (ExactHallError, UsageError, OSError) as exc:
        print(f"exacthall: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
