"""Command line interface: ``isaacs <command> ...``.

Every command exits with status 0 only when everything it checked passed.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import census as cs
from . import chartable as ct
from . import constructions as cons
from . import fp
from .autsearch import automorphism_group
from .group import GroupFormatError
from .groupfile import load_group, save_group
from .iso import TooLargeError


def _emit(doc, out: str | None) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n" if not isinstance(doc, str) else doc
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_census(args) -> int:
    try:
        rec = cs.run_census(args.e, stretch=args.stretch, jobs=args.jobs, strict=True)
    except cs.CensusError as exc:
        print(f"census failed:\n{exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    _emit(cs.emit_report(rec), args.out)
    print(rec.diagnostic(), file=sys.stderr)
    return 0 if rec.ok else 1


def _gate_doc(G, gate: cs.GateResult) -> dict:
    p = gate.params
    return {
        "group": G.name,
        "order": G.order,
        "passed": gate.passed,
        "e": p.e if p else None,
        "d": p.d if p else None,
        "conditions": gate.conditions,
        "gagola_row": gate.gagola,
        "minimal_normal_order": gate.N.order if gate.N is not None else None,
    }


def cmd_gate(args) -> int:
    G = load_group(args.group)
    gate = cs.isaacs_gate(G)
    _emit(_gate_doc(G, gate), args.out)
    return 0 if gate.passed else 1


def cmd_verify(args) -> int:
    G = load_group(args.group)
    gate = cs.isaacs_gate(G)
    if not gate.passed:
        print(f"not an Isaacs group: failing {gate.failed()}", file=sys.stderr)
        _emit(_gate_doc(G, gate), args.out)
        return 1
    rep = cs.verify_structure(G, gate)
    doc = {
        "group": G.name,
        "e": rep.e, "p": rep.p, "a": rep.a,
        "p_closed": rep.p_closed,
        "orders": {"N": rep.N.order, "K": rep.K.order, "Z(K)": rep.order_ZK,
                   "K'": rep.order_K_derived, "Z2(K)": rep.order_Z2K},
        "class_K": rep.class_K,
        "branch": rep.branch,
        "checks": {k: {"status": c.status, "claim": c.claim, "witness": c.witness}
                   for k, c in rep.checks.items()},
        "passed": rep.passed,
    }
    _emit(doc, args.out)
    return 0 if rep.passed else 1


def cmd_chartable(args) -> int:
    G = load_group(args.group)
    T = ct.character_table(G)
    rep = ct.check_table(T)
    doc = {
        "group": G.name,
        "order": G.order,
        "m": T.m,
        "dixon_prime": T.prime,
        "classes": [c.tolist() for c in T.classes],
        "class_sizes": T.sizes.tolist(),
        "element_orders": T.element_orders.tolist(),
        "degrees": T.degrees.tolist(),
        "values": T.reduced.tolist(),
        "degree_multiset": ct.format_multiset(ct.degree_multiset(T)),
        "orthogonality": bool(rep),
    }
    _emit(doc, args.out)
    return 0 if bool(rep) else 1


def cmd_aut(args) -> int:
    G = load_group(args.group)
    try:
        A = automorphism_group(G, limit=args.limit)
    except (TooLargeError, ValueError) as exc:
        print(f"automorphism search failed: {exc}", file=sys.stderr)
        return 1
    doc = {
        "group": G.name,
        "order": G.order,
        "aut_order": A.order,
        "generators": [g.tolist() for g in A.generators()],
        "contains_inner": A.contains_inner(),
    }
    _emit(doc, args.out)
    return 0


def cmd_tc(args) -> int:
    if args.presentation == "degree25":
        pres = fp.degree25_presentation()
    else:
        pres = fp.parse_presentation(Path(args.presentation).read_text())
    sub = [pres.parse_word(w) for w in args.subgroup.split(",")] if args.subgroup else []
    if args.certify:
        cert = fp.certify_nonsolvable_camina(pres, max_cosets=args.max_cosets)
        doc = {"index": cert.index, "passed": cert.passed,
               "checks": [{"name": c.name, "status": c.status, "detail": c.detail} for c in cert.checks]}
        _emit(doc, args.out)
        return 0 if cert.passed else 1
    try:
        T = fp.todd_coxeter(pres, sub, args.max_cosets)
    except fp.CosetBoundExceeded as exc:
        print(str(exc), file=sys.stderr)
        return 1
    doc = {"index": T.index, "defined": T.defined, "lookaheads": T.lookaheads,
           "closed": T.is_closed(), "consistent": T.is_consistent()}
    _emit(doc, args.out)
    return 0 if doc["closed"] and doc["consistent"] else 1


FAMILIES = {
    "cyclic": lambda a: cons.cyclic(a.n),
    "elementary-abelian": lambda a: cons.elementary_abelian(a.p, a.k),
    "dihedral": lambda a: cons.dihedral(a.n),
    "dicyclic": lambda a: cons.dicyclic(a.n),
    "quaternion8": lambda a: cons.quaternion8(),
    "extraspecial": lambda a: cons.extraspecial_p3(a.p, a.exponent, variant=a.variant),
    "heisenberg": lambda a: cons.heisenberg(a.q),
    "symmetric": lambda a: cons.symmetric(a.n),
    "alternating": lambda a: cons.alternating(a.n),
    "agl1": lambda a: cons.field_frobenius_group(a.q),
}


def cmd_construct(args) -> int:
    try:
        G = FAMILIES[args.family](args)
    except (TypeError, ValueError) as exc:
        print(f"cannot construct {args.family}: {exc}", file=sys.stderr)
        return 1
    if args.out:
        save_group(G, args.out)
    else:
        json.dump({"kind": "cayley", "name": G.name, "order": G.order, "mul": G.mul.tolist()}, sys.stdout)
        sys.stdout.write("\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="isaacs", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("census", help="classify Isaacs groups of degree e")
    c.add_argument("--e", type=int, required=True)
    c.add_argument("--stretch", action="store_true", help="allow the long degree 9 run")
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--out")
    c.set_defaults(func=cmd_census)

    for name, func, help_ in (
        ("gate", cmd_gate, "test the defining conditions of an Isaacs group"),
        ("verify", cmd_verify, "check the structure of an Isaacs group"),
        ("chartable", cmd_chartable, "character table as JSON"),
        ("aut", cmd_aut, "automorphism group of a p-group"),
    ):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--group", required=True, help="JSON group file")
        s.add_argument("--out")
        if name == "aut":
            s.add_argument("--limit", type=int, default=729)
        s.set_defaults(func=func)

    t = sub.add_parser("tc", help="coset enumeration")
    t.add_argument("--presentation", required=True,
                   help='presentation file, or "degree25" for the built-in one')
    t.add_argument("--subgroup", help="comma separated subgroup generators")
    t.add_argument("--max-cosets", type=int, default=fp.DEFAULT_MAX_COSETS)
    t.add_argument("--certify", action="store_true",
                   help="check order, nonsolvability, Sylow order and the normal p-core")
    t.add_argument("--out")
    t.set_defaults(func=cmd_tc)

    k = sub.add_parser("construct", help="write a group from a built-in family")
    k.add_argument("--family", required=True, choices=sorted(FAMILIES))
    k.add_argument("--n", type=int)
    k.add_argument("--p", type=int)
    k.add_argument("--k", type=int)
    k.add_argument("--q", type=int)
    k.add_argument("--exponent", type=int)
    k.add_argument("--variant", choices=["dihedral", "quaternion"])
    k.add_argument("--out")
    k.set_defaults(func=cmd_construct)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GroupFormatError, fp.PresentationSyntaxError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
