"""Command-line front end: ``concordance-lab <subcommand> ...``.

Exit codes: 0 success, 1 input or parse error, 2 the requested structure is
unavailable (unsupported module shape).
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

from . import catalog
from .alexmodule import UnsupportedModuleShape, blanchfield, crt_split, decompose, self_annihilating_submodules
from .infection import (
    DescriptorError,
    Infection,
    NestedInfectionError,
    classify,
    effective_seifert,
    rho_z_knot,
)
from .io import ParseError, parse_input
from .seifert import (
    alexander_polynomial,
    arf_invariant,
    find_hyperbolic_basis,
    find_metabolizer,
    fox_milnor,
    signature_function,
)
from .words import FamilySpec, generate_family

EXIT_OK, EXIT_INPUT, EXIT_UNSUPPORTED = 0, 1, 2


class CliError(Exception):
    def __init__(self, msg: str, code: int = EXIT_INPUT):
        super().__init__(msg)
        self.code = code


def _load(spec: Optional[str]):
    if not spec:
        raise CliError("--knot is required")
    if Path(spec).exists():
        return spec, parse_input(spec)
    try:
        return spec, catalog.get(spec).descriptor
    except KeyError as e:
        raise CliError(e.args[0])


def _seifert(d):
    try:
        return effective_seifert(d)
    except DescriptorError as e:
        raise CliError(str(e))


def _out(args, data: dict, lines: List[str]):
    if args.json:
        print(json.dumps(data, indent=2, default=str))
    else:
        print("\n".join(lines))


def cmd_invariants(args) -> int:
    name, d = _load(args.knot)
    S = _seifert(d)
    delta = alexander_polynomial(S)
    sig = signature_function(S)
    M = crt_split(decompose(S))
    data = {
        "knot": name,
        "genus": S.genus,
        "alexander_polynomial": str(delta),
        "arf": arf_invariant(S),
        "fox_milnor": fox_milnor(S),
        "signature_function": str(sig),
        "signature_exact": sig.is_exact,
        "module_orders": [str(o) for o in M.orders],
    }
    _out(args, data, [
        f"knot: {name}",
        f"alexander polynomial: {delta}",
        f"arf: {data['arf']}",
        f"fox-milnor: {'pass' if data['fox_milnor'] else 'fail'}",
        f"signature: {sig}",
        "module: " + (" + ".join(f"Q[t,1/t]/({o})" for o in data["module_orders"]) or "0"),
    ])
    return EXIT_OK


def cmd_classify(args) -> int:
    name, d = _load(args.knot)
    rep = classify(d, args.bound, cm=args.cm)
    data = {"knot": name, "bound": args.bound, **rep.to_dict()}
    lines = [f"knot: {name} (search bound {args.bound})"]
    for k, v in rep.to_dict().items():
        if k in ("notes", "assignments", "companion_rho"):
            continue
        lines.append(f"{k}: {v}")
    for c in rep.companion_rho:
        lines.append(f"companion on {c['axis']}: rho_Z = {c['rho']}" + (
            f" (> c_M: {c['exceeds_cm']})" if "exceeds_cm" in c else ""))
    for a in rep.assignments:
        lines.append(f"kernels {a['kernels']}: rho {a['rho']}, ruled out: {a['ruled_out']}")
    lines += [f"note: {n}" for n in rep.notes]
    _out(args, data, lines)
    return EXIT_OK


def cmd_family(args) -> int:
    try:
        spec = FamilySpec(args.a, args.c, args.n)
    except ValueError as e:
        raise CliError(str(e))
    fam = generate_family(spec)
    if args.count:
        _out(args, {"a": args.a, "c": args.c, "n": args.n, "count": len(fam)}, [str(len(fam))])
        return EXIT_OK
    data = [
        {"derivation": list(p.derivation), "first": str(p.first), "second": str(p.second)} for p in fam
    ]
    lines = [f"{''.join(map(str, p.derivation)) or '-'}\t{p.first}\t{p.second}" for p in fam]
    _out(args, {"a": args.a, "c": args.c, "n": args.n, "pairs": data}, lines)
    return EXIT_OK


def cmd_rho(args) -> int:
    name, d = _load(args.knot)
    rows = []
    try:
        if isinstance(d, Infection):
            for axis, comp in d.infections:
                rows.append((f"companion on {axis.label or axis.module_class}", rho_z_knot(comp)))
        else:
            rows.append((name, rho_z_knot(d)))
    except NestedInfectionError as e:
        raise CliError(str(e))
    data = {"knot": name, "rho": [
        {"of": who, "value": str(r), "exact": r.is_exact,
         **({"exceeds_cm": r.exceeds(args.cm)} if args.cm is not None else {})}
        for who, r in rows
    ]}
    lines = []
    for who, r in rows:
        s = f"{who}: rho_Z = {r}" + ("" if r.is_exact else " (interval)")
        if args.cm is not None:
            s += f"; exceeds c_M = {args.cm}: {r.exceeds(args.cm)}"
        lines.append(s)
    _out(args, data, lines)
    return EXIT_OK


def cmd_blanchfield(args) -> int:
    name, d = _load(args.knot)
    S = _seifert(d)
    B = blanchfield(S)
    M = crt_split(decompose(S))
    data = {
        "knot": name,
        "matrix": [[str(x) for x in row] for row in B.matrix.rows],
        "hermitian": B.is_hermitian(),
        "module_orders": [str(o) for o in M.orders],
    }
    lines = [f"knot: {name}", "blanchfield matrix:"] + ["  " + "  ".join(map(str, r)) for r in data["matrix"]]
    lines.append(f"hermitian: {data['hermitian']}")
    lines.append("module orders: " + ", ".join(data["module_orders"]))
    code = EXIT_OK
    try:
        subs = self_annihilating_submodules(M, B)
        data["self_annihilating"] = [
            {"label": s.label, "orders": [str(M.orders[i]) for i in s.pieces]} for s in subs
        ]
        lines.append(f"self-annihilating submodules: {len(subs)}")
        lines += [f"  {s.label}: " + " + ".join(f"Q[t,1/t]/({M.orders[i]})" for i in s.pieces) for s in subs]
    except UnsupportedModuleShape as e:
        data["self_annihilating"] = None
        data["error"] = str(e)
        lines.append(f"self-annihilating submodules: unsupported ({e})")
        code = EXIT_UNSUPPORTED
    _out(args, data, lines)
    return code


def cmd_metabolizer(args) -> int:
    name, d = _load(args.knot)
    S = _seifert(d)
    met = find_metabolizer(S, args.bound)
    hyp = find_hyperbolic_basis(S, args.bound)
    data = {
        "knot": name,
        "bound": args.bound,
        "metabolizer": met.basis_change.tolist() if met else None,
        "hyperbolic": hyp.basis_change.tolist() if hyp else None,
    }
    def show(w):
        return "none at this bound" if w is None else "\n" + str(w.basis_change)

    _out(args, data, [f"knot: {name} (bound {args.bound})", f"metabolizer: {show(met)}", f"hyperbolic basis: {show(hyp)}"])
    return EXIT_OK


def cmd_catalog(args) -> int:
    cat = catalog.load_catalog()
    data = {n: {"note": e.note, "expected": {k: str(v) for k, v in e.expected.items()}} for n, e in cat.items()}
    _out(args, data, [f"{n}\t{e.note}" for n, e in cat.items()])
    return EXIT_OK


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}")


class _Parser(argparse.ArgumentParser):
    # usage mistakes are input errors (exit 1); code 2 is reserved for unsupported shapes
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="concordance-lab", description="Algebraic slice and doubly slice obstructions.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, knot=True, bound=False, cm=False):
        sp = sub.add_parser(name)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if knot:
            sp.add_argument("--knot", help="catalog name or path to a descriptor file")
        if bound:
            sp.add_argument("--bound", type=int, default=2, help="entry bound for lattice searches")
        if cm:
            sp.add_argument("--cm", type=_rational, default=None, help="user-supplied bound c_M")
        return sp

    add("invariants", cmd_invariants)
    add("classify", cmd_classify, bound=True, cm=True)
    fam = add("family", cmd_family, knot=False)
    fam.add_argument("--a", type=int, default=1)
    fam.add_argument("--c", type=int, default=3)
    fam.add_argument("--n", type=int, default=1)
    fam.add_argument("--count", action="store_true")
    add("rho", cmd_rho, cm=True)
    add("blanchfield", cmd_blanchfield)
    add("metabolizer", cmd_metabolizer, bound=True)
    add("catalog", cmd_catalog, knot=False)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "bound", 1) < 1:
            raise CliError("--bound must be >= 1")
        return args.fn(args)
    except ParseError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except CliError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except catalog.CatalogSelfTestError as e:
        print(f"catalog self-test failed: {e}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
