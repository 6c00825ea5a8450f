"""Reading and writing knot descriptors.

Two formats are accepted.  A Seifert text file::

    seifert 2
    0 1
    2 0

and a JSON descriptor tree whose nodes carry a ``kind`` tag: ``leaf``,
``sum``, ``infection``, ``signature`` or ``ref`` (a catalog name).  The
emitters produce canonical text, so ``emit(parse(text)) == text`` for any
file they wrote.
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, List, Optional

from .infection import (
    Infection,
    InfectionAxis,
    KnotDescriptor,
    SeifertLeaf,
    SignatureLeaf,
    Sum,
)
from .ring import LaurentPoly
from .seifert import SeifertForm, SeifertFormError, SignatureFunction


class ParseError(ValueError):
    def __init__(self, msg: str, line: Optional[int] = None, col: Optional[int] = None, source: str = "<input>"):
        self.msg, self.line, self.col, self.source = msg, line, col, source
        where = source
        if line is not None:
            where += f":{line}" + (f":{col}" if col is not None else "")
        super().__init__(f"{where}: {msg}")


# -- Seifert text format ----------------------------------------------------------

def parse_seifert_text(text: str, source: str = "<input>") -> SeifertForm:
    lines = [(i + 1, ln) for i, ln in enumerate(text.splitlines()) if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError("empty input", 1, 1, source)
    hno, header = lines[0]
    parts = header.split()
    if len(parts) != 2 or parts[0] != "seifert":
        raise ParseError("expected header 'seifert <n>'", hno, 1, source)
    try:
        n = int(parts[1])
    except ValueError:
        raise ParseError(f"matrix size {parts[1]!r} is not an integer", hno, header.index(parts[1]) + 1, source)
    if n < 0:
        raise ParseError("matrix size must be nonnegative", hno, header.index(parts[1]) + 1, source)
    body = lines[1:]
    if len(body) != n:
        at = body[n][0] if len(body) > n else (body[-1][0] + 1 if body else hno + 1)
        raise ParseError(f"expected {n} matrix rows, found {len(body)}", at, 1, source)
    rows: List[List[int]] = []
    for lno, ln in body:
        row = []
        pos = 0
        for tok in ln.split():
            col = ln.index(tok, pos) + 1
            pos = col - 1 + len(tok)
            try:
                row.append(int(tok))
            except ValueError:
                raise ParseError(f"entry {tok!r} is not an integer", lno, col, source)
        if len(row) != n:
            raise ParseError(f"row has {len(row)} entries, expected {n}", lno, 1, source)
        rows.append(row)
    try:
        return SeifertForm.from_rows(rows)
    except SeifertFormError as e:
        raise ParseError(str(e), hno, 1, source)


def emit_seifert_text(S: SeifertForm) -> str:
    out = [f"seifert {S.size}"]
    out += [" ".join(str(int(x)) for x in row) for row in S.tolist()]
    return "\n".join(out) + "\n"


# -- JSON descriptors ---------------------------------------------------------------

def _frac(x, path: str, source: str) -> Fraction:
    try:
        if isinstance(x, bool):
            raise TypeError
        return Fraction(x) if isinstance(x, (int, str)) else Fraction(str(x))
    except (TypeError, ValueError, ZeroDivisionError):
        raise ParseError(f"{path}: {x!r} is not a rational number", source=source)


def _fmt_frac(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _need(obj: Dict, key: str, path: str, source: str):
    if key not in obj:
        raise ParseError(f"{path}: missing field {key!r}", source=source)
    return obj[key]


def descriptor_from_json(obj: Any, source: str = "<input>", path: str = "$") -> KnotDescriptor:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ParseError(f"{path}: expected an object with a 'kind' field", source=source)
    kind = obj["kind"]
    if kind == "leaf":
        rows = _need(obj, "matrix", path, source)
        try:
            return SeifertLeaf(SeifertForm.from_rows(rows), obj.get("name", ""))
        except (SeifertFormError, TypeError, ValueError) as e:
            raise ParseError(f"{path}.matrix: {e}", source=source)
    if kind == "sum":
        parts = _need(obj, "parts", path, source)
        return Sum(tuple(descriptor_from_json(p, source, f"{path}.parts[{i}]") for i, p in enumerate(parts)))
    if kind == "signature":
        steps = _need(obj, "steps", path, source)
        try:
            sig = SignatureFunction.from_steps(
                [(_frac(r, f"{path}.steps[{i}]", source), int(v)) for i, (r, v) in enumerate(steps)]
            )
        except (TypeError, ValueError) as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(f"{path}.steps: {e}", source=source)
        return SignatureLeaf(sig, obj.get("arf"), obj.get("name", ""))
    if kind == "infection":
        seed = descriptor_from_json(_need(obj, "seed", path, source), source, f"{path}.seed")
        infs = []
        for i, item in enumerate(_need(obj, "infections", path, source)):
            p = f"{path}.infections[{i}]"
            ax = _need(item, "axis", p, source)
            try:
                cls = tuple(LaurentPoly.parse(str(c)) for c in _need(ax, "class", p + ".axis", source))
                axis = InfectionAxis(
                    cls,
                    derived_depth=int(ax.get("depth", 1)),
                    disjoint_from_surface=bool(ax.get("disjoint", True)),
                    label=ax.get("label", ""),
                )
            except ValueError as e:
                if isinstance(e, ParseError):
                    raise
                raise ParseError(f"{p}.axis: {e}", source=source)
            comp = descriptor_from_json(_need(item, "companion", p, source), source, p + ".companion")
            infs.append((axis, comp))
        return Infection(seed, tuple(infs))
    if kind == "ref":
        from .catalog import get
        try:
            return get(_need(obj, "name", path, source)).descriptor
        except KeyError as e:
            raise ParseError(f"{path}: {e.args[0]}", source=source)
    raise ParseError(f"{path}: unknown kind {kind!r}", source=source)


def descriptor_to_json(d: KnotDescriptor) -> Dict:
    if isinstance(d, SeifertLeaf):
        out = {"kind": "leaf", "matrix": [[int(x) for x in r] for r in d.form.tolist()]}
        if d.name:
            out["name"] = d.name
        return out
    if isinstance(d, SignatureLeaf):
        out = {"kind": "signature", "steps": [[_fmt_frac(r), v] for r, v in d.signature.steps()]}
        if d.arf is not None:
            out["arf"] = d.arf
        if d.name:
            out["name"] = d.name
        return out
    if isinstance(d, Sum):
        return {"kind": "sum", "parts": [descriptor_to_json(p) for p in d.parts]}
    if isinstance(d, Infection):
        return {
            "kind": "infection",
            "seed": descriptor_to_json(d.seed),
            "infections": [
                {
                    "axis": {
                        "class": [str(c) for c in a.module_class],
                        "depth": a.derived_depth,
                        "disjoint": a.disjoint_from_surface,
                        "label": a.label,
                    },
                    "companion": descriptor_to_json(c),
                }
                for a, c in d.infections
            ],
        }
    raise TypeError(f"not a knot descriptor: {d!r}")


def emit_json(d: KnotDescriptor) -> str:
    return json.dumps(descriptor_to_json(d), indent=2) + "\n"


# -- entry points -------------------------------------------------------------------

def parse_text(text: str, source: str = "<input>") -> KnotDescriptor:
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as e:
            raise ParseError(e.msg, e.lineno, e.colno, source)
        return descriptor_from_json(obj, source)
    return SeifertLeaf(parse_seifert_text(text, source))


def parse_input(path) -> KnotDescriptor:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ParseError(f"cannot read file: {e.strerror}", source=str(p))
    return parse_text(text, str(p))


def emit(d: KnotDescriptor) -> str:
    """Canonical text: the Seifert format for unnamed leaves, JSON otherwise."""
    if isinstance(d, SeifertLeaf) and not d.name:
        return emit_seifert_text(d.form)
    return emit_json(d)
