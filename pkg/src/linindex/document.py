"""JSON variety documents: parsing with full error collection, and serialization.

A surface document::

    {
      "kind": "surface",
      "name": "nl_surface_5",
      "field": {"kind": "henselian_dvr_fraction", "residue_char": 0,
                "brauer_trivial": true, "residue_alg_closed": true, "c1": true},
      "lattice": {"rank": 2, "gram": [[-3, 1], [1, 5]], "canonical": [0, 1],
                  "chi_O": 5, "dim": 2, "h1_O_zero": true},
      "generators": [{"name": "L", "coords": [1, 0]},
                     {"name": "H", "coords": [0, 1]}],
      "descended": ["H"],
      "options": {"bound": 10, "format": "text"}
    }

The last generator is the ample class. Integers may be JSON numbers or
decimal strings (needed beyond 2**53). Varieties of dimension other than 2
also carry ``"hilbert": {"O": [...], "<generator>": [...], ...}`` with
coefficient lists lowest degree first, entries ints or ``"p/q"`` strings.

A curve document has ``"kind": "curve"`` and a ``"curve"`` object with
``ind``, ``rho_a`` and optionally ``has_rational_point``,
``arithmetic_genus`` and ``pic_degree``.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional

from .descent import HilbertData
from .exactcore import NumericalPolynomial
from .index import FIELD_KINDS, CurveData, FieldProfile
from .picard import LineBundleClass, PicardLattice

_INT_RE = re.compile(r"^[+-]?\d+$")
_FRAC_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
SAFE_INT = 2**53


class DocumentError(ValueError):
    def __init__(self, errors: list[str]):
        self.errors = list(errors)
        super().__init__("; ".join(self.errors))


@dataclass(frozen=True)
class VarietyDocument:
    kind: str
    name: str
    field: FieldProfile
    description: str = ""
    lattice: Optional[PicardLattice] = None
    generators: tuple[tuple[str, LineBundleClass], ...] = ()
    descended: Optional[tuple[str, ...]] = None
    hilbert: Optional[HilbertData] = None
    curve: Optional[CurveData] = None
    bound: Optional[int] = None
    report_format: str = "text"

    @property
    def generator_names(self) -> tuple[str, ...]:
        return tuple(n for n, _ in self.generators)

    def generator(self, name: str) -> LineBundleClass:
        return dict(self.generators)[name]


class _Reader:
    """Typed field access that records every problem instead of stopping."""

    def __init__(self) -> None:
        self.errors: list[str] = []

    def fail(self, path: str, msg: str) -> None:
        self.errors.append(f"{path}: {msg}")

    def obj(self, data: Any, path: str) -> dict:
        if not isinstance(data, dict):
            self.fail(path, "expected an object")
            return {}
        return data

    def integer(self, data: Any, path: str, default: Any = ...) -> Optional[int]:
        if data is None and default is not ...:
            return default
        if isinstance(data, bool) or not (isinstance(data, int) or (isinstance(data, str) and _INT_RE.match(data))):
            self.fail(path, "expected an integer")
            return None
        return int(data)

    def boolean(self, data: Any, path: str, default: Any = ...) -> Optional[bool]:
        if data is None and default is not ...:
            return default
        if not isinstance(data, bool):
            self.fail(path, "expected true or false")
            return None
        return data

    def string(self, data: Any, path: str, default: Any = ...) -> Optional[str]:
        if data is None and default is not ...:
            return default
        if not isinstance(data, str):
            self.fail(path, "expected a string")
            return None
        return data

    def int_list(self, data: Any, path: str) -> Optional[list[int]]:
        if not isinstance(data, list):
            self.fail(path, "expected a list of integers")
            return None
        out = [self.integer(x, f"{path}[{i}]") for i, x in enumerate(data)]
        return None if any(x is None for x in out) else out

    def frac_list(self, data: Any, path: str) -> Optional[list[Fraction]]:
        if not isinstance(data, list):
            self.fail(path, "expected a list of coefficients")
            return None
        out = []
        for i, x in enumerate(data):
            if isinstance(x, bool) or not (isinstance(x, int) or (isinstance(x, str) and _FRAC_RE.match(x))):
                self.fail(f"{path}[{i}]", "expected an integer or 'p/q' string")
                return None
            out.append(Fraction(x))
        return out


def _field(r: _Reader, data: Any) -> Optional[FieldProfile]:
    f = r.obj(data, "field")
    kind = r.string(f.get("kind"), "field.kind", "other")
    if kind is not None and kind not in FIELD_KINDS:
        r.fail("field.kind", f"must be one of {', '.join(FIELD_KINDS)}")
        kind = None
    p = r.integer(f.get("residue_char"), "field.residue_char", 0)
    if p is not None:
        try:
            FieldProfile(residue_char=p)
        except ValueError:
            r.fail("field.residue_char", "residue characteristic must be 0 or prime")
            p = None
    bt = r.boolean(f.get("brauer_trivial"), "field.brauer_trivial", False)
    rac = r.boolean(f.get("residue_alg_closed"), "field.residue_alg_closed", False)
    c1 = r.boolean(f.get("c1"), "field.c1", False)
    if c1 and bt is False:
        r.fail("field.c1", "a C1 field has trivial Brauer group; brauer_trivial must be true")
        return None
    if None in (kind, p, bt, rac, c1):
        return None
    return FieldProfile(kind, p, bt, rac, c1)


def _surface(r: _Reader, doc: dict) -> dict:
    lat = r.obj(doc.get("lattice"), "lattice")
    rank = r.integer(lat.get("rank"), "lattice.rank")
    gram_raw = lat.get("gram")
    gram = None
    if not isinstance(gram_raw, list):
        r.fail("lattice.gram", "expected a list of rows")
    else:
        rows = [r.int_list(row, f"lattice.gram[{i}]") for i, row in enumerate(gram_raw)]
        if all(row is not None for row in rows):
            gram = rows
    canonical = r.int_list(lat.get("canonical"), "lattice.canonical")
    chi_O = r.integer(lat.get("chi_O"), "lattice.chi_O")
    dim = r.integer(lat.get("dim"), "lattice.dim", 2)
    h1 = r.boolean(lat.get("h1_O_zero"), "lattice.h1_O_zero", True)

    if rank is not None and rank < 1:
        r.fail("lattice.rank", "must be positive")
        rank = None
    if gram is not None:
        if rank is not None and (len(gram) != rank or any(len(row) != rank for row in gram)):
            r.fail("lattice.gram", f"expected a {rank}x{rank} matrix")
        elif any(len(row) != len(gram) for row in gram):
            r.fail("lattice.gram", "gram matrix is not square")
        elif any(gram[i][j] != gram[j][i] for i in range(len(gram)) for j in range(len(gram))):
            r.fail("lattice.gram", "gram not symmetric")
    if canonical is not None and rank is not None and len(canonical) != rank:
        r.fail("lattice.canonical", f"expected {rank} entries")

    gens_raw = doc.get("generators")
    gens: list[tuple[str, list[int]]] = []
    if not isinstance(gens_raw, list) or not gens_raw:
        r.fail("generators", "expected a nonempty list")
    else:
        for i, g in enumerate(gens_raw):
            g = r.obj(g, f"generators[{i}]")
            name = r.string(g.get("name"), f"generators[{i}].name")
            coords = r.int_list(g.get("coords"), f"generators[{i}].coords")
            if coords is not None and rank is not None and len(coords) != rank:
                r.fail(f"generators[{i}].coords", f"expected {rank} entries")
            if name is not None and coords is not None:
                gens.append((name, coords))
        names = [n for n, _ in gens]
        if len(set(names)) != len(names):
            r.fail("generators", "generator names must be unique")
        if rank is not None and len(gens_raw) != rank:
            r.fail("generators", f"expected {rank} generators (a basis, ample class last)")

    ample_flag = doc.get("ample")
    if ample_flag is not None and gens and ample_flag != gens[-1][0]:
        r.fail("ample", "the ample generator must be listed last")

    descended = None
    if "descended" in doc:
        d = doc["descended"]
        if not isinstance(d, list) or not d or not all(isinstance(x, str) for x in d):
            r.fail("descended", "expected a nonempty list of generator names")
        else:
            unknown = [x for x in d if x not in {n for n, _ in gens}]
            if unknown:
                r.fail("descended", f"unknown generators {unknown}")
            descended = tuple(d)

    hilbert = None
    if "hilbert" in doc:
        h = r.obj(doc["hilbert"], "hilbert")
        polys = {k: r.frac_list(v, f"hilbert.{k}") for k, v in h.items()}
        missing = [k for k in ["O"] + [n for n, _ in gens] if k not in polys]
        if missing:
            r.fail("hilbert", f"missing polynomials for {missing}")
        elif all(v is not None for v in polys.values()):
            hilbert = HilbertData(
                NumericalPolynomial(tuple(polys["O"])),
                tuple(NumericalPolynomial(tuple(polys[n])) for n, _ in gens))
    elif dim is not None and dim != 2:
        r.fail("hilbert", "required when lattice.dim is not 2")

    lattice = None
    if not r.errors and gens:
        try:
            lattice = PicardLattice(
                gram=tuple(map(tuple, gram)), canonical=tuple(canonical), chi_O=chi_O,
                ample=tuple(gens[-1][1]), dim=dim, h1_O_zero=h1)
        except ValueError as exc:
            r.fail("lattice", str(exc))
    return dict(
        lattice=lattice, generators=tuple((n, tuple(c)) for n, c in gens),
        descended=descended, hilbert=hilbert)


def _curve(r: _Reader, doc: dict) -> dict:
    c = r.obj(doc.get("curve"), "curve")
    ind = r.integer(c.get("ind"), "curve.ind")
    rho_a = r.integer(c.get("rho_a"), "curve.rho_a")
    pt = r.boolean(c.get("has_rational_point"), "curve.has_rational_point", False)
    genus = r.integer(c.get("arithmetic_genus"), "curve.arithmetic_genus", None)
    pic = r.integer(c.get("pic_degree"), "curve.pic_degree", None)
    if None in (ind, rho_a, pt):
        return {}
    try:
        return dict(curve=CurveData(ind, rho_a, pt, genus, pic))
    except ValueError as exc:
        r.fail("curve", str(exc))
        return {}


def parse_document(text: str) -> VarietyDocument:
    """Validate a JSON document; raises DocumentError listing every problem found."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError([f"line {exc.lineno} column {exc.colno}: {exc.msg}"]) from exc
    r = _Reader()
    doc = r.obj(data, "document")
    kind = r.string(doc.get("kind"), "kind", "surface")
    name = r.string(doc.get("name"), "name", "unnamed")
    description = r.string(doc.get("description"), "description", "")
    field = _field(r, doc.get("field", {}))
    opts = r.obj(doc.get("options", {}), "options")
    bound = r.integer(opts.get("bound"), "options.bound", None)
    if bound is not None and bound < 1:
        r.fail("options.bound", "must be positive")
    fmt = r.string(opts.get("format"), "options.format", "text")
    if fmt not in ("text", "json", None):
        r.fail("options.format", "must be 'text' or 'json'")
    if kind == "surface":
        parts = _surface(r, doc)
    elif kind == "curve":
        parts = _curve(r, doc)
    else:
        r.fail("kind", "must be 'surface' or 'curve'")
        parts = {}
    if r.errors:
        raise DocumentError(r.errors)
    return VarietyDocument(kind=kind, name=name, field=field, description=description, bound=bound, report_format=fmt, **parts)


def _jint(n: int) -> int | str:
    return n if -SAFE_INT < n < SAFE_INT else str(n)


def _jfrac(q: Fraction) -> int | str:
    return _jint(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def document_to_dict(doc: VarietyDocument) -> dict:
    f = doc.field
    out: dict[str, Any] = {
        "kind": doc.kind,
        "name": doc.name,
        "description": doc.description,
        "field": {"kind": f.kind, "residue_char": f.residue_char, "brauer_trivial": f.brauer_trivial,
                  "residue_alg_closed": f.residue_alg_closed, "c1": f.c1},
        "options": {"format": doc.report_format},
    }
    if doc.bound is not None:
        out["options"]["bound"] = doc.bound
    if doc.kind == "curve":
        c = doc.curve
        out["curve"] = {"ind": _jint(c.ind), "rho_a": _jint(c.rho_a), "has_rational_point": c.has_rational_point}
        if c.arithmetic_genus is not None:
            out["curve"]["arithmetic_genus"] = _jint(c.arithmetic_genus)
        if c.pic_degree is not None:
            out["curve"]["pic_degree"] = _jint(c.pic_degree)
        return out
    lat = doc.lattice
    out["lattice"] = {
        "rank": lat.rank, "gram": [[_jint(x) for x in row] for row in lat.gram],
        "canonical": [_jint(x) for x in lat.canonical], "chi_O": _jint(lat.chi_O),
        "dim": lat.dim, "h1_O_zero": lat.h1_O_zero,
    }
    out["generators"] = [{"name": n, "coords": [_jint(x) for x in c]} for n, c in doc.generators]
    if doc.descended is not None:
        out["descended"] = list(doc.descended)
    if doc.hilbert is not None:
        polys = {"O": doc.hilbert.structure_sheaf}
        polys.update(zip(doc.generator_names, doc.hilbert.generators))
        out["hilbert"] = {k: [_jfrac(c) for c in P.coefficients] for k, P in polys.items()}
    return out


def dumps_document(doc: VarietyDocument) -> str:
    return json.dumps(document_to_dict(doc), indent=2, sort_keys=True) + "\n"
