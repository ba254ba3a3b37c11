"""Built-in worked examples with frozen expected values.

Each example computes a handful of quantities through the library and
compares them with literal expectations. ``overrides`` patches lattice
fields before computing (``{"quadric_R": {"chi_O": 2}}``), which is how the
tests check that a wrong input surfaces as a FAIL row.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass
from typing import Any, Callable, Mapping, Optional

from .descent import theorem_check
from .exactcore import binomial
from .index import CurveData, FieldProfile, curve_linear_index, index_conclusion, kollar_curve_lin_index, linear_index
from .picard import PicardLattice, build_corpus_lattice, change_basis, chi, degree, hilbert_polynomial

C1_CHAR0 = FieldProfile("henselian_dvr_fraction", 0, True, True, c1=True)
C1_CHAR3 = FieldProfile("henselian_dvr_fraction", 3, True, True, c1=True)
REALS = FieldProfile("real_numbers", 0, brauer_trivial=False)

NL_DEGREES = range(5, 10)
ODD_DEGREES = (3, 5, 7)


@dataclass(frozen=True)
class CorpusRow:
    example: str
    quantity: str
    expected: Any
    computed: Any

    @property
    def ok(self) -> bool:
        return self.expected == self.computed

    def as_dict(self) -> dict:
        return {"example": self.example, "quantity": self.quantity, "expected": self.expected,
                "computed": self.computed, "status": "PASS" if self.ok else "FAIL"}


def _lattice(name: str, overrides: Mapping, build: Callable[[], PicardLattice]) -> PicardLattice:
    lat = build()
    return dataclasses.replace(lat, **overrides.get(name, {}))


def _quadric(ov: Mapping) -> list[tuple[str, Any, Any]]:
    lat = _lattice("quadric_R", ov, lambda: build_corpus_lattice("quadric_R"))
    H = lat.named("H")
    ample_basis = change_basis(lat, ((1, 1), (0, 1)), labels=("L1", "H"))
    rep = theorem_check(ample_basis, [(1, 0), (0, 1)], names=("L1", "H"))
    return [
        ("chi(O_X)", 1, chi(lat, (0, 0))),
        ("chi(L1 + L2)", 4, chi(lat, (1, 1))),
        ("chi(2 L1 + 3 L2)", 12, chi(lat, (2, 3))),
        ("gram in basis (L1, H)", [[0, 1], [1, 2]], [list(r) for r in ample_basis.gram]),
        ("linear index over <H>", 1, linear_index(lat, [H])),
        ("degrees (L1, H)", [1, 2], list(rep.degrees)),
        ("condition (1)", True, rep.condition_one),
        ("condition (2) witness", [[-1, 1], [0, 1]],
         rep.condition_two.witness.tolist() if rep.condition_two.witness else None),
        ("index conclusion over R", "no conclusion", index_conclusion(rep, 1, REALS).claim),
    ]


def _conic(ov: Mapping) -> list[tuple[str, Any, Any]]:
    c = dataclasses.replace(CurveData(ind=2, rho_a=1, arithmetic_genus=0, pic_degree=2), **ov.get("conic_R", {}))
    kollar, definitional = kollar_curve_lin_index(c), curve_linear_index(c)
    return [
        ("linear index, cited formula", 2, kollar),
        ("linear index, definition", 1, definitional),
        ("discrepancy flagged", True, kollar != definitional),
    ]


def _surface_p3(e: int, ov: Mapping) -> list[tuple[str, Any, Any]]:
    name = f"surface_p3_{e}"
    lat = _lattice(name, ov, lambda: build_corpus_lattice("surface_p3", e))
    expected_chi = {3: 1, 5: 5, 7: 21}[e]
    # brute-force gcd of C(a+3, 3) - C(a+3-e, 3); e = 5 and 7 are not 1
    expected_lin = {3: 1, 5: 5, 7: 7}[e]
    return [
        ("chi(O_X)", expected_chi, lat.chi_O),
        ("chi(O_X(1))", binomial(4, 3) - binomial(4 - e, 3), chi(lat, (1,))),
        ("linear index over <H>", expected_lin, linear_index(lat, [(1,)])),
    ]


def _quartic(ov: Mapping) -> list[tuple[str, Any, Any]]:
    lat = _lattice("quartic_k3", ov, lambda: build_corpus_lattice("quartic_k3"))
    rep = theorem_check(lat, [(1,)], names=("H",))
    return [
        ("chi(O_X)", 2, lat.chi_O),
        ("canonical class", [0], list(lat.canonical)),
        ("Hilbert polynomial", "2*n^2 + 2", str(hilbert_polynomial(lat, (0,)))),
        ("linear index over <H>", 2, linear_index(lat, [(1,)])),
        ("condition (1)", False, rep.condition_one),
        ("gcd of χ(H(n))", 2, rep.chi_gcd),
        ("prime-to-2 conclusion", "prime-to-p part of ind(X) = 1",
         index_conclusion(rep, 2, FieldProfile("henselian_dvr_fraction", 2, True, True)).claim),
    ]


def _nl_surface(e: int, ov: Mapping) -> list[tuple[str, Any, Any]]:
    name = f"nl_surface_{e}"
    lat = _lattice(name, ov, lambda: build_corpus_lattice("nl_surface", e))
    L, H = (1, 0), (0, 1)
    rep = theorem_check(lat, [L, H], names=("L", "H"))
    expected_chi = {5: 5, 6: 11, 7: 21, 8: 36, 9: 57}[e]
    return [
        ("chi(O_X)", expected_chi, lat.chi_O),
        ("L^2", 2 - e, lat.intersect(L, L)),
        ("degrees (L, H)", [1, e], [degree(lat, L), degree(lat, H)]),
        ("condition (1)", True, rep.condition_one),
        ("condition (2) outcome", "exactly_none", rep.condition_two.kind),
        ("gcd of χ(L_i(n))", 1, rep.chi_gcd),
        ("criterion satisfied", True, rep.satisfied),
        ("conclusion, residue char 0", "ind(X) = 1", index_conclusion(rep, 1, C1_CHAR0).claim),
        ("conclusion, residue char 3", "prime-to-p part of ind(X) = 1",
         index_conclusion(rep, 1, C1_CHAR3).claim),
    ]


def corpus_examples() -> list[tuple[str, Callable[[Mapping], list]]]:
    examples: list[tuple[str, Callable[[Mapping], list]]] = [("quadric_R", _quadric), ("conic_R", _conic)]
    examples += [(f"surface_p3_{e}", lambda ov, e=e: _surface_p3(e, ov)) for e in ODD_DEGREES]
    examples.append(("quartic_k3", _quartic))
    examples += [(f"nl_surface_{e}", lambda ov, e=e: _nl_surface(e, ov)) for e in NL_DEGREES]
    return examples


def run_corpus(overrides: Optional[Mapping[str, Mapping[str, Any]]] = None) -> list[CorpusRow]:
    overrides = overrides or {}
    rows = []
    for name, compute in corpus_examples():
        try:
            results = compute(overrides)
        except ValueError as exc:
            results = [("computation", "success", f"error: {exc}")]
        rows.extend(CorpusRow(name, q, exp, got) for q, exp, got in results)
    return rows


def render_corpus_text(rows: list[CorpusRow]) -> str:
    w1 = max(len(r.example) for r in rows)
    w2 = max(len(r.quantity) for r in rows)
    lines = []
    for r in rows:
        status = "PASS" if r.ok else "FAIL"
        line = f"{status}  {r.example:<{w1}}  {r.quantity:<{w2}}  {r.computed}"
        if not r.ok:
            line += f"   (expected {r.expected})"
        lines.append(line)
    failed = sum(not r.ok for r in rows)
    lines.append(f"{len(rows) - failed}/{len(rows)} checks passed")
    return "\n".join(lines) + "\n"


def render_corpus_json(rows: list[CorpusRow]) -> str:
    payload = {"all_pass": all(r.ok for r in rows), "rows": [r.as_dict() for r in rows]}
    return json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n"
