"""Compose the criterion, linear index and index conclusion into one report."""

from __future__ import annotations

import json
import math
from typing import Any, Optional

from .descent import DEFAULT_BOUND, CriterionReport, theorem_check
from .document import VarietyDocument, _jint
from .exactcore import gcd_all, value_gcd
from .index import (
    IndexStatement, curve_linear_index, index_conclusion, kollar_curve_lin_index, linear_index,
)

EXIT_SATISFIED, EXIT_NOT_SATISFIED, EXIT_INPUT_ERROR = 0, 1, 2


def _conclusion_dict(st: IndexStatement) -> dict:
    return {"claim": st.claim, "lin_index": st.lin_index, "justification": list(st.justification)}


def _field_dict(doc: VarietyDocument) -> dict:
    f = doc.field
    return {"kind": f.kind, "residue_char": f.residue_char, "brauer_trivial": f.brauer_trivial,
            "residue_alg_closed": f.residue_alg_closed, "c1": f.c1}


def criterion_dict(rep: CriterionReport) -> dict:
    c2 = rep.condition_two
    return {
        "hypotheses": dict(rep.hypotheses),
        "degrees": dict(zip(rep.generator_names, rep.degrees)),
        "condition_1": {"holds": rep.condition_one, "degree_gcd": gcd_all(rep.degrees)},
        "condition_2": {
            "holds": c2.condition_holds, "outcome": c2.kind, "order": c2.order,
            "witness": c2.witness.tolist() if c2.witness else None, "note": c2.note,
        },
        "hilbert_polynomials": {n: str(P) for n, P in zip(rep.generator_names, rep.hilbert_polynomials)},
        "chi_gcd": rep.chi_gcd,
        "criterion_satisfied": rep.satisfied,
        "verdict": rep.verdict,
    }


def _surface_report(doc: VarietyDocument, bound: int) -> tuple[dict, int]:
    lat = doc.lattice
    names = doc.generator_names
    rep = theorem_check(lat, [c for _, c in doc.generators], bound, names=names, hilbert=doc.hilbert)
    out = {"name": doc.name, "kind": "surface", "field": _field_dict(doc),
           "generators": {n: list(c) for n, c in doc.generators}, "search_bound": bound}
    out.update(criterion_dict(rep))
    notes = []
    if rep.satisfied and doc.field.brauer_trivial:
        descended = names
        notes.append("descended sublattice set to the full lattice: every generator is "
                     "G-invariant and Br(K) = 0")
    else:
        descended = doc.descended or (names[-1],)
    if lat.dim == 2:
        lin = linear_index(lat, [doc.generator(n) for n in descended])
    else:
        polys = dict(zip(names, doc.hilbert.generators))
        lin = gcd_all([value_gcd(doc.hilbert.structure_sheaf)] + [value_gcd(polys[n]) for n in descended])
        notes.append("dim != 2: linear index taken over twists of the descended generators "
                     "and O_X, a multiple of the true value")
    st = index_conclusion(rep, lin, doc.field)
    out.update({"descended": list(descended), "linear_index": lin,
                "index_conclusion": _conclusion_dict(st), "notes": notes})
    return out, EXIT_SATISFIED if rep.satisfied else EXIT_NOT_SATISFIED


def _curve_report(doc: VarietyDocument) -> tuple[dict, int]:
    c = doc.curve
    kollar = kollar_curve_lin_index(c)
    definitional = curve_linear_index(c)
    notes = []
    lin = kollar
    if definitional is not None and definitional != kollar:
        notes.append(
            f"discrepancy: the cited formula gcd(ind, 1 - rho_a) gives {kollar}, while the gcd "
            f"of χ(L) = deg L + 1 - p_a over line bundles on X gives {definitional}; the two "
            "readings of rho_a disagree, both values are reported")
        lin = math.lcm(kollar, definitional)
        notes.append(f"index conclusion uses lcm = {lin}, which bounds ind(X) under either reading")
    st = index_conclusion(None, lin, doc.field)
    out = {
        "name": doc.name, "kind": "curve", "field": _field_dict(doc),
        "curve": {"ind": c.ind, "rho_a": c.rho_a, "has_rational_point": c.has_rational_point,
                  "arithmetic_genus": c.arithmetic_genus, "pic_degree": c.pic_degree},
        "kollar_lin_index": kollar, "definitional_lin_index": definitional,
        "verdict": "curve mode: the surface criterion is not run",
        "index_conclusion": _conclusion_dict(st), "notes": notes,
    }
    return out, EXIT_NOT_SATISFIED


def run_check(doc: VarietyDocument, bound: Optional[int] = None) -> tuple[dict, int]:
    """Report dictionary and exit status (0 satisfied, 1 not satisfied or inconclusive)."""
    bound = bound or doc.bound or DEFAULT_BOUND
    if doc.kind == "curve":
        return _curve_report(doc)
    return _surface_report(doc, bound)


def _jsonable(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, int) and not isinstance(x, bool):
        return _jint(x)
    return x


def render_json(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _fmt(v: Any) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if v is None:
        return "-"
    return str(v)


def render_text(report: dict) -> str:
    lines = [f"{report['name']} ({report['kind']})"]
    f = report["field"]
    lines.append(f"  field: {f['kind']}, residue char {f['residue_char']}, "
                 f"Brauer-trivial {_fmt(f['brauer_trivial'])}")
    if report["kind"] == "curve":
        c = report["curve"]
        lines.append(f"  curve: ind {c['ind']}, rho_a {c['rho_a']}, p_a {_fmt(c['arithmetic_genus'])}, "
                     f"Pic degree {_fmt(c['pic_degree'])}")
        lines.append(f"  linear index (cited formula): {report['kollar_lin_index']}")
        lines.append(f"  linear index (definition):    {_fmt(report['definitional_lin_index'])}")
    else:
        lines.append("  hypotheses:")
        for k, v in report["hypotheses"].items():
            lines.append(f"    {k}: {_fmt(v)}")
        lines.append("  degrees: " + ", ".join(f"{n}={d}" for n, d in report["degrees"].items()))
        c1, c2 = report["condition_1"], report["condition_2"]
        lines.append(f"  condition (1): {_fmt(c1['holds'])} (gcd of degrees {c1['degree_gcd']})")
        lines.append(f"  condition (2): {_fmt(c2['holds'])} ({c2['outcome']}; {c2['note']})")
        if c2["witness"] is not None:
            lines.append(f"    witness of order {c2['order']}: {c2['witness']}")
        for n, P in report["hilbert_polynomials"].items():
            lines.append(f"  χ({n}(n)) = {P}")
        lines.append(f"  gcd of χ(L_i(n)): {report['chi_gcd']}")
        lines.append(f"  linear index over <{', '.join(report['descended'])}>: {report['linear_index']}")
    lines.append(f"  verdict: {report['verdict']}")
    ic = report["index_conclusion"]
    lines.append(f"  index conclusion: {ic['claim']}")
    for step in ic["justification"]:
        lines.append(f"    - {step}")
    for note in report["notes"]:
        lines.append(f"  note: {note}")
    return "\n".join(lines) + "\n"
