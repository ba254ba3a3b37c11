"""Linear index and the index conclusions it licenses over a given base field."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from sympy import isprime

from .descent import CriterionReport
from .exactcore import MultiPolynomial, NumericalPolynomial, multi_value_gcd, prime_to_p_part, value_gcd
from .picard import ParityError, PicardLattice

FIELD_KINDS = ("henselian_dvr_fraction", "real_numbers", "other")


@dataclass(frozen=True)
class FieldProfile:
    """What is known about the base field K.

    ``brauer_trivial`` is the only input the descent step uses: when Br(K)
    vanishes, every Galois-invariant class over the algebraic closure comes
    from a line bundle on X. A C1 field always has trivial Brauer group.
    """

    kind: str = "other"
    residue_char: int = 0
    brauer_trivial: bool = False
    residue_alg_closed: bool = False
    c1: bool = False

    def __post_init__(self) -> None:
        if self.kind not in FIELD_KINDS:
            raise ValueError(f"field kind must be one of {FIELD_KINDS}, got {self.kind!r}")
        if self.residue_char != 0 and not isprime(self.residue_char):
            raise ValueError("residue characteristic must be 0 or prime")
        if self.c1 and not self.brauer_trivial:
            raise ValueError("a C1 field has trivial Brauer group; set brauer_trivial")


@dataclass(frozen=True)
class IndexStatement:
    lin_index: Optional[int]
    claim: str
    justification: tuple[str, ...] = ()


@dataclass(frozen=True)
class CurveData:
    """A curve given by numbers only.

    ``rho_a`` enters the cited gcd formula. ``arithmetic_genus`` and
    ``pic_degree`` (positive generator of the degrees of line bundles on X)
    are optional and feed the definitional computation.
    """

    ind: int
    rho_a: int
    has_rational_point: bool = False
    arithmetic_genus: Optional[int] = None
    pic_degree: Optional[int] = None

    def __post_init__(self) -> None:
        if self.ind < 1:
            raise ValueError("index must be positive")
        if self.has_rational_point and self.ind != 1:
            raise ValueError("a curve with a rational point has index 1")
        if self.pic_degree is not None and self.pic_degree < 1:
            raise ValueError("pic_degree must be positive")


def chi_polynomial(lat: PicardLattice, classes: Sequence[Sequence[int]]) -> MultiPolynomial:
    """(a_1, ..., a_s) -> chi(a_1 D_1 + ... + a_s D_s) by Riemann-Roch."""
    lat._require_surface()
    s = len(classes)
    K = lat.canonical
    terms: dict[tuple[int, ...], Fraction | int] = {(0,) * s: lat.chi_O}

    def unit(*idx: int) -> tuple[int, ...]:
        e = [0] * s
        for i in idx:
            e[i] += 1
        return tuple(e)

    for i, Di in enumerate(classes):
        terms[unit(i)] = Fraction(-lat.intersect(Di, K), 2)
        terms[unit(i, i)] = Fraction(lat.intersect(Di, Di), 2)
        for j in range(i + 1, s):
            terms[unit(i, j)] = lat.intersect(Di, classes[j])
    return MultiPolynomial.from_dict(s, terms)


def linear_index(lat: PicardLattice, descended: Sequence[Sequence[int]]) -> int:
    """gcd of chi over every line bundle in the sublattice spanned by ``descended``."""
    if not descended:
        raise ValueError("descended sublattice needs at least one generator")
    for D in descended:
        lat._check(D)
    try:
        return multi_value_gcd(chi_polynomial(lat, descended))
    except ValueError as exc:
        raise ParityError(f"chi is not integer-valued on the sublattice: {exc}") from exc


def kollar_curve_lin_index(c: CurveData) -> int:
    return math.gcd(c.ind, 1 - c.rho_a)


def curve_linear_index(c: CurveData) -> Optional[int]:
    """gcd of chi(L) = deg L + 1 - p_a over line bundles on the curve, if known."""
    if c.arithmetic_genus is None or c.pic_degree is None:
        return None
    return value_gcd(NumericalPolynomial((1 - c.arithmetic_genus, c.pic_degree)))


def index_conclusion(report: Optional[CriterionReport], lin: int, field: FieldProfile) -> IndexStatement:
    """Combine the criterion verdict, a computed linear index and the field profile."""
    steps = []
    if field.brauer_trivial and report is not None and report.satisfied:
        lin = 1
        steps.append("Br(K) = 0, so every G-invariant L_i descends to X; "
                     "gcd of χ(L_i(n)) = 1 gives ind_lin(X) = 1")
    henselian = field.kind == "henselian_dvr_fraction" and field.residue_alg_closed
    if not henselian:
        if report is not None and report.satisfied and not field.brauer_trivial:
            steps.append("Br(K) may be nonzero: no conclusion from descent")
        steps.append("K is not the fraction field of a Henselian DVR with "
                     "algebraically closed residue field")
        return IndexStatement(lin or None, "no conclusion", tuple(steps))
    if lin == 0:
        steps.append("every χ vanishes, so ind_lin(X) = 0 bounds nothing")
        return IndexStatement(None, "no conclusion", tuple(steps))
    p = field.residue_char
    if p == 0:
        steps.append(f"residue characteristic 0: ind(X) divides ind_lin(X) = {lin}")
        claim = "ind(X) = 1" if lin == 1 else f"ind(X) divides {lin}"
    else:
        part = prime_to_p_part(lin, p)
        steps.append(f"residue characteristic {p}: prime-to-{p} part of ind(X) divides "
                     f"prime-to-{p} part of ind_lin(X) = {part}")
        claim = "prime-to-p part of ind(X) = 1" if part == 1 else f"prime-to-p part of ind(X) divides {part}"
    return IndexStatement(lin, claim, tuple(steps))
