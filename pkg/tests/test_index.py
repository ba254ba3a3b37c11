import itertools
import math

import pytest

from linindex.descent import theorem_check
from linindex.exactcore import binomial, prime_to_p_part
from linindex.index import (
    FIELD_KINDS, CurveData, FieldProfile, curve_linear_index, index_conclusion, kollar_curve_lin_index,
    linear_index,
)
from linindex.picard import ParityError, build_corpus_lattice, chi

SATISFIED_REPORT = theorem_check(build_corpus_lattice("nl_surface", 5), [(1, 0), (0, 1)])
FAILED_REPORT = theorem_check(build_corpus_lattice("quartic_k3"), [(1,)])


def brute_linear_index(lat, classes, window=5):
    vals = []
    for coeffs in itertools.product(range(-window, window + 1), repeat=len(classes)):
        D = tuple(sum(a * c[i] for a, c in zip(coeffs, classes)) for i in range(lat.rank))
        vals.append(chi(lat, D))
    return math.gcd(*vals)


def test_linear_index_quadric_invariant_sublattice():
    q = build_corpus_lattice("quadric_R")
    assert linear_index(q, [q.named("H")]) == 1
    assert linear_index(q, [(1, 0), (0, 1)]) == 1


def test_linear_index_quartic():
    assert linear_index(build_corpus_lattice("quartic_k3"), [(1,)]) == 2


@pytest.mark.parametrize("e", range(1, 12))
def test_linear_index_surface_p3_matches_oracle(e):
    lat = build_corpus_lattice("surface_p3", e)
    oracle = math.gcd(*(binomial(a + 3, 3) - binomial(a + 3 - e, 3) for a in range(-30, 31)))
    assert linear_index(lat, [(1,)]) == oracle


@pytest.mark.parametrize("name, e", [("nl_surface", 5), ("nl_surface", 8), ("quadric_R", None)])
def test_linear_index_matches_window(name, e):
    lat = build_corpus_lattice(name, e)
    for classes in ([(1, 0), (0, 1)], [lat.ample], [(2, 1)], [(1, 1), (0, 3)]):
        assert linear_index(lat, classes) == brute_linear_index(lat, classes)


def test_linear_index_shrinks_on_larger_sublattices():
    lat = build_corpus_lattice("nl_surface", 6)
    small = linear_index(lat, [(0, 2)])
    assert small % linear_index(lat, [(0, 1)]) == 0
    assert linear_index(lat, [(0, 1)]) % linear_index(lat, [(1, 0), (0, 1)]) == 0


def test_linear_index_errors():
    lat = build_corpus_lattice("quadric_R")
    with pytest.raises(ValueError):
        linear_index(lat, [])
    from linindex.picard import PicardLattice
    odd = PicardLattice(gram=((1,),), canonical=(0,), chi_O=1, ample=(1,))
    with pytest.raises(ParityError):
        linear_index(odd, [(1,)])


@pytest.mark.parametrize("ind, rho_a, expected", [(2, 1, 2), (1, 5, 1), (1, -3, 1), (3, 0, 1)])
def test_kollar_curve_lin_index(ind, rho_a, expected):
    assert kollar_curve_lin_index(CurveData(ind, rho_a)) == expected


def test_curve_linear_index_definitional():
    assert curve_linear_index(CurveData(2, 1, arithmetic_genus=0, pic_degree=2)) == 1
    assert curve_linear_index(CurveData(2, 1)) is None
    # genus 3 curve with only even-degree bundles: chi = 2k - 2
    assert curve_linear_index(CurveData(2, 1, arithmetic_genus=3, pic_degree=2)) == 2


def test_curve_data_validation():
    with pytest.raises(ValueError):
        CurveData(2, 0, has_rational_point=True)
    with pytest.raises(ValueError):
        CurveData(0, 0)


def test_field_profile_validation():
    with pytest.raises(ValueError):
        FieldProfile(residue_char=6)
    with pytest.raises(ValueError):
        FieldProfile(c1=True, brauer_trivial=False)
    with pytest.raises(ValueError):
        FieldProfile(kind="p-adic")


def test_index_conclusion_examples():
    char0 = FieldProfile("henselian_dvr_fraction", 0, True, True, c1=True)
    charp = FieldProfile("henselian_dvr_fraction", 5, True, True, c1=True)
    reals = FieldProfile("real_numbers", 0, False)
    assert index_conclusion(SATISFIED_REPORT, 1, char0).claim == "ind(X) = 1"
    assert index_conclusion(SATISFIED_REPORT, 1, charp).claim == "prime-to-p part of ind(X) = 1"
    st = index_conclusion(SATISFIED_REPORT, 1, reals)
    assert st.claim == "no conclusion"
    assert any("no conclusion from descent" in s for s in st.justification)


def test_quartic_over_residue_char_two_is_vacuous():
    field = FieldProfile("henselian_dvr_fraction", 2, True, True)
    st = index_conclusion(FAILED_REPORT, 2, field)
    assert prime_to_p_part(2, 2) == 1
    assert st.claim == "prime-to-p part of ind(X) = 1"
    st = index_conclusion(FAILED_REPORT, 2, FieldProfile("henselian_dvr_fraction", 0, True, True))
    assert st.claim == "ind(X) divides 2"


@pytest.mark.parametrize("kind, p, bt, rac, lin, report", list(itertools.product(
    FIELD_KINDS, (0, 2, 3), (False, True), (False, True), (0, 1, 2, 6),
    (None, SATISFIED_REPORT, FAILED_REPORT))))
def test_index_conclusion_never_overclaims(kind, p, bt, rac, lin, report):
    field = FieldProfile(kind, p, bt, rac)
    st = index_conclusion(report, lin, field)
    henselian = kind == "henselian_dvr_fraction" and rac
    descended_one = bt and report is not None and report.satisfied
    effective = 1 if descended_one else lin
    if st.claim == "ind(X) = 1":
        assert henselian and p == 0 and effective == 1
    if st.claim == "prime-to-p part of ind(X) = 1":
        assert henselian and p > 0 and effective >= 1 and prime_to_p_part(effective, p) == 1
    if not henselian:
        assert st.claim == "no conclusion"
