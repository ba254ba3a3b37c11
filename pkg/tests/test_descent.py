import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from linindex.descent import (
    SATISFIED, GaloisActionMatrix, HilbertData, admissible_orders, condition_one, matrix_order,
    matrix_power_rank2, stabilizer_torsion_search, theorem_check,
)
from linindex.exactcore import NumericalPolynomial
from linindex.intmat import identity, matmul, matvec
from linindex.picard import PicardLattice, build_corpus_lattice, quadric_in_ample_basis

G = GaloisActionMatrix


def brute_rank2_witnesses(span=50, max_order=12):
    """All [[a0, a1], [0, 1]] != Id of finite order <= max_order, by repeated multiplication."""
    found = []
    I = identity(2)
    for a0, a1 in itertools.product(range(-span, span + 1), repeat=2):
        A = ((a0, a1), (0, 1))
        if A == I:
            continue
        power = A
        for t in range(1, max_order + 1):
            if power == I:
                found.append((A, t))
                break
            power = matmul(power, A)
    return found


def test_matrix_order_examples():
    assert matrix_order(G(identity(2))) == 1
    assert matrix_order(G(((-1, 3), (0, 1)))) == 2
    assert matrix_order(G(((1, 1), (0, 1)))) is None


def test_matrix_order_rank3_order_six():
    # the 2x2 block has order 6 (a primitive sixth root of unity)
    A = G(((1, -1, 0), (1, 0, 0), (0, 0, 1)))
    assert matrix_order(A) == 6


def test_admissible_orders():
    assert admissible_orders(1) == [1, 2]
    assert admissible_orders(2) == [1, 2, 3, 4]
    assert 6 in admissible_orders(3) and 12 in admissible_orders(4)


def test_action_matrix_requires_last_row():
    with pytest.raises(ValueError):
        G(((1, 0), (1, 1)))


def test_matrix_power_rank2_examples():
    assert matrix_power_rank2(-1, 3, 2) == identity(2)
    assert matrix_power_rank2(1, 1, 3) == ((1, 3), (0, 1))
    assert matrix_power_rank2(2, 0, 3) == ((8, 0), (0, 1))


@given(st.integers(-10, 10), st.integers(-10, 10), st.integers(1, 10))
def test_matrix_power_rank2_matches_multiplication(a0, a1, b):
    A = ((a0, a1), (0, 1))
    power = A
    for _ in range(b - 1):
        power = matmul(power, A)
    assert matrix_power_rank2(a0, a1, b) == power


def test_condition_one():
    assert condition_one([1, 5])
    assert not condition_one([2, 4])
    assert not condition_one([4])
    with pytest.raises(ValueError):
        condition_one([])


def test_search_examples():
    out = stabilizer_torsion_search((1, 5))
    assert out.kind == "exactly_none" and out.condition_holds
    out = stabilizer_torsion_search((1, 2))
    assert out.witness == G(((-1, 1), (0, 1))) and out.order == 2
    out = stabilizer_torsion_search((0, 1))
    assert out.witness == G(((-1, 0), (0, 1)))
    assert stabilizer_torsion_search((7,)).condition_holds


@pytest.mark.parametrize("d", [(), (1, 0), (1, -2)])
def test_search_rejects_bad_degrees(d):
    with pytest.raises(ValueError):
        stabilizer_torsion_search(d)


def test_rank2_matches_brute_force():
    witnesses = brute_rank2_witnesses()
    for d1 in range(-20, 21):
        for d2 in range(1, 21):
            d = (d1, d2)
            fixing = sorted((A, t) for A, t in witnesses if matvec(A, d) == d)
            out = stabilizer_torsion_search(d)
            if fixing:
                assert out.kind == "found_witness"
                assert (out.witness.entries, out.order) == fixing[0]
            else:
                assert out.kind == "exactly_none"


def check_witness(out, d):
    A = out.witness
    assert out.kind == "found_witness"
    assert not A.is_identity()
    assert A.entries[-1] == (0,) * (A.rank - 1) + (1,)
    assert (A**out.order).is_identity()
    assert matrix_order(A) == out.order
    assert A.fixes(d)


@pytest.mark.parametrize("d", [(1, 1, 5), (2, 3, 7), (0, 1, 1), (1, 0, 3), (3, 5, 4), (1, 7, 9)])
def test_rank3_always_has_a_witness(d):
    check_witness(stabilizer_torsion_search(d, bound=3), d)


def test_rank3_witness_is_lexicographically_smallest_within_bound():
    d, bound = (1, 1, 5), 2
    out = stabilizer_torsion_search(d, bound)
    span = range(-bound, bound + 1)
    best = None
    for p in (2, 3):
        for e in itertools.product(span, repeat=4):
            B = (e[0:2], e[2:4])
            c = [(x - y) for x, y in zip(d[:2], matvec(B, d[:2]))]
            if any(v % d[2] for v in c):
                continue
            A = G.from_blocks(B, [v // d[2] for v in c])
            if not A.is_identity() and (A**p).is_identity() and A.fixes(d):
                best = (p, A)
                break
        if best:
            break
    assert (out.order, out.witness) == best


def test_large_rank_uses_reflection_witness():
    rng = random.Random(3)
    for r in (4, 5, 6):
        for _ in range(10):
            d = tuple(rng.randint(-30, 30) for _ in range(r - 1)) + (rng.randint(1, 30),)
            out = stabilizer_torsion_search(d, bound=10)
            check_witness(out, d)
            assert "reflection" in out.note


def test_prime_power_reduction_keeps_witnesses():
    # order-6 block fixing d' = 0, ample degree 1
    A = G(((1, -1, 0), (1, 0, 0), (0, 0, 1)))
    d = (0, 0, 1)
    assert A.fixes(d) and matrix_order(A) == 6
    for p in (2, 3):
        B = A ** (6 // p)
        assert B.fixes(d) and matrix_order(B) == p


def test_theorem_check_nl_surface():
    lat = build_corpus_lattice("nl_surface", 5)
    rep = theorem_check(lat, [(1, 0), (0, 1)], names=("L", "H"))
    assert rep.degrees == (1, 5)
    assert rep.condition_one and rep.condition_two.kind == "exactly_none"
    assert rep.chi_gcd == 1 and rep.satisfied and rep.verdict == SATISFIED


def test_theorem_check_quartic():
    rep = theorem_check(build_corpus_lattice("quartic_k3"), [(1,)])
    assert not rep.condition_one and rep.chi_gcd == 2 and not rep.satisfied


def test_theorem_check_quadric():
    rep = theorem_check(quadric_in_ample_basis(), [(1, 0), (0, 1)])
    assert rep.condition_one and rep.degrees == (1, 2)
    assert rep.condition_two.witness == G(((-1, 1), (0, 1)))
    assert not rep.satisfied


def test_theorem_check_reports_hypothesis_failures():
    lat = build_corpus_lattice("nl_surface", 5)
    rep = theorem_check(lat, [(0, 1), (1, 0)])
    assert "ample_is_last_generator" in rep.failed_hypotheses
    assert not rep.satisfied
    no_h1 = PicardLattice(lat.gram, lat.canonical, lat.chi_O, lat.ample, h1_O_zero=False)
    rep = theorem_check(no_h1, [(1, 0), (0, 1)])
    assert rep.failed_hypotheses == ["h1_O_zero"]
    with pytest.raises(ValueError):
        theorem_check(lat, [(1, 0)])


def test_theorem_check_with_supplied_hilbert_polynomials():
    # P^3 as a threefold: O(n) has Hilbert polynomial C(n+3, 3), generator H = O(1)
    P3 = NumericalPolynomial.from_newton([1, 3, 3, 1])
    lat = PicardLattice(((1,),), (-4,), 1, (1,), dim=3)
    rep = theorem_check(lat, [(1,)], hilbert=HilbertData(P3, (P3.shift(1),)))
    assert rep.degrees == (1,)
    assert rep.satisfied and rep.chi_gcd == 1
    with pytest.raises(ValueError):
        theorem_check(lat, [(1,)])
