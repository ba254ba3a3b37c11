"""Galois-invariance criterion for a Picard basis L_1, ..., L_r with L_r = H.

Condition (1) asks that the degrees ``d_i = deg L_i`` generate the unit
ideal. Condition (2) asks that no integer matrix

    A = [[B, c],
         [0, 1]]      A != Id,  A^t = Id for some t > 0

fixes the degree vector, ``A d = d``. Such an ``A`` is called a witness
below; condition (2) holds iff there is none.

Deciding condition (2)
----------------------
* rank 1: the only admissible matrix is the identity, so it always holds.
* rank 2: a witness must have ``B = -1`` and then ``A d = d`` reads
  ``c * d_2 = 2 * d_1``; a witness exists iff ``d_2 | 2 d_1``.
* rank >= 3: a witness always exists. Take a primitive ``w`` with
  ``w . d' = 0`` (``d'`` = first ``r - 1`` degrees) and ``u`` with
  ``w . u = 2``; the reflection ``B = I - u w^T`` is an involution fixing
  ``d'``, so ``c = 0`` works. The bounded search is still run to report the
  lexicographically smallest witness with small entries.

A witness of order ``t`` yields one of prime order ``p | t`` (its power
``A^(t/p)``), and ``B`` then has order ``p`` in ``GL_{r-1}(Z)``, forcing
``p - 1 <= r - 1``. Given ``B``, the column ``c = (I - B) d' / d_r`` is
forced, and ``(I + B + ... + B^(p-1)) c = 0`` holds automatically because
that sum annihilates ``I - B`` when ``B^p = I``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from sympy import primerange

from .exactcore import NumericalPolynomial, gcd_all, iterated_difference, value_gcd
from .intmat import IntMatrix, as_matrix, identity, matmul, matpow, matvec
from .picard import PicardLattice, degree, generators_form_basis, hilbert_polynomial, is_primitive

DEFAULT_BOUND = 10
# largest raw block search space (2*bound + 1) ** ((r - 1) ** 2) we enumerate
SEARCH_LIMIT = 2_000_000

SATISFIED = "criterion satisfied: every L_i is G-invariant and gcd of χ(L_i(n)) is 1"


@dataclass(frozen=True)
class GaloisActionMatrix:
    """Square integer matrix whose last row is (0, ..., 0, 1)."""

    entries: IntMatrix

    def __post_init__(self) -> None:
        A = as_matrix(self.entries)
        object.__setattr__(self, "entries", A)
        r = len(A)
        if r == 0 or any(len(row) != r for row in A):
            raise ValueError("action matrix must be square and nonempty")
        if A[-1] != identity(r)[-1]:
            raise ValueError(f"last row must be (0, ..., 0, 1), got {A[-1]}")

    @classmethod
    def from_blocks(cls, B: IntMatrix, c: Sequence[int]) -> GaloisActionMatrix:
        n = len(B)
        rows = [tuple(B[i]) + (c[i],) for i in range(n)]
        rows.append((0,) * n + (1,))
        return cls(tuple(rows))

    @property
    def rank(self) -> int:
        return len(self.entries)

    def is_identity(self) -> bool:
        return self.entries == identity(self.rank)

    def __pow__(self, k: int) -> GaloisActionMatrix:
        return GaloisActionMatrix(matpow(self.entries, k))

    def fixes(self, d: Sequence[int]) -> bool:
        return matvec(self.entries, d) == tuple(d)

    def tolist(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


def _prime_power_options(r: int) -> list[list[tuple[int, int]]]:
    """For each prime p <= r + 1, the (p^k, phi(p^k)) with phi(p^k) <= r."""
    options = []
    for p in primerange(2, r + 2):
        opts = []
        q = p
        while (phi := q - q // p) <= r:
            opts.append((q, phi))
            q *= p
        options.append(opts)
    return options


def admissible_orders(r: int) -> list[int]:
    """All m whose prime-power parts q satisfy sum(phi(q)) <= r, ascending.

    For a matrix with last row (0, ..., 0, 1) the order equals that of its
    upper-left block in GL_{r-1}(Z), and every finite order there lies in
    this list.
    """
    orders = []

    def walk(i: int, m: int, budget: int) -> None:
        if i == len(options):
            orders.append(m)
            return
        walk(i + 1, m, budget)
        for q, phi in options[i]:
            if phi <= budget:
                walk(i + 1, m * q, budget - phi)

    options = _prime_power_options(r)
    walk(0, 1, r)
    return sorted(orders)


def matrix_order(A: GaloisActionMatrix) -> Optional[int]:
    """Least t > 0 with A^t = Id, or None when A has infinite order."""
    for t in admissible_orders(A.rank):
        if (A**t).is_identity():
            return t
    return None


def matrix_power_rank2(a0: int, a1: int, b: int) -> IntMatrix:
    """[[a0, a1], [0, 1]] ** b via the geometric-sum closed form."""
    if b < 1:
        raise ValueError("exponent must be positive")
    return ((a0**b, a1 * sum(a0**k for k in range(b))), (0, 1))


def condition_one(degrees: Sequence[int]) -> bool:
    if not degrees:
        raise ValueError("condition (1) needs at least one degree")
    return gcd_all(degrees) == 1


@dataclass(frozen=True)
class TorsionSearchOutcome:
    """Result of the witness search for condition (2)."""

    kind: str  # "found_witness" or "exactly_none"
    witness: Optional[GaloisActionMatrix] = None
    order: Optional[int] = None
    note: str = ""

    @property
    def condition_holds(self) -> bool:
        return self.kind == "exactly_none"


def _reflection_witness(dp: Sequence[int]) -> IntMatrix:
    """An involution B != I of Z^n (n >= 2) with B d' = d'."""
    n = len(dp)
    for k, x in enumerate(dp):
        if x == 0:
            return tuple(tuple(-1 if i == j == k else int(i == j) for j in range(n)) for i in range(n))
    g = math.gcd(dp[0], dp[1])
    a, b = dp[0] // g, dp[1] // g
    # b*x - a*y = 1
    x = pow(b, -1, abs(a)) if abs(a) > 1 else 0
    y = (b * x - 1) // a
    w = (b, -a) + (0,) * (n - 2)
    u = (2 * x, 2 * y) + (0,) * (n - 2)
    return tuple(tuple(int(i == j) - u[i] * w[j] for j in range(n)) for i in range(n))


def _block_search(dp: tuple[int, ...], dr: int, p: int, bound: int) -> Optional[IntMatrix]:
    n = len(dp)
    span = range(-bound, bound + 1)
    row_choices = []
    for i in range(n):
        rows = [row for row in itertools.product(span, repeat=n)
                if (dp[i] - sum(a * x for a, x in zip(row, dp))) % dr == 0]
        if not rows:
            return None
        row_choices.append(rows)
    I = identity(n)
    for B in itertools.product(*row_choices):
        if B != I and matpow(B, p) == I:
            return B
    return None


def stabilizer_torsion_search(d: Sequence[int], bound: int = DEFAULT_BOUND) -> TorsionSearchOutcome:
    """Decide whether a witness against condition (2) exists for degrees ``d``.

    Reported witnesses are minimal in (order, flattened entries) among those
    whose block entries lie in [-bound, bound]; at rank >= 3 a reflection
    witness is constructed when the bounded search is skipped or empty.
    """
    d = tuple(int(x) for x in d)
    if not d:
        raise ValueError("degree vector is empty")
    if bound < 1:
        raise ValueError("search bound must be positive")
    r, dr = len(d), d[-1]
    if dr <= 0:
        raise ValueError(f"ample degree must be positive, got {dr}")
    if r == 1:
        return TorsionSearchOutcome("exactly_none", note="rank 1: only the identity is admissible")
    if r == 2:
        if (2 * d[0]) % dr:
            return TorsionSearchOutcome(
                "exactly_none", note=f"rank 2 closed form: {dr} does not divide 2*{d[0]}")
        A = GaloisActionMatrix(((-1, 2 * d[0] // dr), (0, 1)))
        return TorsionSearchOutcome("found_witness", A, 2, note="rank 2 closed form")

    dp, n = d[:-1], r - 1
    if (2 * bound + 1) ** (n * n) <= SEARCH_LIMIT:
        for p in primerange(2, r + 1):
            B = _block_search(dp, dr, p, bound)
            if B is not None:
                c = tuple((x - y) // dr for x, y in zip(dp, matvec(B, dp)))
                return TorsionSearchOutcome(
                    "found_witness", GaloisActionMatrix.from_blocks(B, c), p,
                    note=f"smallest witness with block entries in [-{bound}, {bound}]")
        note = f"no witness with block entries in [-{bound}, {bound}]; reflection witness constructed"
    else:
        note = f"block search with bound {bound} too large at rank {r}; reflection witness constructed"
    B = _reflection_witness(dp)
    return TorsionSearchOutcome(
        "found_witness", GaloisActionMatrix.from_blocks(B, (0,) * n), 2, note=note)


@dataclass(frozen=True)
class HilbertData:
    """User-supplied Hilbert polynomials for varieties that are not surfaces."""

    structure_sheaf: NumericalPolynomial
    generators: tuple[NumericalPolynomial, ...]


@dataclass(frozen=True)
class CriterionReport:
    generator_names: tuple[str, ...]
    hypotheses: tuple[tuple[str, bool], ...]
    degrees: tuple[int, ...]
    condition_one: bool
    condition_two: TorsionSearchOutcome
    chi_gcd: int
    satisfied: bool
    verdict: str
    hilbert_polynomials: tuple[NumericalPolynomial, ...] = field(default=())

    @property
    def failed_hypotheses(self) -> list[str]:
        return [name for name, ok in self.hypotheses if not ok]


def theorem_check(
    lat: PicardLattice,
    generators: Sequence[Sequence[int]],
    bound: int = DEFAULT_BOUND,
    names: Sequence[str] = (),
    hilbert: Optional[HilbertData] = None,
) -> CriterionReport:
    """Run both conditions on a generator list whose last entry is the ample class."""
    gens = [tuple(int(x) for x in g) for g in generators]
    if len(gens) != lat.rank:
        raise ValueError(f"need {lat.rank} generators, got {len(gens)}")
    for g in gens:
        lat._check(g)
    names = tuple(names) or tuple(f"L{i + 1}" for i in range(len(gens)))

    if lat.dim == 2:
        polys = tuple(hilbert_polynomial(lat, g) for g in gens)
        degrees = tuple(degree(lat, g) for g in gens)
    elif hilbert is not None and len(hilbert.generators) == len(gens):
        polys = hilbert.generators
        # Q_i = P_i - P_0 has degree d - 1 and D^{d-1} Q_i = deg L_i
        degrees = tuple(
            int(iterated_difference(P - hilbert.structure_sheaf, lat.dim - 1)(0)) for P in polys)
    else:
        raise ValueError(f"dim {lat.dim} lattices need Hilbert polynomials for every generator")

    hypotheses = (
        ("h1_O_zero", lat.h1_O_zero),
        ("ample_is_last_generator", gens[-1] == lat.ample),
        ("ample_primitive", is_primitive(lat, lat.ample)),
        ("generators_form_basis", generators_form_basis(gens)),
        ("ample_degree_positive", degrees[-1] > 0),
    )
    cond1 = condition_one(degrees)
    if degrees[-1] > 0:
        cond2 = stabilizer_torsion_search(degrees, bound)
    else:
        cond2 = TorsionSearchOutcome("found_witness", note="not searched: ample degree is not positive")
    chi_gcd = gcd_all([value_gcd(P) for P in polys])

    failed = [n for n, ok in hypotheses if not ok]
    satisfied = not failed and cond1 and cond2.condition_holds
    if satisfied:
        verdict = SATISFIED
        if chi_gcd != 1:
            raise AssertionError(f"both conditions hold but gcd of χ(L_i(n)) is {chi_gcd}")
    elif failed:
        verdict = "hypotheses not met: " + ", ".join(failed)
    else:
        broken = [label for label, ok in (("(1)", cond1), ("(2)", cond2.condition_holds)) if not ok]
        verdict = "criterion not satisfied: condition " + " and ".join(broken) + " fails"
    return CriterionReport(
        generator_names=names, hypotheses=hypotheses, degrees=degrees, condition_one=cond1,
        condition_two=cond2, chi_gcd=chi_gcd, satisfied=satisfied, verdict=verdict,
        hilbert_polynomials=polys,
    )
