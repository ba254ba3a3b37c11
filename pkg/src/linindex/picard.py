"""Picard lattices of surfaces: intersection numbers, Riemann-Roch, Hilbert polynomials.

A :class:`PicardLattice` is a free lattice with an integral intersection
form, the class of the canonical divisor, ``chi(O_X)`` and a distinguished
ample class ``H``. Line bundle classes are plain integer tuples in the
lattice basis. On a surface,

    chi(D) = chi(O_X) + D.(D - K) / 2

and the Hilbert polynomial of ``D`` is ``n -> chi(D + nH)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence

from .exactcore import NumericalPolynomial, binomial, gcd_all
from .intmat import IntMatrix, as_matrix, bilinear, det, matmul, matvec, transpose, unimodular_inverse

LineBundleClass = tuple[int, ...]


class ParityError(ValueError):
    """D.(D - K) is odd, so the form and canonical class cannot come from a surface."""


@dataclass(frozen=True)
class PicardLattice:
    gram: IntMatrix
    canonical: LineBundleClass
    chi_O: int
    ample: LineBundleClass
    dim: int = 2
    h1_O_zero: bool = True
    labels: tuple[str, ...] = ()
    classes: tuple[tuple[str, LineBundleClass], ...] = field(default=())

    def __post_init__(self) -> None:
        gram = as_matrix(self.gram)
        r = len(gram)
        object.__setattr__(self, "gram", gram)
        object.__setattr__(self, "canonical", tuple(int(x) for x in self.canonical))
        object.__setattr__(self, "ample", tuple(int(x) for x in self.ample))
        object.__setattr__(self, "classes", tuple((n, tuple(int(x) for x in c)) for n, c in self.classes))
        if r == 0:
            raise ValueError("lattice rank must be positive")
        if any(len(row) != r for row in gram):
            raise ValueError("gram matrix is not square")
        if gram != transpose(gram):
            raise ValueError("gram not symmetric")
        if len(self.canonical) != r:
            raise ValueError(f"canonical class has length {len(self.canonical)}, expected {r}")
        if len(self.ample) != r:
            raise ValueError(f"ample class has length {len(self.ample)}, expected {r}")
        if not any(self.ample):
            raise ValueError("ample class is zero")
        if self.labels and len(self.labels) != r:
            raise ValueError("one label per basis element is required")
        for name, c in self.classes:
            if len(c) != r:
                raise ValueError(f"class {name!r} has length {len(c)}, expected {r}")
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        if self.dim == 2 and bilinear(gram, self.ample, self.ample) <= 0:
            raise ValueError("ample class must have positive self-intersection")

    @property
    def rank(self) -> int:
        return len(self.gram)

    @property
    def ample_index(self) -> Optional[int]:
        """Position of H in the basis, or None when H is not a basis vector."""
        if sorted(self.ample) == [0] * (self.rank - 1) + [1]:
            return self.ample.index(1)
        return None

    def basis_vector(self, i: int) -> LineBundleClass:
        return tuple(int(i == j) for j in range(self.rank))

    def named(self, name: str) -> LineBundleClass:
        for n, c in self.classes:
            if n == name:
                return c
        if name in self.labels:
            return self.basis_vector(self.labels.index(name))
        raise KeyError(name)

    def intersect(self, x: Sequence[int], y: Sequence[int]) -> int:
        self._check(x)
        self._check(y)
        return bilinear(self.gram, x, y)

    def _check(self, c: Sequence[int]) -> None:
        if len(c) != self.rank:
            raise ValueError(f"class of length {len(c)} used with a rank {self.rank} lattice")

    def _require_surface(self) -> None:
        if self.dim != 2:
            raise ValueError(f"intersection-theoretic chi needs a surface, lattice has dim {self.dim}")


def degree(lat: PicardLattice, c: Sequence[int]) -> int:
    """Degree of ``c`` with respect to the ample class, ``c.H``."""
    lat._require_surface()
    return lat.intersect(c, lat.ample)


def _half_riemann_roch(lat: PicardLattice, c: Sequence[int]) -> int:
    twice = lat.intersect(c, tuple(a - k for a, k in zip(c, lat.canonical)))
    if twice % 2:
        raise ParityError(f"D.(D-K) = {twice} is odd for D = {tuple(c)}")
    return twice // 2


def chi(lat: PicardLattice, c: Sequence[int]) -> int:
    lat._require_surface()
    return lat.chi_O + _half_riemann_roch(lat, c)


def hilbert_polynomial(lat: PicardLattice, c: Sequence[int]) -> NumericalPolynomial:
    """n -> chi(c + nH), exactly; degree 2 with leading coefficient H^2/2."""
    lat._require_surface()
    H, K = lat.ample, lat.canonical
    _half_riemann_roch(lat, c)  # parity check on c itself
    _half_riemann_roch(lat, H)
    const = chi(lat, c)
    linear = Fraction(2 * lat.intersect(c, H) - lat.intersect(K, H), 2)
    quad = Fraction(lat.intersect(H, H), 2)
    return NumericalPolynomial((const, linear, quad))


def twist_difference(lat: PicardLattice, c: Sequence[int]) -> NumericalPolynomial:
    """Q(n) = chi(c + nH) - chi(nH)."""
    zero = (0,) * lat.rank
    return hilbert_polynomial(lat, c) - hilbert_polynomial(lat, zero)


def is_primitive(lat: PicardLattice, c: Sequence[int]) -> bool:
    """True iff ``c`` is not a proper multiple ``n*c0`` with ``|n| >= 2``."""
    lat._check(c)
    if not any(c):
        raise ValueError("the zero class has no primitivity")
    return gcd_all(c) == 1


def change_basis(
    lat: PicardLattice, U: Sequence[Sequence[int]], labels: Sequence[str] = ()
) -> PicardLattice:
    """Re-express ``lat`` in the basis given by the columns of ``U``.

    Column ``j`` of ``U`` holds the old coordinates of the new ``j``-th basis
    vector, so the Gram matrix becomes ``U^T G U`` and every stored class ``x``
    becomes ``U^{-1} x``.
    """
    U = as_matrix(U)
    if len(U) != lat.rank or abs(det(U)) != 1:
        raise ValueError("change of basis must be a unimodular matrix of the lattice rank")
    Uinv = unimodular_inverse(U)
    return replace(
        lat,
        gram=matmul(matmul(transpose(U), lat.gram), U),
        canonical=matvec(Uinv, lat.canonical),
        ample=matvec(Uinv, lat.ample),
        labels=tuple(labels),
        classes=tuple((n, matvec(Uinv, c)) for n, c in lat.classes),
    )


def _p3_chi_O(e: int) -> int:
    # h^2(O_X) = h^0(O(e-4)) for a degree e surface in P^3
    return binomial(e - 1, 3) + 1


def build_corpus_lattice(name: str, e: Optional[int] = None) -> PicardLattice:
    """Lattices of the worked surface examples.

    ``surface_p3``  rank 1, a degree ``e`` surface in P^3 with Pic = <H>.
    ``quartic_k3``  same as ``surface_p3`` with ``e = 4``.
    ``nl_surface``  rank 2, basis (L, H): a degree ``e >= 5`` surface
                    F1*X1 + F2*X2 = 0 containing the line L = {X1 = X2 = 0}.
    ``quadric_R``   rank 2, basis (L1, L2) of the two rulings, H = L1 + L2.
    """
    if name == "quartic_k3":
        name, e = "surface_p3", 4
    if name == "surface_p3":
        if e is None or e < 1:
            raise ValueError(f"surface_p3 needs a degree e >= 1, got {e}")
        return PicardLattice(
            gram=((e,),), canonical=(e - 4,), chi_O=_p3_chi_O(e), ample=(1,),
            labels=("H",),
        )
    if name == "nl_surface":
        if e is None or e < 5:
            raise ValueError(f"nl_surface needs a degree e >= 5, got {e}")
        # adjunction on the line: L^2 + L.K = -2 with K = (e-4)H
        return PicardLattice(
            gram=((2 - e, 1), (1, e)), canonical=(0, e - 4), chi_O=_p3_chi_O(e), ample=(0, 1),
            labels=("L", "H"),
        )
    if name == "quadric_R":
        return PicardLattice(
            gram=((0, 1), (1, 0)), canonical=(-2, -2), chi_O=1, ample=(1, 1),
            labels=("L1", "L2"), classes=(("H", (1, 1)),),
        )
    raise ValueError(f"unknown corpus lattice {name!r}")


def quadric_in_ample_basis() -> PicardLattice:
    """quadric_R rewritten in the basis (L1, H = L1 + L2)."""
    return change_basis(build_corpus_lattice("quadric_R"), ((1, 1), (0, 1)), labels=("L1", "H"))


def generators_form_basis(gens: Sequence[Sequence[int]]) -> bool:
    if not gens or any(len(g) != len(gens) for g in gens):
        return False
    return abs(det(transpose(as_matrix(gens)))) == 1

