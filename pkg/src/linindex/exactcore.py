"""Exact integer and integer-valued polynomial arithmetic.

Everything here works over Python ints and :class:`fractions.Fraction`;
there is no floating point anywhere. Polynomials are kept in the monomial
basis and converted to the binomial (Newton) basis on demand, which is the
basis in which integer-valuedness and value gcds become visible::

    P(t) = sum_k c_k * C(t, k),   c_k = (Delta^k P)(0)

``P`` takes integer values at every integer iff every ``c_k`` is an integer,
and the gcd of all values ``P(n)`` equals ``gcd(c_0, ..., c_m)``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from sympy import isprime

Number = Union[int, Fraction, str]


def _frac(x: Number) -> Fraction:
    if isinstance(x, float):
        raise TypeError("floating point coefficients are not accepted")
    return Fraction(x)


def gcd_all(values: Iterable[int]) -> int:
    """Nonnegative generator of the ideal spanned by ``values`` (0 if empty)."""
    return math.gcd(*(int(v) for v in values))


def prime_to_p_part(n: int, p: int) -> int:
    """Largest divisor of ``n`` that is coprime to the prime ``p``."""
    if n < 1:
        raise ValueError(f"prime_to_p_part needs n >= 1, got {n}")
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    while n % p == 0:
        n //= p
    return n


def binomial(x: int, k: int) -> int:
    """Generalized binomial C(x, k) = x(x-1)...(x-k+1)/k!, valid for negative x."""
    if k < 0:
        return 0
    num = 1
    for i in range(k):
        num *= x - i
    return num // math.factorial(k)


@dataclass(frozen=True)
class NumericalPolynomial:
    """Univariate polynomial with exact rational coefficients, lowest degree first.

    Trailing zeros are stripped, so the zero polynomial has no coefficients
    and degree 0.
    """

    coefficients: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [_frac(c) for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @classmethod
    def constant(cls, c: Number) -> NumericalPolynomial:
        return cls((c,))

    @classmethod
    def from_newton(cls, newton: Sequence[Number]) -> NumericalPolynomial:
        """Rebuild ``sum_k newton[k] * C(t, k)`` in the monomial basis."""
        result = cls()
        falling = cls((1,))  # t(t-1)...(t-k+1)
        for k, c in enumerate(newton):
            result = result + falling * (_frac(c) / math.factorial(k))
            falling = falling * cls((-k, 1))
        return result

    @property
    def degree(self) -> int:
        return max(len(self.coefficients) - 1, 0)

    @property
    def leading_coefficient(self) -> Fraction:
        return self.coefficients[-1] if self.coefficients else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coefficients

    def __call__(self, t: Number) -> Fraction:
        t = _frac(t)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def __add__(self, other: NumericalPolynomial) -> NumericalPolynomial:
        a, b = self.coefficients, other.coefficients
        n = max(len(a), len(b))
        a = a + (Fraction(0),) * (n - len(a))
        b = b + (Fraction(0),) * (n - len(b))
        return NumericalPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> NumericalPolynomial:
        return NumericalPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: NumericalPolynomial) -> NumericalPolynomial:
        return self + (-other)

    def __mul__(self, other: Union[NumericalPolynomial, Number]) -> NumericalPolynomial:
        if not isinstance(other, NumericalPolynomial):
            c = _frac(other)
            return NumericalPolynomial(tuple(c * x for x in self.coefficients))
        if self.is_zero() or other.is_zero():
            return NumericalPolynomial()
        out = [Fraction(0)] * (len(self.coefficients) + len(other.coefficients) - 1)
        for i, x in enumerate(self.coefficients):
            for j, y in enumerate(other.coefficients):
                out[i + j] += x * y
        return NumericalPolynomial(tuple(out))

    __rmul__ = __mul__

    def shift(self, k: Number = 1) -> NumericalPolynomial:
        """Return t -> P(t + k)."""
        result = NumericalPolynomial()
        power = NumericalPolynomial((1,))
        step = NumericalPolynomial((k, 1))
        for c in self.coefficients:
            result = result + power * c
            power = power * step
        return result

    def is_integer_valued(self) -> bool:
        try:
            newton_coefficients(self)
        except ValueError:
            return False
        return True

    def __str__(self) -> str:
        if self.is_zero():
            return "0"
        terms = []
        for k in range(len(self.coefficients) - 1, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                var = "n" if k == 1 else f"n^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def finite_difference(P: NumericalPolynomial) -> NumericalPolynomial:
    """Forward difference P(t+1) - P(t)."""
    return P.shift(1) - P


def iterated_difference(P: NumericalPolynomial, j: int) -> NumericalPolynomial:
    if j < 0:
        raise ValueError("difference order must be nonnegative")
    for _ in range(j):
        P = finite_difference(P)
    return P


def newton_coefficients(P: NumericalPolynomial) -> list[int]:
    """Coordinates ``[Delta^0 P(0), ..., Delta^m P(0)]`` in the binomial basis.

    Raises ValueError if any of them is not an integer, i.e. if ``P`` is not
    integer-valued.
    """
    row = [P(n) for n in range(P.degree + 1)]
    out = []
    while row:
        out.append(row[0])
        row = [b - a for a, b in zip(row, row[1:])]
    if any(c.denominator != 1 for c in out):
        raise ValueError(f"polynomial {P} is not integer-valued")
    return [int(c) for c in out]


def value_gcd(P: NumericalPolynomial) -> int:
    """gcd of P(n) over all integers n."""
    return gcd_all(newton_coefficients(P))


@dataclass(frozen=True)
class MultiPolynomial:
    """Polynomial in several variables: exponent tuple -> exact coefficient."""

    nvars: int
    terms: tuple[tuple[tuple[int, ...], Fraction], ...] = ()

    @classmethod
    def from_dict(cls, nvars: int, terms: Mapping[tuple[int, ...], Number]) -> MultiPolynomial:
        cleaned = {}
        for exps, c in terms.items():
            if len(exps) != nvars:
                raise ValueError(f"exponent {exps} does not have {nvars} entries")
            c = _frac(c)
            if c:
                cleaned[tuple(exps)] = cleaned.get(tuple(exps), Fraction(0)) + c
        return cls(nvars, tuple(sorted((e, c) for e, c in cleaned.items() if c)))

    def degrees(self) -> tuple[int, ...]:
        """Degree in each variable separately."""
        degs = [0] * self.nvars
        for exps, _ in self.terms:
            degs = [max(d, e) for d, e in zip(degs, exps)]
        return tuple(degs)

    def __call__(self, *point: Number) -> Fraction:
        if len(point) != self.nvars:
            raise ValueError(f"expected {self.nvars} arguments, got {len(point)}")
        xs = [_frac(x) for x in point]
        total = Fraction(0)
        for exps, c in self.terms:
            term = c
            for x, e in zip(xs, exps):
                term *= x**e
            total += term
        return total


def _product_newton(P: MultiPolynomial) -> dict[tuple[int, ...], Fraction]:
    degs = P.degrees()
    grid = {pt: P(*pt) for pt in itertools.product(*(range(d + 1) for d in degs))}
    # difference along one axis at a time; afterwards grid[k] = Delta^k P(0)
    for axis in range(len(degs)):
        new = {}
        for pt in grid:
            k = pt[axis]
            acc = Fraction(0)
            for i in range(k + 1):
                q = pt[:axis] + (i,) + pt[axis + 1:]
                acc += (-1) ** (k - i) * math.comb(k, i) * grid[q]
            new[pt] = acc
        grid = new
    return grid


def multi_value_gcd(P: MultiPolynomial) -> int:
    """gcd of P over all integer points, via the product-binomial basis."""
    coeffs = _product_newton(P)
    if any(c.denominator != 1 for c in coeffs.values()):
        raise ValueError("polynomial is not integer-valued")
    return gcd_all([int(c) for c in coeffs.values()])
