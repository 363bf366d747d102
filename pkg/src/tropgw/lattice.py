"""Integer 2-vectors, cone predicates and exact rational helpers."""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from typing import NamedTuple


class Vec(NamedTuple):
    """An integer lattice vector ``(a, b)``.

    Used for edge derivatives of tropical curves (contact data) as well as
    for the incoming vector ``y``.
    """

    a: int
    b: int

    def __add__(self, other):  # type: ignore[override]
        return Vec(self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        return Vec(self.a - other.a, self.b - other.b)

    def __neg__(self):
        return Vec(-self.a, -self.b)

    def __repr__(self):
        return f"({self.a},{self.b})"

    def to_json(self) -> list[int]:
        return [self.a, self.b]

    @classmethod
    def from_json(cls, data) -> Vec:
        if (
            not isinstance(data, (list, tuple))
            or len(data) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in data)
        ):
            raise ValueError(f"expected a pair of integers, got {data!r}")
        return cls(data[0], data[1])


def vec(v) -> Vec:
    """Coerce a pair into a :class:`Vec`."""
    if isinstance(v, Vec):
        return v
    a, b = v
    return Vec(int(a), int(b))


def wedge(u, v) -> int:
    """The determinant ``u.a*v.b - u.b*v.a``.

    >>> wedge((1, -1), (-1, 0))
    -1
    >>> wedge((-2, 1), (2, -2))
    2
    """
    return u[0] * v[1] - u[1] * v[0]


def in_universal_cone(v) -> bool:
    """Outgoing contact data: ``a > 0`` and ``b <= a``."""
    return v[0] > 0 and v[1] <= v[0]


def in_cone_n(v, n: int) -> bool:
    """Whether ``v`` lies in the closed cone spanned by ``(1, 1)`` and ``(1, 1 - n)``."""
    a, b = v
    return a >= 0 and (1 - n) * a <= b <= a


def is_valid_incoming(y) -> bool:
    """Admissible incoming vector: ``y1 <= -1`` and ``y2 > y1``."""
    return y[0] <= -1 and y[1] > y[0]


# -- exact rationals ---------------------------------------------------------

_RATIONAL_RE = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")


def format_rational(x) -> str:
    """``"p/q"`` in lowest terms, or ``"p"`` when the denominator is 1."""
    x = Fraction(x)
    return str(x)


def parse_rational(text: str, strict: bool = True) -> Fraction:
    """Parse ``"p"`` or ``"p/q"``.

    With ``strict`` the text must already be in the normal form produced by
    :func:`format_rational` (lowest terms, positive denominator, no ``/1``,
    no ``-0``).
    """
    m = _RATIONAL_RE.match(text.strip() if not strict else text)
    if m is None:
        raise ValueError(f"not a rational: {text!r}")
    sign, num, den = m.groups()
    p = int(num)
    q = int(den) if den is not None else 1
    if strict:
        if den is not None and (q == 1 or gcd(p, q) != 1):
            raise ValueError(f"rational not in lowest terms: {text!r}")
        if sign and p == 0:
            raise ValueError(f"negative zero: {text!r}")
    return Fraction(-p if sign else p, q)
