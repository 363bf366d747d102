"""Absolute invariants of blowups of the plane, plus independent oracles.

A connected configuration ``{(1, 1 - m_1), ..., (1, 1 - m_k)}`` maps to
``prod_i x**(m_i - 3) * q**H * e_{m_i}(q**-E_1, ..., q**-E_n)`` where
``e_m`` is the elementary symmetric polynomial; configurations containing a
vector with ``a != 1`` map to 0.  The absolute series for ``n`` blowups is
the image of the connected series restricted to the cone of ``n``, plus one
genus-0 exceptional sphere per blowup.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial, prod

from .configs import CurveConfig, automorphism_order, genus, make_config

_CLASS_RE = re.compile(r"^\s*(-?\d+)\s*:\s*((?:-?\d+\s*(?:,\s*-?\d+\s*)*)?)$")


@dataclass(frozen=True)
class HomologyClass:
    """``d*H - sum(c_i * E_i)``.

    Entries of ``c`` may be negative: the exceptional class ``E_i`` itself
    is ``d = 0`` with ``c_i = -1``.
    """

    d: int
    c: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "c", tuple(int(x) for x in self.c))

    @property
    def n(self) -> int:
        return len(self.c)

    @classmethod
    def parse(cls, text: str) -> HomologyClass:
        """Parse ``"d:c1,...,cn"``, e.g. ``"3:1,1,1,1,1,1,1,1"``."""
        m = _CLASS_RE.match(text)
        if m is None:
            raise ValueError(f"homology class must look like 'd:c1,...,cn', got {text!r}")
        d = int(m.group(1))
        body = m.group(2).strip()
        c = tuple(int(x) for x in body.split(",")) if body else ()
        return cls(d, c)

    @classmethod
    def exceptional(cls, i: int, n: int) -> HomologyClass:
        """The class ``E_i`` (1-based) among ``n`` blowups."""
        if not 1 <= i <= n:
            raise ValueError(f"exceptional index {i} out of range 1..{n}")
        return cls(0, tuple(-1 if j == i else 0 for j in range(1, n + 1)))

    def __str__(self):
        return f"{self.d}:" + ",".join(str(x) for x in self.c)

    def is_exceptional(self) -> bool:
        return self.d == 0 and sorted(self.c) == [-1] + [0] * (self.n - 1)


@dataclass(frozen=True)
class GWRecord:
    genus: int
    beta: HomologyClass
    value: Fraction


def _psi_exponents(g: CurveConfig):
    """The ``m_i`` for an all-``a == 1`` connected config, else ``None``."""
    ms = []
    for v in g.components[0]:
        if v.a != 1:
            return None
        ms.append(1 - v.b)
    return ms


def psi_term(g: CurveConfig, n: int) -> list[GWRecord]:
    """Expansion of the image of one configuration, grouped by homology class.

    Each record's value counts the tuples of subsets ``S_i`` of ``{1..n}``
    with ``|S_i| = m_i`` producing that class.  Negative genera are kept;
    callers filter.
    """
    if g.incoming is not None or not g.is_connected:
        raise ValueError("psi_term expects a connected outgoing-only configuration")
    ms = _psi_exponents(g)
    if ms is None:
        return []
    gen = 1 + sum(m - 3 for m in ms)
    counts: Counter = Counter()

    def rec(i, mult):
        if i == len(ms):
            counts[tuple(mult)] += 1
            return
        for subset in combinations(range(n), ms[i]):
            for j in subset:
                mult[j] += 1
            rec(i + 1, mult)
            for j in subset:
                mult[j] -= 1

    rec(0, [0] * n)
    k = len(ms)
    return [
        GWRecord(gen, HomologyClass(k, c), Fraction(x)) for c, x in sorted(counts.items())
    ]


@lru_cache(maxsize=None)
def _subset_tuple_count(rows: tuple[int, ...], cols: tuple[int, ...]) -> int:
    """Number of 0/1 matrices with the given row sums and column sums."""
    if not cols:
        return 1 if not any(rows) else 0
    c, rest = cols[0], cols[1:]
    if c > len(rows):
        return 0
    total = 0
    for chosen in combinations(range(len(rows)), c):
        if any(rows[i] == 0 for i in chosen):
            continue
        new = list(rows)
        for i in chosen:
            new[i] -= 1
        total += _subset_tuple_count(tuple(new), rest)
    return total


def subset_tuple_count(ms, cs) -> int:
    """Ordered tuples ``(S_1..S_k)``, ``|S_i| = m_i``, in which ``j`` lies in exactly ``c_j`` sets."""
    if sum(ms) != sum(cs) or any(c < 0 for c in cs):
        return 0
    return _subset_tuple_count(tuple(ms), tuple(sorted(cs, reverse=True)))


def _partitions_bounded(total: int, parts: int, largest: int):
    """Non-increasing sequences of ``parts`` integers in ``[0, largest]`` summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(min(total, largest), -1, -1):
        if first * parts < total:
            break
        for rest in _partitions_bounded(total - first, parts - 1, first):
            yield (first,) + rest


def psi_sources(n: int, genus_: int, beta: HomologyClass):
    """Connected configurations whose image has a nonzero ``x**(genus-1) q**beta`` term."""
    k = beta.d
    if k <= 0 or any(x < 0 for x in beta.c):
        return []
    total = 3 * k + genus_ - 1
    if total != sum(beta.c) or total < 0:
        return []
    out = []
    for ms in _partitions_bounded(total, k, n):
        out.append((make_config([[(1, 1 - m) for m in ms]]), ms))
    return out


def required_bounds(genus_: int, beta: HomologyClass) -> tuple[int, int]:
    """Degree and chi bounds a table must cover for :func:`absolute_invariant`."""
    return beta.d, 2 - 2 * genus_ - beta.d


class InsufficientTableError(LookupError):
    pass


def absolute_invariant(n: int, genus_: int, beta: HomologyClass, source) -> Fraction:
    """Genus ``genus_`` invariant of the ``n``-point blowup in class ``beta``.

    ``source`` provides ``invariant(config)``: a solver (computes on demand)
    or an :class:`~tropgw.solver.InvariantTable`, whose bounds must cover
    the request.
    """
    if beta.n != n:
        raise ValueError(f"class {beta} has {beta.n} exceptional entries, expected {n}")
    if genus_ < 0:
        return Fraction(0)
    value = Fraction(0)
    if genus_ == 0 and beta.is_exceptional():
        value += 1
    sources = psi_sources(n, genus_, beta)
    if sources and hasattr(source, "covers"):
        max_degree, min_chi = required_bounds(genus_, beta)
        if not source.covers(max_degree, min_chi):
            raise InsufficientTableError(
                f"insufficient table: need degree <= {max_degree}, chi >= {min_chi}"
            )
    for g, ms in sources:
        if genus(g.components[0]) < 0:
            continue
        n_g = source.invariant(g)
        if not n_g:
            continue
        value += n_g * subset_tuple_count(ms, beta.c) / automorphism_order(g)
    return value


# -- oracles -----------------------------------------------------------------


def kontsevich(max_d: int) -> list[Fraction]:
    """Genus-0 plane curve counts ``N_1..N_max_d`` through ``3d - 1`` points.

    Classical recursion, independent of the tropical machinery.
    """
    if max_d < 1:
        raise ValueError("max_d must be at least 1")
    N = {1: 1}
    for d in range(2, max_d + 1):
        s = 0
        for d1 in range(1, d):
            d2 = d - d1
            s += N[d1] * N[d2] * d1 * d1 * d2 * (
                d2 * comb(3 * d - 4, 3 * d1 - 2) - d1 * comb(3 * d - 4, 3 * d1 - 1)
            )
        N[d] = s
    return [Fraction(N[d]) for d in range(1, max_d + 1)]


def corner_closed_form(a: int, d: int) -> Fraction:
    """``binomial(a, d)``, zero outside ``0 <= d <= a``."""
    if d < 0 or d > a:
        return Fraction(0)
    return Fraction(comb(a, d))


def multiple_cover(d: int) -> Fraction:
    """``(-1)**(d - 1) / d**2``."""
    if d == 0:
        raise ValueError("multiple_cover is undefined at d = 0")
    return Fraction(1 if d % 2 else -1, d * d)


def interpolation_polynomial(d: int):
    """``p(x) = prod_{i<d} (x - i) / d!``, vanishing on ``0..d-1`` with ``p(d) = 1``."""

    def p(x):
        return Fraction(prod(x - i for i in range(d)), factorial(d))

    return p


def multiple_cover_from_interpolation(d: int) -> Fraction:
    """Linear coefficient of :func:`interpolation_polynomial` divided by ``d``."""
    if d < 1:
        raise ValueError("d must be positive")
    return Fraction(prod(-i for i in range(1, d)), factorial(d) * d)
