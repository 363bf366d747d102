"""Truncated formal sums of curve configurations, and the disconnected series."""

from __future__ import annotations

import json
from fractions import Fraction
from math import isfinite

from .configs import (
    EMPTY,
    CurveConfig,
    automorphism_order,
    canonicalize,
    disjoint_union,
    genus,
)
from . import configs as _configs
from .lattice import format_rational, parse_rational

_ZERO = Fraction(0)


class FormalSum:
    """A finite rational combination of canonical configurations.

    Zero coefficients are never stored.  Instances are treated as immutable
    values; the arithmetic methods return new sums.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            items = terms.items() if hasattr(terms, "items") else terms
            for c, x in items:
                x = Fraction(x)
                if x:
                    clean[c] = clean.get(c, _ZERO) + x
                    if not clean[c]:
                        del clean[c]
        self._terms = clean

    @classmethod
    def _trusted(cls, terms: dict) -> FormalSum:
        s = cls.__new__(cls)
        s._terms = terms
        return s

    def __add__(self, other: FormalSum) -> FormalSum:
        return add(self, other)

    def __sub__(self, other: FormalSum) -> FormalSum:
        return add(self, other.scale(-1))

    def __eq__(self, other):
        if not isinstance(other, FormalSum):
            return NotImplemented
        return self._terms == other._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(sorted(self._terms))

    def __contains__(self, c):
        return c in self._terms

    def __repr__(self):
        body = ", ".join(f"{c!r}: {format_rational(x)}" for c, x in self.items())
        return "FormalSum({" + body + "})"

    def items(self):
        return sorted(self._terms.items())

    def scale(self, x) -> FormalSum:
        x = Fraction(x)
        if not x:
            return FormalSum()
        return FormalSum._trusted({c: v * x for c, v in self._terms.items()})

    def coefficient_of(self, c: CurveConfig) -> Fraction:
        return coefficient_of(self, c)

    def filter(self, pred) -> FormalSum:
        return FormalSum._trusted({c: v for c, v in self._terms.items() if pred(c)})

    def to_json(self) -> list:
        return [{"config": c.to_json(), "value": format_rational(x)} for c, x in self.items()]

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, data) -> FormalSum:
        if isinstance(data, str):
            data = json.loads(data)
        return cls((_configs.from_json(r["config"]), parse_rational(r["value"])) for r in data)


def add(s: FormalSum, t: FormalSum) -> FormalSum:
    """Pointwise sum; cancelling terms are removed."""
    out = dict(s._terms)
    for c, x in t._terms.items():
        v = out.get(c, _ZERO) + x
        if v:
            out[c] = v
        else:
            out.pop(c, None)
    return FormalSum._trusted(out)


def coefficient_of(s: FormalSum, c: CurveConfig) -> Fraction:
    return s._terms.get(canonicalize(c), _ZERO)


def exp_coefficient(source, c: CurveConfig) -> Fraction:
    """Coefficient of ``c`` in the disconnected series: product of component invariants over ``|Aut c|``.

    ``source`` is anything with an ``invariant(config)`` method, e.g. a
    solver (computes on demand) or a loaded table.
    """
    if c.incoming is not None:
        raise ValueError("exp_coefficient expects an outgoing-only configuration")
    if c.is_empty:
        return Fraction(1)
    prod = Fraction(1)
    for comp in c.split():
        prod *= source.invariant(comp)
        if not prod:
            return _ZERO
    return prod / automorphism_order(c)


# -- enumeration -------------------------------------------------------------


def cone_vectors(max_a: int, max_cost: int):
    """Cone vectors with ``a <= max_a`` and ``-(1 + 2a + 2b) <= max_cost``."""
    out = []
    for a in range(1, max_a + 1):
        # 1 + 2a + 2b >= -max_cost
        b_min = -((max_cost + 1 + 2 * a) // 2)
        for b in range(b_min, a + 1):
            if -(1 + 2 * a + 2 * b) <= max_cost:
                out.append(_configs.Vec(a, b))
    return out


def vector_multisets(max_degree: int, min_chi: int, min_size: int = 1):
    """Sorted tuples of cone vectors with total degree ``<= max_degree`` and total chi ``>= min_chi``."""
    results = []

    def rec(start, vecs, deg, chi_sum, acc):
        if len(acc) >= min_size and chi_sum >= min_chi:
            results.append(tuple(acc))
        for i in range(start, len(vecs)):
            v = vecs[i]
            d = deg + v.a
            if d > max_degree:
                continue
            x = chi_sum + 1 + 2 * v.a + 2 * v.b
            # further vectors add at most 5 per unit of degree
            if x + 5 * (max_degree - d) < min_chi:
                continue
            acc.append(v)
            rec(i, vecs, d, x, acc)
            acc.pop()

    slack = 5 * max_degree - min_chi
    vecs = sorted(cone_vectors(max_degree, slack))
    rec(0, vecs, 0, 0, [])
    return results


def connected_configs(max_degree: int, min_chi: int, nonnegative_genus: bool = False):
    """All connected outgoing-only configurations within the bounds, canonical and sorted."""
    out = []
    for vs in vector_multisets(max_degree, min_chi):
        if nonnegative_genus and genus(vs) < 0:
            continue
        out.append(CurveConfig((vs,)))
    out.sort()
    return out


def assemble_exp(source, max_degree: int, min_chi: int) -> FormalSum:
    """The disconnected series truncated to degree ``<= max_degree`` and chi ``>= min_chi``.

    Terms with vanishing coefficient are elided.  A component with
    non-negative genus has chi at most 1, so components of nonzero terms are
    drawn from connected configurations with chi ``>= min_chi - max_degree + 1``.
    """
    if not (isinstance(max_degree, int) and isinstance(min_chi, int)):
        if not (isfinite(max_degree) and isfinite(min_chi)):
            raise ValueError("enumeration bounds must be finite")
        raise TypeError("enumeration bounds must be integers")
    terms = {EMPTY: Fraction(1)}
    if max_degree <= 0:
        return FormalSum._trusted(terms)
    pool = []
    for c in connected_configs(max_degree, min_chi - max_degree + 1, nonnegative_genus=True):
        n = source.invariant(c)
        if n:
            pool.append((c, n, c.degree, c.euler_characteristic))

    def rec(start, chosen, deg, chi):
        for i in range(start, len(pool)):
            c, n, d, x = pool[i]
            if deg + d > max_degree:
                continue
            chosen.append(i)
            rec(i, chosen, deg + d, chi + x)
            chosen.pop()
        if chosen and chi >= min_chi:
            conf = disjoint_union(*(pool[j][0] for j in chosen))
            num = Fraction(1)
            for j in chosen:
                num *= pool[j][1]
            terms[conf] = num / automorphism_order(conf)

    rec(0, [], 0, 0)
    return FormalSum._trusted(terms)
