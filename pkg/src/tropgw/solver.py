"""Recursive computation of connected relative invariants.

For a connected outgoing-only configuration ``g`` with a pivot vector
``(a, b)``, let ``T`` be ``g`` with the pivot replaced by the incoming
vector ``y = (-a, -1 - b)``.  The coefficient of ``T`` in the left and the
right sweep of the disconnected series must agree.  On the right, ``g``
itself contributes ``m * a * n_g / |Aut g|`` (``m`` copies of the pivot);
every other contributing source has smaller degree, or equal degree and
larger Euler characteristic, so the equation is triangular and can be
solved recursively.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterator, Optional

from .configs import (
    CurveConfig,
    ConfigError,
    automorphism_order,
    canonicalize,
    genus,
    make_config,
)
from .formal import FormalSum, assemble_exp, connected_configs, exp_coefficient
from .lattice import Vec, in_universal_cone, is_valid_incoming, vec
from .sweep import EXIT_VECTOR, LEFT, RIGHT, expand, expand_sum

_ZERO = Fraction(0)


class SolverError(RuntimeError):
    pass


class DependencyError(SolverError):
    """A recursive request violated the (degree, -chi) ordering, or formed a cycle."""


class NoPivotError(SolverError):
    pass


class TableMissError(KeyError):
    pass


def complexity_key(c: CurveConfig) -> tuple[int, int]:
    """Recursion order: lower degree first, then higher Euler characteristic."""
    return (c.degree, -c.euler_characteristic)


class InvariantTable:
    """Memoized connected invariants, keyed by canonical configuration.

    ``max_degree``/``min_chi`` record the bounds within which the table is
    known to be complete (``None`` when no such guarantee is made).
    """

    def __init__(self, values=None, max_degree: Optional[int] = None, min_chi: Optional[int] = None):
        self.values: dict[CurveConfig, Fraction] = dict(values or {})
        self.in_progress: set[CurveConfig] = set()
        self.max_degree = max_degree
        self.min_chi = min_chi

    def __len__(self):
        return len(self.values)

    def __contains__(self, c):
        return c in self.values

    def __getitem__(self, c):
        return self.values[c]

    def __eq__(self, other):
        if not isinstance(other, InvariantTable):
            return NotImplemented
        return (
            self.values == other.values
            and self.max_degree == other.max_degree
            and self.min_chi == other.min_chi
        )

    def items(self):
        return sorted(self.values.items(), key=lambda kv: kv[0].dumps())

    def covers(self, max_degree: int, min_chi: int) -> bool:
        return (
            self.max_degree is not None
            and self.min_chi is not None
            and max_degree <= self.max_degree
            and min_chi >= self.min_chi
        )

    def invariant(self, c: CurveConfig) -> Fraction:
        """Look up ``n_c``; negative-genus entries outside the table are 0."""
        try:
            return self.values[c]
        except KeyError:
            if genus(c.components[0]) < 0:
                return _ZERO
            raise TableMissError(f"invariant of {c!r} not in table") from None

    def restricted(self, max_degree: int, min_chi: int) -> InvariantTable:
        vals = {
            c: x
            for c, x in self.values.items()
            if c.degree <= max_degree and c.euler_characteristic >= min_chi
        }
        return InvariantTable(vals, max_degree, min_chi)


@dataclass(frozen=True)
class Equation:
    """``unknown_coefficient * n_unknown == known_sum`` for one target."""

    unknown: CurveConfig
    unknown_coefficient: Fraction
    known_sum: Fraction
    target: CurveConfig = field(compare=False)
    pivot: Vec = field(compare=False)

    def solve(self) -> Fraction:
        return self.known_sum / self.unknown_coefficient


@dataclass
class IdentityReport:
    y: Vec
    max_degree: int
    min_chi: int
    left: FormalSum
    right: FormalSum
    mismatches: list

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def summary(self) -> str:
        status = "ok" if self.ok else f"{len(self.mismatches)} mismatches"
        return (
            f"y={tuple(self.y)} degree<={self.max_degree} chi>={self.min_chi}: "
            f"{len(self.left)} terms, {status}"
        )


# -- preimage search -----------------------------------------------------------


def consumed_multisets(total) -> list[tuple[Vec, ...]]:
    """All multisets of cone vectors summing to ``total``, as sorted tuples."""
    A, B = total
    if A < 0:
        return []
    out = []

    def rec(A, B, prev, acc):
        if A == 0:
            if B == 0:
                out.append(tuple(sorted(acc)))
            return
        for a in range(min(A, prev[0]), 0, -1):
            if a == A:
                choices = [B] if B <= a else []
            else:
                # the remaining vectors add at most A - a to the b-sum
                choices = range(a, B - (A - a) - 1, -1)
            for b in choices:
                if (a, b) > prev:
                    continue
                acc.append(Vec(a, b))
                rec(A - a, B - b, (a, b), acc)
                acc.pop()

    rec(A, B, (A, A), [])
    return sorted(out)


def _set_partitions(items: list) -> Iterator[list[list]]:
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        yield [[first]] + part
        for i in range(len(part)):
            yield part[:i] + [[first] + part[i]] + part[i + 1 :]


def _candidate_sources(target: CurveConfig, side: str) -> set[CurveConfig]:
    k, y = target.incoming
    others = [comp for i, comp in enumerate(target.components) if i != k]
    survivors = list(target.components[k])
    options = [(survivors, EXIT_VECTOR[side] - y)]
    for w in sorted(set(survivors)):
        rest = list(survivors)
        rest.remove(w)
        options.append((rest, w - y))
    found = set()
    for rest, total in options:
        for consumed in consumed_multisets(total):
            for blocks in _set_partitions(list(consumed)):
                for placement in product(range(len(blocks)), repeat=len(rest)):
                    comps = [list(b) for b in blocks]
                    for v, j in zip(rest, placement):
                        comps[j].append(v)
                    found.add(make_config(others + comps))
    return found


def candidate_sources(target: CurveConfig, y, side: str) -> list[CurveConfig]:
    """Outgoing-only configurations that can possibly sweep onto ``target``."""
    y = vec(y)
    if target.incoming is None or target.incoming[1] != y:
        raise ConfigError("target must carry the incoming vector y")
    return sorted(_candidate_sources(canonicalize(target), side))


def enumerate_sources(target: CurveConfig, y, side: str) -> list[tuple[CurveConfig, Fraction]]:
    """Sources whose ``side`` sweep has nonzero coefficient at ``target``, with that coefficient."""
    target = canonicalize(target)
    out = []
    for src in candidate_sources(target, y, side):
        x = expand(src, y, side).coefficient_of(target)
        if x:
            out.append((src, x))
    return out


# -- solver ------------------------------------------------------------------


def default_pivot(g: CurveConfig) -> Optional[Vec]:
    """Largest ``a``, then smallest ``b``, among vectors with ``b <= a - 2``.

    Only those vectors turn into a valid incoming vector ``(-a, -1 - b)``.
    """
    best = None
    for v in g.components[0]:
        if v.b <= v.a - 2 and (best is None or (v.a, -v.b) > (best.a, -best.b)):
            best = v
    return best


def pivot_target(g: CurveConfig, pivot) -> tuple[CurveConfig, Vec]:
    pivot = vec(pivot)
    vs = list(g.components[0])
    vs.remove(pivot)
    y = Vec(-pivot.a, -1 - pivot.b)
    return make_config([vs], (0, y)), y


class Solver:
    """Memoizing solver for connected invariants.

    ``genus_shortcut`` returns 0 immediately for negative genus; when
    disabled, such configurations are solved through the recursion as well
    (configurations without an admissible pivot still vanish, all of them
    having negative genus).
    """

    def __init__(self, table: Optional[InvariantTable] = None, genus_shortcut: bool = True):
        self.table = table if table is not None else InvariantTable()
        self.genus_shortcut = genus_shortcut
        self._stack: list[CurveConfig] = []
        self._lock = threading.RLock()
        self.max_requested: list[tuple] = []

    # lookups
    def invariant(self, g) -> Fraction:
        """The connected invariant ``n_g``."""
        if not isinstance(g, CurveConfig):
            g = make_config([g])
        elif g.incoming is not None or not g.is_connected:
            raise ConfigError("invariant() expects a connected outgoing-only configuration")
        values = self.table.values
        if g in values:
            return values[g]
        with self._lock:
            if g in values:
                return values[g]
            return self._solve(g)

    def exp_coefficient(self, c: CurveConfig) -> Fraction:
        return exp_coefficient(self, c)

    def _solve(self, g: CurveConfig) -> Fraction:
        comp = g.components[0]
        for v in comp:
            if not in_universal_cone(v):
                raise ConfigError(f"vector {v!r} outside the cone")
        if self._stack:
            parent = self._stack[-1]
            if not complexity_key(g) < complexity_key(parent):
                raise DependencyError(
                    f"non-triangular dependency: {g!r} requested while solving {parent!r}"
                )
        if g in self.table.in_progress:
            raise DependencyError(f"cyclic dependency on {g!r}")
        gen = genus(comp)
        if gen < 0 and self.genus_shortcut:
            value = _ZERO
        else:
            pivot = default_pivot(g)
            if pivot is None:
                if gen >= 0:
                    raise NoPivotError(f"no pivot for {g!r} of genus {gen}")
                value = _ZERO
            else:
                self.table.in_progress.add(g)
                self._stack.append(g)
                try:
                    value = self.equation(g, pivot).solve()
                finally:
                    self._stack.pop()
                    self.table.in_progress.discard(g)
        self.table.values[g] = value
        return value

    def _side_sum(self, target, y, side, unknown=None):
        """Coefficient of ``target`` in one sweep of the series, splitting off ``unknown``."""
        known = _ZERO
        unknown_coeff = _ZERO
        for src in sorted(_candidate_sources(target, side)):
            if self.genus_shortcut and any(genus(comp) < 0 for comp in src.components):
                continue
            x = expand(src, y, side).coefficient_of(target)
            if not x:
                continue
            if src == unknown:
                unknown_coeff += x / automorphism_order(src)
            else:
                known += x * exp_coefficient(self, src)
        return known, unknown_coeff

    def equation(self, g: CurveConfig, pivot=None) -> Equation:
        """The linear equation for ``n_g`` obtained from the given pivot."""
        if pivot is None:
            pivot = default_pivot(g)
            if pivot is None:
                raise NoPivotError(f"no admissible pivot in {g!r}")
        target, y = pivot_target(g, pivot)
        if not is_valid_incoming(y):
            raise NoPivotError(f"pivot {pivot!r} gives invalid incoming vector {y!r}")
        left, stray = self._side_sum(target, y, LEFT, unknown=g)
        if stray:
            raise DependencyError(f"{g!r} appears in the left sweep of its own target")
        right_known, coeff = self._side_sum(target, y, RIGHT, unknown=g)
        if not coeff:
            raise SolverError(f"unknown {g!r} does not appear in its equation")
        return Equation(g, coeff, left - right_known, target, vec(pivot))

    def incoming_invariant(self, target: CurveConfig, side: str = LEFT) -> Fraction:
        """``n_T`` for an incoming-marked config, read off one sweep of the series."""
        target = canonicalize(target)
        y = target.incoming[1]
        known, _ = self._side_sum(target, y, side)
        return known * automorphism_order(target)

    # bulk operations
    def build_table(self, max_degree: int, min_chi: int) -> InvariantTable:
        """Solve every connected configuration within the bounds, easiest first."""
        todo = connected_configs(max_degree, min_chi)
        todo.sort(key=lambda c: (complexity_key(c), c))
        for c in todo:
            self.invariant(c)
        table = self.table.restricted(max_degree, min_chi)
        return table

    def verify_identity(self, y, max_degree: int, min_chi: int) -> IdentityReport:
        """Compare both sweeps of the truncated series on every output term within the bounds.

        Sources of an output with chi ``>= min_chi`` have chi ``>= min_chi - 1``,
        so the series is assembled with that looser bound.
        """
        y = vec(y)
        if not is_valid_incoming(y):
            raise ConfigError(f"invalid incoming vector {tuple(y)!r}")
        series = assemble_exp(self, max_degree, min_chi - 1)

        def keep(c):
            return c.degree <= max_degree and c.euler_characteristic >= min_chi

        left = expand_sum(LEFT, series, y).filter(keep)
        right = expand_sum(RIGHT, series, y).filter(keep)
        mismatches = []
        for c in sorted(set(left._terms) | set(right._terms)):
            lx, rx = left.coefficient_of(c), right.coefficient_of(c)
            if lx != rx:
                mismatches.append((c, lx, rx))
        return IdentityReport(y, max_degree, min_chi, left, right, mismatches)


_default = Solver()


def default_solver() -> Solver:
    return _default


def invariant(g) -> Fraction:
    return _default.invariant(g)


def invariant_table(max_degree: int, min_chi: int, solver: Optional[Solver] = None) -> InvariantTable:
    return (solver or _default).build_table(max_degree, min_chi)


def verify_identity(y, max_degree: int, min_chi: int, solver: Optional[Solver] = None) -> IdentityReport:
    return (solver or _default).verify_identity(y, max_degree, min_chi)
