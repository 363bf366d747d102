"""Curve configurations: partitioned multisets of lattice vectors.

A configuration is a finite multiset of outgoing vectors ``(a, b)`` with
``a > 0`` and ``b <= a``, split into connected components, plus at most one
marked incoming vector ``y`` which belongs to one of the components.  The
incoming vector encodes a point constrained to a fixed location with
contact data ``-y``.
"""

from __future__ import annotations

import json
from collections import Counter
from fractions import Fraction
from math import factorial
from typing import Iterable, Optional, Sequence

from .lattice import Vec, in_universal_cone, is_valid_incoming, vec


class ConfigError(ValueError):
    """Raised for configurations that violate the data-model invariants."""


class CurveConfig:
    """An immutable (possibly disconnected) tropical curve configuration.

    ``components`` is a tuple of tuples of :class:`Vec` holding the outgoing
    vectors of each component.  ``incoming`` is ``None`` or a pair
    ``(k, y)``; component ``k`` then contains ``y`` in addition to its
    outgoing vectors and may have no outgoing vectors at all.

    Instances built through :func:`canonicalize` (or the convenience
    constructors) are canonical, and equality of canonical instances is
    isomorphism of configurations.
    """

    __slots__ = ("components", "incoming", "_hash")

    def __init__(self, components=(), incoming=None):
        self.components = tuple(tuple(vec(v) for v in comp) for comp in components)
        if incoming is not None:
            k, y = incoming
            incoming = (int(k), vec(y))
        self.incoming = incoming
        self._hash = hash((self.components, self.incoming))

    # value semantics
    def __eq__(self, other):
        if not isinstance(other, CurveConfig):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.components == other.components
            and self.incoming == other.incoming
        )

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def sort_key(self):
        inc = () if self.incoming is None else (self.incoming[0], tuple(self.incoming[1]))
        return (self.components, inc)

    def __setattr__(self, name, value):
        if hasattr(self, "_hash"):
            raise AttributeError("CurveConfig is immutable")
        object.__setattr__(self, name, value)

    def __repr__(self):
        parts = []
        for i, comp in enumerate(self.components):
            items = [repr(v) for v in comp]
            if self.incoming is not None and self.incoming[0] == i:
                items.insert(0, "in" + repr(self.incoming[1]))
            parts.append("[" + ",".join(items) + "]")
        return "{" + " ".join(parts) + "}"

    # structure
    @property
    def is_connected(self) -> bool:
        return len(self.components) == 1

    @property
    def is_empty(self) -> bool:
        return not self.components

    @property
    def incoming_vector(self) -> Optional[Vec]:
        return None if self.incoming is None else self.incoming[1]

    def outgoing(self) -> list[Vec]:
        return [v for comp in self.components for v in comp]

    def split(self) -> list[CurveConfig]:
        """The connected components as canonical one-component configs."""
        out = []
        for i, comp in enumerate(self.components):
            inc = None
            if self.incoming is not None and self.incoming[0] == i:
                inc = (0, self.incoming[1])
            out.append(CurveConfig((comp,), inc))
        return out

    # derived numbers
    @property
    def degree(self) -> int:
        return degree(self)

    @property
    def euler_characteristic(self) -> int:
        return euler_characteristic(self)

    # serialization
    def to_json(self) -> dict:
        return {
            "components": [[list(v) for v in comp] for comp in self.components],
            "incoming": None
            if self.incoming is None
            else {"component": self.incoming[0], "vector": list(self.incoming[1])},
        }

    def dumps(self) -> str:
        """Canonical compact JSON; the persistence key of a canonical config."""
        return json.dumps(self.to_json(), separators=(",", ":"))


def _component_key(comp, has_incoming, y):
    return (comp, (1, tuple(y)) if has_incoming else (0,))


def validate(c: CurveConfig) -> None:
    """Raise :class:`ConfigError` unless ``c`` satisfies the type invariants."""
    for comp in c.components:
        for v in comp:
            if not in_universal_cone(v):
                raise ConfigError(f"outgoing vector {v!r} outside the cone a > 0, b <= a")
    if c.incoming is None:
        for comp in c.components:
            if not comp:
                raise ConfigError("empty component")
        return
    k, y = c.incoming
    if not 0 <= k < len(c.components):
        raise ConfigError(f"incoming component index {k} out of range")
    if not is_valid_incoming(y):
        raise ConfigError(f"invalid incoming vector {y!r}")
    for i, comp in enumerate(c.components):
        if not comp and i != k:
            raise ConfigError("empty component")


def canonicalize(c: CurveConfig, check: bool = True) -> CurveConfig:
    """The canonical representative of the isomorphism class of ``c``.

    Vectors within a component are sorted ascending, components are sorted
    by their vector lists (the incoming component after an otherwise equal
    outgoing-only one), and the incoming slot is re-indexed.
    """
    if check:
        validate(c)
    inc_index = None if c.incoming is None else c.incoming[0]
    y = None if c.incoming is None else c.incoming[1]
    keyed = sorted(
        (_component_key(tuple(sorted(comp)), i == inc_index, y) for i, comp in enumerate(c.components))
    )
    comps = tuple(k[0] for k in keyed)
    incoming = None
    if y is not None:
        pos = next(i for i, k in enumerate(keyed) if k[1][0] == 1)
        incoming = (pos, y)
    return CurveConfig(comps, incoming)


def make_config(components: Iterable[Iterable], incoming=None) -> CurveConfig:
    """Build and canonicalize a configuration from plain pairs."""
    return canonicalize(CurveConfig(components, incoming))


def connected(*vectors, incoming=None) -> CurveConfig:
    """Canonical one-component configuration; ``incoming`` joins that component."""
    return make_config([vectors], None if incoming is None else (0, incoming))


def disjoint_union(*configs: CurveConfig) -> CurveConfig:
    comps = []
    incoming = None
    for c in configs:
        if c.incoming is not None:
            if incoming is not None:
                raise ConfigError("at most one incoming vector")
            incoming = (len(comps) + c.incoming[0], c.incoming[1])
        comps.extend(c.components)
    return make_config(comps, incoming)


EMPTY = CurveConfig()


def from_json(data) -> CurveConfig:
    """Parse the JSON form (a dict, or a bare list of components) and canonicalize."""
    if isinstance(data, str):
        data = json.loads(data)
    if isinstance(data, list):
        data = {"components": data, "incoming": None}
    if not isinstance(data, dict) or "components" not in data:
        raise ConfigError(f"not a configuration: {data!r}")
    try:
        comps = [[Vec.from_json(v) for v in comp] for comp in data["components"]]
        inc = data.get("incoming")
        if inc is not None:
            inc = (int(inc["component"]), Vec.from_json(inc["vector"]))
    except (TypeError, KeyError, ValueError) as exc:
        raise ConfigError(f"malformed configuration: {exc}") from exc
    return make_config(comps, inc)


def automorphism_order(c: CurveConfig) -> int:
    """``|Aut c|``: vector permutations within components times swaps of equal components.

    The incoming vector is fixed by every automorphism.
    """
    classes = Counter()
    for i, comp in enumerate(c.components):
        marked = c.incoming is not None and c.incoming[0] == i
        classes[(comp, marked)] += 1
    order = 1
    for (comp, _), m in classes.items():
        w = 1
        for mult in Counter(comp).values():
            w *= factorial(mult)
        order *= factorial(m) * w**m
    return order


def genus(comp: Sequence, incoming=None) -> int:
    """Genus forced on a rigid curve of one component.

    Outgoing only: ``1 - sum(a + b + 1)``.  With an incoming vector ``y``
    the value agrees with that of the component in which ``y`` is replaced
    by the outgoing vector ``(-y1, -1 - y2)``.
    """
    g = 1 - sum(v[0] + v[1] + 1 for v in comp)
    if incoming is not None:
        g += incoming[0] + incoming[1]
    return g


def degree(c: CurveConfig) -> int:
    d = sum(v[0] for comp in c.components for v in comp)
    if c.incoming is not None:
        d -= c.incoming[1][0]
    return d


def euler_characteristic(c: CurveConfig) -> int:
    """Sum over components of ``2 - 2*genus - (number of vectors)``."""
    chi = 0
    for i, comp in enumerate(c.components):
        y = None
        k = len(comp)
        if c.incoming is not None and c.incoming[0] == i:
            y = c.incoming[1]
            k += 1
        chi += 2 - 2 * genus(comp, y) - k
    return chi


def component_genera(c: CurveConfig) -> list[int]:
    out = []
    for i, comp in enumerate(c.components):
        y = c.incoming[1] if c.incoming is not None and c.incoming[0] == i else None
        out.append(genus(comp, y))
    return out


def sweep_key(v):
    # slope descending, then lexicographic
    return (-Fraction(v[1], v[0]), v[0], v[1])


def sort_for_sweep(vs: Iterable) -> list[Vec]:
    """Order vectors so that earlier ones lie to the left of later ones.

    For ``i < j`` the result satisfies ``wedge(vs[i], vs[j]) <= 0``;
    parallel vectors are ordered lexicographically.

    >>> sort_for_sweep([(1, -2), (1, 0)])
    [(1,0), (1,-2)]
    """
    vs = [vec(v) for v in vs]
    for v in vs:
        if not in_universal_cone(v):
            raise ConfigError(f"cannot sweep vector {v!r} outside the cone")
    return sorted(vs, key=sweep_key)
