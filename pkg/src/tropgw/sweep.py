"""Left and right sweep operators.

A sweep moves a marked arrow, initially equal to the incoming vector ``y``,
across the ordered outgoing vectors of a configuration.  At each vector
``v`` the expansion branches: the arrow passes ``v`` with coefficient 1, or
absorbs ``v`` with coefficient ``max(wedge, 0)`` (``wedge(v, arrow)`` when
moving left, ``wedge(arrow, v)`` when moving right).  Absorbing removes
``v`` and merges its component into the class of ``y``.  When the arrow
leaves the sequence it is dropped if it equals the exit vector
(``(-1, 0)`` on the left, ``(0, -1)`` on the right), kept as a new outgoing
vector of ``y``'s component if it is in the cone, and kills the branch
otherwise.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple

from .configs import ConfigError, CurveConfig, canonicalize, sweep_key
from .formal import FormalSum
from .lattice import Vec, in_universal_cone, is_valid_incoming, vec, wedge

LEFT = "left"
RIGHT = "right"

EXIT_VECTOR = {LEFT: Vec(-1, 0), RIGHT: Vec(0, -1)}


class SweepState(NamedTuple):
    step: int  # number of sequence entries already visited
    arrow: Vec
    arrow_class: int  # bitmask of component ids merged into y's class
    consumed: int  # bitmask of absorbed sequence positions
    coefficient: int


def _check_side(side):
    if side not in (LEFT, RIGHT):
        raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def sweep_sequence(src: CurveConfig) -> list[tuple[Vec, int]]:
    """The outgoing vectors of ``src`` in sweep order, tagged with component ids."""
    seq = [(v, i) for i, comp in enumerate(src.components) for v in comp]
    seq.sort(key=lambda item: sweep_key(item[0]))
    return seq


def expand_sequence(seq, n_components: int, y, side: str) -> FormalSum:
    """Expand an explicitly ordered sequence of ``(vector, component id)`` pairs.

    ``seq`` must already be in a valid sweep order; component ids run over
    ``range(n_components)``.
    """
    _check_side(side)
    y = vec(y)
    n = len(seq)
    left = side == LEFT
    order = list(range(n - 1, -1, -1)) if left else list(range(n))
    exit_vec = EXIT_VECTOR[side]
    out: dict[CurveConfig, int] = {}

    stack = [SweepState(0, y, 0, 0, 1)]
    while stack:
        st = stack.pop()
        if st.step == n:
            _finish(seq, n_components, y, st, exit_vec, out)
            continue
        i = order[st.step]
        v, cid = seq[i]
        stack.append(st._replace(step=st.step + 1))
        w = wedge(v, st.arrow) if left else wedge(st.arrow, v)
        if w > 0:
            stack.append(
                SweepState(
                    st.step + 1,
                    st.arrow + v,
                    st.arrow_class | (1 << cid),
                    st.consumed | (1 << i),
                    st.coefficient * w,
                )
            )
    return FormalSum._trusted({c: Fraction(x) for c, x in out.items() if x})


def _finish(seq, n_components, y, st: SweepState, exit_vec, out):
    arrow = st.arrow
    if arrow == exit_vec:
        extra = None
    elif in_universal_cone(arrow):
        extra = arrow
    else:
        return
    groups = [[] for _ in range(n_components)]
    marked = []
    for i, (v, cid) in enumerate(seq):
        if st.consumed >> i & 1:
            continue
        if st.arrow_class >> cid & 1:
            marked.append(v)
        else:
            groups[cid].append(v)
    if extra is not None:
        marked.append(extra)
    comps = [g for g in groups if g]
    comps.append(marked)
    conf = canonicalize(CurveConfig(comps, (len(comps) - 1, y)), check=False)
    out[conf] = out.get(conf, 0) + st.coefficient


def _validate(src: CurveConfig, y):
    if src.incoming is not None:
        raise ConfigError("sweeps act on outgoing-only configurations")
    if not is_valid_incoming(y):
        raise ConfigError(f"invalid incoming vector {tuple(y)!r}")
    for v in src.outgoing():
        if not in_universal_cone(v):
            raise ConfigError(f"vector {v!r} outside the cone")


@lru_cache(maxsize=200_000)
def _expand_cached(src: CurveConfig, y: Vec, side: str) -> FormalSum:
    return expand_sequence(sweep_sequence(src), len(src.components), y, side)


def expand(src: CurveConfig, y, side: str) -> FormalSum:
    _check_side(side)
    y = vec(y)
    _validate(src, y)
    return _expand_cached(canonicalize(src, check=False), y, side)


def expand_left(src: CurveConfig, y) -> FormalSum:
    """Expansion of ``src`` followed by the leftward arrow and ``y``."""
    return expand(src, y, LEFT)


def expand_right(y, src: CurveConfig) -> FormalSum:
    """Expansion of ``y`` and the rightward arrow followed by ``src``."""
    return expand(src, y, RIGHT)


def expand_sum(side: str, series: FormalSum, y) -> FormalSum:
    """Linear extension of :func:`expand` to a formal sum."""
    _check_side(side)
    y = vec(y)
    total = {}
    for c, x in series.items():
        for t, w in expand(c, y, side)._terms.items():
            total[t] = total.get(t, 0) + x * w
    return FormalSum._trusted({c: v for c, v in total.items() if v})


def clear_cache():
    _expand_cached.cache_clear()
