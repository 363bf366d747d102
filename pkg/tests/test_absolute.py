from fractions import Fraction
from itertools import product
from math import comb, prod

import pytest

from tropgw.absolute import (
    GWRecord,
    HomologyClass,
    InsufficientTableError,
    absolute_invariant,
    corner_closed_form,
    interpolation_polynomial,
    kontsevich,
    multiple_cover,
    multiple_cover_from_interpolation,
    psi_term,
    subset_tuple_count,
)
from tropgw.configs import connected, genus
from tropgw.formal import connected_configs
from tropgw.solver import InvariantTable


def cls(d, *c):
    return HomologyClass(d, c)


def test_class_parse_and_print():
    b = HomologyClass.parse("3:1,1,1,1,1,1,1,1")
    assert b == cls(3, *[1] * 8)
    assert str(b) == "3:1,1,1,1,1,1,1,1"
    assert HomologyClass.parse("0:0,-1") == HomologyClass.exceptional(2, 2)
    assert HomologyClass.parse(str(cls(2, 2, 0, 1))) == cls(2, 2, 0, 1)
    for bad in ["3", "a:1", "3:1,,2", ""]:
        with pytest.raises(ValueError):
            HomologyClass.parse(bad)


def test_psi_term_examples():
    assert psi_term(connected((1, -1)), 2) == [GWRecord(0, cls(1, 1, 1), Fraction(1))]
    assert psi_term(connected((2, -2)), 3) == []
    recs = psi_term(connected((1, 0)), 2)
    assert {r.beta for r in recs} == {cls(1, 1, 0), cls(1, 0, 1)}
    assert all(r.genus == -1 and r.value == 1 for r in recs)


def brute_psi(ms, n):
    """Expand the product of elementary symmetric polynomials monomial by monomial."""
    counts = {}
    for choice in product(*[[s for s in product((0, 1), repeat=n) if sum(s) == m] for m in ms]):
        key = tuple(sum(col) for col in zip(*choice)) if choice else (0,) * n
        counts[key] = counts.get(key, 0) + 1
    return counts


def test_psi_genus_and_counts():
    n = 4
    for c in connected_configs(4, -12):
        vs = c.components[0]
        if any(v.a != 1 for v in vs):
            assert psi_term(c, n) == []
            continue
        ms = [1 - v.b for v in vs]
        recs = psi_term(c, n)
        assert all(r.genus == genus(vs) for r in recs)
        assert sum(r.value for r in recs) == prod(comb(n, m) for m in ms)
        assert {r.beta.c: r.value for r in recs} == brute_psi(ms, n)


def test_subset_tuple_count():
    assert subset_tuple_count([3, 3, 2], [1] * 8) == 560
    assert subset_tuple_count([2, 2], [2, 1, 1]) == 2
    assert subset_tuple_count([1], [2]) == 0


@pytest.mark.parametrize(
    "n, g, beta, expected",
    [
        (2, 0, cls(1, 1, 1), 1),
        (1, 0, HomologyClass.exceptional(1, 1), 1),
        (5, 0, cls(2, *[1] * 5), 1),
        (8, 0, cls(3, *[1] * 8), 12),
        (3, 0, cls(1, 1, 1, 1), 0),
        (2, 1, HomologyClass.exceptional(1, 2), 0),
    ],
)
def test_absolute_examples(solver, n, g, beta, expected):
    assert absolute_invariant(n, g, beta, solver) == expected


def test_exceptional_classes(solver):
    for n in range(1, 4):
        for i in range(1, n + 1):
            assert absolute_invariant(n, 0, HomologyClass.exceptional(i, n), solver) == 1


def test_absolute_symmetric_in_exceptional_classes(solver):
    a = absolute_invariant(5, 0, cls(2, 1, 1, 1, 1, 0), solver)
    b = absolute_invariant(5, 0, cls(2, 0, 1, 1, 1, 1), solver)
    assert a == b


def test_absolute_from_table(solver):
    table = solver.build_table(3, -1)
    assert absolute_invariant(8, 0, cls(3, *[1] * 8), table) == 12
    with pytest.raises(InsufficientTableError):
        absolute_invariant(11, 0, cls(4, *[1] * 11), table)
    with pytest.raises(InsufficientTableError):
        absolute_invariant(9, 1, cls(3, *[1] * 9), InvariantTable({}, 3, 0))


def test_absolute_class_length_mismatch(solver):
    with pytest.raises(ValueError):
        absolute_invariant(3, 0, cls(1, 1, 1), solver)


@pytest.mark.parametrize("d", [1, 2, 3, 4])
def test_kontsevich_oracle_agreement(solver, d):
    n = 3 * d - 1
    assert absolute_invariant(n, 0, cls(d, *[1] * n), solver) == kontsevich(d)[-1]


def test_kontsevich_values():
    assert kontsevich(5) == [1, 1, 12, 620, 87304]
    with pytest.raises(ValueError):
        kontsevich(0)


def pascal(a, d):
    if d < 0 or d > a:
        return 0
    row = [1]
    for _ in range(a):
        row = [x + y for x, y in zip([0] + row, row + [0])]
    return row[d]


def test_closed_forms():
    assert corner_closed_form(3, 1) == 3
    assert corner_closed_form(1, 2) == 0
    assert multiple_cover(2) == Fraction(-1, 4)
    for a in range(1, 7):
        for d in range(-6, 7):
            assert corner_closed_form(a, d) == pascal(a, d)
    for d in range(2, 7):
        assert corner_closed_form(1, d) == 0
    for d in range(1, 7):
        assert multiple_cover(d) == multiple_cover_from_interpolation(d)
        assert multiple_cover(-d) == multiple_cover(d)
    with pytest.raises(ValueError):
        multiple_cover(0)


def test_interpolation_polynomial():
    for d in range(1, 7):
        p = interpolation_polynomial(d)
        assert all(p(i) == 0 for i in range(d))
        assert p(d) == 1


def test_multiple_cover_matches_solver(solver):
    for d in range(1, 6):
        assert multiple_cover(d) == solver.invariant(connected((d, -d)))
