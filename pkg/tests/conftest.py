from __future__ import annotations

from itertools import combinations_with_replacement, permutations

import pytest

from tropgw.configs import CurveConfig, make_config
from tropgw.solver import Solver, _set_partitions
from tropgw.sweep import clear_cache


@pytest.fixture
def solver():
    return Solver()


@pytest.fixture(scope="session")
def shared_solver():
    return Solver()


@pytest.fixture
def fresh():
    clear_cache()
    return Solver()


# -- brute-force oracles shared by several modules ---------------------------


def brute_automorphisms(c: CurveConfig) -> int:
    """Count position permutations preserving vectors, blocks and the incoming slot."""
    items = [(v, i) for i, comp in enumerate(c.components) for v in comp]
    blocks = [frozenset(j for j, (_, i) in enumerate(items) if i == k) for k in range(len(c.components))]
    inc_block = None
    if c.incoming is not None:
        inc_block = blocks[c.incoming[0]]
    count = 0
    for perm in permutations(range(len(items))):
        if any(items[perm[j]][0] != items[j][0] for j in range(len(items))):
            continue
        images = {frozenset(perm[j] for j in b) for b in blocks}
        if images != set(blocks):
            continue
        if inc_block is not None and frozenset(perm[j] for j in inc_block) != inc_block:
            continue
        count += 1
    return count


def all_outgoing_configs(max_degree: int, min_chi: int):
    """Every outgoing-only configuration within the bounds, by brute force."""
    box = [(a, b) for a in range(1, max_degree + 1) for b in range(min_chi - 5 * max_degree, a + 1)]
    found = {make_config([])}
    for k in range(1, max_degree + 1):
        for vs in combinations_with_replacement(box, k):
            if sum(a for a, _ in vs) > max_degree or sum(1 + 2 * a + 2 * b for a, b in vs) < min_chi:
                continue
            for blocks in _set_partitions(list(vs)):
                found.add(make_config(blocks))
    return sorted(found)


@pytest.fixture(scope="session")
def configs_deg3():
    return all_outgoing_configs(3, -3)


def parallel_groups(seq):
    """Runs of mutually parallel vectors in a sweep-ordered sequence."""
    groups = []
    for item in seq:
        v = item[0]
        if groups and groups[-1][-1][0].a * v.b == groups[-1][-1][0].b * v.a:
            groups[-1].append(item)
        else:
            groups.append([item])
    return groups


# -- acceptance report -------------------------------------------------------

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        prev = _ACCEPTANCE.get(number, (title, True))
        _ACCEPTANCE[number] = (title, prev[1] and rep.outcome == "passed")


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number:2d} {'PASS' if ok else 'FAIL'}: {title}")
