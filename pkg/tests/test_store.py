import json
from fractions import Fraction

import pytest

from tropgw.configs import connected
from tropgw.solver import InvariantTable, Solver
from tropgw.store import (
    CorruptRecordError,
    StoreError,
    VersionMismatchError,
    default_cache_path,
    dumps_table,
    load_table,
    loads_table,
    save_table,
)


@pytest.fixture(scope="module")
def table3():
    return Solver().build_table(3, -5)


def test_empty_table_is_header_only(tmp_path):
    path = tmp_path / "t.jsonl"
    save_table(InvariantTable({}, 0, 0), path)
    lines = path.read_text().splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0]) == {"format": "tropgw-invariants", "version": 1, "max_degree": 0, "min_chi": 0}


def test_degree_one_record():
    text = dumps_table(Solver().build_table(1, 1))
    assert '{"gamma":{"components":[[[1,-1]]],"incoming":null},"value":"1"}' in text.splitlines()


def test_round_trip(tmp_path, table3):
    path = tmp_path / "t.jsonl"
    save_table(table3, path)
    loaded = load_table(path)
    assert loaded.values == table3.values
    assert (loaded.max_degree, loaded.min_chi) == (3, -5)
    assert loaded[connected((2, -2))] == Fraction(-1, 4)


def test_byte_stable(tmp_path, table3):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    save_table(table3, a)
    save_table(load_table(a), b)
    assert a.read_bytes() == b.read_bytes()
    # insertion order does not matter
    shuffled = InvariantTable(dict(reversed(list(table3.values.items()))), 3, -5)
    assert dumps_table(shuffled) == a.read_text()


def test_loading_never_solves(tmp_path, table3, monkeypatch):
    path = tmp_path / "t.jsonl"
    save_table(table3, path)
    s = Solver(load_table(path))

    def boom(*args, **kwargs):
        raise AssertionError("solver ran on a loaded table")

    monkeypatch.setattr(s, "_solve", boom)
    for c, x in table3.items():
        assert s.invariant(c) == x


HEADER = '{"format":"tropgw-invariants","version":1,"max_degree":2,"min_chi":-1}'


@pytest.mark.parametrize(
    "record",
    [
        '{"gamma":{"components":[[[1,1],[1,-4]]],"incoming":null},"value":"1"}',  # unsorted vectors
        '{"gamma":{"components":[[[2,-2]]],"incoming":null},"value":"2/4"}',
        '{"gamma":{"components":[[[2,-2]]],"incoming":null},"value":"1/1"}',
        '{"gamma":{"components":[[[2,-2]]],"incoming":null},"value":0.5}',
        '{"gamma":{"components":[[[1,-1]],[[1,-1]]],"incoming":null},"value":"0"}',
        '{"gamma":{"components":[[]],"incoming":{"component":0,"vector":[-1,0]}},"value":"1"}',
        '{"gamma":{"components":[[[0,1]]],"incoming":null},"value":"0"}',
        '{"value":"1"}',
        "not json",
    ],
)
def test_rejects_corrupt_records(record):
    with pytest.raises(CorruptRecordError) as info:
        loads_table(HEADER + "\n" + record + "\n")
    assert info.value.lineno == 2


def test_rejects_duplicates_and_order():
    r1 = '{"gamma":{"components":[[[1,-1]]],"incoming":null},"value":"1"}'
    r2 = '{"gamma":{"components":[[[2,-2]]],"incoming":null},"value":"-1/4"}'
    assert len(loads_table("\n".join([HEADER, r1, r2]))) == 2
    with pytest.raises(CorruptRecordError):
        loads_table("\n".join([HEADER, r2, r1]))
    with pytest.raises(CorruptRecordError):
        loads_table("\n".join([HEADER, r1, r1]))


def test_header_errors():
    with pytest.raises(VersionMismatchError):
        loads_table(HEADER.replace('"version":1', '"version":2'))
    with pytest.raises(CorruptRecordError):
        loads_table("")
    with pytest.raises(CorruptRecordError):
        loads_table('{"format":"other","version":1}')


def test_missing_file(tmp_path):
    with pytest.raises(StoreError):
        load_table(tmp_path / "nope.jsonl")


def test_refuses_partial_table(tmp_path):
    t = InvariantTable({}, 1, 1)
    t.in_progress.add(connected((1, -1)))
    with pytest.raises(StoreError):
        save_table(t, tmp_path / "t.jsonl")


def test_default_cache_path(tmp_path, monkeypatch):
    monkeypatch.delenv("TROPGW_CACHE_DIR", raising=False)
    assert default_cache_path() is None
    monkeypatch.setenv("TROPGW_CACHE_DIR", str(tmp_path))
    assert default_cache_path() == tmp_path / "invariants.jsonl"
