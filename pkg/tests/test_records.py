import json
from fractions import Fraction as F

import pytest

from mwhvc.cli import solve_record
from mwhvc.generators import gen_random_rank
from mwhvc.records import (
    TRACE_FLAGS,
    dumps,
    parse_rat,
    rat,
    result_from_record,
    reverify_record,
    trace_from_json,
    trace_to_json,
)
from mwhvc.engine import run
from mwhvc.params import make_params


def test_rat_roundtrip():
    assert rat(F(2, 3)) == {"exact": "2/3", "decimal": 2 / 3}
    assert rat(2) == {"exact": "2/1", "decimal": 2.0}
    assert parse_rat(rat(F(-7, 9))) == F(-7, 9)


def test_trace_roundtrip():
    h = gen_random_rank(8, 12, 3, 20, 9)
    r = run(h, make_params(h, F(1, 10)))
    back = trace_from_json(json.loads(json.dumps(trace_to_json(r.trace))))
    assert back == r.trace


@pytest.mark.parametrize("mode", ["global", "local", "refined"])
def test_byte_identical(mode):
    h = gen_random_rank(9, 14, 3, 20, 4)
    a, _ = solve_record(h, "1/2", mode, include_trace=True)
    b, _ = solve_record(h, "1/2", mode, include_trace=True)
    assert dumps(a) == dumps(b)


@pytest.mark.parametrize("trace", [True, False])
def test_reverify(trace):
    h = gen_random_rank(9, 14, 3, 20, 11)
    rec, ok = solve_record(h, "1/10", include_trace=trace)
    assert ok
    parsed = json.loads(dumps(rec))
    flags = reverify_record(h, parsed)
    expected = rec["verification"] if trace else {k: v for k, v in rec["verification"].items() if k not in TRACE_FLAGS}
    assert flags == expected


def test_result_from_record_roundtrip():
    h = gen_random_rank(7, 9, 3, 20, 2)
    rec, _ = solve_record(h, 1, include_trace=True)
    r = result_from_record(h, json.loads(dumps(rec)))
    direct = run(h, make_params(h, 1))
    assert r.cover == direct.cover and r.dual == direct.dual and r.trace == direct.trace


def test_forged_record_is_flagged():
    h = gen_random_rank(7, 9, 3, 20, 2)
    rec, _ = solve_record(h, 1, include_trace=True)
    rec = json.loads(dumps(rec))
    rec["results"]["dual"][0] = "1000/1"
    flags = reverify_record(h, rec)
    assert not flags["dual_feasible"]
