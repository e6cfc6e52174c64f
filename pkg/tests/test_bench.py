import json
import math
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from abap_optcheck.bench import (
    BenchRecord,
    BenchResult,
    CapacityError,
    SynthTable,
    UnsortedInput,
    bench_modify_case,
    bench_read_case,
    bench_to_json,
    binary_search,
    gen_table,
    linear_search,
    parse_bench_table,
    render_bench,
)


# -- generator -------------------------------------------------------------


def test_empty_table():
    t = gen_table(0)
    assert len(t) == 0 and t.sorted_by_key and t.payload.shape == (0, 1)


def test_small_table_deterministic():
    a, b = gen_table(8, seed=5), gen_table(8, seed=5)
    assert len(a.keys) == 8
    assert all(x < y for x, y in zip(a.keys, a.keys[1:]))
    assert a.keys == b.keys and np.array_equal(a.payload, b.payload)
    assert gen_table(8, seed=6).keys != a.keys


def test_payload_shape_and_alphabet():
    t = gen_table(5, fields=3, field_width=7, seed=2)
    assert t.payload.shape == (5, 3) and t.payload.dtype == np.dtype("S7")
    assert all(set(v) <= set(b"ABCDEFGHIJKLMNOPQRSTUVWXYZ") for v in t.payload.ravel())


def test_keys_match_reference_generator():
    # sum / first / last keys of the n=1000, seed=42 table, computed once with
    # a plain-Python accumulation of the same gap draws and frozen here
    t = gen_table(1000, seed=42)
    assert sum(t.keys) == 16520144309
    assert list(t.keys[:3]) == [5850, 56572, 99470]
    assert t.keys[-1] == 32964994


def test_capacity_error():
    with pytest.raises(CapacityError):
        gen_table(10**12, fields=1, field_width=8)
    with pytest.raises(CapacityError):
        gen_table(100, fields=10, field_width=10, memory_cap=9999)
    gen_table(100, fields=10, field_width=10, memory_cap=10000)


@pytest.mark.parametrize("args", [(-1, 1, 1), (1, 0, 1), (1, 1, 0)])
def test_generator_preconditions(args):
    with pytest.raises(ValueError):
        gen_table(*args)


# -- searches --------------------------------------------------------------


def test_linear_first_key():
    t = gen_table(100, seed=1)
    assert linear_search(t, t.keys[0]) == linear_search(t, t.keys[0])
    assert linear_search(t, t.keys[0]).comparisons == 1


def test_linear_miss_scans_all():
    t = gen_table(100, seed=1)
    out = linear_search(t, -1)
    assert out.index is None and out.comparisons == 100


def test_linear_mean_near_closed_form():
    n = 1000
    t = gen_table(n, seed=3)
    rng = random.Random(11)
    probes = [t.keys[rng.randrange(n)] for _ in range(2000)]
    mean = sum(linear_search(t, k).comparisons for k in probes) / len(probes)
    assert abs(mean - (n + 1) / 2) <= 0.1 * (n + 1) / 2


def test_binary_single_row():
    t = gen_table(1, seed=1)
    out = binary_search(t, t.keys[0])
    assert out.index == 0 and out.comparisons == 1


def test_binary_bound_1024():
    t = gen_table(1024, seed=9)
    probes = list(t.keys) + [-5, t.keys[-1] + 1] + [k + 1 for k in t.keys[:50] if k + 1 not in set(t.keys)]
    assert max(binary_search(t, k).comparisons for k in probes) <= 11


def test_binary_rejects_unsorted():
    t = SynthTable((3, 1, 2), np.zeros((3, 1), "S1"), sorted_by_key=False)
    with pytest.raises(UnsortedInput):
        binary_search(t, 1)


def test_binary_empty():
    assert binary_search(gen_table(0), 5).comparisons == 0


def test_binary_agrees_with_linear_n256():
    t = gen_table(256, seed=4)
    present = set(t.keys)
    rng = random.Random(0)
    absent = []
    while len(absent) < 100:
        k = rng.randrange(-10, t.keys[-1] + 10)
        if k not in present:
            absent.append(k)
    for k in list(t.keys) + absent:
        assert binary_search(t, k).index == linear_search(t, k).index


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 600), st.integers(0, 2**31), st.data())
def test_binary_bound_property(n, seed, data):
    t = gen_table(n, seed=seed)
    key = data.draw(st.one_of(st.sampled_from(t.keys), st.integers(-10, t.keys[-1] + 10)))
    b, lin = binary_search(t, key), linear_search(t, key)
    assert b.comparisons <= math.floor(math.log2(n)) + 1
    assert lin.comparisons <= n
    assert b.index == lin.index


# -- read case -------------------------------------------------------------


def test_read_case_all_keys_once():
    res = bench_read_case([1024], probes=1024, repeats=1, seed=1)
    (rec,) = res.records
    assert rec.wrong_metric == 512.5
    assert rec.right_metric <= 11
    assert rec.repeats == 1 and rec.wrong_time_ns > 0


def test_read_case_growth():
    res = bench_read_case([16, 256], probes=300, repeats=1, seed=1)
    a, b = res.records
    assert b.wrong_metric > a.wrong_metric
    assert 0 <= b.right_metric - a.right_metric <= 4


def test_read_case_single_probe_single_row():
    (rec,) = bench_read_case([1], probes=1, repeats=1).records
    assert rec.wrong_metric == 1 and rec.right_metric == 1


def test_read_case_metrics_deterministic():
    a = bench_read_case([64, 128], probes=50, repeats=1, seed=3)
    b = bench_read_case([128, 64], probes=50, repeats=2, seed=3)
    assert [(r.n, r.wrong_metric, r.right_metric) for r in a.records] == [
        (r.n, r.wrong_metric, r.right_metric) for r in b.records
    ]


def test_read_case_exact_mean_when_probing_each_key():
    for n in (16, 100, 257):
        (rec,) = bench_read_case([n], probes=n, repeats=1, seed=2).records
        assert rec.wrong_metric == (n + 1) / 2


def test_read_case_preconditions():
    with pytest.raises(ValueError):
        bench_read_case([16], probes=0)
    with pytest.raises(ValueError):
        bench_read_case([16], repeats=0)
    with pytest.raises(CapacityError):
        bench_read_case([10**12], probes=1, repeats=1)


# -- modify case -----------------------------------------------------------


def test_modify_metrics():
    (rec,) = bench_modify_case(50, fields=10, field_width=100, repeats=1).records
    assert (rec.wrong_metric, rec.right_metric) == (1000, 100)
    assert rec.ratio == 10


def test_modify_two_fields_ratio():
    (rec,) = bench_modify_case(8, fields=2, field_width=3, repeats=1).records
    assert rec.ratio == 2


def test_modify_linear_in_width():
    (a,) = bench_modify_case(8, fields=4, field_width=10, repeats=1).records
    (b,) = bench_modify_case(8, fields=4, field_width=20, repeats=1).records
    assert (b.wrong_metric, b.right_metric) == (2 * a.wrong_metric, 2 * a.right_metric)
    assert a.ratio == b.ratio


def test_modify_preconditions():
    with pytest.raises(ValueError):
        bench_modify_case(8, fields=1)
    with pytest.raises(ValueError):
        bench_modify_case(0)
    with pytest.raises(CapacityError):
        bench_modify_case(10**9, fields=10, field_width=1000)


# -- rendering -------------------------------------------------------------


def test_render_empty():
    assert render_bench([]) == ""


def test_render_one_row():
    res = BenchResult("read", "comparisons/probe", (BenchRecord(16, 8.5, 3.375, 10, 5, 1),))
    lines = render_bench([res]).splitlines()
    assert len(lines) == 3
    assert lines[1].split() == ["n", "wrong", "right", "ratio", "wrong_ns", "right_ns"]


def test_render_round_trip():
    res = [
        bench_read_case([16, 100], probes=37, repeats=1, seed=5),
        bench_modify_case([4, 9], fields=3, field_width=5, repeats=1),
    ]
    parsed = parse_bench_table(render_bench(res))
    for r in res:
        rows = parsed[r.case_name]
        assert [(row["n"], row["wrong"], row["right"], row["ratio"]) for row in rows] == [
            (rec.n, rec.wrong_metric, rec.right_metric, rec.ratio) for rec in r.records
        ]
        assert [(row["wrong_ns"], row["right_ns"]) for row in rows] == [
            (rec.wrong_time_ns, rec.right_time_ns) for rec in r.records
        ]


def test_result_validation():
    rec = BenchRecord(16, 1.0, 1.0, 1, 1, 1)
    with pytest.raises(ValueError):
        BenchResult("x", "m", (rec, rec))
    with pytest.raises(ValueError):
        BenchResult("x", "m", (BenchRecord(1, 1.0, 1.0, 1, 1, 0),))


def test_json_dump():
    res = bench_modify_case(4, fields=2, field_width=2, repeats=1)
    doc = json.loads(bench_to_json([res]))
    assert doc[0]["case_name"] == "modify"
    assert doc[0]["records"][0]["wrong_metric"] == 4.0
