"""Paired-solution micro-benchmarks for the READ and MODIFY guidelines.

Every case runs a "wrong" and a "right" implementation of the same task on
synthetic internal tables.  The primary metric is deterministic (key
comparisons for READ, bytes written per row for MODIFY); wall time is
reported alongside but never asserted.

Example
-------
>>> t = gen_table(8, fields=1, field_width=4, seed=1)
>>> linear_search(t, t.keys[0]).comparisons
1
"""
from __future__ import annotations

import json
import math
import statistics
import time
from dataclasses import asdict, dataclass
from typing import Callable, Optional, Sequence, TypeVar

import numpy as np

__all__ = [
    "DEFAULT_MEMORY_CAP",
    "BenchRecord",
    "BenchResult",
    "CapacityError",
    "SearchOutcome",
    "SynthTable",
    "UnsortedInput",
    "bench_modify_case",
    "bench_read_case",
    "bench_to_json",
    "gen_table",
    "linear_search",
    "binary_search",
    "parse_bench_table",
    "render_bench",
]

T = TypeVar("T")

DEFAULT_MEMORY_CAP = 1 << 30  # bytes of payload
MAX_KEY_GAP = 1 << 16


class CapacityError(ValueError):
    """The requested table would exceed the payload memory cap."""


class UnsortedInput(ValueError):
    """Binary search was asked to run on a table not sorted by key."""


@dataclass(frozen=True, eq=False)
class SynthTable:
    """Synthetic internal table.

    ``keys`` holds the row keys as Python ints (fast to scan); ``payload`` is
    an ``(n, fields)`` array of fixed-width byte strings.
    """

    keys: tuple[int, ...]
    payload: np.ndarray
    sorted_by_key: bool = True

    def __len__(self) -> int:
        return len(self.keys)


def gen_table(
    n: int,
    fields: int = 1,
    field_width: int = 8,
    seed: int = 1,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> SynthTable:
    """Generate a deterministic table of ``n`` rows sorted by key.

    Keys are the running sum of ``n`` gaps drawn uniformly from
    ``[1, MAX_KEY_GAP)`` with ``numpy.random.default_rng(seed)``, so they are
    distinct and strictly increasing.  Payload bytes are upper-case letters
    drawn from the same generator after the gaps.
    """
    if n < 0 or fields < 1 or field_width < 1:
        raise ValueError("need n >= 0, fields >= 1 and field_width >= 1")
    if n * fields * field_width > memory_cap:
        raise CapacityError(
            f"table of {n} rows x {fields} fields x {field_width} bytes exceeds the "
            f"{memory_cap}-byte memory cap"
        )
    rng = np.random.default_rng(seed)
    gaps = rng.integers(1, MAX_KEY_GAP, size=n, dtype=np.int64)
    keys = np.cumsum(gaps, dtype=np.int64)
    letters = rng.integers(ord("A"), ord("Z") + 1, size=(n, fields, field_width), dtype=np.uint8)
    payload = letters.view(f"S{field_width}").reshape(n, fields)
    return SynthTable(tuple(keys.tolist()), payload, True)


@dataclass(frozen=True)
class SearchOutcome:
    index: Optional[int]
    comparisons: int


def linear_search(t: SynthTable, key: int) -> SearchOutcome:
    """Front-to-back scan, one comparison per row visited."""
    comparisons = 0
    for i, k in enumerate(t.keys):
        comparisons += 1
        if k == key:
            return SearchOutcome(i, comparisons)
    return SearchOutcome(None, comparisons)


def binary_search(t: SynthTable, key: int) -> SearchOutcome:
    """Half-interval search; each three-way key comparison counts once.

    At most ``floor(log2 n) + 1`` comparisons for ``n >= 1``.
    """
    if not t.sorted_by_key:
        raise UnsortedInput("binary search needs a table sorted by key")
    keys = t.keys
    lo, hi = 0, len(keys) - 1
    comparisons = 0
    while lo <= hi:
        mid = (lo + hi) // 2
        k = keys[mid]
        comparisons += 1
        if k == key:
            return SearchOutcome(mid, comparisons)
        if k < key:
            lo = mid + 1
        else:
            hi = mid - 1
    return SearchOutcome(None, comparisons)


@dataclass(frozen=True)
class BenchRecord:
    n: int
    wrong_metric: float
    right_metric: float
    wrong_time_ns: int
    right_time_ns: int
    repeats: int

    @property
    def ratio(self) -> float:
        return self.wrong_metric / self.right_metric if self.right_metric else math.inf


@dataclass(frozen=True)
class BenchResult:
    case_name: str
    metric: str
    records: tuple[BenchRecord, ...]

    def __post_init__(self) -> None:
        sizes = [r.n for r in self.records]
        if any(b <= a for a, b in zip(sizes, sizes[1:])):
            raise ValueError("record sizes must be strictly increasing")
        if any(r.repeats < 1 for r in self.records):
            raise ValueError("repeats must be >= 1")


def _median_time(fn: Callable[[], T], repeats: int) -> tuple[int, T]:
    """Median wall time over ``repeats`` runs, plus the result of the untimed
    warm-up run that precedes them."""
    result = fn()
    times = []
    for _ in range(repeats):
        start = time.perf_counter_ns()
        fn()
        times.append(time.perf_counter_ns() - start)
    return int(statistics.median(times)), result


def _probe_keys(t: SynthTable, probes: int, seed: int) -> list[int]:
    """``probes`` existing keys; each full pass is a fresh permutation, so
    ``probes == n`` visits every key exactly once."""
    n = len(t)
    rng = np.random.default_rng([seed, n])
    order: list[int] = []
    while len(order) < probes:
        order.extend(rng.permutation(n).tolist())
    return [t.keys[i] for i in order[:probes]]


def bench_read_case(
    sizes: Sequence[int],
    probes: int = 1000,
    repeats: int = 5,
    seed: int = 1,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> BenchResult:
    """READ TABLE ... WITH KEY: linear scan versus binary search.

    Metrics are the mean comparisons per probe; times are the median wall
    time of the whole probe batch.
    """
    if probes < 1 or repeats < 1:
        raise ValueError("probes and repeats must be >= 1")
    if any(n < 1 for n in sizes):
        raise ValueError("sizes must be >= 1")
    records = []
    for n in sorted(set(sizes)):
        t = gen_table(n, 1, 8, seed, memory_cap)
        keys = _probe_keys(t, probes, seed)
        wrong_ns, lin = _median_time(lambda: [linear_search(t, k) for k in keys], repeats)
        right_ns, bin_ = _median_time(lambda: [binary_search(t, k) for k in keys], repeats)
        if [o.index for o in lin] != [o.index for o in bin_]:
            raise AssertionError("linear and binary search disagree")
        records.append(
            BenchRecord(
                n=n,
                wrong_metric=sum(o.comparisons for o in lin) / probes,
                right_metric=sum(o.comparisons for o in bin_) / probes,
                wrong_time_ns=wrong_ns,
                right_time_ns=right_ns,
                repeats=repeats,
            )
        )
    return BenchResult("read", "comparisons/probe", tuple(records))


def _modify_record(t: SynthTable, field_width: int, repeats: int) -> BenchRecord:
    n, fields = t.payload.shape
    target = t.payload.copy()
    work_area = t.payload[0].copy()

    # every row is updated from the same work area in one vectorized pass, so
    # the timing reflects bytes moved rather than interpreter overhead
    def whole_line() -> None:
        target[:] = work_area

    def one_field() -> None:
        target[:, 0] = work_area[0]

    return BenchRecord(
        n=n,
        wrong_metric=float(fields * field_width),
        right_metric=float(field_width),
        wrong_time_ns=_median_time(whole_line, repeats)[0],
        right_time_ns=_median_time(one_field, repeats)[0],
        repeats=repeats,
    )


def bench_modify_case(
    n: int | Sequence[int],
    fields: int = 10,
    field_width: int = 100,
    repeats: int = 5,
    seed: int = 1,
    memory_cap: int = DEFAULT_MEMORY_CAP,
) -> BenchResult:
    """MODIFY from a work area: whole line versus one transported field.

    Metrics are bytes written per row.  ``n`` may be one size or several.
    """
    sizes = [n] if isinstance(n, int) else sorted(set(n))
    if any(s < 1 for s in sizes) or fields < 2 or repeats < 1:
        raise ValueError("need n >= 1, fields >= 2 and repeats >= 1")
    records = []
    for size in sizes:
        t = gen_table(size, fields, field_width, seed, memory_cap)
        records.append(_modify_record(t, field_width, repeats))
    return BenchResult("modify", "bytes/row", tuple(records))


_COLUMNS = ("n", "wrong", "right", "ratio", "wrong_ns", "right_ns")


def _fmt(x: float) -> str:
    # repr round-trips floats exactly; integers stay plain
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def render_bench(results: Sequence[BenchResult]) -> str:
    """Aligned text table per case: n, metrics, ratio, median times."""
    blocks = []
    for res in results:
        rows = [
            [str(r.n), _fmt(r.wrong_metric), _fmt(r.right_metric), _fmt(r.ratio),
             str(r.wrong_time_ns), str(r.right_time_ns)]
            for r in res.records
        ]
        widths = [max(len(c), *(len(row[i]) for row in rows)) if rows else len(c)
                  for i, c in enumerate(_COLUMNS)]
        lines = [f"case {res.case_name} ({res.metric})"]
        lines.append("  ".join(c.rjust(w) for c, w in zip(_COLUMNS, widths)))
        lines.extend("  ".join(v.rjust(w) for v, w in zip(row, widths)) for row in rows)
        blocks.append("\n".join(lines) + "\n")
    return "\n".join(blocks)


def parse_bench_table(text: str) -> dict[str, list[dict[str, float]]]:
    """Read back the output of :func:`render_bench`."""
    out: dict[str, list[dict[str, float]]] = {}
    current: Optional[list] = None
    for line in text.splitlines():
        if line.startswith("case "):
            current = out.setdefault(line.split()[1], [])
        elif line.split() and line.split()[0] == "n":
            continue
        elif line.strip() and current is not None:
            current.append(dict(zip(_COLUMNS, map(float, line.split()))))
    return out


def bench_to_json(results: Sequence[BenchResult]) -> str:
    return json.dumps([asdict(r) for r in results], indent=2)
