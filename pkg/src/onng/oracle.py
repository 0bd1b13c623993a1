"""Exhaustive ground truth: all insertion orders, and all rank metrics.

Two guards keep the factorials honest: order enumeration is capped at
n <= 10 (10! insertion runs) and rank-metric enumeration at n <= 5
((n(n-1)/2)! pair orders, 3,628,800 at n=5).  Callers beyond the guard get
a GuardError, never a silent truncation.

The full-scan search computes, for every rank metric, the profile
d(v) = max over all insertion orders of the indegree of v, and the exact
dyadic sum over v of 2^(-d(v)).  The scan is vectorized over batches of
metrics (the per-order argmin tables depend only on n), with all arithmetic
in integers: sums are scaled by 2^(n-1), so "sum > 1" is an integer
comparison and the reported values are exact Fractions.

The scan splits into independent lexicographic blocks by the rank assigned
to the pair {0, 1}; blocks are merged in block order, so the result is
identical at every parallelism degree.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import islice, permutations
from typing import Iterator

import numpy as np

from .core import Order, RankedMetric, pair_index

ORDER_ENUM_MAX_N = 10
METRIC_ENUM_MAX_N = 5


class GuardError(ValueError):
    """Raised when a request exceeds an exhaustive-search size guard."""


def _check_order_guard(n: int) -> None:
    if n > ORDER_ENUM_MAX_N:
        raise GuardError(f"n={n} exceeds the order-enumeration guard (n <= {ORDER_ENUM_MAX_N})")


def _scan_all_orders(m: RankedMetric) -> tuple[int, Order, tuple[int, ...]]:
    """One pass over all n! orders: best value, first best order, profile."""
    n = m.n
    rows = m.matrix_rows()
    profile = [0] * n
    best_val = -1
    best_order: Order = ()
    for perm in permutations(range(n)):
        indeg = [0] * n
        mx = 0
        for p in range(1, n):
            v = perm[p]
            row = rows[v]
            u = perm[0]
            br = row[u]
            for q in range(1, p):
                w = perm[q]
                r = row[w]
                if r < br:
                    u, br = w, r
            t = indeg[u] + 1
            indeg[u] = t
            if t > mx:
                mx = t
        for v in range(n):
            if indeg[v] > profile[v]:
                profile[v] = indeg[v]
        if mx > best_val:
            best_val = mx
            best_order = perm
    return best_val, best_order, tuple(profile)


def best_order_exhaustive(m: RankedMetric) -> tuple[Order, int]:
    """The first order (in lexicographic enumeration) achieving the maximum
    possible max indegree, together with that value."""
    _check_order_guard(m.n)
    val, order, _ = _scan_all_orders(m)
    return order, val


def degree_profile_exhaustive(m: RankedMetric) -> tuple[int, ...]:
    """d(v) = max over all insertion orders of the indegree of v."""
    _check_order_guard(m.n)
    return _scan_all_orders(m)[2]


def problem1_sum(m: RankedMetric) -> Fraction:
    """Exact dyadic sum over v of 2^(-d(v)); floats never enter."""
    profile = degree_profile_exhaustive(m)
    return sum((Fraction(1, 2**d) for d in profile), Fraction(0))


# ---------------------------------------------------------------- metrics --


@lru_cache(maxsize=None)
def _relabel_maps(n: int) -> tuple[tuple[int, ...], ...]:
    """For each non-identity vertex relabeling s, the index map M with
    relabeled[q] = t[M[q]] for flat rank vectors t."""
    p = n * (n - 1) // 2
    maps = []
    for sigma in permutations(range(n)):
        if sigma == tuple(range(n)):
            continue
        m = [0] * p
        for i in range(n):
            for j in range(i + 1, n):
                si, sj = sigma[i], sigma[j]
                if si > sj:
                    si, sj = sj, si
                m[pair_index(si, sj, n)] = pair_index(i, j, n)
        maps.append(tuple(m))
    return tuple(maps)


def _is_canonical(t: tuple[int, ...], maps) -> bool:
    for m in maps:
        for q in range(len(t)):
            a = t[m[q]]
            b = t[q]
            if a < b:
                return False
            if a > b:
                break
    return True


def enumerate_rank_metrics(n: int, canonical: bool = False) -> Iterator[RankedMetric]:
    """All (n(n-1)/2)! rank metrics in lexicographic order of their flat rank
    vectors; with ``canonical`` only the lexicographically minimal
    representative of each vertex-relabeling class is yielded."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > METRIC_ENUM_MAX_N:
        raise GuardError(f"n={n} exceeds the metric-enumeration guard (n <= {METRIC_ENUM_MAX_N})")
    p = n * (n - 1) // 2
    maps = _relabel_maps(n) if canonical else ()
    for t in permutations(range(p)):
        if canonical and not _is_canonical(t, maps):
            continue
        yield RankedMetric(n, t)


@dataclass(frozen=True)
class Problem1Report:
    """Outcome of a full scan.  ``orderings_scanned`` counts the pair
    orderings whose profile was evaluated (all of them, or one canonical
    representative per relabeling class).  Counterexamples carry the flat
    rank vector verbatim and the offending exact sum."""

    n: int
    canonical: bool
    orderings_scanned: int
    max_sum: Fraction
    witnesses_at_one: int
    counterexamples: tuple[tuple[tuple[int, ...], Fraction], ...]


@lru_cache(maxsize=None)
def _order_tables(n: int):
    orders = list(permutations(range(n)))
    orders_arr = np.array(orders, dtype=np.int8)
    cols_by_p = {}
    for p in range(1, n):
        cols_by_p[p] = np.array(
            [
                [pair_index(min(o[p], o[q]), max(o[p], o[q]), n) for q in range(p)]
                for o in orders
            ],
            dtype=np.int16,
        )
    return orders_arr, cols_by_p


def _profiles_batch(r: np.ndarray, n: int) -> np.ndarray:
    """Degree profiles for a batch of flat rank vectors, shape (B, n)."""
    orders_arr, cols_by_p = _order_tables(n)
    f = orders_arr.shape[0]
    b = r.shape[0]
    oidx = np.arange(f)[None, :]
    parents = np.empty((b, f, n - 1), dtype=np.int8)
    for p in range(1, n):
        gathered = r[:, cols_by_p[p]]  # (B, F, p)
        amin = gathered.argmin(axis=2)  # unique: ranks are distinct
        parents[:, :, p - 1] = orders_arr[oidx, amin]
    d = np.empty((b, n), dtype=np.int8)
    for v in range(n):
        indeg = (parents == v).sum(axis=2, dtype=np.int8)
        d[:, v] = indeg.max(axis=1)
    return d


def _canonical_mask(r: np.ndarray, n: int) -> np.ndarray:
    maps = _relabel_maps(n)
    b = r.shape[0]
    alive = np.ones(b, dtype=bool)
    rows = np.arange(b)
    for m in maps:
        perm_t = r[:, np.asarray(m)]
        neq = perm_t != r
        has = neq.any(axis=1)
        first = neq.argmax(axis=1)
        smaller = has & (perm_t[rows, first] < r[rows, first])
        alive &= ~smaller
        if not alive.any():
            break
    return alive


def _scan_block(args) -> tuple[int, int, int, list]:
    """Scan the lexicographic block where pair {0, 1} has the given rank.

    Returns (evaluated, max_scaled, witnesses, counterexamples); sums are
    scaled by 2^(n-1) so everything stays in integers.
    """
    n, first_rank, canonical = args
    p = n * (n - 1) // 2
    rest = [v for v in range(p) if v != first_rank]
    target = 2 ** (n - 1)
    lut = np.array([2 ** (n - 1 - t) if t <= n - 1 else 0 for t in range(n + 1)], dtype=np.int64)
    f = 1
    for t in range(2, n + 1):
        f *= t
    batch = max(1024, 24_000_000 // max(1, f * (n - 1)))
    evaluated = 0
    max_scaled = -1
    witnesses = 0
    cex: list[tuple[tuple[int, ...], Fraction]] = []
    it = permutations(rest)
    while True:
        chunk = list(islice(it, batch))
        if not chunk:
            break
        r = np.empty((len(chunk), p), dtype=np.int8)
        r[:, 0] = first_rank
        if p > 1:
            r[:, 1:] = np.array(chunk, dtype=np.int8)
        if canonical:
            alive = _canonical_mask(r, n)
            r = r[alive]
            if r.shape[0] == 0:
                continue
        evaluated += r.shape[0]
        d = _profiles_batch(r, n)
        scaled = lut[d].sum(axis=1)
        mx = int(scaled.max())
        if mx > max_scaled:
            max_scaled = mx
        witnesses += int((scaled == target).sum())
        for idx in np.flatnonzero(scaled > target):
            cex.append((tuple(int(x) for x in r[idx]), Fraction(int(scaled[idx]), target)))
    return evaluated, max_scaled, witnesses, cex


def problem1_search(n: int, canonical: bool = False, jobs: int = 1) -> Problem1Report:
    """Scan every rank metric on n vertices and report the maximum of the
    exact dyadic sum over v of 2^(-d(v)), all equality witnesses, and any
    counterexample exceeding 1.

    The result is identical for every ``jobs`` value; parallelism only
    distributes the lexicographic blocks."""
    if n < 1:
        raise ValueError("n must be at least 1")
    if n > METRIC_ENUM_MAX_N:
        raise GuardError(f"n={n} exceeds the metric-enumeration guard (n <= {METRIC_ENUM_MAX_N})")
    if n == 1:
        return Problem1Report(1, canonical, 1, Fraction(1), 1, ())
    p = n * (n - 1) // 2
    args = [(n, first, canonical) for first in range(p)]
    if jobs > 1 and len(args) > 1:
        with multiprocessing.Pool(processes=min(jobs, len(args))) as pool:
            results = pool.map(_scan_block, args)
    else:
        results = [_scan_block(a) for a in args]
    evaluated = sum(r[0] for r in results)
    max_scaled = max(r[1] for r in results)
    witnesses = sum(r[2] for r in results)
    cex: list = []
    for r in results:
        cex.extend(r[3])
    return Problem1Report(
        n=n,
        canonical=canonical,
        orderings_scanned=evaluated,
        max_sum=Fraction(max_scaled, 2 ** (n - 1)),
        witnesses_at_one=witnesses,
        counterexamples=tuple(cex),
    )
