"""Ordinal distances and ordered nearest-neighbor graph construction.

An ordered nearest-neighbor graph (ONNG) is built by revealing vertices one
at a time: every vertex after the first sends a single directed edge to the
closest vertex among those already revealed.  "Closest" is purely ordinal,
so a point set is reduced exactly once to a RankedMetric, a strict total
order on all unordered vertex pairs.  Strictness stands in for the usual
general-position assumption (no isosceles triples): every nearest-predecessor
choice is unique, and ties in raw distance are broken deterministically by
the index pair.

Everything here is an immutable value after construction and every operation
is a pure function of its arguments, so no locking or shared state is needed
anywhere downstream.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

# An insertion order is a plain tuple: a permutation of the vertex ids 0..n-1.
Order = tuple[int, ...]

# Below roughly this many vertices, plain Python loops beat numpy overhead.
_NUMPY_MIN_N = 64


def pair_index(i: int, j: int, n: int) -> int:
    """Position of the pair {i, j}, i < j, in the lexicographic pair listing."""
    if not 0 <= i < j < n:
        raise ValueError(f"invalid vertex pair ({i}, {j}) for n={n}")
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def iter_pairs(n: int):
    """All unordered pairs of [0, n) in lexicographic order."""
    return combinations(range(n), 2)


class RankedMetric:
    """Strict total order on the unordered vertex pairs of [0, n).

    ``rank(i, j)`` is a bijection from the n(n-1)/2 pairs onto
    0 .. n(n-1)/2 - 1; smaller rank means closer.  The flat rank vector is
    kept in lexicographic pair order, and a dense symmetric matrix backs
    constant-time lookups (diagonal entries hold an out-of-range sentinel).
    """

    __slots__ = ("n", "_flat", "_matrix")

    def __init__(self, n: int, pair_ranks) -> None:
        if n < 1:
            raise ValueError("a metric needs at least one vertex")
        p = n * (n - 1) // 2
        flat = np.asarray(list(pair_ranks) if not isinstance(pair_ranks, np.ndarray) else pair_ranks)
        if flat.shape != (p,):
            raise ValueError(f"expected {p} pair ranks for n={n}, got {flat.shape}")
        flat = flat.astype(np.int64)
        if p and not np.array_equal(np.sort(flat), np.arange(p)):
            raise ValueError("pair ranks must be a bijection onto 0..n(n-1)/2-1")
        dtype = np.int32 if p < 2**31 - 1 else np.int64
        self.n = n
        self._flat = flat.astype(dtype)
        mat = np.full((n, n), p, dtype=dtype)
        if p:
            iu, ju = np.triu_indices(n, 1)
            mat[iu, ju] = self._flat
            mat[ju, iu] = self._flat
        self._matrix = mat

    @classmethod
    def from_pair_map(cls, n: int, ranks: dict) -> "RankedMetric":
        """Build from a mapping {(i, j): rank}; orientation of keys is free."""
        p = n * (n - 1) // 2
        flat = [-1] * p
        for (i, j), r in ranks.items():
            a, b = (i, j) if i < j else (j, i)
            flat[pair_index(a, b, n)] = r
        if -1 in flat:
            raise ValueError("pair map does not cover all vertex pairs")
        return cls(n, flat)

    def rank(self, i: int, j: int) -> int:
        if i == j or not (0 <= i < self.n and 0 <= j < self.n):
            raise ValueError(f"invalid vertex pair ({i}, {j})")
        return int(self._matrix[i, j])

    def pair_rank_list(self) -> list[int]:
        """Flat ranks in lexicographic pair order, as plain ints."""
        return self._flat.tolist()

    def matrix_rows(self) -> list[list[int]]:
        """Dense rank matrix as nested lists; fast lookups for hot loops."""
        return self._matrix.tolist()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, RankedMetric)
            and self.n == other.n
            and np.array_equal(self._flat, other._flat)
        )

    def __hash__(self) -> int:
        return hash((self.n, self._flat.tobytes()))

    def __repr__(self) -> str:
        return f"RankedMetric(n={self.n})"


@dataclass(frozen=True)
class PointSet:
    """Points in R^dim with pairwise-distinct coordinate tuples.

    Coordinates may be ints, Fractions, or floats; they are converted once to
    exact rationals (floats are exact binary rationals) so that all distance
    comparisons downstream are free of rounding.
    """

    dim: int
    points: tuple[tuple, ...]

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ValueError("dimension must be at least 1")
        exact = []
        for idx, pt in enumerate(self.points):
            if len(pt) != self.dim:
                raise ValueError(f"point {idx} has {len(pt)} coordinates, expected {self.dim}")
            try:
                exact.append(tuple(Fraction(c) for c in pt))
            except (ValueError, OverflowError, TypeError) as e:
                raise ValueError(f"point {idx} has a non-finite or non-numeric coordinate") from e
        seen: dict = {}
        for idx, pt in enumerate(exact):
            if pt in seen:
                raise ValueError(f"points {seen[pt]} and {idx} are identical")
            seen[pt] = idx
        object.__setattr__(self, "_exact", tuple(exact))

    @classmethod
    def from_rows(cls, rows) -> "PointSet":
        rows = [tuple(r) for r in rows]
        if not rows:
            raise ValueError("need at least one point")
        return cls(len(rows[0]), tuple(rows))

    @property
    def n(self) -> int:
        return len(self.points)

    def exact(self) -> tuple[tuple[Fraction, ...], ...]:
        return self._exact  # type: ignore[attr-defined]


def integer_grid(ps: PointSet) -> tuple[list[tuple[int, ...]], bool]:
    """Rescale all coordinates exactly onto a common integer grid.

    Returns the integer coordinates and whether squared distances are safe
    in int64 (if not, callers must stay on arbitrary-precision ints).
    """
    den = 1
    for pt in ps.exact():
        for c in pt:
            den = math.lcm(den, c.denominator)
    grid = [tuple(c.numerator * (den // c.denominator) for c in pt) for pt in ps.exact()]
    lo = min(c for pt in grid for c in pt)
    hi = max(c for pt in grid for c in pt)
    fits64 = ps.dim * (hi - lo) ** 2 < 2**62
    return grid, fits64


def sq_dist(p: tuple[int, ...], q: tuple[int, ...]) -> int:
    return sum((a - b) ** 2 for a, b in zip(p, q))


def _ranks_python(grid, n: int) -> list[int]:
    items = []
    for i in range(n):
        gi = grid[i]
        for j in range(i + 1, n):
            items.append((sq_dist(gi, grid[j]), i, j))
    items.sort()
    flat = [0] * len(items)
    for r, (_, i, j) in enumerate(items):
        flat[pair_index(i, j, n)] = r
    return flat


def _ranks_numpy(grid, n: int) -> np.ndarray:
    x = np.asarray(grid, dtype=np.int64)
    p = n * (n - 1) // 2
    d2 = np.empty(p, dtype=np.int64)
    pos = 0
    for i in range(n - 1):
        diff = x[i + 1 :] - x[i]
        m = diff.shape[0]
        d2[pos : pos + m] = (diff * diff).sum(axis=1)
        pos += m
    iu, ju = np.triu_indices(n, 1)
    # primary key squared distance, ties by (i, j): last lexsort key is primary
    order = np.lexsort((ju, iu, d2))
    flat = np.empty(p, dtype=np.int64)
    flat[order] = np.arange(p)
    return flat


def metric_from_points(ps: PointSet) -> RankedMetric:
    """Ordinal form of a point set: pairs sorted by squared distance.

    Squared distances are compared exactly (integer arithmetic after common
    rescaling); exact ties are broken by the sorted index pair, smaller
    (min, max) first.  Distinctness of the points is enforced by PointSet.
    """
    n = ps.n
    if n == 1:
        return RankedMetric(1, ())
    grid, fits64 = integer_grid(ps)
    if fits64 and n >= _NUMPY_MIN_N:
        return RankedMetric(n, _ranks_numpy(grid, n))
    return RankedMetric(n, _ranks_python(grid, n))


@dataclass(frozen=True)
class OrderedNNG:
    """Result of one insertion run: each non-first vertex points at its parent."""

    n: int
    parent: dict[int, int]
    indegree: tuple[int, ...]


def as_permutation(order, n: int) -> list[int]:
    """Validate that ``order`` is a permutation of 0..n-1; report offenders."""
    seq = [int(v) for v in order]
    if len(seq) == n and sorted(seq) == list(range(n)):
        return seq
    seen: set[int] = set()
    dup = sorted({v for v in seq if v in seen or seen.add(v)})  # type: ignore[func-returns-value]
    missing = sorted(set(range(n)) - set(seq))
    alien = sorted({v for v in seq if not 0 <= v < n})
    parts = []
    if missing:
        parts.append(f"missing ids {missing}")
    if dup:
        parts.append(f"duplicate ids {dup}")
    if alien:
        parts.append(f"out-of-range ids {alien}")
    raise ValueError(f"order is not a permutation of 0..{n - 1}: " + "; ".join(parts))


def build_onng(m: RankedMetric, order) -> OrderedNNG:
    """Replay an insertion order: each new vertex attaches to the rank-closest
    predecessor.  Strict ranks make the choice unique."""
    n = m.n
    seq = as_permutation(order, n)
    parent: dict[int, int] = {}
    indeg = [0] * n
    if n > _NUMPY_MIN_N:
        mat = m._matrix
        arr = np.asarray(seq)
        for p in range(1, n):
            v = seq[p]
            k = int(mat[v, arr[:p]].argmin())
            u = seq[k]
            parent[v] = u
            indeg[u] += 1
    else:
        rows = m.matrix_rows()
        for p in range(1, n):
            v = seq[p]
            row = rows[v]
            u = seq[0]
            best = row[u]
            for q in range(1, p):
                w = seq[q]
                r = row[w]
                if r < best:
                    u, best = w, r
            parent[v] = u
            indeg[u] += 1
    return OrderedNNG(n, parent, tuple(indeg))


def max_indegree(g: OrderedNNG) -> int:
    return max(g.indegree)


def path_order(m: RankedMetric, tail: int) -> Order:
    """Order whose ONNG is a single directed path ending at the first vertex.

    Built backwards from the chosen tail: repeatedly step to the nearest
    not-yet-chosen vertex, then reverse.  Revealed forwards, every new vertex
    is strictly closer to its chain predecessor than to anything revealed
    earlier, so indegrees never exceed 1 and the tail is the path's source.
    """
    n = m.n
    if not 0 <= tail < n:
        raise ValueError(f"tail {tail} out of range for n={n}")
    if n == 1:
        return (tail,)
    chain = [tail]
    if n > 2 * _NUMPY_MIN_N:
        mat = m._matrix
        alive = np.ones(n, dtype=bool)
        alive[tail] = False
        cur = tail
        for _ in range(n - 1):
            cand = np.flatnonzero(alive)
            cur = int(cand[mat[cur, cand].argmin()])
            chain.append(cur)
            alive[cur] = False
    else:
        rows = m.matrix_rows()
        remaining = set(range(n))
        remaining.discard(tail)
        cur = tail
        for _ in range(n - 1):
            row = rows[cur]
            cur = min(remaining, key=row.__getitem__)
            chain.append(cur)
            remaining.discard(cur)
    chain.reverse()
    return tuple(chain)


def random_rank_metric(n: int, rng: random.Random) -> RankedMetric:
    """Uniformly random strict pair order on [0, n)."""
    flat = list(range(n * (n - 1) // 2))
    rng.shuffle(flat)
    return RankedMetric(n, flat)
