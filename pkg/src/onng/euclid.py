"""Insertion orders for point sets in R^d: diameter split plus grid clustering.

The recursion mirrors the 1-D strategy but needs a clustering step.  Take a
diameter pair (a, b), keep the half A of points at least as close to a as
to b (ordinally, so no point is ever equidistant), and cover A by a grid of
half-open cubical cells of side |ab| / (2 sqrt(d)).  Cells have diameter
strictly below |ab| / 2 while every point of A sits at distance at least
|ab| / 2 from the far endpoint, so the largest cell C can be ordered
recursively as if the far endpoint were absent.  Revealing center-of-C
first and the far endpoint second adds one incoming edge per level.

The cell count per level is at most (floor(2 sqrt(d)) + 1)^d, so the center
collects at least log(n) / log(2 (floor(2 sqrt(d)) + 1)^d) edges.

All geometry is exact: coordinates are rescaled to a common integer grid
and cell indices come from integer square roots, so the strict separation
inequalities above are real inequalities, not float approximations.
"""

from __future__ import annotations

import math

import numpy as np

from .core import Order, PointSet, integer_grid, sq_dist

# Largest dimension for which 2 * grid_cell_bound(d) <= 16^d, keeping the
# grid guarantee at least as strong as floor(log2(n) / 4d).  First failure
# is d = 57; we advertise the comfortable range only.
PARITY_MAX_DIM = 49


def grid_cell_bound(dim: int) -> int:
    """Max number of grid cells a set of diameter <= unit can touch."""
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    return (math.isqrt(4 * dim) + 1) ** dim


def grid_guarantee(n: int, dim: int) -> int:
    """floor(log(n) / log(2 * cells)), forced to >= 1 for n >= 2."""
    if n < 2:
        return 0
    base = 2 * grid_cell_bound(dim)
    t = 0
    while base ** (t + 1) <= n:
        t += 1
    return max(t, 1)


def log_guarantee(n: int, dim: int) -> int:
    """floor(log2(n) / (4 dim)); the classical covering-based bound."""
    if n < 2:
        return 0
    return (n.bit_length() - 1) // (4 * dim)


def _pair_key(d2: int, i: int, j: int) -> tuple:
    a, b = (i, j) if i < j else (j, i)
    return (d2, a, b)


def _diameter_ids(grid, ids: list[int], fits64: bool) -> tuple[int, int]:
    # Largest squared distance; among ties the lexicographically smallest
    # index pair wins (strict > while scanning pairs in lex order).
    if fits64 and len(ids) >= 128:
        x = np.asarray([grid[i] for i in ids], dtype=np.int64)
        best = (-1, -1, -1)
        for r in range(len(ids) - 1):
            diff = x[r + 1 :] - x[r]
            d2 = (diff * diff).sum(axis=1)
            k = int(d2.argmax())
            if int(d2[k]) > best[0]:
                best = (int(d2[k]), r, r + 1 + k)
        return ids[best[1]], ids[best[2]]
    best_d2 = -1
    pair = (ids[0], ids[0])
    for r, i in enumerate(ids):
        gi = grid[i]
        for j in ids[r + 1 :]:
            d2 = sq_dist(gi, grid[j])
            if d2 > best_d2:
                best_d2 = d2
                pair = (i, j)
    return pair


def _halfspace_ids(grid, ids: list[int], a: int, b: int) -> tuple[list[int], list[int], int]:
    """Split ids by ordinal closeness to a vs b; returns (major, minor, far)."""
    ga, gb = grid[a], grid[b]
    near_a = []
    near_b = []
    for p in ids:
        if p == a:
            near_a.append(p)
            continue
        if p == b:
            near_b.append(p)
            continue
        gp = grid[p]
        if _pair_key(sq_dist(gp, ga), p, a) < _pair_key(sq_dist(gp, gb), p, b):
            near_a.append(p)
        else:
            near_b.append(p)
    if len(near_a) >= len(near_b):
        return near_a, near_b, b
    return near_b, near_a, a


def _cells(grid, ids: list[int], unit_sq: int, dim: int) -> dict[tuple, list[int]]:
    mins = tuple(min(grid[i][ax] for i in ids) for ax in range(dim))
    out: dict[tuple, list[int]] = {}
    for i in ids:
        # cell index floor(2 q sqrt(d) / sqrt(unit_sq)) via exact isqrt:
        # floor(sqrt(4 q^2 d / M)) = isqrt(4 q^2 d * M) // M for M = unit_sq.
        idx = tuple(
            math.isqrt(4 * (grid[i][ax] - mins[ax]) ** 2 * dim * unit_sq) // unit_sq
            for ax in range(dim)
        )
        out.setdefault(idx, []).append(i)
    return out


def diameter_pair(ps: PointSet) -> tuple[int, int]:
    """A pair realizing the maximum distance, ties broken toward the
    lexicographically smallest index pair; returns (a, b) with a < b."""
    if ps.n < 2:
        raise ValueError("need at least two points")
    grid, fits64 = integer_grid(ps)
    return _diameter_ids(grid, list(range(ps.n)), fits64)


def halfspace_split(ps: PointSet, a: int, b: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Partition all vertices by ordinal closeness to a versus b.

    The first returned set is the larger one (>= n/2) and contains exactly
    one of {a, b}, namely its own anchor.  The strict pair order means no
    vertex is ever equidistant, so the split is total and deterministic.
    """
    if a == b or not (0 <= a < ps.n and 0 <= b < ps.n):
        raise ValueError(f"invalid anchor pair ({a}, {b})")
    grid, _ = integer_grid(ps)
    major, minor, _far = _halfspace_ids(grid, list(range(ps.n)), a, b)
    return tuple(major), tuple(minor)


def grid_partition(ps: PointSet, members, unit_sq) -> list[tuple[int, ...]]:
    """Cover the given vertices by half-open cubical cells of side
    sqrt(unit_sq) / (2 sqrt(dim)), anchored at their coordinate-wise minimum.

    ``unit_sq`` is the squared normalizing length (kept squared so the
    computation stays in exact integers).  Each returned cluster has
    diameter strictly below sqrt(unit_sq) / 2, and there are at most
    grid_cell_bound(dim) clusters when the members span at most
    sqrt(unit_sq) per axis.  Clusters come back sorted by cell index.
    """
    ids = sorted(int(v) for v in members)
    if not ids:
        raise ValueError("cannot partition an empty vertex set")
    if not (0 <= ids[0] and ids[-1] < ps.n):
        raise ValueError("member ids out of range")
    grid, _ = integer_grid(ps)
    us = int(unit_sq)
    if us <= 0:
        raise ValueError("unit_sq must be positive")
    cells = _cells(grid, ids, us, ps.dim)
    return [tuple(cells[key]) for key in sorted(cells)]


def order_euclid(ps: PointSet) -> tuple[Order, int, int]:
    """Insertion order, its center, and the grid guarantee for that order.

    The center's indegree in the rebuilt ONNG is at least the returned
    guarantee, and also at least floor(log2(n) / 4d) for dim <= 49.
    """
    order, center, guarantee, _fars = _order_euclid_levels(ps)
    return order, center, guarantee


def _order_euclid_levels(ps: PointSet) -> tuple[Order, int, int, list[int]]:
    n, dim = ps.n, ps.dim
    if dim <= PARITY_MAX_DIM:
        assert 2 * grid_cell_bound(dim) <= 16**dim
    grid, fits64 = integer_grid(ps)
    cell_cap = grid_cell_bound(dim)
    fars: list[int] = []

    def rec(ids: list[int]) -> tuple[list[int], int]:
        if len(ids) == 1:
            return [ids[0]], ids[0]
        if len(ids) == 2:
            u, w = sorted(ids)
            fars.append(w)
            return [u, w], u
        a, b = _diameter_ids(grid, ids, fits64)
        major, _minor, far = _halfspace_ids(grid, ids, a, b)
        unit_sq = sq_dist(grid[a], grid[b])
        cells = _cells(grid, major, unit_sq, dim)
        assert len(cells) <= cell_cap, "cell count exceeded the provable cap"
        cluster = max(sorted(cells), key=lambda key: len(cells[key]))
        c_ids = cells[cluster]
        sub, center = rec(sorted(c_ids))
        fars.append(far)
        in_c = set(c_ids)
        rest = sorted(i for i in ids if i not in in_c and i != far)
        return [center, far] + sub[1:] + rest, center

    order, center = rec(list(range(n)))
    fars.reverse()  # outermost level first, matching order[1:1+len(fars)]
    return tuple(order), center, grid_guarantee(n, dim), fars
