"""Vectorized enumeration kernels.

Everything here works on plain integer arrays (cells are x*p + y, direction
ids are slopes 0..p-1 plus p for vertical) and exists to push censuses of
10**7..10**8 instances through numpy at usable speed. The pure object layer
in fp/poly/plane is the reference semantics; the test suite pins these
kernels against it on exhaustive small cases and seeded samples.

Sampling is counter based: every drawn object is a pure function of
(seed, global index), so splitting an index range across workers can never
change what gets drawn.
"""

from __future__ import annotations

from functools import lru_cache
from math import comb

import numpy as np

from .poly import interpolation_matrix

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _mix64(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def stream_u64(seed: int, counters: np.ndarray) -> np.ndarray:
    """Deterministic 64-bit values indexed by (seed, counter), splitmix-style."""
    with np.errstate(over="ignore"):  # uint64 wrap-around is the point
        z = np.asarray(counters, dtype=np.uint64) * _GOLDEN
        z = z + _mix64(np.uint64(seed & 0xFFFFFFFFFFFFFFFF) + _GOLDEN)
        return _mix64(_mix64(z))


def base_digits(indices: np.ndarray, base: int, width: int) -> np.ndarray:
    """Little-endian base-p digits; row i holds the digits of indices[i]."""
    out = np.empty((len(indices), width), dtype=np.int64)
    r = np.asarray(indices, dtype=np.int64).copy()
    for j in range(width):
        out[:, j] = r % base
        r //= base
    return out


def unrank_combinations(ranks: np.ndarray, n: int, k: int) -> np.ndarray:
    """The lexicographic rank-th k-subsets of {0..n-1}, one row per rank.

    Greedy digit-by-digit unranking of the combinatorial number system,
    vectorized with searchsorted over the binomial columns. Only valid while
    C(n, k) fits comfortably in int64, which the enumeration guards ensure.
    """
    ranks = np.asarray(ranks, dtype=np.int64)
    out = np.empty((len(ranks), k), dtype=np.int64)
    r = ranks.copy()
    nxt = np.zeros(len(ranks), dtype=np.int64)
    for i in range(k):
        j = k - i
        col = np.array([comb(n - v, j) for v in range(n + 1)], dtype=np.int64)
        remaining = col[nxt]
        target = remaining - r
        # col is non-increasing; pick the largest v with col[v] >= target
        v = np.searchsorted(-col, -target, side="right") - 1
        out[:, i] = v
        r -= remaining - col[v]
        nxt = v + 1
    return out


def sampled_subsets(seed: int, indices: np.ndarray, n: int, k: int) -> np.ndarray:
    """Uniform k-subsets of {0..n-1}, one per global sample index.

    Floyd's sampling run in lockstep across the batch; each row consumes
    exactly k counter values, so the result depends only on (seed, index).
    Rows come out with ascending cells.
    """
    indices = np.asarray(indices, dtype=np.uint64)
    b = len(indices)
    chosen = np.zeros((b, n), dtype=bool)
    rows = np.arange(b)
    base = indices * np.uint64(k)
    for t in range(k):
        j = n - k + t
        r = (stream_u64(seed, base + np.uint64(t)) % np.uint64(j + 1)).astype(np.int64)
        pick = np.where(chosen[rows, r], j, r)
        chosen[rows, pick] = True
    return np.nonzero(chosen)[1].reshape(b, k).astype(np.int64)


@lru_cache(maxsize=None)
def pair_direction_table(p: int) -> np.ndarray:
    """dir id of the segment between two cells; -1 on the diagonal."""
    n = p * p
    x = np.arange(n, dtype=np.int64) // p
    y = np.arange(n, dtype=np.int64) % p
    inv = np.zeros(p, dtype=np.int64)
    for d in range(1, p):
        inv[d] = pow(d, -1, p)
    dx = (x[None, :] - x[:, None]) % p
    dy = (y[None, :] - y[:, None]) % p
    table = np.where(dx == 0, p, (dy * inv[dx]) % p).astype(np.int8)
    np.fill_diagonal(table, -1)
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def line_tables(p: int) -> np.ndarray:
    """Row c maps a cell to its line index t along direction c (vertical last)."""
    n = p * p
    x = np.arange(n, dtype=np.int64) // p
    y = np.arange(n, dtype=np.int64) % p
    rows = [(y - m * x) % p for m in range(p)]
    rows.append(x)
    table = np.array(rows, dtype=np.int8)
    table.setflags(write=False)
    return table


def direction_masks(cells: np.ndarray, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-row direction bitmask (bit c = direction c determined) and count."""
    table = pair_direction_table(p)
    bit = np.uint32(1) << np.arange(p + 1, dtype=np.uint32)
    mask = np.zeros(len(cells), dtype=np.uint32)
    k = cells.shape[1]
    for i in range(k):
        ci = cells[:, i]
        for j in range(i + 1, k):
            mask |= bit[table[ci, cells[:, j]]]
    return mask, np.bitwise_count(mask).astype(np.int64)


def projection_counts(cells: np.ndarray, p: int, direction_index: int) -> np.ndarray:
    """(B, p) integer counts of each row's points per line along one direction."""
    t = line_tables(p)[direction_index][cells].astype(np.int64)
    b = len(cells)
    flat = t + np.arange(b, dtype=np.int64)[:, None] * p
    return np.bincount(flat.ravel(), minlength=b * p).reshape(b, p)


@lru_cache(maxsize=None)
def interpolation_matrix_np(p: int) -> np.ndarray:
    m = np.array(interpolation_matrix(p), dtype=np.int64)
    m.setflags(write=False)
    return m


@lru_cache(maxsize=None)
def power_matrix(p: int, width: int) -> np.ndarray:
    """V[j, x] = x**j mod p, for batch polynomial evaluation."""
    v = np.empty((width, p), dtype=np.int64)
    v[0] = 1
    xs = np.arange(p, dtype=np.int64)
    for j in range(1, width):
        v[j] = (v[j - 1] * xs) % p
    v.setflags(write=False)
    return v


def coeffs_from_tables(tables: np.ndarray, p: int) -> np.ndarray:
    """Reduced coefficient rows of the interpolants of value-table rows."""
    return (tables % p) @ interpolation_matrix_np(p).T % p


def values_from_coeffs(coeffs: np.ndarray, p: int) -> np.ndarray:
    """Value-table rows of coefficient rows (width may be less than p)."""
    return coeffs @ power_matrix(p, coeffs.shape[1]) % p


def degrees_from_coeffs(coeffs: np.ndarray) -> np.ndarray:
    """Per-row degree; -1 stands in for the zero polynomial's None."""
    nz = coeffs != 0
    top = coeffs.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1)
    return np.where(nz.any(axis=1), top, -1)


def distinct_per_row(rows: np.ndarray) -> np.ndarray:
    s = np.sort(rows, axis=1)
    return 1 + (np.diff(s, axis=1) != 0).sum(axis=1)


def sampled_function_tables(seed: int, indices: np.ndarray, p: int) -> np.ndarray:
    """Uniform value tables F_p -> F_p, one per global sample index."""
    idx = np.asarray(indices, dtype=np.uint64)
    counters = idx[:, None] * np.uint64(p) + np.arange(p, dtype=np.uint64)[None, :]
    return (stream_u64(seed, counters) % np.uint64(p)).astype(np.int64)


@lru_cache(maxsize=None)
def invertible_matrices(p: int) -> np.ndarray:
    """All (a, b, c, d) with ad - bc != 0 mod p, as an (M, 4) array."""
    digits = base_digits(np.arange(p**4, dtype=np.int64), p, 4)
    a, b, c, d = digits.T
    keep = (a * d - b * c) % p != 0
    out = digits[keep]
    out.setflags(write=False)
    return out


def orbit_of_cells(cells, p: int) -> np.ndarray:
    """Every affine image of a cell tuple, as unique ascending rows.

    Materializes all |AGL(2,p)| images at once, so only sensible for p <= 7
    (98,784 transforms at p = 7).
    """
    pts = np.asarray(cells, dtype=np.int64)
    x, y = pts // p, pts % p
    a, b, c, d = invertible_matrices(p).T
    tx = (a[:, None] * x + b[:, None] * y) % p
    ty = (c[:, None] * x + d[:, None] * y) % p
    u = np.repeat(np.arange(p), p)
    v = np.tile(np.arange(p), p)
    gx = (tx[:, None, :] + u[None, :, None]) % p
    gy = (ty[:, None, :] + v[None, :, None]) % p
    img = (gx * p + gy).reshape(-1, len(pts))
    img.sort(axis=1)
    return np.unique(img, axis=0)


def canonical_cells(cells, p: int) -> tuple[int, ...]:
    """Lexicographically least ascending cell tuple over the affine orbit."""
    if p <= 7:
        return tuple(int(c) for c in orbit_of_cells(cells, p)[0])
    # larger p: loop over matrices, vectorize over translations, keep the best
    pts = np.asarray(cells, dtype=np.int64)
    x, y = pts // p, pts % p
    u = np.repeat(np.arange(p), p)[:, None]
    v = np.tile(np.arange(p), p)[:, None]
    best = None
    for a, b, c, d in invertible_matrices(p):
        gx = (a * x + b * y + u) % p
        gy = (c * x + d * y + v) % p
        img = np.sort(gx * p + gy, axis=1)
        row = img[np.lexsort(img.T[::-1])[0]]
        t = tuple(int(w) for w in row)
        if best is None or t < best:
            best = t
    return best


@lru_cache(maxsize=None)
def substitution_permutations(p: int) -> np.ndarray:
    """Input permutations of value tables under x -> a*x + b, one row per (a, b).

    Applying row r to a table v gives the table of v(a*x + b), i.e. v[perm].
    """
    xs = np.arange(p, dtype=np.int64)
    rows = [(a * xs + b) % p for a in range(1, p) for b in range(p)]
    out = np.array(rows, dtype=np.int64)
    out.setflags(write=False)
    return out
