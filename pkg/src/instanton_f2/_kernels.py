"""Hot numeric kernels.

Each kernel has a pure-numpy implementation and a numba ``@njit`` twin.
The numba path is used when numba imports and ``INSTANTON_F2_NO_NUMBA`` is
unset (or ``0``).  Both paths return identical exact integers.

GF(2) vectors are packed into int64 bitmasks (bit i = coordinate i), so
vector spaces handled here have dimension at most 62.
"""

from __future__ import annotations

import os

import numpy as np

_flag = os.environ.get("INSTANTON_F2_NO_NUMBA", "").strip().lower()
try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and _flag in ("", "0", "false", "no")

MAX_BITS = 62


# ---------------------------------------------------------------- numpy path


def gf2_rank_np(rows: np.ndarray) -> int:
    """Rank over GF(2) of a set of packed row vectors."""
    work = np.array(rows, dtype=np.int64).copy()
    rank = 0
    for bit in range(MAX_BITS):
        if rank == len(work):
            break
        sel = ((work[rank:] >> bit) & 1).astype(bool)
        idx = np.flatnonzero(sel)
        if idx.size == 0:
            continue
        piv = rank + idx[0]
        work[[rank, piv]] = work[[piv, rank]]
        below = rank + 1 + np.flatnonzero(((work[rank + 1 :] >> bit) & 1).astype(bool))
        work[below] ^= work[rank]
        rank += 1
    return rank


def span_elements_np(basis: np.ndarray) -> np.ndarray:
    """All 2^d elements of the span of d packed vectors (with repetition if dependent)."""
    out = np.zeros(1, dtype=np.int64)
    for b in np.asarray(basis, dtype=np.int64):
        out = np.concatenate([out, out ^ b])
    return out


def apply_linear_np(vecs: np.ndarray, images: np.ndarray) -> np.ndarray:
    """Apply the linear map sending basis vector i to ``images[i]``."""
    vecs = np.asarray(vecs, dtype=np.int64)
    out = np.zeros_like(vecs)
    for i, img in enumerate(np.asarray(images, dtype=np.int64)):
        hit = ((vecs >> i) & 1).astype(bool)
        out[hit] ^= img
    return out


def dim_f2_grid_np(p, q, trivial, r2: int, M: int) -> np.ndarray:
    p = np.asarray(p, dtype=np.int64)
    q = np.asarray(q, dtype=np.int64)
    trivial = np.asarray(trivial, dtype=bool)
    out = q * r2 + np.abs(p - q * M)
    bump = trivial & (q == 1) & (p == M)
    return out + 2 * bump


# ---------------------------------------------------------------- numba path

if HAVE_NUMBA:
    _jit = numba.njit(cache=True, nogil=True)

    @_jit
    def _gf2_rank_nb(rows):
        work = rows.copy()
        n = work.shape[0]
        rank = 0
        for bit in range(62):
            if rank == n:
                break
            piv = -1
            for r in range(rank, n):
                if (work[r] >> bit) & 1:
                    piv = r
                    break
            if piv < 0:
                continue
            tmp = work[rank]
            work[rank] = work[piv]
            work[piv] = tmp
            for r in range(rank + 1, n):
                if (work[r] >> bit) & 1:
                    work[r] ^= work[rank]
            rank += 1
        return rank

    @_jit
    def _span_elements_nb(basis):
        d = basis.shape[0]
        out = np.zeros(1 << d, dtype=np.int64)
        size = 1
        for k in range(d):
            b = basis[k]
            for j in range(size):
                out[size + j] = out[j] ^ b
            size *= 2
        return out

    @_jit
    def _apply_linear_nb(vecs, images):
        n = images.shape[0]
        out = np.zeros_like(vecs)
        for t in range(vecs.shape[0]):
            v = vecs[t]
            acc = 0
            for i in range(n):
                if (v >> i) & 1:
                    acc ^= images[i]
            out[t] = acc
        return out

    @_jit
    def _dim_f2_grid_nb(p, q, trivial, r2, M):
        out = np.empty(p.shape[0], dtype=np.int64)
        for i in range(p.shape[0]):
            v = q[i] * r2 + abs(p[i] - q[i] * M)
            if trivial[i] and q[i] == 1 and p[i] == M:
                v += 2
            out[i] = v
        return out

    def gf2_rank_nb(rows) -> int:
        return int(_gf2_rank_nb(np.ascontiguousarray(rows, dtype=np.int64)))

    def span_elements_nb(basis) -> np.ndarray:
        return _span_elements_nb(np.ascontiguousarray(basis, dtype=np.int64))

    def apply_linear_nb(vecs, images) -> np.ndarray:
        return _apply_linear_nb(
            np.ascontiguousarray(vecs, dtype=np.int64), np.ascontiguousarray(images, dtype=np.int64)
        )

    def dim_f2_grid_nb(p, q, trivial, r2: int, M: int) -> np.ndarray:
        return _dim_f2_grid_nb(
            np.ascontiguousarray(p, dtype=np.int64),
            np.ascontiguousarray(q, dtype=np.int64),
            np.ascontiguousarray(trivial, dtype=np.bool_),
            np.int64(r2),
            np.int64(M),
        )


if USE_NUMBA:
    gf2_rank = gf2_rank_nb
    span_elements = span_elements_nb
    apply_linear = apply_linear_nb
    dim_f2_grid = dim_f2_grid_nb
else:
    gf2_rank = gf2_rank_np
    span_elements = span_elements_np
    apply_linear = apply_linear_np
    dim_f2_grid = dim_f2_grid_np


def backend() -> str:
    return "numba" if USE_NUMBA else "numpy"


def pack_rows(mat) -> np.ndarray:
    """Pack a 0/1 matrix (rows x cols, cols <= 62) into one int64 per row."""
    a = np.asarray(mat, dtype=np.int64) & 1
    if a.ndim != 2:
        raise ValueError("expected a 2-d matrix")
    if a.shape[1] > MAX_BITS:
        raise ValueError(f"at most {MAX_BITS} columns can be packed")
    weights = np.left_shift(np.int64(1), np.arange(a.shape[1], dtype=np.int64))
    return (a * weights).sum(axis=1).astype(np.int64) if a.shape[1] else np.zeros(a.shape[0], np.int64)


def unpack_rows(packed, ncols: int) -> np.ndarray:
    packed = np.asarray(packed, dtype=np.int64)
    bits = np.arange(ncols, dtype=np.int64)
    return ((packed[:, None] >> bits[None, :]) & 1).astype(np.uint8)
