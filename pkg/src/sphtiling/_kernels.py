"""Hot loops for the icosahedral merge family.

Matchings are stored as int64 bitmasks over the 30 edges of the dual graph.
Each kernel has a numba version and a pure numpy version with the same
output. Set ``SPHTILE_NO_NUMBA=1`` to force numpy, e.g. when numba is
missing or to compare the two.
"""
from __future__ import annotations

import os

import numpy as np

try:  # pragma: no cover - exercised through both backends in tests
    import numba
    from numba import njit
except ImportError:  # pragma: no cover
    numba = None
    njit = None

__all__ = [
    "HAVE_NUMBA",
    "default_backend",
    "enumerate_matchings",
    "canonical_masks",
    "vertex_counts",
    "check_vertex_sums",
]

HAVE_NUMBA = numba is not None


def default_backend() -> str:
    if not HAVE_NUMBA or os.environ.get("SPHTILE_NO_NUMBA", "").strip() not in ("", "0"):
        return "numpy"
    return "numba"


def _resolve(backend: str | None) -> str:
    b = backend or default_backend()
    if b not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {b!r}")
    if b == "numba" and not HAVE_NUMBA:
        raise ValueError("numba is not installed")
    return b


# ------------------------------------------------------------------ numpy


def _matchings_np(eu: np.ndarray, ev: np.ndarray, m: int) -> np.ndarray:
    ne = len(eu)
    emask = np.int64(1) << np.arange(ne, dtype=np.int64)
    nmask = (np.int64(1) << eu.astype(np.int64)) | (np.int64(1) << ev.astype(np.int64))
    masks = np.zeros(1, dtype=np.int64)
    nodes = np.zeros(1, dtype=np.int64)
    last = np.full(1, -1, dtype=np.int64)
    for _ in range(m):
        parts_m, parts_n, parts_l = [], [], []
        for e in range(ne):
            ok = (last < e) & ((nodes & nmask[e]) == 0)
            if ok.any():
                parts_m.append(masks[ok] | emask[e])
                parts_n.append(nodes[ok] | nmask[e])
                parts_l.append(np.full(int(ok.sum()), e, dtype=np.int64))
        if not parts_m:
            return np.zeros(0, dtype=np.int64)
        masks = np.concatenate(parts_m)
        nodes = np.concatenate(parts_n)
        last = np.concatenate(parts_l)
    return np.sort(masks)


def _bits(masks: np.ndarray, ne: int) -> np.ndarray:
    return ((masks[:, None] >> np.arange(ne, dtype=np.int64)) & 1).astype(np.int64)


def _canonical_np(masks: np.ndarray, perms: np.ndarray) -> np.ndarray:
    ne = perms.shape[1]
    bits = _bits(masks, ne)
    weights = np.int64(1) << perms.astype(np.int64)  # (g, ne)
    return (bits @ weights.T).min(axis=1)


def _counts_np(masks: np.ndarray, base: np.ndarray, delta: np.ndarray) -> np.ndarray:
    ne = delta.shape[0]
    bits = _bits(masks, ne)
    flat = bits @ delta.reshape(ne, -1)
    return base[None, :, :] + flat.reshape(len(masks), *base.shape)


# ------------------------------------------------------------------ numba

if HAVE_NUMBA:

    @njit(cache=True)
    def _matchings_nb(eu, ev, m, out):
        ne = eu.shape[0]
        n = 0
        if m == 0:
            if out.shape[0] > 0:
                out[0] = 0
            return 1
        stack = np.empty(m, np.int64)
        nodes = np.int64(0)
        mask = np.int64(0)
        depth = 0
        e = 0
        while True:
            if depth == m:
                if n < out.shape[0]:
                    out[n] = mask
                n += 1
                depth -= 1
                j = stack[depth]
                mask ^= np.int64(1) << j
                nodes ^= (np.int64(1) << eu[j]) | (np.int64(1) << ev[j])
                e = j + 1
                continue
            found = False
            while e <= ne - (m - depth):
                if ((nodes >> eu[e]) & 1) == 0 and ((nodes >> ev[e]) & 1) == 0:
                    found = True
                    break
                e += 1
            if found:
                stack[depth] = e
                mask |= np.int64(1) << e
                nodes |= (np.int64(1) << eu[e]) | (np.int64(1) << ev[e])
                depth += 1
                e += 1
            else:
                if depth == 0:
                    break
                depth -= 1
                j = stack[depth]
                mask ^= np.int64(1) << j
                nodes ^= (np.int64(1) << eu[j]) | (np.int64(1) << ev[j])
                e = j + 1
        return n

    @njit(cache=True)
    def _canonical_nb(masks, perms):
        g, ne = perms.shape
        out = np.empty(masks.shape[0], np.int64)
        for i in range(masks.shape[0]):
            x = masks[i]
            best = x
            for p in range(g):
                y = np.int64(0)
                for b in range(ne):
                    if (x >> b) & 1:
                        y |= np.int64(1) << perms[p, b]
                if y < best:
                    best = y
            out[i] = best
        return out

    @njit(cache=True)
    def _counts_nb(masks, base, delta):
        ne = delta.shape[0]
        nv, k = base.shape
        out = np.empty((masks.shape[0], nv, k), np.int64)
        for i in range(masks.shape[0]):
            out[i] = base
            x = masks[i]
            for b in range(ne):
                if (x >> b) & 1:
                    out[i] += delta[b]
        return out


# ------------------------------------------------------------------ public


def enumerate_matchings(eu, ev, m: int, backend: str | None = None) -> np.ndarray:
    """All m-edge matchings of the graph with edges (eu[i], ev[i]), sorted."""
    eu = np.ascontiguousarray(eu, dtype=np.int64)
    ev = np.ascontiguousarray(ev, dtype=np.int64)
    if len(eu) > 62:
        raise ValueError("bitmask kernels support at most 62 edges")
    if _resolve(backend) == "numpy":
        return _matchings_np(eu, ev, m)
    n = _matchings_nb(eu, ev, m, np.empty(0, np.int64))
    out = np.empty(n, np.int64)
    _matchings_nb(eu, ev, m, out)
    return np.sort(out)


def canonical_masks(masks, perms, backend: str | None = None) -> np.ndarray:
    """Least image of each mask under a group of edge permutations."""
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    perms = np.ascontiguousarray(perms, dtype=np.int64)
    if _resolve(backend) == "numpy":
        return _canonical_np(masks, perms)
    return _canonical_nb(masks, perms)


def vertex_counts(masks, base, delta, backend: str | None = None) -> np.ndarray:
    """Per-matching vertex corner counts: base + sum of delta over set bits.

    base is (vertices, 3); delta is (edges, vertices, 3). Returns
    (matchings, vertices, 3).
    """
    masks = np.ascontiguousarray(masks, dtype=np.int64)
    base = np.ascontiguousarray(base, dtype=np.int64)
    delta = np.ascontiguousarray(delta, dtype=np.int64)
    if _resolve(backend) == "numpy":
        return _counts_np(masks, base, delta)
    return _counts_nb(masks, base, delta)


def check_vertex_sums(counts: np.ndarray, angles, tol: float = 1e-9) -> np.ndarray:
    """Row-wise validity: every vertex sums to 2pi, has degree >= 3 and is not alpha^3."""
    ang = np.asarray(angles, dtype=float)
    sums = counts @ ang
    ok_sum = np.abs(sums - 2 * np.pi) < tol
    deg = counts.sum(axis=2)
    a3 = (counts[..., 0] == 3) & (counts[..., 1] == 0) & (counts[..., 2] == 0)
    return (ok_sum & (deg >= 3) & ~a3).all(axis=1)
