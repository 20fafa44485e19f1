"""The icosahedron and the tilings obtained by merging triangle pairs.

Two triangles sharing an edge merge into a rhombus whose obtuse corners are
the ends of the removed edge (beta = 2 alpha) and whose other two corners are
the former apexes (gamma = alpha). A set of merges is a matching in the dual
graph of the icosahedron, the dodecahedral graph.
"""
from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass
from functools import lru_cache

import networkx as nx
import numpy as np
from networkx.algorithms.isomorphism import GraphMatcher
from scipy.spatial import ConvexHull

from .. import _kernels
from ..errors import DomainError
from .tiling import CombinatorialTiling

__all__ = [
    "IcosahedronData",
    "icosahedron_data",
    "build_icosahedron",
    "MergeFamily",
    "icosahedral_merges",
    "count_matchings_bruteforce",
    "merge_tiling",
]


@dataclass(frozen=True)
class IcosahedronData:
    points: np.ndarray  # (12, 3) unit vectors
    faces: tuple[tuple[int, int, int], ...]  # CCW seen from outside
    dual_edges: tuple[tuple[int, int], ...]  # face pairs sharing an edge
    hinge: tuple[tuple[int, int, int, int], ...]  # (u, w, p, q) per dual edge
    perms: np.ndarray  # (120, 30) dual-edge permutations

    @property
    def base_counts(self) -> np.ndarray:
        base = np.zeros((len(self.points), 3), dtype=np.int64)
        base[:, 0] = 5
        return base

    @property
    def delta(self) -> np.ndarray:
        """Change of vertex corner counts caused by each single merge."""
        d = np.zeros((len(self.dual_edges), len(self.points), 3), dtype=np.int64)
        for e, (u, w, p, q) in enumerate(self.hinge):
            for x in (u, w):
                d[e, x] += (-2, 1, 0)
            for x in (p, q):
                d[e, x] += (-1, 0, 1)
        return d


def _oriented(face, pts) -> tuple[int, int, int]:
    i, j, k = (int(x) for x in face)
    n = np.cross(pts[j] - pts[i], pts[k] - pts[i])
    if n @ (pts[i] + pts[j] + pts[k]) < 0:
        j, k = k, j
    r = min(range(3), key=lambda s: (i, j, k)[s])
    f = (i, j, k)
    return f[r:] + f[:r]


@lru_cache(maxsize=1)
def icosahedron_data() -> IcosahedronData:
    phi = (1 + math.sqrt(5)) / 2
    raw = []
    for s1 in (-1, 1):
        for s2 in (-1, 1):
            raw += [(0, s1, s2 * phi), (s1, s2 * phi, 0), (s2 * phi, 0, s1)]
    pts = np.array(sorted(raw, key=lambda p: (-p[2], p[0], p[1])), dtype=float)
    pts /= np.linalg.norm(pts, axis=1)[:, None]
    hull = ConvexHull(pts)
    faces = sorted(_oriented(s, pts) for s in hull.simplices)

    where = {}
    for f, (i, j, k) in enumerate(faces):
        for u, w in ((i, j), (j, k), (k, i)):
            where[(u, w)] = f
    dual, hinge = [], []
    for (u, w), f in sorted(where.items()):
        g = where[(w, u)]
        if f < g:
            p = next(x for x in faces[f] if x not in (u, w))
            q = next(x for x in faces[g] if x not in (u, w))
            dual.append((f, g))
            hinge.append((u, w, p, q))

    graph = nx.Graph(dual)
    index = {frozenset(e): i for i, e in enumerate(dual)}
    perms = []
    for iso in GraphMatcher(graph, graph).isomorphisms_iter():
        perms.append([index[frozenset((iso[f], iso[g]))] for f, g in dual])
    perms = np.array(sorted(perms), dtype=np.int64)
    return IcosahedronData(pts, tuple(faces), tuple(dual), tuple(hinge), perms)


def merge_tiling(mask: int, name: str = "") -> CombinatorialTiling:
    """The tiling for the matching encoded by a dual-edge bitmask."""
    d = icosahedron_data()
    merged = set()
    quads, quad_labels = [], []
    for e, (f, g) in enumerate(d.dual_edges):
        if mask >> e & 1:
            if f in merged or g in merged:
                raise DomainError("mask is not a matching")
            merged.update((f, g))
            u, w, p, q = d.hinge[e]
            # triangles (u,w,p) and (w,u,q) become the rhombus (w,p,u,q)
            quads.append((w, p, u, q))
            quad_labels.append(("b", "c", "b", "c"))
    tris = [f for i, f in enumerate(d.faces) if i not in merged]
    fv = tris + quads
    labels = [("a", "a", "a")] * len(tris) + quad_labels
    return CombinatorialTiling.from_vertex_faces(fv, labels, name=name, meta={"mask": int(mask)})


def build_icosahedron() -> CombinatorialTiling:
    return merge_tiling(0, name="icosahedron")


class MergeFamily(Sequence):
    """Lazy sequence of merge tilings; items are built on access."""

    def __init__(self, m: int, masks: np.ndarray, dedup: bool):
        self.m = m
        self.masks = masks
        self.dedup = dedup

    def __len__(self) -> int:
        return len(self.masks)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        mask = int(self.masks[i])
        tag = "dedup" if self.dedup else "all"
        return merge_tiling(mask, name=f"icosahedral-m{self.m}:{tag}:{i if i >= 0 else len(self) + i}")

    def vertex_counts(self, backend: str | None = None) -> np.ndarray:
        d = icosahedron_data()
        return _kernels.vertex_counts(self.masks, d.base_counts, d.delta, backend)

    def validate_all(self, angles, tol: float = 1e-9, backend: str | None = None) -> np.ndarray:
        """Vertex angle sums, degrees and the alpha^3 ban for every member at once."""
        return _kernels.check_vertex_sums(self.vertex_counts(backend), angles.as_tuple(), tol)


def icosahedral_merges(m: int, dedup: bool = False, backend: str | None = None) -> MergeFamily:
    """Tilings with 20 - 2m triangles and m rhombi from merging m disjoint pairs.

    With ``dedup`` the matchings are taken up to the 120 symmetries of the
    icosahedron, one representative (the least bitmask) per orbit.
    """
    if not (isinstance(m, (int, np.integer)) and 1 <= m <= 9):
        raise DomainError(f"m must be in 1..9, got {m!r}")
    d = icosahedron_data()
    eu = np.array([f for f, _ in d.dual_edges])
    ev = np.array([g for _, g in d.dual_edges])
    masks = _kernels.enumerate_matchings(eu, ev, int(m), backend)
    if dedup:
        canon = _kernels.canonical_masks(masks, d.perms, backend)
        masks = np.unique(canon)
    return MergeFamily(int(m), masks, dedup)


def count_matchings_bruteforce(edges, m: int) -> int:
    """Count m-edge matchings by plain recursion on vertices.

    Independent of the bitmask kernels: take the smallest free vertex and
    either leave it unmatched or pair it with a larger free neighbour.
    """
    adj: dict[int, set[int]] = {}
    for u, v in edges:
        adj.setdefault(u, set()).add(v)
        adj.setdefault(v, set()).add(u)
    order = sorted(adj)

    def rec(i: int, used: frozenset, left: int) -> int:
        if left == 0:
            return 1
        while i < len(order) and order[i] in used:
            i += 1
        if i >= len(order):
            return 0
        u = order[i]
        total = rec(i + 1, used | {u}, left)
        for v in adj[u]:
            if v not in used and v > u:
                total += rec(i + 1, used | {u, v}, left - 1)
        return total

    return rec(0, frozenset(), m)
