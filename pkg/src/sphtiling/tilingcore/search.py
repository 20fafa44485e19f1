"""Exhaustive search for tilings with a prescribed AVC.

The search grows a patch from a seed triangle. Each step attaches one tile
to a boundary edge of a hole. Tiles are placed metrically on the unit
sphere. When a new corner lands on an existing vertex the two are
identified, and the hole is split there. A complete cone metric with all
cone angles 2pi on the sphere is the round sphere. So every tiling is
reached this way with its true vertex identifications, and every closed
result is a genuine tiling.

Pruning is combinatorial. Every vertex must stay a sub-multiset of some
allowed vertex type. Face budgets and per-type vertex counts may not be
exceeded.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np

from .._sphere import step as _step, tangent as _tangent, turn as _turn
from ..errors import DomainError
from ..sphtrig import AngleTriple
from ..vertexcomb import VertexType
from .tiling import CombinatorialTiling, canonical_form

__all__ = ["SearchResult", "search_tilings", "seed_positions"]

_IDX = {"a": 0, "b": 1, "c": 2}
_COINCIDE = 1e-6


def seed_positions(alpha: float, a: float) -> list[np.ndarray]:
    """Corners of the seed triangle: north pole, then one in the x-z plane."""
    p0 = np.array([0.0, 0.0, 1.0])
    p1 = np.array([math.sin(a), 0.0, math.cos(a)])
    d02 = _turn(p0, _tangent(p0, p1), alpha)
    return [p0, p1, _step(p0, d02, a)]


@dataclass
class SearchResult:
    tilings: list[CombinatorialTiling]
    nodes: int
    complete: bool  # False when a node or solution limit stopped the search
    forms: list[tuple] = field(default_factory=list)


class _Search:
    def __init__(self, angles: AngleTriple, a: float, f_tri: int, f_rho: int,
                 avc: Mapping[VertexType, int], square: bool):
        self.t = angles
        self.a = a
        self.ang = {"a": angles.alpha, "b": angles.beta, "c": angles.gamma}
        self.f_tri = f_tri
        self.f_rho = f_rho
        self.target = {VertexType(*k): v for k, v in avc.items()}
        self.square = square
        self.complete_types = set(self.target)
        subs = set()
        for vt in self.target:
            for i in range(vt[0] + 1):
                for j in range(vt[1] + 1):
                    for k in range(vt[2] + 1):
                        subs.add((i, j, k))
        self.subs = subs
        nv = 2 + f_tri + 2 * f_rho + 8
        self.pos = np.zeros((4 * nv + 16, 3))
        if square:
            self.options = (("a", "a"), ("b", "b"))
        else:
            self.options = (("a", "a"), ("b", "c"), ("c", "b"))

    # state: (faces, nv, cnt, holes, done, nt, nr)

    def _feasible(self, cnt, v, n, lv, ln, nt, nr) -> bool:
        if lv == "a":
            if nt >= self.f_tri:
                return False
        elif nr >= self.f_rho:
            return False
        cv = list(cnt[v])
        cv[_IDX[lv]] += 1
        if tuple(cv) not in self.subs:
            return False
        cn = list(cnt[n])
        cn[_IDX[ln]] += 1
        return tuple(cn) in self.subs

    def _place(self, v_pos, n_pos, labels_from_v: Sequence[str]) -> list[np.ndarray]:
        """Positions of the new corners after v, walking the new face."""
        out = []
        prev, cur = n_pos, v_pos
        for lab in labels_from_v[:-2]:
            d = _turn(cur, _tangent(cur, prev), -self.ang[lab])
            nxt = _step(cur, d, self.a)
            out.append(nxt)
            prev, cur = cur, nxt
        return out

    def _lookup(self, p: np.ndarray, nv: int) -> int:
        d = np.abs(self.pos[:nv] - p).max(axis=1)
        hits = np.flatnonzero(d < _COINCIDE)
        return int(hits[0]) if hits.size else -1

    def run(self, max_solutions: int | None, max_nodes: int | None) -> SearchResult:
        p = seed_positions(self.t.alpha, self.a)
        self.pos[:3] = p
        faces = [((0, 1, 2), ("a", "a", "a"))]
        cnt = [(1, 0, 0)] * 3
        holes = [(0, 1, 2)]
        self.nodes = 0
        self.found: dict[tuple, CombinatorialTiling] = {}
        self.max_solutions = max_solutions
        self.max_nodes = max_nodes
        self.stopped = False
        self._dfs(faces, 3, cnt, holes, Counter(), 1, 0)
        forms = list(self.found)
        return SearchResult(list(self.found.values()), self.nodes, not self.stopped, forms)

    def _choose(self, cnt, holes, nt, nr):
        best = None
        for hi, cyc in enumerate(holes):
            L = len(cyc)
            for i in range(L):
                v, n = cyc[i], cyc[(i + 1) % L]
                opts = [o for o in self.options if self._feasible(cnt, v, n, o[0], o[1], nt, nr)]
                if best is None or len(opts) < len(best[2]):
                    best = (hi, i, opts)
                    if len(opts) <= 1:
                        return best
        return best

    def _dfs(self, faces, nv, cnt, holes, done, nt, nr):
        if self.stopped:
            return
        self.nodes += 1
        if self.max_nodes is not None and self.nodes > self.max_nodes:
            self.stopped = True
            return
        if not holes:
            if nt == self.f_tri and nr == self.f_rho and dict(done) == self.target:
                fv = [f[0] for f in faces]
                lab = [f[1] for f in faces]
                til = CombinatorialTiling.from_vertex_faces(fv, lab)
                key = canonical_form(til)
                if key not in self.found:
                    self.found[key] = til
                    if self.max_solutions is not None and len(self.found) >= self.max_solutions:
                        self.stopped = True
            return
        hi, i, opts = self._choose(cnt, holes, nt, nr)
        cyc = holes[hi]
        L = len(cyc)
        v, n = cyc[i], cyc[(i + 1) % L]
        for lv, ln in opts:
            if lv == "a":
                labels = ("a", "a", "a")  # from v: v, x, n
                face_labels = ("a", "a", "a")
            else:
                labels = (lv, ln, lv, ln)  # v, x, y, n
                face_labels = (ln, lv, ln, lv)  # n, v, x, y
            newpos = self._place(self.pos[v], self.pos[n], labels)
            ids = []
            nv2 = nv
            ok = True
            for q in newpos:
                w = self._lookup(q, nv2)
                if w < 0:
                    self.pos[nv2] = q
                    w = nv2
                    nv2 += 1
                elif w < nv and w not in cyc:
                    ok = False
                    break
                ids.append(w)
            if not ok:
                continue
            fverts = (n, v, *ids)
            if len(set(fverts)) != len(fverts):
                continue
            res = self._apply(cnt, holes, hi, i, ids, fverts, face_labels, done, nv, nv2)
            if res is None:
                continue
            cnt2, holes2, done2 = res
            faces.append((fverts, face_labels))
            if lv == "a":
                self._dfs(faces, nv2, cnt2, holes2, done2, nt + 1, nr)
            else:
                self._dfs(faces, nv2, cnt2, holes2, done2, nt, nr + 1)
            faces.pop()
            if self.stopped:
                return

    def _apply(self, cnt, holes, hi, i, ids, fverts, face_labels, done, nv, nv2):
        cnt2 = list(cnt)
        cnt2.extend([(0, 0, 0)] * (nv2 - nv))
        for w, lab in zip(fverts, face_labels):
            c = list(cnt2[w])
            c[_IDX[lab]] += 1
            c = tuple(c)
            if c not in self.subs:
                return None
            cnt2[w] = c
        cyc = holes[hi]
        L = len(cyc)
        rot = cyc[i:] + cyc[:i]  # v first, then n
        new_cycle = (rot[0], *ids, *rot[1:])
        pieces = _split(new_cycle)
        if pieces is None:
            return None
        holes2 = holes[:hi] + holes[hi + 1:] + pieces
        on_boundary = set()
        for h in holes2:
            on_boundary.update(h)
        done2 = done
        for w in set(fverts):
            c = cnt2[w]
            complete = VertexType(*c) in self.complete_types
            if w in on_boundary:
                if complete:
                    return None
            else:
                if not complete:
                    return None
                if done2 is done:
                    done2 = Counter(done)
                vt = VertexType(*c)
                done2[vt] += 1
                if done2[vt] > self.target[vt]:
                    return None
        return cnt2, holes2, done2


def _split(cycle: tuple[int, ...]) -> list[tuple[int, ...]] | None:
    """Split a closed boundary walk at repeated vertices into simple cycles.

    Two-cycles are pairs of edges that glue together and vanish.
    """
    out = []
    stack = [cycle]
    while stack:
        c = stack.pop()
        first: dict[int, int] = {}
        rep = None
        for j, w in enumerate(c):
            if w in first:
                rep = (first[w], j)
                break
            first[w] = j
        if rep is None:
            if len(c) == 1:
                return None
            if len(c) >= 3:
                out.append(c)
            continue
        a, b = rep
        stack.append(c[a:b])
        stack.append(c[b:] + c[:a])
    return out


def search_tilings(
    angles: AngleTriple,
    a: float,
    faces: tuple[int, int],
    avc: Mapping[VertexType, int],
    max_solutions: int | None = None,
    max_nodes: int | None = None,
) -> SearchResult:
    """All tilings (up to isomorphism and reflection) with exactly this AVC."""
    f_tri, f_rho = faces
    if f_tri < 1:
        raise DomainError("the search seeds from a triangle")
    square = angles.is_square
    s = _Search(angles, a, f_tri, f_rho, avc, square)
    return s.run(max_solutions, max_nodes)
