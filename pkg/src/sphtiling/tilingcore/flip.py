"""The hexagonal module flip of the (20,24) family.

The module is a disk of two triangles and three rhombi with two interior
vertices and a hexagonal boundary h0..h5. Reflecting it in the axis through
h0 and h3 sends h_i to h_{-i}. The tiling stays valid exactly when mirrored
boundary vertices carry equal inside angle sums. Here the corners inside the
module read (ac, b, acc, ac, b, acc) counterclockwise from an axis vertex, or
the mirror of that, and alpha + 2 gamma = beta makes the sums agree.

Flipping changes four boundary vertices. Whether k moves by one or by two
depends on the degrees outside the module, so callers that want a single
step filter on the result.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Sequence

from ..errors import SiteNotFlippable
from ..sphtrig import AngleTriple
from .tiling import CombinatorialTiling, canonical_form, extract_avc, validate

__all__ = ["FlipSite", "ChainBound", "find_flip_sites", "flip_20_24", "flip_k", "flip_sequence", "MODULE_WORD"]

#: inside corner multisets around the module, counterclockwise from h0
MODULE_WORD = ("ac", "b", "acc", "ac", "b", "acc")
_MIRROR_WORD = ("ac", "acc", "b", "ac", "acc", "b")


@dataclass(frozen=True)
class FlipSite:
    faces: tuple[int, ...]  # sorted face indices of the module
    boundary: tuple[int, ...]  # h0..h5 counterclockwise, h0 and h3 on the axis

    @property
    def axis(self) -> tuple[int, int]:
        return self.boundary[0], self.boundary[3]


def _boundary_cycle(fv: Sequence[Sequence[int]], faces: Iterable[int]) -> list[int] | None:
    edges = {}
    for f in faces:
        vs = fv[f]
        d = len(vs)
        for s in range(d):
            edges[(vs[s], vs[(s + 1) % d])] = f
    out_edges = {}
    for (u, v) in edges:
        if (v, u) not in edges:
            if u in out_edges:
                return None
            out_edges[u] = v
    if not out_edges:
        return None
    start = min(out_edges)
    cyc = [start]
    while True:
        nxt = out_edges.get(cyc[-1])
        if nxt is None:
            return None
        if nxt == start:
            break
        if nxt in cyc:
            return None
        cyc.append(nxt)
    return cyc if len(cyc) == len(out_edges) else None


def _word(t: CombinatorialTiling, v: int, inside: set[int]) -> str:
    cv = t.corner_vertex
    labs = [t.faces[f].labels[i] for (f, i), w in cv.items() if w == v and f in inside]
    return "".join(sorted(labs))


def _orient(cycle: list[int], words: list[str]) -> tuple[int, ...] | None:
    n = len(cycle)
    for r in range(n):
        for pat in (MODULE_WORD, _MIRROR_WORD):
            if all(words[(r + i) % n] == pat[i] for i in range(n)):
                return tuple(cycle[(r + i) % n] for i in range(n))
    return None


def find_flip_sites(t: CombinatorialTiling) -> list[FlipSite]:
    """All modules of the flip pattern in ``t``, in a deterministic order.

    The two interior vertices of a module are the obtuse corners of its
    middle rhombus, so candidates are unions of the stars of two vertices
    sharing a face.
    """
    fv = t.face_vertices()
    around: dict[int, set[int]] = {}
    for f, vs in enumerate(fv):
        for v in vs:
            around.setdefault(v, set()).add(f)
    seen = set()
    sites = []
    for f, vs in enumerate(fv):
        for u in vs:
            for w in vs:
                if u >= w:
                    continue
                group = frozenset(around[u] | around[w])
                if len(group) != 5 or group in seen:
                    continue
                seen.add(group)
                kinds = Counter(t.faces[g].kind for g in group)
                if kinds != Counter({"triangle": 2, "rhombus": 3}):
                    continue
                cyc = _boundary_cycle(fv, group)
                if cyc is None or len(cyc) != 6 or u in cyc or w in cyc:
                    continue
                words = [_word(t, v, set(group)) for v in cyc]
                bnd = _orient(cyc, words)
                if bnd is None:
                    continue
                sites.append(FlipSite(tuple(sorted(group)), bnd))
    sites.sort(key=lambda s: s.faces)
    return sites


def _as_site(t: CombinatorialTiling, site) -> FlipSite:
    if isinstance(site, FlipSite):
        return site
    if isinstance(site, int):
        sites = find_flip_sites(t)
        if not 0 <= site < len(sites):
            raise SiteNotFlippable(f"no flip site with index {site}")
        return sites[site]
    faces = tuple(sorted(site))
    for s in find_flip_sites(t):
        if s.faces == faces:
            return s
    raise SiteNotFlippable(f"faces {faces} do not form a flip module")


def flip_20_24(t: CombinatorialTiling, site, angles: AngleTriple | None = None) -> CombinatorialTiling:
    """Reflect the module at ``site`` (a FlipSite, its face tuple, or an index).

    The flipped faces keep their indices, so flipping the same site again
    restores the original tiling.
    """
    s = _as_site(t, site)
    fv = t.face_vertices()
    group = set(s.faces)
    words = [_word(t, v, group) for v in s.boundary]
    if _orient(list(s.boundary), words) != s.boundary:
        raise SiteNotFlippable("site does not match the module pattern")
    sigma = {s.boundary[i]: s.boundary[(-i) % 6] for i in range(6)}
    new_fv = list(fv)
    new_lab = [f.labels for f in t.faces]
    for f in s.faces:
        vs = [sigma.get(v, v) for v in fv[f]]
        new_fv[f] = tuple(reversed(vs))
        new_lab[f] = tuple(reversed(t.faces[f].labels))
    out = CombinatorialTiling.from_vertex_faces(new_fv, new_lab, name=t.name)
    if angles is not None and not validate(out, angles).all_green:
        raise SiteNotFlippable("flipped tiling fails validation")
    return out


def flip_k(t: CombinatorialTiling) -> int:
    return extract_avc(t).get((3, 0, 4), 0)


class ChainBound:
    """Longest chain of single-step (+1) flips from a tiling, memoized.

    Chains ignore which sites were used before, so the value is an upper
    bound for the constrained search in :func:`flip_sequence`. The memo is
    keyed by canonical form and may be shared between calls.
    """

    def __init__(self):
        self.memo: dict[tuple[int, ...], int] = {}

    def __call__(self, t: CombinatorialTiling) -> int:
        key = canonical_form(t)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        k0 = flip_k(t)
        best = 0
        for s in find_flip_sites(t):
            nxt = flip_20_24(t, s)
            if flip_k(nxt) == k0 + 1:
                best = max(best, 1 + self(nxt))
        self.memo[key] = best
        return best


def flip_sequence(
    base: CombinatorialTiling,
    j: int,
    angles: AngleTriple | None = None,
    bound: ChainBound | None = None,
) -> tuple[CombinatorialTiling, list[FlipSite]]:
    """Apply j flips, each at a new site and each raising k by one.

    Depth-first with backtracking over the available sites; the first
    sequence found is returned. Branches that cannot reach depth j are cut
    with a :class:`ChainBound`.
    """
    bound = bound or ChainBound()
    if bound(base) < j:
        raise SiteNotFlippable(f"no sequence of {j} increasing flips from this tiling")
    used: list[tuple[int, ...]] = []
    path: list[FlipSite] = []

    def rec(cur: CombinatorialTiling, depth: int):
        if depth == j:
            return cur
        if bound(cur) < j - depth:
            return None
        k0 = flip_k(cur)
        for s in find_flip_sites(cur):
            key = s.faces
            if key in used:
                continue
            nxt = flip_20_24(cur, s)
            if flip_k(nxt) != k0 + 1:
                continue
            if angles is not None and not validate(nxt, angles).all_green:
                continue
            used.append(key)
            path.append(s)
            res = rec(nxt, depth + 1)
            if res is not None:
                return res
            used.pop()
            path.pop()
        return None

    res = rec(base, 0)
    if res is None:
        raise SiteNotFlippable(f"no sequence of {j} increasing flips from this tiling")
    return res, list(path)
