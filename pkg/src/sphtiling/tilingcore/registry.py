"""Named tilings and the protosets they belong to.

Identifiers:

* ``prism``, ``cuboctahedron``, ``orthobicupola``, ``antiprism-<n>``
* ``icosahedron`` and ``icosahedral-m<m>:<i>`` (i-th merge class, up to symmetry)
* ``<row>:<i>`` for the i-th tiling of a sporadic row, in canonical order;
  a row with a single tiling also answers to its bare id
* ``20,24.2:k0:<i>`` for the base tilings of the flip family and
  ``20,24.2:k<j>`` for the tiling reached by j successive flips

The families are built by the forced search, which has one solution for
them. Sporadic tilings load from bundled JSON produced by
``tools/generate_tilings.py``.
"""
from __future__ import annotations

import json
import math
import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import Callable

from .. import catalog
from ..catalog import Protoset
from ..errors import CatalogMiss, DomainError, RegistryMiss, SiteNotFlippable
from ..vertexcomb import VertexType, parse_avc
from .flip import ChainBound, flip_20_24, flip_sequence
from .merges import build_icosahedron, icosahedral_merges
from .search import search_tilings
from .tiling import CombinatorialTiling, canonical_form

__all__ = [
    "RegistryEntry",
    "build_named",
    "build_antiprism",
    "lookup",
    "registry_ids",
    "default_protoset",
    "flip_chain",
    "FLIP_MAX_K",
]

#: largest k reached by +1 flips from the k=0 tilings; no tiling exists beyond
FLIP_MAX_K = 8

# generic (non-square) members used only to fix the combinatorics
_PRISM_ALPHA = 0.55 * math.pi
_CUBOCT_ALPHA = 0.45 * math.pi


@dataclass(frozen=True)
class RegistryEntry:
    id: str
    build: Callable[[], CombinatorialTiling]
    protoset: Callable[[], Protoset]
    expected_avc: Counter | None  # None when only the family is known
    faces: tuple[int, int]


def _unique(p: Protoset, name: str) -> CombinatorialTiling:
    e = p.expected[0]
    res = search_tilings(p.angles, p.a, e.faces, e.avc)
    if len(res.tilings) != 1:
        raise DomainError(f"{name}: expected one tiling, search found {len(res.tilings)}")
    t = res.tilings[0]
    return CombinatorialTiling(t.faces, t.gluings, name, {"family": p.family})


@lru_cache(maxsize=1)
def _prism() -> CombinatorialTiling:
    return _unique(catalog.prism_family(_PRISM_ALPHA), "prism")


def _cyclic_aa(word: str) -> bool:
    return "aa" in word + word[:1]


@lru_cache(maxsize=1)
def _cuboct_pair() -> tuple[CombinatorialTiling, CombinatorialTiling]:
    p = catalog.cuboct_family(_CUBOCT_ALPHA)
    e = p.expected[0]
    res = search_tilings(p.angles, p.a, e.faces, e.avc)
    by_aa = {}
    for t in res.tilings:
        by_aa[sum(_cyclic_aa(w) for w in t.vertex_words())] = t
    if sorted(by_aa) != [0, 6]:
        raise DomainError("unexpected cuboctahedral search result")
    cub, obc = by_aa[0], by_aa[6]
    return (
        CombinatorialTiling(cub.faces, cub.gluings, "cuboctahedron"),
        CombinatorialTiling(obc.faces, obc.gluings, "orthobicupola"),
    )


@lru_cache(maxsize=64)
def build_antiprism(n: int) -> CombinatorialTiling:
    """The unique tiling with 2 triangles and 6n-3 rhombi for n >= 3."""
    if not isinstance(n, int) or n < 3:
        raise DomainError(f"antiprism needs an integer n >= 3, got {n!r}")
    return _unique(catalog.antiprism_family(n), f"antiprism-{n}")


# ----------------------------------------------------------- bundled data


@lru_cache(maxsize=1)
def _sporadic_doc() -> dict:
    ref = resources.files("sphtiling.tilingcore") / "data" / "sporadic.json"
    try:
        text = ref.read_text()
    except FileNotFoundError:
        return {"rows": {}}
    return json.loads(text)


@lru_cache(maxsize=None)
def _sporadic_rows() -> dict[str, list[tuple[Counter, tuple[int, int], dict]]]:
    """row id -> flat list of (expected AVC, faces, tiling dict)."""
    out = {}
    for pid, entries in _sporadic_doc().get("rows", {}).items():
        flat = []
        for e in entries:
            avc = parse_avc(e["avc"])
            for td in e["tilings"]:
                flat.append((avc, tuple(e["faces"]), td))
        out[pid] = flat
    return out


def _sporadic_builder(pid: str, i: int, name: str) -> Callable[[], CombinatorialTiling]:
    def build():
        td = _sporadic_rows()[pid][i][2]
        t = CombinatorialTiling.from_dict(td)
        return CombinatorialTiling(t.faces, t.gluings, name, {"row": pid})

    return build


# ------------------------------------------------------------ flip family


@lru_cache(maxsize=1)
def flip_chain() -> tuple[CombinatorialTiling, ...]:
    """Tilings k = 0..FLIP_MAX_K along one chain of single-step flips.

    The base is the first k=0 tiling (in canonical order) admitting a chain
    of full length.
    """
    p = catalog.sporadic("20,24.2")
    bound = ChainBound()
    for avc, faces, td in _sporadic_rows().get("20,24.2", []):
        base = CombinatorialTiling.from_dict(td)
        try:
            _, path = flip_sequence(base, FLIP_MAX_K, p.angles, bound)
        except SiteNotFlippable:
            continue
        chain = [base]
        for site in path:
            chain.append(flip_20_24(chain[-1], site.faces))
        return tuple(
            CombinatorialTiling(t.faces, t.gluings, f"20,24.2:k{k}", {"row": "20,24.2", "k": k})
            for k, t in enumerate(chain)
        )
    raise RegistryMiss("no flip chain available (bundled data missing?)")


# --------------------------------------------------------------- registry


def _static_entries() -> dict[str, RegistryEntry]:
    out: dict[str, RegistryEntry] = {}
    prism_p = lambda: catalog.prism_family(math.acos(1 / 8))  # noqa: E731
    cub_p = lambda: catalog.cuboct_family(math.acos(1 / 3))  # noqa: E731
    out["prism"] = RegistryEntry("prism", _prism, prism_p, parse_avc("6abc"), (2, 3))
    out["cuboctahedron"] = RegistryEntry(
        "cuboctahedron", lambda: _cuboct_pair()[0], cub_p, parse_avc("12a2bc"), (8, 6))
    out["orthobicupola"] = RegistryEntry(
        "orthobicupola", lambda: _cuboct_pair()[1], cub_p, parse_avc("12a2bc"), (8, 6))
    ico = catalog.icosahedral_protoset
    out["icosahedron"] = RegistryEntry("icosahedron", build_icosahedron, ico, parse_avc("12a5"), (20, 0))
    return out


def _antiprism_entry(n: int) -> RegistryEntry:
    avc = Counter({VertexType(1, 1, n): 6, VertexType(0, 2, 1): 6 * n - 6})
    return RegistryEntry(
        f"antiprism-{n}", lambda: build_antiprism(n), lambda: catalog.antiprism_family(n), avc, (2, 6 * n - 3))


def _merge_entry(m: int, i: int) -> RegistryEntry:
    def build():
        fam = icosahedral_merges(m, dedup=True)
        if not 0 <= i < len(fam):
            raise RegistryMiss(f"icosahedral-m{m}:{i}: only {len(fam)} classes")
        t = fam[i]
        return CombinatorialTiling(t.faces, t.gluings, f"icosahedral-m{m}:{i}", t.meta)

    return RegistryEntry(f"icosahedral-m{m}:{i}", build, catalog.icosahedral_protoset, None, (20 - 2 * m, m))


@lru_cache(maxsize=1)
def _sporadic_entries() -> dict[str, RegistryEntry]:
    out: dict[str, RegistryEntry] = {}
    aliases: dict[str, str] = {}
    for pid, flat in _sporadic_rows().items():
        proto = (lambda pid=pid: catalog.sporadic(pid))
        if pid == "20,24.2":
            for i, (avc, faces, _) in enumerate(flat):
                tid = f"20,24.2:k0:{i}"
                out[tid] = RegistryEntry(tid, _sporadic_builder(pid, i, tid), proto, avc, faces)
            continue
        for i, (avc, faces, _) in enumerate(flat):
            tid = f"{pid}:{i}"
            out[tid] = RegistryEntry(tid, _sporadic_builder(pid, i, tid), proto, avc, faces)
        if len(flat) == 1:
            aliases[pid] = f"{pid}:0"
        try:
            row_aliases = catalog.sporadic(pid).aliases
        except CatalogMiss:
            row_aliases = ()
        for al in row_aliases:
            # a row alias naming a face count picks the tiling with those faces
            m = re.fullmatch(r"(\d+),(\d+)", al)
            hits = [i for i, (_, f, _) in enumerate(flat) if m and f == (int(m[1]), int(m[2]))]
            if len(hits) == 1:
                aliases[al] = f"{pid}:{hits[0]}"
            elif len(flat) == 1:
                aliases[al] = f"{pid}:0"
    if "20,24.2" in _sporadic_rows():
        p = "20,24.2"
        for k in range(FLIP_MAX_K + 1):
            tid = f"20,24.2:k{k}"
            out[tid] = RegistryEntry(
                tid, (lambda k=k: flip_chain()[k]), (lambda: catalog.sporadic(p)),
                catalog.flip_family_avc(k), (20, 24))
    for al, target in aliases.items():
        if al not in out:
            out[al] = out[target]
    return out


_ANTI = re.compile(r"antiprism-(\d+)")
_MERGE = re.compile(r"icosahedral-m(\d+):(\d+)")


def lookup(tid: str) -> RegistryEntry:
    static = _static_entries()
    if tid in static:
        return static[tid]
    m = _ANTI.fullmatch(tid)
    if m:
        n = int(m[1])
        if n < 3:
            raise RegistryMiss(f"antiprism needs n >= 3: {tid!r}")
        return _antiprism_entry(n)
    m = _MERGE.fullmatch(tid)
    if m:
        mm = int(m[1])
        if not 1 <= mm <= 9:
            raise RegistryMiss(f"merge count out of range: {tid!r}")
        return _merge_entry(mm, int(m[2]))
    spor = _sporadic_entries()
    if tid in spor:
        e = spor[tid]
        return e if e.id == tid else RegistryEntry(tid, e.build, e.protoset, e.expected_avc, e.faces)
    raise RegistryMiss(f"unknown tiling id {tid!r}")


def build_named(tid: str) -> CombinatorialTiling:
    """Build the tiling registered under ``tid``; RegistryMiss if unknown."""
    return lookup(tid).build()


def default_protoset(tid: str) -> Protoset:
    return lookup(tid).protoset()


def registry_ids(antiprism_max: int = 8) -> list[str]:
    """Canonical ids of the finite registry, without aliases."""
    ids = list(_static_entries())
    ids += [f"antiprism-{n}" for n in range(3, antiprism_max + 1)]
    ids += [f"icosahedral-m{m}:0" for m in range(1, 10)]
    ids += [k for k, e in _sporadic_entries().items() if e.id == k]
    return ids


def tiling_key(t: CombinatorialTiling) -> tuple[int, ...]:
    return canonical_form(t)
