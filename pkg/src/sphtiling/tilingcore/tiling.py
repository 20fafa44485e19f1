"""Labeled sphere maps built from triangles and rhombi.

A face stores its corner labels in counterclockwise order seen from outside
the sphere: ``'a'`` for the triangle angle, ``'b'``/``'c'`` for the rhombus
angles. Side ``s`` of a face runs from corner ``s`` to corner ``s+1``. A
gluing ``((f, s), (g, t))`` identifies side s of f with side t of g, running
in opposite directions, so corner (f, s) meets corner (g, t+1).
"""
from __future__ import annotations

import json
import math
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from ..errors import DomainError
from ..sphtrig import PI, AngleTriple
from ..vertexcomb import VertexType, format_avc

__all__ = [
    "Face",
    "CombinatorialTiling",
    "ValidationReport",
    "validate",
    "extract_avc",
    "canonical_form",
    "aad_holds",
    "SCHEMA_VERSION",
]

SCHEMA = "sphtiling.tiling"
SCHEMA_VERSION = 1
_LABEL_CODE = {"a": 0, "b": 1, "c": 2}
_KIND_CODE = {"triangle": 0, "rhombus": 1}

Side = tuple[int, int]


@dataclass(frozen=True)
class Face:
    kind: str
    labels: tuple[str, ...]

    @property
    def degree(self) -> int:
        return len(self.labels)

    @classmethod
    def triangle(cls) -> "Face":
        return cls("triangle", ("a", "a", "a"))

    @classmethod
    def rhombus(cls, labels: Sequence[str]) -> "Face":
        return cls("rhombus", tuple(labels))


@dataclass(frozen=True, eq=False)
class CombinatorialTiling:
    faces: tuple[Face, ...]
    gluings: tuple[tuple[Side, Side], ...]
    name: str = ""
    meta: Mapping[str, object] = field(default_factory=dict, compare=False)

    # ------------------------------------------------------------ building

    @classmethod
    def from_vertex_faces(
        cls,
        face_vertices: Sequence[Sequence[int]],
        face_labels: Sequence[Sequence[str]],
        name: str = "",
        meta: Mapping[str, object] | None = None,
    ) -> "CombinatorialTiling":
        """Build from faces given as CCW vertex-id lists; sides pair by shared edges."""
        faces = []
        for fv, lab in zip(face_vertices, face_labels):
            if len(fv) != len(lab):
                raise DomainError("labels and vertices differ in length")
            faces.append(Face("triangle" if len(fv) == 3 else "rhombus", tuple(lab)))
        where: dict[tuple[int, int], Side] = {}
        for f, fv in enumerate(face_vertices):
            d = len(fv)
            for s in range(d):
                e = (fv[s], fv[(s + 1) % d])
                if e in where:
                    raise DomainError(f"directed edge {e} used twice")
                where[e] = (f, s)
        gl = []
        for (u, v), fs in where.items():
            if (v, u) not in where:
                continue
            gt = where[(v, u)]
            if fs < gt:
                gl.append((fs, gt))
        gl.sort()
        return cls(tuple(faces), tuple(gl), name, dict(meta or {}))

    # ------------------------------------------------------------- queries

    @property
    def f_triangle(self) -> int:
        return sum(1 for f in self.faces if f.kind == "triangle")

    @property
    def f_rhombus(self) -> int:
        return sum(1 for f in self.faces if f.kind == "rhombus")

    @cached_property
    def partner(self) -> dict[Side, Side]:
        out: dict[Side, Side] = {}
        for x, y in self.gluings:
            out[x] = y
            out[y] = x
        return out

    def sides(self) -> Iterable[Side]:
        for f, face in enumerate(self.faces):
            for s in range(face.degree):
                yield (f, s)

    def next_corner(self, f: int, i: int) -> tuple[int, int] | None:
        """Corner following (f, i) around its vertex, or None at a dangling side."""
        p = self.partner.get((f, i))
        if p is None:
            return None
        g, t = p
        return g, (t + 1) % self.faces[g].degree

    @cached_property
    def vertex_cycles(self) -> list[list[tuple[int, int]]]:
        """Corner cycles of the vertices, in a deterministic order."""
        seen: set[tuple[int, int]] = set()
        cycles = []
        for f, face in enumerate(self.faces):
            for i in range(face.degree):
                if (f, i) in seen:
                    continue
                # walk backwards first so open chains start at their end
                start = (f, i)
                cur = start
                while True:
                    prev = self._prev_corner(*cur)
                    if prev is None:
                        break
                    if prev == start:
                        cur = start
                        break
                    cur = prev
                cyc = []
                c = cur
                while c is not None and c not in seen:
                    seen.add(c)
                    cyc.append(c)
                    c = self.next_corner(*c)
                cycles.append(cyc)
        return cycles

    def _prev_corner(self, f: int, i: int) -> tuple[int, int] | None:
        d = self.faces[f].degree
        p = self.partner.get((f, (i - 1) % d))
        if p is None:
            return None
        return p

    @cached_property
    def corner_vertex(self) -> dict[tuple[int, int], int]:
        out = {}
        for v, cyc in enumerate(self.vertex_cycles):
            for c in cyc:
                out[c] = v
        return out

    def face_vertices(self) -> list[tuple[int, ...]]:
        cv = self.corner_vertex
        return [tuple(cv[(f, i)] for i in range(face.degree)) for f, face in enumerate(self.faces)]

    @property
    def n_vertices(self) -> int:
        return len(self.vertex_cycles)

    @property
    def n_edges(self) -> int:
        return len(self.gluings)

    def vertex_words(self) -> list[str]:
        return ["".join(self.faces[f].labels[i] for f, i in cyc) for cyc in self.vertex_cycles]

    # ----------------------------------------------------------------- io

    def to_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "version": SCHEMA_VERSION,
            "name": self.name,
            "faces": [{"kind": f.kind, "corners": "".join(f.labels)} for f in self.faces],
            "gluings": [[f, s, g, t] for (f, s), (g, t) in self.gluings],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, doc: Mapping) -> "CombinatorialTiling":
        if doc.get("schema") != SCHEMA:
            raise DomainError("not a tiling document")
        if int(doc.get("version", 0)) > SCHEMA_VERSION:
            raise DomainError(f"unsupported tiling schema version {doc.get('version')}")
        faces = tuple(Face(f["kind"], tuple(f["corners"])) for f in doc["faces"])
        gl = tuple(((int(a), int(b)), (int(c), int(d))) for a, b, c, d in doc["gluings"])
        return cls(faces, gl, doc.get("name", ""))

    @classmethod
    def from_json(cls, text: str) -> "CombinatorialTiling":
        return cls.from_dict(json.loads(text))


def extract_avc(t: CombinatorialTiling) -> Counter:
    out: Counter = Counter()
    for cyc in t.vertex_cycles:
        n = [0, 0, 0]
        for f, i in cyc:
            n[_LABEL_CODE[t.faces[f].labels[i]]] += 1
        out[VertexType(*n)] += 1
    return out


@dataclass
class ValidationReport:
    edge_to_edge_ok: bool
    degree_ok: bool
    euler_ok: bool
    labels_ok: bool
    no_alpha3: bool
    vertex_sum_defects: dict[int, float]
    avc: Counter
    tol: float
    problems: list[str] = field(default_factory=list)

    @property
    def sums_ok(self) -> bool:
        return all(d < self.tol for d in self.vertex_sum_defects.values())

    @property
    def all_green(self) -> bool:
        return (
            self.edge_to_edge_ok
            and self.degree_ok
            and self.euler_ok
            and self.labels_ok
            and self.no_alpha3
            and self.sums_ok
        )

    def to_dict(self) -> dict:
        worst = max(self.vertex_sum_defects.values(), default=0.0)
        return {
            "all_green": self.all_green,
            "edge_to_edge_ok": self.edge_to_edge_ok,
            "degree_ok": self.degree_ok,
            "euler_ok": self.euler_ok,
            "labels_ok": self.labels_ok,
            "no_alpha3": self.no_alpha3,
            "max_vertex_sum_defect": worst,
            "avc": format_avc(self.avc),
            "problems": list(self.problems),
        }


def _labels_ok(face: Face, square: bool) -> bool:
    lab = face.labels
    if face.kind == "triangle":
        return lab == ("a", "a", "a")
    if face.kind != "rhombus" or len(lab) != 4:
        return False
    if square and set(lab) == {"b"}:
        return True
    return lab in (("b", "c", "b", "c"), ("c", "b", "c", "b"))


def validate(t: CombinatorialTiling, angles: AngleTriple, tol: float = 1e-9) -> ValidationReport:
    """Check that ``t`` is an edge-to-edge tiling for the given tile angles."""
    problems = []
    all_sides = set(t.sides())
    used: Counter = Counter()
    for x, y in t.gluings:
        used[x] += 1
        used[y] += 1
        if x == y:
            problems.append(f"side {x} glued to itself")
        elif x[0] == y[0] and t.faces[x[0]].degree == 3:
            problems.append(f"triangle {x[0]} glued to itself")
    bad = [s for s in all_sides if used[s] != 1] + [s for s in used if s not in all_sides]
    e2e = not bad and not problems
    if bad:
        problems.append(f"{len(bad)} sides not glued exactly once")

    cycles = t.vertex_cycles
    closed = all(t.next_corner(*cyc[-1]) == cyc[0] for cyc in cycles) if e2e else False
    degree_ok = closed and all(len(c) >= 3 for c in cycles)
    if closed and not degree_ok:
        problems.append("vertex of degree < 3")

    # connectivity
    conn = True
    if t.faces:
        seen = {0}
        dq = deque([0])
        while dq:
            f = dq.popleft()
            for s in range(t.faces[f].degree):
                p = t.partner.get((f, s))
                if p and p[0] not in seen:
                    seen.add(p[0])
                    dq.append(p[0])
        conn = len(seen) == len(t.faces)
    v, e, f = len(cycles), len(t.gluings), len(t.faces)
    euler_ok = e2e and closed and conn and v - e + f == 2
    if not euler_ok:
        problems.append(f"not a sphere map (v-e+f = {v - e + f})")

    square = angles.is_square
    labels_ok = all(_labels_ok(face, square) for face in t.faces)
    if not labels_ok:
        problems.append("bad corner labels")

    avc = extract_avc(t)
    no_a3 = VertexType(3, 0, 0) not in avc
    defects = {}
    for i, cyc in enumerate(cycles):
        s = sum(angles.angle(t.faces[fi].labels[ci]) for fi, ci in cyc)
        defects[i] = abs(s - 2 * PI)
    return ValidationReport(e2e, degree_ok, euler_ok, labels_ok, no_a3, defects, avc, tol, problems)


def aad_holds(t: CombinatorialTiling) -> bool:
    """Some vertex shows alpha next to beta and some vertex alpha next to gamma.

    Consecutive corners in a vertex cycle share an edge. When the rhombus is
    labeled with beta only, the gamma half of the check is vacuous.
    """
    if t.f_triangle == 0 or t.f_rhombus == 0:
        return True
    has_c = any("c" in f.labels for f in t.faces)
    ab = ac = False
    for w in t.vertex_words():
        n = len(w)
        for i in range(n):
            pair = {w[i], w[(i + 1) % n]}
            ab |= pair == {"a", "b"}
            ac |= pair == {"a", "c"}
    return ab and (ac or not has_c)


# ------------------------------------------------------------ canonical form


def _bfs_code(t: CombinatorialTiling, f0: int, s0: int, orient: int, best: list[int] | None) -> list[int] | None:
    """BFS code from one starting corner; None as soon as it exceeds ``best``."""
    faces = t.faces
    partner = t.partner
    number = {f0: 0}
    start = {f0: s0}
    order = [f0]
    code: list[int] = []
    tie = best is not None

    def emit(x: int) -> bool:
        nonlocal tie
        if tie:
            b = best[len(code)]
            if x > b:
                return False
            if x < b:
                tie = False
        code.append(x)
        return True

    qi = 0
    while qi < len(order):
        f = order[qi]
        qi += 1
        face = faces[f]
        d = face.degree
        s = start[f]
        if not emit(_KIND_CODE[face.kind]):
            return None
        for k in range(d):
            if not emit(_LABEL_CODE[face.labels[(s + orient * k) % d]]):
                return None
        for k in range(d):
            c = (s + orient * k) % d
            side = c if orient == 1 else (c - 1) % d
            g, u = partner[(f, side)]
            dg = faces[g].degree
            entry = (u + 1) % dg if orient == 1 else u
            if g not in number:
                number[g] = len(order)
                start[g] = entry
                order.append(g)
            if not emit(number[g]):
                return None
            if not emit(((entry - start[g]) * orient) % dg):
                return None
    return code


def canonical_form(t: CombinatorialTiling, reflections: bool = True) -> tuple[int, ...]:
    """Minimal BFS code over all starting corners and orientations.

    Two labeled tilings are isomorphic (allowing mirror images when
    ``reflections``) iff their canonical forms agree.
    """
    # only start from faces of the rarest kind with the smallest label word
    cnt = Counter(f.kind for f in t.faces)
    kind = min(cnt, key=lambda k: (cnt[k], _KIND_CODE[k]))
    best: list[int] | None = None
    orients = (1, -1) if reflections else (1,)
    for f0, face in enumerate(t.faces):
        if face.kind != kind:
            continue
        for s0 in range(face.degree):
            for o in orients:
                code = _bfs_code(t, f0, s0, o, best)
                if code is not None and (best is None or code < best):
                    best = code
    return tuple(best or ())


def automorphism_count(t: CombinatorialTiling, reflections: bool = True) -> int:
    """Order of the labeled map's symmetry group (mirror images included by default)."""
    best = list(canonical_form(t, reflections))
    cnt = Counter(f.kind for f in t.faces)
    kind = min(cnt, key=lambda k: (cnt[k], _KIND_CODE[k]))
    orients = (1, -1) if reflections else (1,)
    n = 0
    for f0, face in enumerate(t.faces):
        if face.kind != kind:
            continue
        for s0 in range(face.degree):
            for o in orients:
                if _bfs_code(t, f0, s0, o, None) == best:
                    n += 1
    return n
