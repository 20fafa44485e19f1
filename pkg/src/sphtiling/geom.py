"""Metric realization of combinatorial tilings on the unit sphere.

Faces are placed breadth-first from a seed face: the first corner of face 0
at the north pole, its first edge in the x-z plane. Each new face starts from
the edge it shares with an already placed face and is walked corner by
corner, turning by the nominal corner angle. A vertex reached along several
paths must land in the same place; the largest disagreement is the closure
defect.
"""
from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from ._sphere import arc, corner_angle, step, tangent, turn
from .catalog import Protoset
from .errors import ClosureFailure
from .tilingcore.tiling import CombinatorialTiling

__all__ = ["SphericalEmbedding", "realize", "export", "load_export", "CLOSURE_TOL"]

CLOSURE_TOL = 1e-7
EMBED_SCHEMA = "sphtiling.embedding"
EMBED_VERSION = 1


@dataclass(frozen=True, eq=False)
class SphericalEmbedding:
    tiling: CombinatorialTiling
    protoset: Protoset
    positions: np.ndarray  # (v, 3), row i is vertex i
    closure_defect: float
    edge_error: float  # max |arc length - a| over edges
    angle_error: float  # max |measured corner angle - nominal|
    face_areas: np.ndarray = field(repr=False)

    @property
    def total_area(self) -> float:
        return float(self.face_areas.sum())

    @property
    def area_defect(self) -> float:
        return abs(self.total_area - 4 * math.pi)

    def position(self, v: int) -> np.ndarray:
        return self.positions[v]

    def summary(self) -> dict:
        return {
            "tiling": self.tiling.name,
            "protoset": self.protoset.id,
            "vertices": int(len(self.positions)),
            "faces": len(self.tiling.faces),
            "closure_defect": self.closure_defect,
            "edge_error": self.edge_error,
            "angle_error": self.angle_error,
            "total_area": self.total_area,
            "area_defect": self.area_defect,
        }


def _walk(face_labels, start: int, p0: np.ndarray, p1: np.ndarray, angles, a: float) -> dict[int, np.ndarray]:
    """Corner positions of a face given corners start and start+1."""
    d = len(face_labels)
    out = {start % d: p0, (start + 1) % d: p1}
    prev, cur = p0, p1
    for k in range(2, d):
        i = (start + k - 1) % d
        theta = angles.angle(face_labels[i])
        di = turn(cur, tangent(cur, prev), -theta)
        nxt = step(cur, di, a)
        out[(start + k) % d] = nxt
        prev, cur = cur, nxt
    return out


def realize(t: CombinatorialTiling, p: Protoset, tol: float = CLOSURE_TOL) -> SphericalEmbedding:
    """Place ``t`` on the unit sphere with the tiles of ``p``.

    Raises ClosureFailure when two placement paths disagree on a vertex by
    more than ``tol`` (radians of arc), which means the tiling and the
    protoset do not fit together.
    """
    angles, a = p.angles, p.a
    cv = t.corner_vertex
    nv = t.n_vertices
    pos: list[np.ndarray | None] = [None] * nv
    corner_pos: dict[tuple[int, int], np.ndarray] = {}
    defect = 0.0

    seed0 = np.array([0.0, 0.0, 1.0])
    seed1 = np.array([math.sin(a), 0.0, math.cos(a)])
    placed = {0}
    queue = deque([(0, 0, seed0, seed1)])
    while queue:
        f, s, p0, p1 = queue.popleft()
        face = t.faces[f]
        for i, x in _walk(face.labels, s, p0, p1, angles, a).items():
            corner_pos[(f, i)] = x
            v = cv[(f, i)]
            if pos[v] is None:
                pos[v] = x
            else:
                err = arc(pos[v], x)
                if not err <= defect:  # also catches nan
                    defect = err if math.isfinite(err) else math.inf
        for side in range(face.degree):
            g, u = t.partner[(f, side)]
            if g in placed:
                continue
            placed.add(g)
            # corner u of g sits on corner side+1 of f, corner u+1 on corner side
            d = face.degree
            queue.append((g, u, corner_pos[(f, (side + 1) % d)], corner_pos[(f, side)]))
    if len(placed) != len(t.faces) or any(x is None for x in pos):
        raise ClosureFailure("tiling is not connected", defect=math.inf)
    if not defect <= tol:
        raise ClosureFailure(f"closure defect {defect:.3g} exceeds {tol:.3g}", defect=defect)

    P = np.array(pos, dtype=float)
    P /= np.linalg.norm(P, axis=1)[:, None]
    P.setflags(write=False)

    edge_err = 0.0
    for (f, s), _ in t.gluings:
        d = t.faces[f].degree
        x, y = P[cv[(f, s)]], P[cv[(f, (s + 1) % d)]]
        edge_err = max(edge_err, abs(arc(x, y) - a))
    ang_err = 0.0
    areas = np.empty(len(t.faces))
    for f, face in enumerate(t.faces):
        d = face.degree
        vs = [P[cv[(f, i)]] for i in range(d)]
        total = 0.0
        for i in range(d):
            ang = corner_angle(vs[i - 1], vs[i], vs[(i + 1) % d])
            ang_err = max(ang_err, abs(ang - angles.angle(face.labels[i])))
            total += ang
        areas[f] = total - (d - 2) * math.pi
    areas.setflags(write=False)
    return SphericalEmbedding(t, p, P, float(defect), float(edge_err), float(ang_err), areas)


def _obj(e: SphericalEmbedding) -> bytes:
    lines = [f"# sphtiling embedding {e.tiling.name or 'tiling'}", f"# protoset {e.protoset.id}"]
    for x, y, z in e.positions:
        lines.append("v %.17g %.17g %.17g" % (x, y, z))
    for fv in e.tiling.face_vertices():
        lines.append("f " + " ".join(str(v + 1) for v in fv))
    return ("\n".join(lines) + "\n").encode("ascii")


def _json(e: SphericalEmbedding) -> bytes:
    doc = {
        "schema": EMBED_SCHEMA,
        "version": EMBED_VERSION,
        "tiling": e.tiling.to_dict(),
        "protoset": e.protoset.to_dict(),
        "positions": [[float(c) for c in row] for row in e.positions],
        "face_vertices": [list(fv) for fv in e.tiling.face_vertices()],
        "closure_defect": e.closure_defect,
    }
    return (json.dumps(doc, indent=1, sort_keys=True) + "\n").encode("utf-8")


def export(e: SphericalEmbedding, format: str = "obj") -> bytes:
    """Serialize an embedding as OBJ (ASCII, LF) or JSON."""
    if format == "obj":
        return _obj(e)
    if format == "json":
        return _json(e)
    raise ValueError(f"unknown export format {format!r}")


def load_export(data: bytes | str) -> tuple[CombinatorialTiling, np.ndarray]:
    """Read a JSON export back into its tiling and vertex positions."""
    doc = json.loads(data)
    if doc.get("schema") != EMBED_SCHEMA:
        raise ValueError("not an embedding export")
    return CombinatorialTiling.from_dict(doc["tiling"]), np.array(doc["positions"], dtype=float)
