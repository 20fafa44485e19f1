"""Vertex types and their enumeration.

A vertex where ``n1`` triangle corners, ``n2`` beta corners and ``n3`` gamma
corners meet is the integer triple ``(n1, n2, n3)``. It can occur only when
``n1*alpha + n2*beta + n3*gamma = 2*pi``.
"""
from __future__ import annotations

import math
import re
from collections import Counter
from fractions import Fraction
from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np
from scipy.optimize import linprog

from .sphtrig import PI, AngleTriple

__all__ = [
    "VertexType",
    "AVC",
    "parse_vertex_type",
    "parse_avc",
    "format_avc",
    "enumerate_vertex_types",
    "brute_force_vertex_types",
    "is_linearly_dependent",
    "deg345_admissible_convex",
]

_SUPERSCRIPT = str.maketrans("0123456789", "⁰¹²³⁴⁵⁶⁷⁸⁹")
_GREEK = {"a": "α", "b": "β", "c": "γ"}


class VertexType(NamedTuple):
    n1: int
    n2: int
    n3: int

    @property
    def degree(self) -> int:
        return self.n1 + self.n2 + self.n3

    def angle_sum(self, t: AngleTriple) -> float:
        return self.n1 * t.alpha + self.n2 * t.beta + self.n3 * t.gamma

    def code(self) -> str:
        """ASCII name, e.g. ``a3c2`` for (3, 0, 2)."""
        parts = []
        for sym, n in zip("abc", self):
            if n == 1:
                parts.append(sym)
            elif n > 1:
                parts.append(f"{sym}{n}")
        return "".join(parts)

    def __str__(self) -> str:
        parts = []
        for sym, n in zip("abc", self):
            if n == 1:
                parts.append(_GREEK[sym])
            elif n > 1:
                parts.append(_GREEK[sym] + str(n).translate(_SUPERSCRIPT))
        return "".join(parts)


#: Anglewise vertex combination: vertex type -> number of such vertices.
AVC = Counter

_VT_RE = re.compile(r"([abc])(\d*)")
_AVC_RE = re.compile(r"^\s*(\d*)\s*([abc0-9]+)\s*$")


def parse_vertex_type(code: str) -> VertexType:
    """Parse ``'a3c2'``-style names; letters may repeat (``'abb'`` is a b2)."""
    n = [0, 0, 0]
    pos = 0
    code = code.strip()
    for m in _VT_RE.finditer(code):
        if m.start() != pos:
            raise ValueError(f"bad vertex type {code!r}")
        n["abc".index(m.group(1))] += int(m.group(2) or 1)
        pos = m.end()
    if pos != len(code) or not code:
        raise ValueError(f"bad vertex type {code!r}")
    return VertexType(*n)


def parse_avc(text: str) -> Counter:
    """Parse ``'6a2b, 2a3c3'`` into an AVC counter."""
    out: Counter = Counter()
    for item in text.split(","):
        m = _AVC_RE.match(item)
        if not m:
            raise ValueError(f"bad AVC item {item!r}")
        out[parse_vertex_type(m.group(2))] += int(m.group(1) or 1)
    return out


def format_avc(avc: Mapping[VertexType, int], ascii: bool = True) -> str:
    items = sorted(avc.items(), key=lambda kv: (kv[0].degree, tuple(-x for x in kv[0])))
    if ascii:
        return ", ".join(f"{n}{vt.code()}" for vt, n in items)
    return ", ".join(f"{n}{vt}" for vt, n in items)


def _bounds(angles: Sequence[float]) -> list[int]:
    return [int(math.floor(2 * PI / x + 1e-9)) if x > 0 else 0 for x in angles]


def enumerate_vertex_types(
    t: AngleTriple,
    tol: float = 1e-6,
    exact: Sequence[Fraction] | None = None,
) -> list[VertexType]:
    """All vertex types of degree >= 3 whose angle sum is 2pi.

    ``tol`` is relative to 2pi. When ``exact`` gives the three angles as
    rational multiples of pi the match is decided in exact arithmetic.
    """
    if not 0 < tol <= 1e-3:
        raise ValueError("tol must lie in (0, 1e-3]")
    angles = t.as_tuple()
    b1, b2, b3 = _bounds(angles)
    out = []
    for n1 in range(b1 + 1):
        s1 = n1 * angles[0]
        for n2 in range(b2 + 1):
            s2 = s1 + n2 * angles[1]
            if s2 > 2 * PI * (1 + tol):
                break
            for n3 in range(b3 + 1):
                s = s2 + n3 * angles[2]
                if s > 2 * PI * (1 + tol):
                    break
                if n1 + n2 + n3 < 3:
                    continue
                if exact is not None:
                    ok = n1 * exact[0] + n2 * exact[1] + n3 * exact[2] == 2
                else:
                    ok = abs(s - 2 * PI) < tol * 2 * PI
                if ok:
                    out.append(VertexType(n1, n2, n3))
    return out


def brute_force_vertex_types(t: AngleTriple, max_degree: int, tol: float = 1e-6) -> set[VertexType]:
    """Reference enumeration over every triple of degree 3..max_degree."""
    found = set()
    for d in range(3, max_degree + 1):
        for n1 in range(d + 1):
            for n2 in range(d - n1 + 1):
                vt = VertexType(n1, n2, d - n1 - n2)
                if abs(vt.angle_sum(t) - 2 * PI) < tol * 2 * PI:
                    found.add(vt)
    return found


def is_linearly_dependent(l: Sequence[int], m: Sequence[int], n: Sequence[int]) -> bool:
    """True iff the integer 3x3 matrix with rows l, m, n is singular."""
    det = (
        l[0] * (m[1] * n[2] - m[2] * n[1])
        - l[1] * (m[0] * n[2] - m[2] * n[0])
        + l[2] * (m[0] * n[1] - m[1] * n[0])
    )
    return det == 0


def _convex_feasible(vt: VertexType, eps: float) -> bool:
    # variables (alpha, beta, gamma); open constraints shrunk by eps
    a_ub = [
        [0, -1, 1],  # gamma <= beta - eps
        [0, -1, -1],  # beta + gamma >= pi + eps
    ]
    b_ub = [-eps, -PI - eps]
    bounds = [
        (PI / 3 + eps, PI / 2 - eps),
        (PI / 2 + eps, PI - eps),
        (eps, PI),
    ]
    res = linprog(
        c=[0, 0, 0],
        A_ub=np.array(a_ub, dtype=float),
        b_ub=b_ub,
        A_eq=np.array([list(vt)], dtype=float),
        b_eq=[2 * PI],
        bounds=bounds,
        method="highs",
    )
    return res.status == 0


def deg345_admissible_convex(eps: float = 1e-6) -> dict[int, list[VertexType]]:
    """Vertex types of degree 3, 4, 5 possible in a convex tiling with gamma < beta.

    Each candidate is kept iff its angle-sum equation is feasible under
    pi/3 < alpha < pi/2 < beta < pi, 0 < gamma < beta, beta + gamma > pi.
    """
    table: dict[int, list[VertexType]] = {}
    for d in (3, 4, 5):
        rows = []
        for n1 in range(d, -1, -1):
            for n2 in range(d - n1, -1, -1):
                vt = VertexType(n1, n2, d - n1 - n2)
                if _convex_feasible(vt, eps):
                    rows.append(vt)
        table[d] = rows
    return table


def iter_types(avc: Mapping[VertexType, int] | Iterable[VertexType]) -> list[VertexType]:
    return sorted(avc)
