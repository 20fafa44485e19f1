"""Spherical trigonometry of the regular triangle and the rhombus.

Both tiles share the edge length ``a``. On the unit sphere

    cos a = cot(alpha) cot(alpha/2) = cot(beta/2) cot(gamma/2)

where ``alpha`` is the triangle angle and ``beta >= gamma`` are the rhombus
angles. All angles and lengths are radians.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

from .errors import DomainError

PI = math.pi

#: |beta - pi| below this classifies a protoset as degenerate.
DEGENERATE_TOL = 1e-9

__all__ = [
    "AngleTriple",
    "TileAreas",
    "Residuals",
    "edge_from_alpha",
    "alpha_from_edge",
    "beta_from_gamma",
    "edge_from_rhombus",
    "areas",
    "residuals",
    "arccot",
    "cot",
    "bisect",
]


def cot(x: float) -> float:
    return math.cos(x) / math.sin(x)


def arccot(x: float) -> float:
    """Inverse cotangent with range (0, pi), continuous on the whole real line."""
    return 0.5 * PI - math.atan(x)


def bisect(f: Callable[[float], float], lo: float, hi: float, xtol: float = 0.0) -> float:
    """Root of ``f`` in ``[lo, hi]`` by plain bisection.

    ``f(lo)`` and ``f(hi)`` must differ in sign (or one of them vanish). With
    the default ``xtol`` the loop runs until the bracket cannot shrink any
    further in double precision, which is deterministic and well below 1e-13.
    """
    flo = f(lo)
    fhi = f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo < 0.0) == (fhi < 0.0):
        raise DomainError(f"no sign change on [{lo!r}, {hi!r}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= xtol:
            break
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid < 0.0) == (flo < 0.0):
            lo, flo = mid, fmid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class AngleTriple:
    """Tile angles (alpha, beta, gamma) in radians.

    Construction does not enforce admissibility so that deliberately broken
    triples can be fed to the checkers; use :meth:`violations` or
    :meth:`require_valid`.
    """

    alpha: float
    beta: float
    gamma: float

    def violations(self) -> list[str]:
        out = []
        if not PI / 3 < self.alpha < PI:
            out.append("alpha outside (pi/3, pi)")
        # a square rhombus may come out with beta a rounding below gamma
        if not ((self.beta >= self.gamma or self.is_square) and self.gamma > 0):
            out.append("need beta >= gamma > 0")
        if not self.beta + self.gamma > PI:
            out.append("need beta + gamma > pi")
        return out

    @property
    def is_valid(self) -> bool:
        return not self.violations()

    def require_valid(self) -> "AngleTriple":
        bad = self.violations()
        if bad:
            raise DomainError(f"inadmissible angles {self}: " + "; ".join(bad))
        return self

    @property
    def kind(self) -> str:
        """``'convex'``, ``'degenerate'`` or ``'concave'`` according to beta."""
        if abs(self.beta - PI) < DEGENERATE_TOL:
            return "degenerate"
        return "convex" if self.beta < PI else "concave"

    @property
    def is_square(self) -> bool:
        """True when the rhombus has four equal angles."""
        return abs(self.beta - self.gamma) < 1e-12

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.alpha, self.beta, self.gamma)

    def in_pi(self) -> tuple[float, float, float]:
        return (self.alpha / PI, self.beta / PI, self.gamma / PI)

    def angle(self, label: str) -> float:
        return {"a": self.alpha, "b": self.beta, "c": self.gamma}[label]


class TileAreas(NamedTuple):
    s_triangle: float
    s_rhombus: float


class Residuals(NamedTuple):
    r1: float
    r2: float


def edge_from_alpha(alpha: float) -> float:
    """Edge length of the regular triangle with angle ``alpha``.

    Uses cot(alpha) cot(alpha/2) = cos(alpha) / (1 - cos(alpha)), which is
    exactly zero at alpha = pi/2.
    """
    if not PI / 3 < alpha < PI:
        raise DomainError(f"alpha={alpha!r} outside (pi/3, pi)")
    c = math.cos(alpha)
    if alpha == 0.5 * PI:
        c = 0.0
    return math.acos(min(1.0, max(-1.0, c / (1.0 - c))))


def alpha_from_edge(a: float) -> float:
    """Triangle angle for edge length ``a`` in (0, 2pi/3), by bisection."""
    if not 0.0 < a < 2 * PI / 3:
        raise DomainError(f"a={a!r} outside (0, 2pi/3)")
    if a == 0.5 * PI:
        return 0.5 * PI
    target = math.cos(a)

    def g(x: float) -> float:
        c = math.cos(x)
        return c / (1.0 - c) - target

    return bisect(g, PI / 3 + 1e-15, PI - 1e-15)


def beta_from_gamma(gamma: float, a: float) -> float:
    """Rhombus angle beta for the opposite angle ``gamma`` and edge ``a``.

    Convex regime only (0 < a < pi/2); beta is strictly decreasing in gamma.
    """
    if not 0.0 < gamma < PI:
        raise DomainError(f"gamma={gamma!r} outside (0, pi)")
    ca = math.cos(a)
    if not 0.0 < a < 0.5 * PI or ca <= 0.0:
        raise DomainError(f"a={a!r} outside the convex regime (0, pi/2)")
    return 2.0 * arccot(ca * math.tan(0.5 * gamma))


def edge_from_rhombus(beta: float, gamma: float) -> float:
    """Edge length implied by the rhombus angles."""
    q = cot(0.5 * beta) * cot(0.5 * gamma)
    return math.acos(min(1.0, max(-1.0, q)))


def areas(t: AngleTriple) -> TileAreas:
    t.require_valid()
    return TileAreas(3 * t.alpha - PI, 2 * (t.beta + t.gamma) - 2 * PI)


def residuals(t: AngleTriple) -> Residuals:
    """Consistency residuals of a triple; both vanish for a genuine protoset.

    ``r2`` compares the rhombus and triangle expressions for cos a; ``r1`` is
    the quadratic relation between q = cot(beta/2)cot(gamma/2) and cos alpha.
    """
    q = cot(0.5 * t.beta) * cot(0.5 * t.gamma)
    ca = math.cos(t.alpha)
    r2 = q - ca / (1.0 - ca)
    r1 = q * q + (1.0 - q * q) * ca - q
    return Residuals(r1, r2)
