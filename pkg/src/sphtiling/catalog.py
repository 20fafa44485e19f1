"""Protoset catalog: the parametric families and the sporadic protosets.

Every sporadic protoset is computed from its closed form and then checked
against an independent real-root solve of the same angle relations. Angles
are radians internally; the truncated four-digit values are in units of pi.
"""
from __future__ import annotations

import ast
import cmath
import json
import math
import operator
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .counting import counts_from_avc
from .errors import CatalogMiss, DomainError, FormulaBranch
from .sphtrig import PI, AngleTriple, arccot, bisect, edge_from_alpha, edge_from_rhombus, residuals
from .vertexcomb import VertexType, format_avc, parse_avc

__all__ = [
    "Protoset",
    "ExpectedAVC",
    "VerificationReport",
    "prism_family",
    "cuboct_family",
    "antiprism_family",
    "icosahedral_protoset",
    "sporadic",
    "sporadic_ids",
    "verify_protoset",
    "rational_protosets",
    "cyclotomic_residual",
    "flip_family_avc",
    "independent_solve",
    "closed_form",
    "parse_protoset_spec",
    "catalog_json",
    "truncate_pi",
    "SEXTIC",
]

IMAG_TOL = 1e-9
RESIDUAL_TOL = 1e-9

#: 2 cos(beta) of the convex (20,24) protoset is a root of this polynomial.
SEXTIC = (1, 1, -4, -3, 3, 0, -1)


class ExpectedAVC(NamedTuple):
    faces: tuple[int, int]
    avc: Counter
    tilings: int | None  # None when the count is not known


@dataclass(frozen=True)
class Protoset:
    id: str
    angles: AngleTriple
    a: float
    family: str
    param: Mapping[str, float] = field(default_factory=dict)
    expected: tuple[ExpectedAVC, ...] = ()
    exact: tuple[Fraction, Fraction, Fraction] | None = None
    table: tuple[str, str, str, str] | None = None
    aliases: tuple[str, ...] = ()
    imag_residue: float = 0.0

    @property
    def kind(self) -> str:
        return self.angles.kind

    @property
    def total_tilings(self) -> int | None:
        counts = [e.tilings for e in self.expected]
        if not counts or any(c is None for c in counts):
            return None
        return sum(counts)

    def vertex_types(self) -> list[VertexType]:
        seen: dict[VertexType, None] = {}
        for e in self.expected:
            for vt in e.avc:
                seen.setdefault(vt)
        return list(seen)

    def to_dict(self) -> dict:
        al, be, ga = self.angles.in_pi()
        return {
            "id": self.id,
            "aliases": list(self.aliases),
            "family": self.family,
            "param": dict(self.param),
            "kind": self.kind,
            "angles_pi": [al, be, ga],
            "a_pi": self.a / PI,
            "truncated": [truncate_pi(x) for x in (al, be, ga, self.a / PI)],
            "table": list(self.table) if self.table else None,
            "exact_pi": [str(x) for x in self.exact] if self.exact else None,
            "expected": [
                {"faces": list(e.faces), "avc": format_avc(e.avc), "tilings": e.tilings}
                for e in self.expected
            ],
        }


def truncate_pi(x: float, digits: int = 4) -> str:
    """Truncate (not round) a value in pi units to ``digits`` decimals."""
    scale = 10**digits
    return f"{math.floor(x * scale + 1e-9) / scale:.{digits}f}"


def _make(pid, t: AngleTriple, family, **kw) -> Protoset:
    a = edge_from_alpha(t.alpha)
    return Protoset(pid, t, a, family, **kw)


# ---------------------------------------------------------------- families


ENDPOINT_SNAP = 1e-14
_PRISM_START = math.acos(1 / 8)
_CUBOCT_START = math.acos(1 / 3)


def prism_family(alpha: float) -> Protoset:
    """Protoset with the single vertex type alpha beta gamma (2 triangles, 3 rhombi)."""
    if not _PRISM_START - 1e-15 <= alpha < PI:
        raise DomainError("prism family needs alpha in [arccos(1/8), pi)")
    ca, sa = math.cos(alpha), math.sin(alpha)
    # the endpoint is a square-root branch point: one ulp in alpha moves
    # beta by ~1e-8, so a float within ENDPOINT_SNAP of it means the endpoint
    root = 0.0 if alpha - _PRISM_START <= ENDPOINT_SNAP else math.sqrt(max(0.0, 1.0 - 8.0 * ca))
    beta = 2.0 * arccot(-(root + 2.0 * ca - 1.0) / (2.0 * sa))
    gamma = 2 * PI - alpha - beta
    avc = Counter({VertexType(1, 1, 1): 6})
    return _make(
        "prism",
        AngleTriple(alpha, beta, gamma),
        "prism",
        param={"alpha": alpha},
        expected=(ExpectedAVC((2, 3), avc, 1),),
    )


def cuboct_family(alpha: float) -> Protoset:
    """Protoset with the single vertex type alpha^2 beta gamma (8 triangles, 6 rhombi)."""
    if not _CUBOCT_START - 1e-15 <= alpha < 0.5 * PI:
        raise DomainError("cuboctahedral family needs alpha in [arccos(1/3), pi/2)")
    ca, sa = math.cos(alpha), math.sin(alpha)
    root = 0.0 if alpha - _CUBOCT_START <= ENDPOINT_SNAP else math.sqrt(max(0.0, (3 * ca - 1) / (ca - 1)))
    beta = 2.0 * arccot(-(sa * root + math.cos(2 * alpha) + ca) / math.sin(2 * alpha))
    gamma = 2 * PI - 2 * alpha - beta
    avc = Counter({VertexType(2, 1, 1): 12})
    return _make(
        "cuboct",
        AngleTriple(alpha, beta, gamma),
        "cuboct",
        param={"alpha": alpha},
        expected=(ExpectedAVC((8, 6), avc, 2),),
    )


def antiprism_bracket(n: int) -> tuple[float, float]:
    return PI - (2 * PI / 3) / (2 * n - 1), PI - (PI / 2) / (2 * n - 1)


def _antiprism_angles(beta: float, n: int) -> tuple[float, float, float]:
    alpha = (2 * n - 1) * beta - (n - 1) * 2 * PI
    return alpha, beta, 2 * PI - 2 * beta


def antiprism_family(n: int) -> Protoset:
    """Protoset of the generalized antiprism tiling with 2 triangles and 6n-3 rhombi."""
    if int(n) != n or n < 3:
        raise DomainError("antiprism family needs an integer n >= 3")
    n = int(n)
    lo, hi = antiprism_bracket(n)

    def f(b: float) -> float:
        al, _, _ = _antiprism_angles(b, n)
        return math.cos(al) * (2 * math.cos(b) - 1) - math.cos(b)

    beta = bisect(f, lo, hi)
    avc = Counter({VertexType(1, 1, n): 6, VertexType(0, 2, 1): 6 * n - 6})
    return _make(
        f"antiprism-{n}",
        AngleTriple(*_antiprism_angles(beta, n)),
        "antiprism",
        param={"n": n},
        expected=(ExpectedAVC((2, 6 * n - 3), avc, 1),),
    )


def icosahedral_protoset() -> Protoset:
    exact = (Fraction(2, 5), Fraction(4, 5), Fraction(2, 5))
    t = AngleTriple(*(float(x) * PI for x in exact))
    avc = parse_avc("ab2, b2c, a3b, a2bc, abc2, bc3, a5, a4c, a3c2, a2c3, ac4, c5")
    return _make(
        "ico",
        t,
        "icosahedral",
        exact=exact,
        table=("2/5", "4/5", "2/5", "0.3524"),
        aliases=("20-2m,m", "icosahedral"),
        expected=tuple(ExpectedAVC((20 - 2 * m, m), avc, None) for m in range(1, 10)),
    )


def flip_family_avc(k: int) -> Counter:
    """AVC of the (20,24) tilings carrying k degree-7 vertices."""
    if not 0 <= k < 12:
        raise DomainError("k must lie in 0..11")
    out = Counter({VertexType(1, 2, 0): 12 + k, VertexType(2, 1, 2): 24 - 2 * k})
    if k:
        out[VertexType(3, 0, 4)] = k
    return out


# ------------------------------------------------------- sporadic closed forms

_S = cmath.sqrt


def _cbrt(z) -> complex:
    return cmath.exp(cmath.log(complex(z)) / 3)


def _cf_8_2():
    return "beta", 3 * cmath.acos((1 - _S(2) + _S(3 + 6 * _S(2))) / 4)


def _cf_32_6_1():
    c = _cbrt(19 + 3 * _S(33))
    return "beta", 4 * cmath.asin((c**2 - 2 * c + 4) / (6 * c))


def _cf_8_18():
    return "beta", 2 * cmath.atan(_S(7 - 4 * _S(2)))


def _cf_4_4_2():
    return "beta", cmath.acos((1 - _S(17)) / 4)


def _cf_8_3():
    return "beta", 6 * cmath.atan(_S(3 * (9 - 4 * _S(5))))


def _cf_4_12():
    c = 17 + 2 * math.sqrt(41)
    b = c ** (2 / 3) + 3 * c ** (1 / 3) + 5
    num = c ** (1 / 6) * b**0.25 - b**0.75 + _S((-b + 9 * c ** (1 / 3)) * _S(b) + 8 * _S(c))
    return "gamma", cmath.acos(num / (4 * c ** (1 / 6) * b**0.25))


def _cf_8_12():
    c = _cbrt(8 + 6 * _S(78))
    return "beta", cmath.acos(-(c**2 + 2 * c - 14) / (6 * c))


def _cf_20_6():
    return "beta", -6 * cmath.atan(3 + 2 * _S(3) - _S(24 + 14 * _S(3)))


def _cf_8_24():
    c = _cbrt(108 + 12 * _S(69))
    b = _S((c**2 + 12) / c)
    return "alpha", cmath.asin(_S(6) / 12 * (b + _S((-b * c**2 + 12 * _S(6) * c - 12 * b) / (b * c))))


def _cf_20_12_1():
    return "beta", 2 * cmath.asin((1 + _S(33)) / 8)


def _cf_20_12_2():
    c = 1597545 + 5291 * math.sqrt(1689)
    b = _S((18 * c**2) ** (1 / 3) + 120 * (12 * c) ** (1 / 3) + 35592)
    d = (
        -35592 * 2 ** (1 / 6) * b
        + 240 * 2 ** (5 / 6) * b * (3 * c) ** (1 / 3)
        - _S(2) * b * (9 * c**2) ** (1 / 3)
        + 2340 * 2 ** (1 / 6) * _S(c)
    )
    num = _S(-(3 ** (4 / 3)) * 2 ** (7 / 12) * d**0.5 - 3 * 12 ** (1 / 3) * b**1.5 + 252 * b**0.5 * c ** (1 / 6))
    return "beta_obtuse", cmath.asin(num / (12 * b**0.25 * c ** (1 / 12)))


def _cf_20_24_1():
    # 2cos(beta) is the root of the sextic in (-1, 0); the root is simple there
    z = bisect(lambda x: float(np.polyval(SEXTIC, x)), -1.0, 0.0)
    return "beta", complex(math.acos(z / 2))


def _cf_44_12():
    c = _cbrt(38969189 + 564000 * _S(1473))
    b = c**2 - 115 * c + 101641
    d = (-3 * b - 1035 * c) * _S(b) + 36576 * _S(3 * c**3)
    num = _S(-6 * _S(3) * b**0.75 - 6 * d**0.5 + 306 * b**0.25 * c**0.5)
    return "beta_obtuse", cmath.asin(num / (12 * b ** (1 / 8) * c**0.25))


def _cf_20_60():
    c = _cbrt(-774 * _S(5) + 10070 + 6 * _S(85830 - 7890 * _S(5)))
    b = -(c**2) + 24 * _S(5) + 43 * c - 460
    d = _S(2 * c**2 + 43 * c - 48 * _S(5) + 920)
    num = _S(6) * (b * d + 33 * _S(3) * c**1.5) ** 0.5 + 3 * c**0.5 * d**0.5 - _S(3) * d**1.5
    return "beta", cmath.acos(num / (24 * c**0.5 * d**0.5))


def _cf_16_6():
    c = _cbrt(18559 + 3321 * _S(-47))
    b = (_S(-3) - 1) * c**2 + 164 * c - 952 - 952 * _S(-3)
    return "beta_obtuse", cmath.asin(_S(b * c) / (18 * c))


def _cf_32_12():
    return "beta_obtuse", cmath.asin((5 - _S(7)) / 8)


def _cf_80_30():
    return "beta_obtuse", cmath.asin(((-2 * _S(5) - 6) * _S(5 - 2 * _S(5)) + _S(130 - 10 * _S(5))) / 20)


def _cf_20_36():
    c = _cbrt(108 + 12 * _S(849))
    b = _S((-6 * _S(849) + 54) * c**2 + 1152 * c + 15552)
    d = (5217 * _S(3) + 2997 * _S(283)) * c**2 + 3271392 * _S(3) + (-223776 * _S(3) + 10656 * _S(283)) * c
    e = (147852 * _S(849) - 1330668) * c**2 - 28387584 * c + 766464768
    return "beta_obtuse", cmath.asin(_S(19516464 - 24642 * _S(3) * b + 111 * _S(6) * _S(b * d + e)) / 5328)


def _cf_32_6_2():
    c = _cbrt(-756 + 84 * _S(-3))
    b = (1 + _S(-3)) * c**2 + 15 * c + 84 - 84 * _S(-3)
    return "beta_obtuse", cmath.asin(_S(-3 * b * c) / (6 * c))


def _cf_20_24_2():
    c = _cbrt(28 + 84 * _S(-3))
    b = (1 + _S(-3)) * c**2 - 32 * c + 28 - 28 * _S(-3)
    return "beta", 4 * cmath.acos(_S(-3 * b * c) / (12 * c))


class _Row(NamedTuple):
    table: tuple[str, str, str, str]
    avcs: tuple[tuple[tuple[int, int], str, int | None], ...]
    # map the free angle to (alpha, beta, gamma)
    relations: Callable[[float], tuple[float, float, float]] | None = None
    free: str = ""
    closed: Callable[[], tuple[str, complex]] | None = None
    aliases: tuple[str, ...] = ()


_ROWS: dict[str, _Row] = {
    "4,1": _Row(("1/2", "1", "=b", "1/2"), (((4, 1), "4a2b, 1a4", 1),)),
    "6,3": _Row(("1/2", "1", "1/6", "1/2"), (((6, 3), "6a2b, 2a3c3", 1),)),
    "4,4.1": _Row(
        ("1/2", "1", "1/4", "1/2"),
        (((4, 4), "4abc2, 4a2b", 1), ((6, 2), "4a2b, 2a3c2, 1a4", 1)),
        aliases=("6,2",),
    ),
    "4,2": _Row(
        ("1/2", "1", "1/2", "1/2"),
        (((4, 2), "4a2b, 2a2c2", 1), ((4, 2), "2abc, 2a2b, 2a3c", 1), ((6, 1), "2a2b, 2a3c, 2a4", 1)),
        aliases=("6,1",),
    ),
    "8,2": _Row(
        ("0.4335", "0.6992", "=b", "0.4158"),
        (((8, 2), "8a3b", 1),),
        lambda b: ((2 * PI - b) / 3, b, b),
        "beta",
        _cf_8_2,
    ),
    "32,6.1": _Row(
        ("0.3621", "0.5513", "=b", "0.2427"),
        (((32, 6), "24a4b", 1),),
        lambda b: ((2 * PI - b) / 4, b, b),
        "beta",
        _cf_32_6_1,
    ),
    "8,18": _Row(
        ("0.3596", "0.5467", "=b", "0.2326"),
        (((8, 18), "24ab3", 2),),
        lambda b: (2 * PI - 3 * b, b, b),
        "beta",
        _cf_8_18,
    ),
    "4,3": _Row(("4/9", "7/9", "2/3", "0.4326"), (((4, 3), "3ab2, 3a3c, 1c3", 1),), aliases=("rational-4-3",)),
    "4,4.2": _Row(
        ("0.4296", "0.7851", "0.5703", "0.4094"),
        (((4, 4), "4ab2, 4a2c2", 1),),
        lambda b: (2 * PI - 2 * b, b, 2 * b - PI),
        "beta",
        _cf_4_4_2,
    ),
    "8,3": _Row(
        ("0.4195", "0.7412", "0.5804", "0.3918"),
        (((8, 3), "6a3b, 3a2c2", 1),),
        lambda b: ((2 * PI - b) / 3, b, (b + PI) / 3),
        "beta",
        _cf_8_3,
    ),
    "4,12": _Row(
        ("0.3754", "2/3", "0.4789", "0.2884"),
        (((4, 12), "12abc2, 4b3", 1),),
        lambda g: (4 * PI / 3 - 2 * g, 2 * PI / 3, g),
        "gamma",
        _cf_4_12,
    ),
    "8,12": _Row(
        ("0.3701", "0.6298", "1/2", "0.2716"),
        (((8, 12), "6a2b2, 12abc2", 1),),
        lambda b: (PI - b, b, PI / 2),
        "beta",
        _cf_8_12,
    ),
    "20,6": _Row(
        ("0.3807", "0.8578", "0.2385", "0.3040"),
        (((20, 6), "12a3b, 6a4c2", 1),),
        lambda b: ((2 * PI - b) / 3, b, (2 * b - PI) / 3),
        "beta",
        _cf_20_6,
    ),
    "8,24": _Row(
        ("0.3541", "0.5729", "1/2", "0.2082"),
        (((8, 24), "24ab2c, 6c4", 1),),
        lambda a: (a, 0.75 * PI - a / 2, PI / 2),
        "alpha",
        _cf_8_24,
    ),
    "20,12.1": _Row(
        ("0.3614", "0.6385", "0.4577", "0.2401"),
        (((20, 12), "12a2b2, 12a3c2", 1),),
        lambda b: (PI - b, b, (3 * b - PI) / 2),
        "beta",
        _cf_20_12_1,
    ),
    "20,12.2": _Row(
        ("0.3733", "0.8798", "0.1866", "0.2820"),
        (((20, 12), "12a3b, 12a2bc2", 1),),
        lambda b: ((2 * PI - b) / 3, b, (2 * PI - b) / 6),
        "beta",
        _cf_20_12_2,
    ),
    "20,24.1": _Row(
        ("0.3510", "0.5877", "0.4734", "0.1927"),
        (((20, 24), "24ab2c, 12a3c2", 1),),
        lambda b: (4 * b - 2 * PI, b, 4 * PI - 6 * b),
        "beta",
        _cf_20_24_1,
        aliases=("20,24-convex",),
    ),
    "44,12": _Row(
        ("0.3590", "0.9229", "0.1024", "0.2301"),
        (((44, 12), "24a3b, 12a5c2", 1),),
        lambda b: ((2 * PI - b) / 3, b, (5 * b - 4 * PI) / 6),
        "beta",
        _cf_44_12,
    ),
    "20,60": _Row(
        ("0.3421", "0.6289", "2/5", "0.1379"),
        (((20, 60), "60ab2c, 12c5", 1),),
        lambda b: (1.6 * PI - 2 * b, b, 0.4 * PI),
        "beta",
        _cf_20_60,
    ),
    "16,6": _Row(
        ("0.3861", "0.8415", "0.2805", "0.3188"),
        (((16, 6), "12a3b, 4a3c3", 1),),
        lambda b: ((2 * PI - b) / 3, b, b / 3),
        "beta",
        _cf_16_6,
    ),
    "32,12": _Row(
        ("0.3650", "0.9049", "0.1349", "0.2536"),
        (((32, 12), "24a3b, 6a4c4", 1),),
        lambda b: ((2 * PI - b) / 3, b, (2 * b - PI) / 6),
        "beta",
        _cf_32_12,
    ),
    "80,30": _Row(
        ("0.3480", "0.9558", "0.0519", "0.1766"),
        (((80, 30), "60a3b, 12a5c5", 1),),
        lambda b: ((2 * PI - b) / 3, b, (5 * b - 4 * PI) / 15),
        "beta",
        _cf_80_30,
    ),
    "20,36": _Row(
        ("0.3465", "0.6089", "0.4356", "0.1675"),
        (((20, 36), "36ab2c, 12a2c3", 2),),
        lambda b: (4 * PI - 6 * b, b, 4 * b - 2 * PI),
        "beta",
        _cf_20_36,
    ),
    "32,6.2": _Row(
        ("0.3686", "0.8939", "0.1566", "0.2665"),
        (((32, 6), "12a3b, 12a5c", 5),),
        lambda b: ((2 * PI - b) / 3, b, (5 * b - 4 * PI) / 3),
        "beta",
        _cf_32_6_2,
    ),
    "20,24.2": _Row(
        ("0.3579", "0.8210", "0.2315", "0.2257"),
        (),
        lambda b: (2 * PI - 2 * b, b, 1.5 * b - PI),
        "beta",
        _cf_20_24_2,
    ),
}

_ORDER = list(_ROWS)
_ORDER.insert(_ORDER.index("20,24.2"), "ico")

_ALIASES = {al: key for key, row in _ROWS.items() for al in row.aliases}
_ALIASES.update({"20-2m,m": "ico", "icosahedral": "ico"})


def sporadic_ids() -> list[str]:
    """The 26 sporadic row ids in catalog order."""
    return list(_ORDER)


def _parse_entry(s: str) -> Fraction | None:
    return None if "." in s or s == "=b" else Fraction(s)


def closed_form(pid: str) -> tuple[AngleTriple, float]:
    """Angles of an irrational sporadic protoset from its closed form.

    Returns the triple and the imaginary residue left by the complex
    evaluation. Some forms are written through arcsin of an obtuse angle;
    those take the supplementary branch.
    """
    row = _ROWS[pid]
    which, z = row.closed()
    imag = abs(z.imag)
    if imag > IMAG_TOL:
        raise FormulaBranch(f"{pid}: imaginary residue {imag:.3g}")
    x = z.real
    if which == "beta_obtuse":
        x, which = PI - x, "beta"
    return AngleTriple(*row.relations(x)), imag


def _smooth_residual(t: tuple[float, float, float]) -> float:
    # the consistency relation multiplied through by its denominators
    al, be, ga = t
    ca = math.cos(al)
    return math.cos(be / 2) * math.cos(ga / 2) * (1 - ca) - ca * math.sin(be / 2) * math.sin(ga / 2)


def _free_value(t: AngleTriple, free: str) -> float:
    return {"alpha": t.alpha, "beta": t.beta, "gamma": t.gamma}[free]


def independent_solve(
    relations: Callable[[float], tuple[float, float, float]],
    lo: float,
    hi: float,
    samples: int = 4000,
) -> list[float]:
    """All admissible roots of the consistency relation along a 1-parameter curve.

    A uniform scan isolates sign changes; each bracket is bisected. Roots
    whose triple is inadmissible or whose unscaled residual is large (sign
    changes at poles) are discarded.
    """
    xs = np.linspace(lo, hi, samples + 1)[1:-1]
    vals = [_smooth_residual(relations(x)) for x in xs]
    roots = []
    for x0, x1, f0, f1 in zip(xs[:-1], xs[1:], vals[:-1], vals[1:]):
        if f0 == 0.0 or (f0 < 0) != (f1 < 0):
            r = bisect(lambda x: _smooth_residual(relations(x)), float(x0), float(x1))
            t = AngleTriple(*relations(r))
            if t.is_valid and abs(residuals(t).r2) < 1e-8:
                roots.append(r)
    return roots


def sporadic(pid: str) -> Protoset:
    """Protoset for a sporadic row id such as ``'8,2'`` or ``'20,24.1'``."""
    key = _ALIASES.get(pid, pid)
    if key == "ico":
        return icosahedral_protoset()
    if key not in _ROWS:
        raise CatalogMiss(f"unknown sporadic protoset {pid!r}")
    row = _ROWS[key]
    entries = [_parse_entry(s) for s in row.table]
    exact = None
    imag = 0.0
    if row.closed is None:
        be = entries[1]
        ga = be if row.table[2] == "=b" else entries[2]
        exact = (entries[0], be, ga)
        t = AngleTriple(*(float(x) * PI for x in exact))
    else:
        t, imag = closed_form(key)
    if key == "20,24.2":
        expected = tuple(ExpectedAVC((20, 24), flip_family_avc(k), None) for k in range(12))
    else:
        expected = tuple(ExpectedAVC(f, parse_avc(s), n) for f, s, n in row.avcs)
    # exact right angles keep the edge at pi/2 exactly
    a = 0.5 * PI if entries[3] == Fraction(1, 2) else edge_from_alpha(t.alpha)
    return Protoset(
        key,
        t,
        a,
        "sporadic",
        expected=expected,
        exact=exact,
        table=row.table,
        aliases=row.aliases,
        imag_residue=imag,
    )


def sporadic_cross_check(pid: str) -> float:
    """|closed form - independent root| in radians for the free angle."""
    row = _ROWS[_ALIASES.get(pid, pid)]
    t, _ = closed_form(_ALIASES.get(pid, pid))
    x = _free_value(t, row.free)
    roots = independent_solve(row.relations, 0.0, 2 * PI)
    if not roots:
        raise DomainError(f"{pid}: no admissible root found")
    return min(abs(r - x) for r in roots)


def irrational_ids() -> list[str]:
    return [k for k, r in _ROWS.items() if r.closed is not None]


# ------------------------------------------------------------ verification


@dataclass
class VerificationReport:
    protoset: str
    r1: float
    r2: float
    edge_mismatch: float
    avc_defects: dict[str, float]
    table_match: bool | None
    admissible: bool
    tol: float = RESIDUAL_TOL

    @property
    def residual_ok(self) -> bool:
        return abs(self.r1) < self.tol and abs(self.r2) < self.tol

    @property
    def ok(self) -> bool:
        return (
            self.admissible
            and self.residual_ok
            and self.edge_mismatch < self.tol
            and all(d < self.tol for d in self.avc_defects.values())
            and self.table_match is not False
        )

    def to_dict(self) -> dict:
        return {
            "protoset": self.protoset,
            "ok": self.ok,
            "admissible": self.admissible,
            "r1": self.r1,
            "r2": self.r2,
            "edge_mismatch": self.edge_mismatch,
            "avc_defects": self.avc_defects,
            "table_match": self.table_match,
        }


def _entry_matches(entry: str, value_pi: float, ref: float | None) -> bool:
    if entry == "=b":
        return ref is not None and abs(value_pi - ref) < 1e-12
    if "." in entry:
        lo = Fraction(entry)
        return float(lo) - 1e-12 <= value_pi < float(lo + Fraction(1, 10**4))
    return abs(value_pi - float(Fraction(entry))) < 1e-12


def table_match(p: Protoset) -> bool | None:
    if p.table is None:
        return None
    vals = list(p.angles.in_pi()) + [p.a / PI]
    return all(_entry_matches(e, v, vals[1]) for e, v in zip(p.table, vals))


def verify_protoset(p: Protoset, tol: float = RESIDUAL_TOL) -> VerificationReport:
    t = p.angles
    r = residuals(t)
    try:
        a_tri = edge_from_alpha(t.alpha)
        edge = max(abs(a_tri - p.a), abs(edge_from_rhombus(t.beta, t.gamma) - p.a))
    except DomainError:
        edge = math.inf
    defects = {}
    for e in p.expected:
        for vt in e.avc:
            defects[vt.code()] = abs(vt.angle_sum(t) - 2 * PI)
    return VerificationReport(p.id, r.r1, r.r2, edge, defects, table_match(p), t.is_valid, tol)


# ------------------------------------------------------- rational protosets


class ProportionalFamily(NamedTuple):
    """The rational solutions (t, 2t, t); ``at`` instantiates one member."""

    descriptor: str = "(t, 2t, t)"

    def at(self, alpha: float) -> AngleTriple:
        return AngleTriple(alpha, 2 * alpha, alpha)


def cyclotomic_residual(t: AngleTriple) -> float:
    x, y, z = (cmath.exp(1j * v) for v in t.as_tuple())
    return abs(x * x * y + x * x * z - x * y * z - x * y - x * z - x + y + z)


def rational_protosets() -> list:
    """The rational-angle solutions: two isolated triples and one line."""
    return [
        AngleTriple(4 * PI / 9, 7 * PI / 9, 2 * PI / 3),
        AngleTriple(3 * PI / 7, 17 * PI / 21, 11 * PI / 21),
        ProportionalFamily(),
    ]


# --------------------------------------------------------------- lookup


_BIN = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
}
_FUNCS = {
    "acos": math.acos,
    "asin": math.asin,
    "atan": math.atan,
    "cos": math.cos,
    "sin": math.sin,
    "tan": math.tan,
    "sqrt": math.sqrt,
    "arccos": math.acos,
    "arcsin": math.asin,
    "arccot": arccot,
}


def eval_expr(text: str) -> float:
    """Evaluate a small arithmetic expression such as ``acos(1/8)`` or ``0.45*pi``."""
    text = text.strip()
    if text.endswith("pi") and text[:-2] and text[-3].isdigit():
        text = text[:-2] + "*pi"

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id == "pi":
            return PI
        if isinstance(node, ast.BinOp) and type(node.op) in _BIN:
            return _BIN[type(node.op)](ev(node.left), ev(node.right))
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            v = ev(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.Call) and isinstance(node.func, ast.Name) and node.func.id in _FUNCS:
            return _FUNCS[node.func.id](*[ev(a) for a in node.args])
        raise ValueError(f"unsupported expression {text!r}")

    return ev(ast.parse(text, mode="eval"))


_DEFAULT_ALPHA = {"prism": math.acos(1 / 8), "cuboct": math.acos(1 / 3)}


def parse_protoset_spec(spec: str) -> Protoset:
    """Resolve ``'8,2'``, ``'ico'``, ``'antiprism@n=4'`` or ``'prism@alpha=acos(1/8)'``."""
    name, _, rest = spec.partition("@")
    name = name.strip()
    params = {}
    if rest:
        for part in rest.split(";"):
            k, _, v = part.partition("=")
            params[k.strip()] = eval_expr(v)
    if name.startswith("antiprism"):
        n = params.get("n")
        if n is None and "-" in name:
            n = int(name.split("-", 1)[1])
        if n is None:
            raise CatalogMiss("antiprism needs n, e.g. antiprism@n=3")
        return antiprism_family(int(n))
    if name in ("prism", "cuboct", "cuboctahedron", "orthobicupola"):
        fam = "prism" if name == "prism" else "cuboct"
        alpha = params.get("alpha", _DEFAULT_ALPHA[fam])
        return prism_family(alpha) if fam == "prism" else cuboct_family(alpha)
    return sporadic(name)


def all_sporadic() -> Iterator[Protoset]:
    for pid in _ORDER:
        yield sporadic(pid)


def catalog_json() -> str:
    doc = {
        "schema": "sphtiling.catalog",
        "version": 1,
        "families": {
            "prism": {"alpha_range_pi": [math.acos(1 / 8) / PI, 1.0], "avc": "6abc"},
            "cuboct": {"alpha_range_pi": [math.acos(1 / 3) / PI, 0.5], "avc": "12a2bc"},
            "antiprism": {"n_min": 3, "avc": "6abc^n, (6n-6)b2c"},
        },
        "sporadic": [p.to_dict() for p in all_sporadic()],
    }
    return json.dumps(doc, indent=2, sort_keys=False)


def face_counts_ok(p: Protoset) -> bool:
    """Each expected AVC reproduces its stated face counts."""
    for e in p.expected:
        r = counts_from_avc(e.avc) if e.tilings is not None or p.id == "20,24.2" else None
        if r is not None and (r.f_triangle, r.f_rhombus) != e.faces:
            return False
    return True
