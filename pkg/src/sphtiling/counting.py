"""Face, vertex and edge bookkeeping for an AVC."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Mapping

from .errors import InconsistentAVC
from .vertexcomb import VertexType

__all__ = ["CountsReport", "counts_from_avc", "euler_identities"]


@dataclass(frozen=True)
class CountsReport:
    f_triangle: int
    f_rhombus: int
    v: int
    e: int
    v_k: Mapping[int, int] = field(default_factory=dict)

    def bumped(self, **changes) -> "CountsReport":
        return replace(self, **changes)


def counts_from_avc(avc: Mapping[VertexType, int]) -> CountsReport:
    """Tile counts implied by an AVC.

    Every triangle contributes three alpha corners and every rhombus two beta
    and two gamma corners, so the slot totals determine the face counts. A
    square rhombus (gamma = beta) is written with beta only; then the beta
    total is four per rhombus.
    """
    if not avc:
        raise InconsistentAVC("empty AVC")
    na = nb = nc = 0
    v_k: Counter = Counter()
    for vt, n in avc.items():
        vt = VertexType(*vt)
        if n <= 0:
            raise InconsistentAVC(f"non-positive count for {vt}")
        na += n * vt.n1
        nb += n * vt.n2
        nc += n * vt.n3
        v_k[vt.degree] += n
    if na % 3:
        raise InconsistentAVC(f"{na} alpha corners is not a multiple of 3")
    if nc == 0 and nb > 0:
        if nb % 4:
            raise InconsistentAVC(f"{nb} square corners is not a multiple of 4")
        f_r = nb // 4
    else:
        if nb != nc:
            raise InconsistentAVC(f"beta total {nb} != gamma total {nc}")
        if nb % 2:
            raise InconsistentAVC(f"odd beta total {nb}")
        f_r = nb // 2
    f_t = na // 3
    twice_e = 3 * f_t + 4 * f_r
    if twice_e % 2:
        raise InconsistentAVC("odd number of half-edges")
    return CountsReport(f_t, f_r, sum(avc.values()), twice_e // 2, dict(sorted(v_k.items())))


def euler_identities(r: CountsReport) -> bool:
    """Check the four counting identities in exact integer arithmetic."""
    vk = r.v_k
    ft, fr = r.f_triangle, r.f_rhombus
    if sum(vk.values()) != r.v or 2 * r.e != 3 * ft + 4 * fr:
        return False
    if sum(k * n for k, n in vk.items()) != 2 * r.e:
        return False
    # v = 2 + ft/2 + fr
    if 2 * r.v != 4 + ft + 2 * fr:
        return False
    if 3 * ft + 2 * fr != 12 + sum(2 * (k - 3) * n for k, n in vk.items()):
        return False
    v3, v4, v5 = vk.get(3, 0), vk.get(4, 0), vk.get(5, 0)
    if v3 + ft != 8 + sum((k - 4) * n for k, n in vk.items() if k >= 5):
        return False
    if 3 * v3 + 2 * v4 + v5 != 12 + 2 * fr + sum((k - 6) * n for k, n in vk.items() if k >= 7):
        return False
    return True
