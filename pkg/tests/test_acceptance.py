"""Acceptance suite: one check per criterion, each returning ``(ok, detail)``.

Run under pytest for the PASS/FAIL summary lines, or directly with
``python tests/test_acceptance.py``.
"""
from __future__ import annotations

import itertools
import math
import random
import sys
import time
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest

from sphtiling import catalog
from sphtiling.catalog import (
    antiprism_bracket,
    antiprism_family,
    cuboct_family,
    cyclotomic_residual,
    flip_family_avc,
    independent_solve,
    irrational_ids,
    prism_family,
    rational_protosets,
    sporadic,
    sporadic_cross_check,
    sporadic_ids,
    table_match,
    truncate_pi,
)
from sphtiling.counting import counts_from_avc, euler_identities
from sphtiling.geom import realize
from sphtiling.sphtrig import PI, AngleTriple
from sphtiling.tilingcore.flip import ChainBound, flip_sequence
from sphtiling.tilingcore.merges import count_matchings_bruteforce, icosahedral_merges, icosahedron_data
from sphtiling.tilingcore.registry import lookup, registry_ids
from sphtiling.tilingcore.tiling import extract_avc, validate
from sphtiling.vertexcomb import (
    VertexType,
    brute_force_vertex_types,
    deg345_admissible_convex,
    enumerate_vertex_types,
    is_linearly_dependent,
    parse_avc,
)

A3 = VertexType(3, 0, 0)


def _fails(items, limit: int = 4) -> str:
    items = list(items)
    if not items:
        return ""
    more = f" (+{len(items) - limit} more)" if len(items) > limit else ""
    return ": " + ", ".join(map(str, items[:limit])) + more


# 1 ---------------------------------------------------------------------------


def check_1():
    t0 = time.perf_counter()
    ids = sporadic_ids()
    bad = []
    for pid in ids:
        p = sporadic(pid)
        vals = list(p.angles.in_pi()) + [p.a / PI]
        for entry, v in zip(p.table, vals):
            if entry == "=b":
                ok = abs(v - vals[1]) < 1e-12
            elif "." in entry:
                ok = truncate_pi(v) == entry
            else:
                ok = abs(v - float(Fraction(entry))) < 1e-12
            if not ok:
                bad.append(f"{pid}:{entry}!={v:.6f}")
        if table_match(p) is not True:
            bad.append(f"{pid}:table_match")
    dt = time.perf_counter() - t0
    ok = len(ids) == 26 and not bad and dt < 5.0
    return ok, f"{len(ids)} rows, {len(bad)} mismatches{_fails(bad)}, {dt:.2f}s (limit 5s)"


# 2 ---------------------------------------------------------------------------

# Z^6 + Z^5 - 4Z^4 - 3Z^3 + 3Z^2 - 1, written out independently of the package
_SEXTIC = [1, 1, -4, -3, 3, 0, -1]


def _family_cross_check(make, alphas, n_alpha: int) -> float:
    worst = 0.0
    for al in alphas:
        p = make(al)
        roots = independent_solve(lambda b: (al, b, 2 * PI - n_alpha * al - b), 0.0, 2 * PI)
        # several roots can exist; the family picks the beta >= gamma branch
        worst = max(worst, min(abs(r - p.angles.beta) for r in roots))
    return worst


def check_2():
    worst, worst_imag, bad = 0.0, 0.0, []
    for pid in irrational_ids():
        try:
            d = sporadic_cross_check(pid)
        except Exception as exc:  # any failure is a miss
            bad.append(f"{pid}:{type(exc).__name__}")
            continue
        worst = max(worst, d)
        worst_imag = max(worst_imag, sporadic(pid).imag_residue)
        if d >= 1e-10:
            bad.append(f"{pid}:{d:.2e}")
    fam = max(
        _family_cross_check(prism_family, np.linspace(math.acos(1 / 8) + 0.01, 0.95 * PI, 7), 1),
        _family_cross_check(cuboct_family, np.linspace(math.acos(1 / 3) + 0.01, 0.49 * PI, 7), 2),
    )
    z = 2 * math.cos(sporadic("20,24.1").angles.beta)
    sextic = abs(np.polyval(_SEXTIC, z))
    ok = not bad and worst_imag < 1e-9 and fam < 1e-10 and sextic < 1e-8
    return ok, (
        f"{len(irrational_ids())} closed forms, worst {worst:.1e} rad, families {fam:.1e}, "
        f"imag {worst_imag:.1e}, sextic {sextic:.1e}{_fails(bad)}"
    )


# 3 ---------------------------------------------------------------------------


def check_3():
    p = prism_family(math.acos(1 / 8))
    c = cuboct_family(math.acos(1 / 3))
    bp, bc = math.acos(-3 / 4), math.acos(-1 / 3)
    ep = max(abs(p.angles.beta - bp), abs(p.angles.gamma - bp))
    ec = max(abs(c.angles.beta - bc), abs(c.angles.gamma - bc))
    ok = ep < 1e-12 and ec < 1e-12 and p.angles.is_valid and c.angles.is_valid
    return ok, f"prism {ep:.1e}, cuboct {ec:.1e} (limit 1e-12)"


# 4 ---------------------------------------------------------------------------


def _antiprism_residual(b: float, n: int) -> float:
    al = (2 * n - 1) * b - (n - 1) * 2 * PI
    return math.cos(al) * (2 * math.cos(b) - 1) - math.cos(b)


def check_4():
    t0 = time.perf_counter()
    betas, bad = [], []
    for n in range(3, 65):
        lo, hi = antiprism_bracket(n)
        xs = np.linspace(lo, hi, 257)
        vals = [_antiprism_residual(x, n) for x in xs]
        changes = sum((u < 0) != (v < 0) for u, v in zip(vals, vals[1:]))
        p = antiprism_family(n)
        if changes != 1 or not lo <= p.angles.beta <= hi or not p.angles.is_valid:
            bad.append(n)
        betas.append(p.angles.beta)
    increasing = all(x < y for x, y in zip(betas, betas[1:]))
    big = antiprism_family(10**4)
    lim_b = abs(big.angles.beta - PI)
    lim_a = abs(big.a - PI / 3)
    dt = time.perf_counter() - t0
    ok = not bad and increasing and lim_b < 1e-3 * PI and lim_a < 1e-3 * PI and dt < 2.0
    return ok, (
        f"n=3..64 unique roots (bad {bad}), increasing={increasing}, "
        f"n=1e4 |b-pi|={lim_b:.1e} |a-pi/3|={lim_a:.1e}, {dt:.2f}s (limit 2s)"
    )


# 5 ---------------------------------------------------------------------------


def catalog_avcs() -> list[tuple[str, Counter]]:
    out = [("prism", prism_family(0.6 * PI).expected[0].avc)]
    out.append(("cuboct", cuboct_family(0.45 * PI).expected[0].avc))
    for n in range(3, 65):
        out.append((f"antiprism-{n}", antiprism_family(n).expected[0].avc))
    for pid in sporadic_ids():
        if pid in ("ico", "20,24.2"):
            continue
        for i, e in enumerate(sporadic(pid).expected):
            out.append((f"{pid}#{i}", e.avc))
    for k in range(12):
        out.append((f"flip-k{k}", flip_family_avc(k)))
    for m in range(1, 10):
        fam = icosahedral_merges(m, dedup=True)
        for i, row in enumerate(fam.vertex_counts()):
            avc = Counter()
            for n1, n2, n3 in row:
                avc[VertexType(int(n1), int(n2), int(n3))] += 1
            out.append((f"merge-m{m}:{i}", avc))
    return out


def check_5():
    avcs = catalog_avcs()
    bad = []
    for name, avc in avcs:
        try:
            r = counts_from_avc(avc)
        except Exception as exc:
            bad.append(f"{name}:{type(exc).__name__}")
            continue
        if r.f_triangle % 2 or not euler_identities(r):
            bad.append(name)
    return not bad, f"{len(avcs)} AVCs, {len(bad)} failures{_fails(bad)}"


# 6 / 7 -----------------------------------------------------------------------


def check_6():
    ids = registry_ids()
    bad = []
    for tid in ids:
        e = lookup(tid)
        t, p = e.build(), e.protoset()
        rep = validate(t, p.angles)
        avc = extract_avc(t)
        if not rep.all_green:
            bad.append(f"{tid}:invalid")
        elif e.expected_avc is not None and avc != e.expected_avc:
            bad.append(f"{tid}:avc")
        elif e.expected_avc is None and not set(avc) <= set(p.vertex_types()):
            bad.append(f"{tid}:types")
        elif (t.f_triangle, t.f_rhombus) != e.faces:
            bad.append(f"{tid}:faces")
    return not bad, f"{len(ids)} registry tilings, {len(bad)} failures{_fails(bad)}"


def check_7():
    ids = registry_ids()
    worst = [0.0, 0.0, 0.0]
    bad = []
    for tid in ids:
        e = lookup(tid)
        try:
            emb = realize(e.build(), e.protoset())
        except Exception as exc:
            bad.append(f"{tid}:{type(exc).__name__}")
            continue
        vals = (emb.closure_defect, emb.edge_error, emb.area_defect)
        worst = [max(w, v) for w, v in zip(worst, vals)]
        if not (vals[0] < 1e-7 and vals[1] < 1e-9 and vals[2] < 1e-7):
            bad.append(tid)
    return not bad, (
        f"{len(ids)} tilings, closure {worst[0]:.1e}, edge {worst[1]:.1e}, "
        f"area {worst[2]:.1e}, {len(bad)} failures{_fails(bad)}"
    )


# 8 ---------------------------------------------------------------------------


def check_8():
    p = sporadic("20,24.2")
    bases = [lookup(tid).build() for tid in registry_ids() if tid.startswith("20,24.2:k0:")]
    bound = ChainBound()
    reached, missing = [], []
    for j in range(1, 12):
        want = flip_family_avc(j)
        hit = False
        for base in bases:
            try:
                t, path = flip_sequence(base, j, p.angles, bound)
            except Exception:
                continue
            distinct = len({s.faces for s in path}) == j
            if distinct and validate(t, p.angles).all_green and extract_avc(t) == want:
                hit = True
                break
        (reached if hit else missing).append(j)
    detail = f"j reached {reached}; no valid tiling for j={missing}" if missing else "j=1..11 all reached"
    return not missing, detail


# 9 ---------------------------------------------------------------------------


def check_9():
    t0 = time.perf_counter()
    d = icosahedron_data()
    ico = catalog.icosahedral_protoset()
    counts, bad = [], []
    for m in range(1, 10):
        fam = icosahedral_merges(m)
        oracle = count_matchings_bruteforce(d.dual_edges, m)
        counts.append(len(fam))
        if len(fam) != oracle:
            bad.append(f"m{m}:{len(fam)}!={oracle}")
        if not fam.validate_all(ico.angles).all():
            bad.append(f"m{m}:batch")
        for t in icosahedral_merges(m, dedup=True):
            if not validate(t, ico.angles).all_green:
                bad.append(t.name)
                break
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30.0
    return ok, f"counts {counts}, {len(bad)} failures{_fails(bad)}, {dt:.1f}s (limit 30s)"


# 10 --------------------------------------------------------------------------

_DEG345 = {
    3: "ab2, b3, abc, b2c, ac2, bc2, c3",
    4: "a3b, a2b2, ab3, a3c, a2bc, ab2c, a2c2, abc2, ac3, bc3, c4",
    5: "a5, a4b, a4c, a3c2, a2bc2, a2c3, abc3, ac4, bc4, c5",
}


def _random_triples(n: int, seed: int = 20240917) -> list[AngleTriple]:
    """Admissible triples; most are forced onto a random vertex equation."""
    rng = random.Random(seed)
    out = []
    while len(out) < n:
        al = rng.uniform(PI / 3, PI / 2)
        be = rng.uniform(PI / 2, PI)
        if len(out) % 4:
            n1, n2, n3 = rng.randint(0, 4), rng.randint(0, 2), rng.randint(1, 6)
            if n1 + n2 + n3 < 3:
                continue
            ga = (2 * PI - n1 * al - n2 * be) / n3
        else:
            ga = rng.uniform(0, be)
        t = AngleTriple(al, be, ga)
        if t.is_valid:
            out.append(t)
    return out


def check_10():
    notes, ok = [], True
    # (a) enumeration against brute force
    mism, nonempty = 0, 0
    for t in _random_triples(100):
        fast = set(enumerate_vertex_types(t))
        deg = int(2 * PI / min(t.as_tuple())) + 1
        if fast != brute_force_vertex_types(t, deg):
            mism += 1
        nonempty += bool(fast)
    ok &= mism == 0
    notes.append(f"enum {mism}/100 mismatches ({nonempty} non-empty)")
    # (b) degree 3..5 vertex list
    got = deg345_admissible_convex()
    want = {d: set(parse_avc(s)) for d, s in _DEG345.items()}
    t2 = all(set(got[d]) == want[d] and len(got[d]) == len(want[d]) for d in want)
    ok &= t2
    notes.append(f"deg345 {'equal' if t2 else 'differs'}")
    # (c) with an irrational angle any three vertex types are dependent
    triples, dep_bad = 0, 0
    for pid in irrational_ids():
        for e in sporadic(pid).expected:
            for l, m, n in itertools.combinations(sorted(e.avc), 3):
                triples += 1
                det = round(np.linalg.det(np.array([l, m, n], dtype=float)))
                if det != 0 or not is_linearly_dependent(l, m, n):
                    dep_bad += 1
    ok &= dep_bad == 0 and triples > 0
    notes.append(f"det {triples} triples, {dep_bad} bad")
    # (d) no alpha^3 vertex in any registry tiling or merge class
    a3 = [tid for tid in registry_ids() if A3 in extract_avc(lookup(tid).build())]
    for m in range(1, 10):
        counts = icosahedral_merges(m, dedup=True).vertex_counts()
        if ((counts[..., 0] == 3) & (counts[..., 1] == 0) & (counts[..., 2] == 0)).any():
            a3.append(f"merges m{m}")
    ok &= not a3
    notes.append(f"a3 {len(a3)} offenders")
    # (e) rational protosets on the cyclotomic polynomial
    worst = 0.0
    for r in rational_protosets():
        if isinstance(r, AngleTriple):
            worst = max(worst, cyclotomic_residual(r))
        else:
            for al in np.linspace(PI / 3 + 0.01, PI / 2 - 0.01, 9):
                worst = max(worst, cyclotomic_residual(r.at(float(al))))
    ok &= worst < 1e-10
    notes.append(f"cyclotomic {worst:.1e}")
    return bool(ok), "; ".join(notes)


CHECKS = {n: globals()[f"check_{n}"] for n in range(1, 11)}


@pytest.mark.parametrize("n", sorted(CHECKS))
def test_acceptance(n, acceptance):
    ok, detail = CHECKS[n]()
    acceptance(n, ok, detail)
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for n, check in CHECKS.items():
        ok, detail = check()
        failed += not ok
        print(f"ACCEPTANCE {n:2d} {'PASS' if ok else 'FAIL'}  {detail}", flush=True)
    sys.exit(1 if failed else 0)
