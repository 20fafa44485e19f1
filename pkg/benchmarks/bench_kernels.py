"""Compare the numba and numpy backends of the merge-family kernels.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Runs every kernel for m = 1..9 on both backends, checks that the outputs
agree and prints the best time of N repeats. The first numba call compiles
(or loads the on-disk cache) and is reported separately.
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from sphtiling import _kernels
from sphtiling.catalog import icosahedral_protoset
from sphtiling.tilingcore.merges import icosahedron_data


def _best(fn, repeat: int) -> tuple[float, object]:
    best, res = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        res = fn()
        best = min(best, time.perf_counter() - t0)
    return best, res


def run(repeat: int) -> list[dict]:
    d = icosahedron_data()
    eu = np.array([f for f, _ in d.dual_edges])
    ev = np.array([g for _, g in d.dual_edges])
    angles = icosahedral_protoset().angles.as_tuple()
    backends = ["numpy"] + (["numba"] if _kernels.HAVE_NUMBA else [])

    if "numba" in backends:
        t0 = time.perf_counter()
        m1 = _kernels.enumerate_matchings(eu, ev, 1, "numba")
        _kernels.canonical_masks(m1, d.perms, "numba")
        _kernels.vertex_counts(m1, d.base_counts, d.delta, "numba")
        print(f"numba warm-up (compile or cache load): {time.perf_counter() - t0:.2f}s")

    rows = []
    for b in backends:
        def pipeline(b=b):
            total = 0
            for m in range(1, 10):
                masks = _kernels.enumerate_matchings(eu, ev, m, b)
                canon = _kernels.canonical_masks(masks, d.perms, b)
                counts = _kernels.vertex_counts(masks, d.base_counts, d.delta, b)
                ok = _kernels.check_vertex_sums(counts, angles)
                total += len(np.unique(canon)) + int(ok.sum())
            return total

        stages = {}
        for name, fn in (
            ("matchings", lambda b=b: [_kernels.enumerate_matchings(eu, ev, m, b) for m in range(1, 10)]),
            ("pipeline", pipeline),
        ):
            stages[name] = _best(fn, repeat)
        rows.append({"backend": b, **{k: v[0] for k, v in stages.items()}, "check": stages["pipeline"][1]})
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    rows = run(args.repeat)
    print(f"{'backend':8s} {'matchings':>10s} {'pipeline':>10s}")
    for r in rows:
        print(f"{r['backend']:8s} {r['matchings']:10.3f} {r['pipeline']:10.3f}")
    if len({r["check"] for r in rows}) != 1:
        print("backends DISAGREE")
        return 1
    if len(rows) == 2:
        print(f"numba speedup on the full pipeline: {rows[0]['pipeline'] / rows[1]['pipeline']:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
