"""Regenerate the bundled sporadic tilings by exhaustive search.

Usage: python tools/generate_tilings.py [--out PATH] [ids...]

Each expected AVC of each sporadic protoset is searched. Results are sorted
by canonical form so that the registry numbering is stable. The (20,24)
flip family stores only its k=0 tilings; higher k come from flips.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from sphtiling import catalog
from sphtiling.tilingcore.search import search_tilings
from sphtiling.tilingcore.tiling import SCHEMA_VERSION, canonical_form, validate
from sphtiling.vertexcomb import format_avc

DEFAULT_OUT = Path(__file__).resolve().parents[1] / "src/sphtiling/tilingcore/data/sporadic.json"


def generate(pid: str) -> list[dict]:
    p = catalog.sporadic(pid)
    entries = p.expected[:1] if pid == "20,24.2" else p.expected
    out = []
    for e in entries:
        t0 = time.perf_counter()
        res = search_tilings(p.angles, p.a, e.faces, e.avc)
        if not res.complete:
            raise RuntimeError(f"{pid}: search stopped early")
        tilings = sorted(res.tilings, key=canonical_form)
        for t in tilings:
            if not validate(t, p.angles).all_green:
                raise RuntimeError(f"{pid}: search produced an invalid tiling")
        if e.tilings is not None and len(tilings) != e.tilings:
            print(f"warning: {pid} {format_avc(e.avc)}: {len(tilings)} tilings, table says {e.tilings}",
                  file=sys.stderr)
        print(f"{pid:10s} {format_avc(e.avc):40s} {len(tilings):3d}  {time.perf_counter() - t0:.1f}s",
              file=sys.stderr)
        out.append({
            "faces": list(e.faces),
            "avc": format_avc(e.avc),
            "tilings": [t.to_dict() for t in tilings],
        })
    return out


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=DEFAULT_OUT)
    ap.add_argument("ids", nargs="*")
    args = ap.parse_args(argv)
    ids = args.ids or [i for i in catalog.sporadic_ids() if i != "ico"]
    doc = {"schema": "sphtiling.sporadic-tilings", "version": SCHEMA_VERSION, "rows": {}}
    if args.ids and args.out.exists():
        doc = json.loads(args.out.read_text())
    for pid in ids:
        doc["rows"][pid] = generate(pid)
    args.out.write_text(json.dumps(doc, separators=(",", ":"), sort_keys=True) + "\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
