#!/usr/bin/env python3
"""Build generator certificates for groups past the live-certification cap.

Runs the full BFS closure once (compiled kernel strongly recommended), checks
it against the closed-form order, and freezes the generator keys into
src/bswidth/data/certificates.json.  Shipped so the expensive closures never
need to run at import time.
"""

import json
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from bswidth import groupcore, kernel, matgrp
from bswidth.groupcore import build_group
from bswidth.matgrp import GroupKindSpec

TARGETS = [
    (GroupKindSpec("PSU", 4, 3), None),
    (GroupKindSpec("PSU", 4, 3), ("phi", 1)),
    (GroupKindSpec("PSL", 4, 3), None),
    (GroupKindSpec("PSL", 4, 3), ("tau",)),
]


def main():
    out_path = Path(__file__).resolve().parent.parent / "src/bswidth/data/certificates.json"
    doc = json.loads(out_path.read_text()) if out_path.exists() else {}
    for spec, aut in TARGETS:
        G = build_group(spec, aut=aut, certify=False)
        name = G.name
        t0 = time.time()
        got = G.space.ops.closure_order([g.key for g in G.gens], G.order + 1)
        dt = time.time() - t0
        status = "OK" if got == G.order else "MISMATCH"
        print(f"{name}: closure {got} vs formula {G.order} [{status}] "
              f"({dt:.1f}s, backend={kernel.BACKEND})")
        if got != G.order:
            raise SystemExit(f"refusing to certify {name}")
        doc[name] = {
            "order": G.order,
            "gens": [g.key.hex() for g in G.gens],
            "schema_version": groupcore.SCHEMA_VERSION,
            "backend": kernel.BACKEND,
        }
    out_path.write_text(json.dumps(doc, indent=1))
    print(f"wrote {out_path}")


if __name__ == "__main__":
    main()
