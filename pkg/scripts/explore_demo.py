#!/usr/bin/env python3
"""Draw the small silting quivers of the bundled algebras.

Usage:
    python scripts/explore_demo.py [--preset NAME] [--depth N] [--dir both]
"""

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from siltlab import presets
from siltlab.explorer import ExplorerConfig, bfs, export_dot, hasse_check
from siltlab.silting import algebra_object
from siltlab.workspace import Workspace


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--preset", default="two_cycle", choices=sorted(presets.PRESETS))
    ap.add_argument("--depth", type=int, default=2)
    ap.add_argument("--dir", default="left", choices=["left", "right", "both"])
    ap.add_argument("--mod-shift", action="store_true")
    args = ap.parse_args()

    ws = Workspace.from_presentation(presets.preset(args.preset))
    A = algebra_object(ws)
    g = bfs(ws, A, ExplorerConfig(depth=args.depth, directions=args.dir, mod_shift=args.mod_shift))
    print(export_dot(ws, g))
    report = hasse_check(ws, g)
    print(
        f"// nodes={report['nodes']} arrows={report['arrows']} "
        f"hasse_violations={len(report['violations'])}",
        file=sys.stderr,
    )
    return 0 if not report["violations"] else 1


if __name__ == "__main__":
    sys.exit(main())
