#!/usr/bin/env python3
"""Regenerate every figure dataset (and optionally the SVGs) from scratch.

Full-scale recipes take tens of minutes in total; pass --quick for a
minutes-long smoke version with reduced sizes.
"""
import argparse
import subprocess
import sys
from pathlib import Path

FIGURES = ["1", "2", "S1", "S2", "S3", "S4", "S5"]


def main() -> int:
    parser = argparse.ArgumentParser()
    parser.add_argument("--out", default="figures_out")
    parser.add_argument("--quick", action="store_true")
    parser.add_argument("--render", action="store_true",
                        help="also render SVGs via the frontend (needs node + built frontend)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    root = Path(args.out)
    root.mkdir(parents=True, exist_ok=True)
    repo = Path(__file__).resolve().parent.parent
    for name in FIGURES:
        out_dir = root / f"fig{name}"
        cmd = [sys.executable, "-m", "voidlab.cli", "figure", "--name", name,
               "--seed", str(args.seed), "--out", str(out_dir)]
        if args.quick:
            cmd.append("--quick")
        print("+", " ".join(cmd), flush=True)
        subprocess.run(cmd, check=True)
        if args.render:
            svg = root / f"fig{name}.svg"
            render = ["node", str(repo / "frontend" / "dist" / "cli.js"), "render",
                      "--figure", name, "--manifest", str(out_dir / "manifest.json"),
                      "--out", str(svg)]
            print("+", " ".join(render), flush=True)
            subprocess.run(render, check=True)
    return 0


if __name__ == "__main__":
    sys.exit(main())
