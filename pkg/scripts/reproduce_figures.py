#!/usr/bin/env python3
"""Regenerate the three standard figure datasets as JSON files.

Thin wrapper over the CLI's ``reproduce`` subcommand, so the files written
here are byte-identical to what any other invocation produces.  Default
output directory is ./data.

Usage:
    python scripts/reproduce_figures.py [--outdir DIR] [--figure N]
"""

import argparse
import sys
from pathlib import Path

from starkdim.cli import run


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--outdir", type=Path, default=Path("data"),
                        help="destination directory (default ./data)")
    parser.add_argument("--figure", type=int, choices=(1, 2, 3),
                        help="only this figure (default: all three)")
    args = parser.parse_args()

    args.outdir.mkdir(parents=True, exist_ok=True)
    figures = (args.figure,) if args.figure else (1, 2, 3)
    for fig in figures:
        target = args.outdir / f"figure{fig}.json"
        code = run(["reproduce", "--figure", str(fig),
                    "--output", str(target)])
        if code != 0:
            print(f"figure {fig} failed with exit code {code}",
                  file=sys.stderr)
            return code
        print(f"wrote {target} ({target.stat().st_size} bytes)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
