#!/usr/bin/env python3
"""Render the wall arrangement of a sample lift input to an SVG file.

Usage: python scripts/plot_walls.py [-o walls.svg]

Writes a coefficient file for a level 1, weight 2 input with principal
part at index -1/4 into a temp directory, then drives the command line
plot tool on it.
"""

import argparse
import sys
import tempfile
from pathlib import Path

from thetalift.cli import main as cli_main

SAMPLE = """\
VVMF N=1 K=2 DELTA=1 R=1
CP 1 -1 4 1.0 0.0
"""


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-o", "--output", default="walls.svg",
                    help="output SVG path (default walls.svg)")
    args = ap.parse_args(argv)

    with tempfile.TemporaryDirectory() as tmp:
        form = Path(tmp) / "sample.vvmf"
        form.write_text(SAMPLE)
        code = cli_main(["plot", "-f", str(form), "-o", args.output])
    if code == 0:
        print(f"wrote {args.output}")
    return code


if __name__ == "__main__":
    sys.exit(main())
