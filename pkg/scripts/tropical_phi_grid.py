"""Tropical phi in A2 on a cube of integer points, next to the min-plus closed form.

Prints one CSV row per point and exits nonzero on the first disagreement.
"""

import argparse
import csv
import itertools
import sys

from weylpos.diagrams import named_diagram
from weylpos.phi import phi_tropical
from weylpos.semifields import TROPINT
from weylpos.upoints import UPoint
from weylpos.weyl import weyl_group


def closed(a, b, c):
    m = min(a, c)
    return (a - c - m, m - a - b, -m)


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--radius", type=int, default=5)
    args = ap.parse_args(argv)
    W = weyl_group(named_diagram("A2"))
    writer = csv.writer(sys.stdout)
    writer.writerow(["a", "b", "c", "phi_a", "phi_b", "phi_c", "match"])
    r = args.radius
    bad = 0
    for p in itertools.product(range(-r, r + 1), repeat=3):
        got = phi_tropical(UPoint(W, TROPINT, ("i", "j", "i"), p)).coords
        ok = got == closed(*p)
        bad += not ok
        writer.writerow([*p, *got, ok])
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
