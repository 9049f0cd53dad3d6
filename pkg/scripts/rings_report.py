"""Print the f/f' basis by weight and the g/g' pairs, with their gluing checks."""

import argparse

from weylpos import rings


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-weight", type=int, default=3)
    ap.add_argument("--group", action="store_true", help="list g/g' pairs instead")
    args = ap.parse_args(argv)
    failures = 0
    if args.group:
        pairs = rings.g_family(2, -4)
    else:
        pairs = [p for m in range(args.max_weight + 1) for n in range(args.max_weight + 1 - m) for p in rings.basis(m, n)]
    for p in pairs:
        ok = bool(rings.check(p))
        failures += not ok
        print(("ok  " if ok else "FAIL") + "  " + p.pretty())
    return 1 if failures else 0


if __name__ == "__main__":
    raise SystemExit(main())
