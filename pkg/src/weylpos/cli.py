"""``weylpos`` command line: JSON in, JSON out.

Exit status is 0 on success, 1 on usage or capability errors, 2 when a
requested check fails (the report is still printed).
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import rings
from .diagrams import (
    Graph, GraphError, cartan, delete_low_vertex, diagram_type, find_harmonic,
    is_diagram, load_graph, named_diagram,
)
from .phi import a1_identity_checks, a3_orbit_check, matrix_available, phi, phi_of_u, phi_prime
from .reps import BudgetExceededError, KINDS, enum_index_set, report_ok, verify_12, weyl_dim
from .semifields import POSRAT, SemifieldError, by_name, format_fraction
from .upoints import UPoint, psi, scale, t_op, transition, u_p, z_coord
from .weyl import CapabilityError, WordError, weyl_group

NAMED_TYPES = ("A1", "A2", "A3", "A1xA1", "D4", "E6", "E7", "E8")
SEMIFIELD_NAMES = ("posrat", "tropint", "trivial")
POINT_OPS = ("canonical", "psi", "scale", "t", "u", "z", "product")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _jsonable(x: Any) -> Any:
    if isinstance(x, Fraction):
        return format_fraction(x)
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if hasattr(x, "item"):  # numpy scalars
        return x.item()
    return x


def _emit(obj: Any, pretty: bool) -> None:
    print(json.dumps(_jsonable(obj), sort_keys=True, indent=2 if pretty else None))


# -- argument helpers -----------------------------------------------------------------


def _diagram(args) -> Graph:
    if args.graph:
        return load_graph(args.graph)
    if args.type:
        return named_diagram(args.type)
    raise UsageError("give --type or --graph")


def _split(text: str | None, what: str) -> list[str]:
    if text is None:
        raise UsageError(f"missing {what}")
    return [t.strip() for t in text.split(",") if t.strip()]


def _word(args, W, text: str | None) -> tuple[str, ...]:
    return W.longest_word if text is None else tuple(_split(text, "word"))


def _per_vertex(text: str, W) -> dict[str, str]:
    """``1,2,3`` (vertex order) or ``i=1,j=2``."""
    parts = _split(text, "weights")
    if all("=" in p for p in parts):
        return dict(p.split("=", 1) for p in parts)
    if len(parts) != len(W.vertices):
        raise UsageError(f"expected {len(W.vertices)} values for vertices {list(W.vertices)}")
    return dict(zip(W.vertices, parts))


def _point(args, W, K) -> UPoint:
    word = _word(args, W, args.word)
    coords = [K.from_json(c) for c in _split(args.point, "--point")]
    return UPoint(W, K, word, tuple(coords))


# -- commands ---------------------------------------------------------------------------


def cmd_classify(args) -> tuple[dict, bool]:
    g = _diagram(args)
    out: dict[str, Any] = {"vertices": list(g.vertices), "connected": g.is_connected()}
    h = find_harmonic(g) if g.vertices and g.is_connected() else None
    out["harmonic"] = h
    out["affine"] = h is not None
    out["diagram"] = is_diagram(g)
    if out["diagram"]:
        out["type"] = diagram_type(g)
        out["cartan"] = cartan(g)
    if h is not None:
        low = [v for v in g.vertices if h[v] == 1]
        out["deletions"] = {v: diagram_type(delete_low_vertex(g, h, v)) for v in low}
    return out, True


def cmd_weyl_info(args) -> tuple[dict, bool]:
    W = weyl_group(_diagram(args))
    word = _word(args, W, args.word)
    data = W.root_data(word)
    out = {
        "vertices": list(W.vertices),
        "nu": W.nu,
        "longest_word": list(W.longest_word),
        "word": list(word),
        "bang": W.bang,
        "q": data.q,
        "heights": list(data.heights),
        "coroots": [list(r[v] for v in W.vertices) for r in data.r],
        "highest_coroot": list(W.highest_coroot),
    }
    try:
        out["reduced_words"] = len(W.reduced_words)
    except CapabilityError:
        out["reduced_words"] = None
    return out, True


def cmd_transition(args) -> tuple[dict, bool]:
    W = weyl_group(_diagram(args))
    K = by_name(args.semifield)
    x = _point(args, W, K)
    y = transition(x, _split(args.target, "--target"))
    return {"semifield": K.name, **y.to_json()}, True


def cmd_point_op(args) -> tuple[dict, bool]:
    d = _diagram(args)
    W = weyl_group(d)
    K = by_name(args.semifield)
    op = args.op
    if op == "u":
        p = {i: K.from_json(v) for i, v in _per_vertex(args.p, W).items()} if args.p else {i: K.one for i in W.vertices}
        word = None if args.word is None else _split(args.word, "word")
        return {"semifield": K.name, **u_p(p, d, K, word).to_json()}, True
    x = _point(args, W, K)
    if op == "canonical":
        y = x.to(W.longest_word)
    elif op == "psi":
        y = psi(x)
    elif op == "scale":
        y = scale({i: K.from_json(v) for i, v in _per_vertex(args.p, W).items()}, x)
    elif op == "t":
        if args.vertex is None or args.c is None:
            raise UsageError("op t needs --vertex and --c")
        y = t_op(args.vertex, K.from_json(args.c), x)
    elif op == "z":
        return {"semifield": K.name, "z": {i: K.to_json(z_coord(i, x)) for i in W.vertices}}, True
    elif op == "product":
        other = UPoint(W, K, _word(args, W, args.other_word), tuple(K.from_json(c) for c in _split(args.other, "--other")))
        y = x * other
    else:
        raise UsageError(f"unknown op {op!r}")
    return {"semifield": K.name, **y.to_json()}, True


def cmd_phi(args) -> tuple[dict, bool]:
    W = weyl_group(_diagram(args))
    K = by_name(args.semifield)
    x = _point(args, W, K)
    fn = phi_prime if args.prime else phi
    y = fn(x, args.method)
    if args.target:
        y = transition(y, _split(args.target, "--target"))
    return {"semifield": K.name, **y.to_json()}, True


def cmd_verify_identities(args) -> tuple[dict, bool]:
    d = _diagram(args)
    W = weyl_group(d)
    rng = random.Random(args.seed)
    report = {"a1": a1_identity_checks(d)}
    ok = report["a1"]["ok"]
    if matrix_available(d) and len(W.vertices) <= 3:
        samples = [{i: Fraction(rng.randint(1, 9), rng.randint(1, 9)) for i in W.vertices} for _ in range(args.samples)]
        orbit = all(a3_orbit_check(p, d) for p in samples)
        u_ok = all(phi(u_p(p, d, POSRAT)) == phi_of_u(p, d) for p in samples)
        pts = [UPoint(W, POSRAT, W.longest_word, tuple(Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(W.nu))) for _ in range(args.samples)]
        inv_ok = all(phi(phi(x)) == x for x in pts)
        report.update({"a3_orbit": orbit, "phi_of_u": u_ok, "phi_involution": inv_ok})
        ok = ok and orbit and u_ok and inv_ok
    report["ok"] = ok
    return report, ok


def _lambda(args, W) -> dict[str, int]:
    return {i: int(v) for i, v in _per_vertex(args.lam, W).items()}


def cmd_dimv(args) -> tuple[dict, bool]:
    d = _diagram(args)
    W = weyl_group(d)
    lam = _lambda(args, W)
    if args.oracle_only:
        return {"lambda": lam, "weyl": weyl_dim(d, lam)}, True
    report = verify_12(d, lam, jobs=args.jobs)
    return report, report_ok(report)


def cmd_enumerate(args) -> tuple[dict, bool]:
    d = _diagram(args)
    W = weyl_group(d)
    lam = _lambda(args, W)
    word = None if args.word is None else _split(args.word, "word")
    s = enum_index_set(d, lam, args.kind, word=word, jobs=args.jobs)
    out = {
        "lambda": lam, "kind": s.kind, "word": list(s.word), "count": len(s), "weyl": s.weyl,
        "box": s.box, "points": [list(p) for p in s.points],
    }
    return out, s.oracle_agrees


def _rings_suite() -> dict:
    f_pairs = rings.f_family(6)
    g_pairs = rings.g_family(3, -6)
    f_ok = all(rings.check(p) for p in f_pairs)
    g_ok = all(rings.check(p) for p in g_pairs)
    f_ident = all(
        rings.make_f(i, i + k, k) == rings.make_fprime(k, i + k, i) for i in range(7) for k in range(7 - i)
    )
    g_ident = all(
        rings.make_g(i, -i - k, k) == rings.make_gprime(k, -i - k, i) for i in range(4) for k in range(4)
    )
    dims = all(
        rings.weight_space_dim(m, n) == len(rings.basis(m, n)) == rings.matrix_coordinate_dim(m, n)
        for m in range(9) for n in range(9 - m)
    )
    checks = {"f_gluing": f_ok, "g_gluing": g_ok, "f_identification": f_ident, "g_identification": g_ident, "dimensions": dims}
    return {"checks": checks, "pairs": {"f": len(f_pairs), "g": len(g_pairs)}, "ok": all(checks.values())}


def cmd_rings_check(args) -> tuple[dict, bool]:
    if args.family is None:
        report = _rings_suite()
        return report, report["ok"]
    i, j, k = (int(v) for v in _split(args.index, "--index"))
    p = rings.make(args.family, i, j, k)
    res = rings.check(p)
    out = {"pair": p.to_json(), "ok": res.ok, "text": p.pretty()}
    if p.label[0].startswith("f"):
        out["weight"] = list(rings.weight_of(p))
    if not res.ok:
        out["diff"] = res.diff.to_json()
    return out, res.ok


COMMANDS = {
    "classify": cmd_classify,
    "weyl-info": cmd_weyl_info,
    "transition": cmd_transition,
    "point-op": cmd_point_op,
    "phi": cmd_phi,
    "verify-identities": cmd_verify_identities,
    "dimv": cmd_dimv,
    "enumerate": cmd_enumerate,
    "rings-check": cmd_rings_check,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weylpos", description=__doc__.splitlines()[0])
    parser.add_argument("--pretty", action="store_true", help="indented JSON")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def diagram_opts(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--type", choices=NAMED_TYPES)
        g.add_argument("--graph", metavar="FILE", help="graph JSON {vertices, edges}")
        p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)

    def point_opts(p):
        p.add_argument("--semifield", choices=SEMIFIELD_NAMES, default="posrat")
        p.add_argument("--point", help="comma-separated coordinates (p/q for posrat)")
        p.add_argument("--word", help="comma-separated reduced word (default: reference word)")

    p = sub.add_parser("classify", help="harmonic function and ADE type")
    diagram_opts(p)

    p = sub.add_parser("weyl-info", help="nu, q, bang, root data")
    diagram_opts(p)
    p.add_argument("--word")

    p = sub.add_parser("transition", help="change of chart")
    diagram_opts(p)
    point_opts(p)
    p.add_argument("--target", required=True)

    p = sub.add_parser("point-op", help="S_p, T_ic, psi, z_i, u(p), products")
    diagram_opts(p)
    point_opts(p)
    p.add_argument("--op", choices=POINT_OPS, required=True)
    p.add_argument("--p", help="per-vertex values, '1,2' or 'i=1,j=2'")
    p.add_argument("--vertex")
    p.add_argument("--c")
    p.add_argument("--other", help="second factor for --op product")
    p.add_argument("--other-word")

    p = sub.add_parser("phi", help="the involution phi (or phi')")
    diagram_opts(p)
    point_opts(p)
    p.add_argument("--method", choices=("auto", "closed", "matrix", "tropical"), default="auto")
    p.add_argument("--prime", action="store_true", help="compute psi.phi.psi instead")
    p.add_argument("--target", help="express the result in this chart")

    p = sub.add_parser("verify-identities", help="q identity, exponentials, flag orbits")
    diagram_opts(p)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)

    for name in ("dimv", "enumerate"):
        p = sub.add_parser(name, help="index sets vs the Weyl dimension" if name == "dimv" else "list an index set")
        diagram_opts(p)
        p.add_argument("--lambda", dest="lam", required=True, help="dominant weight, e.g. 1,0")
        p.add_argument("--jobs", type=int, default=1)
        if name == "dimv":
            p.add_argument("--oracle-only", action="store_true")
        else:
            p.add_argument("--kind", choices=KINDS, default="plain")
            p.add_argument("--word")

    p = sub.add_parser("rings-check", help="two-chart pairs f, f', g, g'")
    p.add_argument("--family", choices=("f", "fprime", "g", "gprime"))
    p.add_argument("--index", help="i,j,k")
    p.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        out, ok = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"weylpos: error: {exc}", file=sys.stderr)
        return 1
    except (GraphError, WordError, CapabilityError, SemifieldError, rings.PairError,
            BudgetExceededError, ValueError, KeyError, OSError) as exc:
        print(f"weylpos: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _emit(out, args.pretty)
    return 0 if ok else 2


if __name__ == "__main__":
    sys.exit(main())
