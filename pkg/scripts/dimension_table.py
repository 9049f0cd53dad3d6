"""Index-set sizes against the Weyl dimension formula over a grid of weights.

    python scripts/dimension_table.py --type A3 --max 2 --out results/a3.csv
"""

import argparse
import csv
import itertools
import sys
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from weylpos.diagrams import named_diagram
from weylpos.reps import verify_12
from weylpos.weyl import weyl_group


@dataclass
class Config:
    type: str = "A2"
    max: int = 4
    jobs: int = 1
    out: str | None = None


def run(cfg: Config) -> list[dict]:
    d = named_diagram(cfg.type)
    W = weyl_group(d)
    rows = []
    for lam in itertools.product(range(cfg.max + 1), repeat=len(W.vertices)):
        t0 = time.perf_counter()
        report = verify_12(d, dict(zip(W.vertices, lam)), jobs=cfg.jobs)
        rows.append({
            "lambda": ",".join(map(str, lam)),
            **report["counts"],
            "all_checks": all(report["checks"].values()),
            "seconds": round(time.perf_counter() - t0, 3),
        })
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(Config()).items():
        ap.add_argument(f"--{name}", type=type(default) if default is not None else str, default=default)
    cfg = Config(**vars(ap.parse_args(argv)))
    rows = run(cfg)
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
    out = open(cfg.out, "w", newline="") if cfg.out else sys.stdout
    writer = csv.DictWriter(out, fieldnames=list(rows[0]))
    writer.writeheader()
    writer.writerows(rows)
    return 0 if all(r["all_checks"] for r in rows) else 2


if __name__ == "__main__":
    sys.exit(main())
