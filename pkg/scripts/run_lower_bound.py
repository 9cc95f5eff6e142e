"""Lower-bound sweep: single bad ERM vs a majority of bad ERMs on the Cantor instance.

    python3 scripts/run_lower_bound.py --out results/lower
"""

import argparse
import json
from pathlib import Path

from erm_majorities.experiments import emit_report, load_config, run_lower_bound

CONFIG = Path(__file__).resolve().parent.parent / "configs" / "lower_bound.cfg"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=str(CONFIG))
    ap.add_argument("--out", default="results/lower")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    base = load_config(args.config)
    for splitter in ("none", "three", "hanneke", "bagging"):
        cfg = base.replace(splitter=splitter)
        res = run_lower_bound(cfg, workers=args.workers)
        emit_report(res, Path(args.out) / splitter)
        print(f"[{splitter}] thresholds {json.dumps(res.extra['thresholds'])}")
        for m, agg in res.aggregates.items():
            maj = agg["majority_error"]
            print(f"  m={m:5d}  voters={agg['n_voters']:4d}  median={maj['median']:.4f}  "
                  f"P[>eps]={maj['p_gt_eps']:.2f}  P[>=2eps]={maj['p_ge_2eps']:.2f}")


if __name__ == "__main__":
    main()
