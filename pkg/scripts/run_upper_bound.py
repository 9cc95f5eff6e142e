"""Upper-bound rate: median majority error and fitted c_hat = median * m / d_G per m.

    python3 scripts/run_upper_bound.py --out results/upper --workers 4
"""

import argparse
from pathlib import Path

from erm_majorities.experiments import emit_report, load_config, run_upper_bound

CONFIG = Path(__file__).resolve().parent.parent / "configs" / "upper_bound.cfg"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=str(CONFIG))
    ap.add_argument("--out", default="results/upper")
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    base = load_config(args.config)
    for splitter in ("hanneke", "three", "bagging"):
        res = run_upper_bound(base.replace(splitter=splitter), workers=args.workers)
        emit_report(res, Path(args.out) / splitter)
        print(f"[{splitter}] d_G = {res.extra['graph_dimension']}")
        prev = None
        for m in res.config.m_grid:
            med = res.aggregates[m]["majority_error"]["median"]
            step = f"  ratio {med / prev:.3f}" if prev else ""
            print(f"  m={m:5d}  median={med:.5f}  c_hat={res.extra['c_hat'][m]:.3f}{step}")
            prev = med


if __name__ == "__main__":
    main()
