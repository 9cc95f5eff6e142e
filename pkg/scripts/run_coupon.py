"""Coupon-collector draw counts against the exact mean and the closed-form bounds."""

import argparse
import json
from pathlib import Path

from erm_majorities.experiments import load_config, run_coupon

CONFIG = Path(__file__).resolve().parent.parent / "configs" / "coupon.cfg"


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--config", default=str(CONFIG))
    args = ap.parse_args()
    stats = run_coupon(load_config(args.config))
    print(json.dumps(stats.to_json(), indent=2))


if __name__ == "__main__":
    main()
