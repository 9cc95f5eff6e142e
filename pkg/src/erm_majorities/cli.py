"""Command line entry point.

Exit codes: 0 success, 2 invalid input or config, 3 a search exceeded its cap.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import classfile
from .core import ArtifactError, InvalidInput, OverCapError, RandomSource
from .dimensions import Caps, ds_dimension, graph_dimension, vc_dimension
from .experiments import (
    ExperimentConfig,
    emit_report,
    load_config,
    run_coupon,
    run_lower_bound,
    run_upper_bound,
)
from .properness import properness_exact, properness_greedy
from .splitting import make_plan

EXIT_INVALID = 2
EXIT_OVER_CAP = 3


def _print(doc) -> None:
    print(json.dumps(doc, indent=2, sort_keys=True))


def _parse_params(text: str) -> dict[str, str]:
    out = {}
    for tok in text.replace(",", " ").split():
        if "=" not in tok:
            raise InvalidInput(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def cmd_dims(args) -> int:
    H = classfile.read_class(args.class_file)
    caps = Caps(max_points=args.max_points, max_subset=args.max_subset)
    which = ("vc", "graph", "ds") if args.which == "all" else (args.which,)
    doc = {"points": H.domain_size, "labels": H.n_labels, "hypotheses": len(H)}
    for w in which:
        if w == "vc":
            if H.n_labels > 2 and args.which == "all":
                doc["vc"] = None
            else:
                doc["vc"] = {"dimension": vc_dimension(H, caps)}
        elif w == "graph":
            k, wit = graph_dimension(H, caps)
            doc["graph"] = {"dimension": k, "witness": wit.to_json()}
        else:
            k, wit = ds_dimension(H, caps)
            doc["ds"] = {"dimension": k, "witness": wit.to_json()}
    _print(doc)
    return 0


def cmd_split(args) -> int:
    plan = make_plan(args.scheme, args.m, rho=args.rho, delta=args.delta, r=RandomSource(args.seed))
    _print(plan.to_json())
    return 0


def cmd_make_class(args) -> int:
    from .constructions import cantor_explicit, properness_witness, two_constant_class
    from .learners import CantorParams

    p = _parse_params(args.params or "")
    try:
        if args.family == "cantor":
            d = int(p["d"])
            if "n" in p:
                n = int(p["n"])
            else:
                n = CantorParams.from_eps(d, float(p["eps"])).domain_size
            H = cantor_explicit(d, n, cap=int(p.get("cap", 10_000)))
        elif args.family == "witness":
            H = properness_witness(int(p["d"])).cls
        else:
            H = two_constant_class(int(p["n"]))
    except KeyError as exc:
        raise InvalidInput(f"missing parameter {exc.args[0]!r} for family {args.family}") from None
    except ValueError as exc:
        raise InvalidInput(str(exc)) from None
    if args.out:
        classfile.write_class(H, args.out)
    else:
        sys.stdout.write(classfile.dumps_class(H))
    return 0


def cmd_properness(args) -> int:
    H = classfile.read_class(args.class_file)
    f = classfile.read_function(args.function)
    res = properness_greedy(f, H) if args.greedy else properness_exact(f, H)
    doc = res.to_json() | {"method": "greedy" if args.greedy else "exact"}
    _print(doc)
    return 0


def _config(args, **defaults) -> ExperimentConfig:
    overrides = {
        "d": args.d, "eps": args.eps, "domain_size": args.domain_size, "splitter": args.splitter,
        "learner": args.learner, "family": args.family, "marginal": args.marginal,
        "m_grid": args.m_grid, "trials": args.trials, "seed": args.seed, "rho": args.rho,
        "delta": args.delta, "tie_policy": args.tie_policy,
    }
    if args.config:
        return load_config(args.config, **overrides)
    data = dict(defaults)
    data.update({k: v for k, v in overrides.items() if v is not None})
    return ExperimentConfig.from_dict(data)


def cmd_coupon(args) -> int:
    cfg = _config(args, trials=10_000)
    stats = run_coupon(cfg)
    doc = stats.to_json() | {"seed": cfg.seed}
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "counts.csv").write_text("trial,draws\n" + "".join(f"{i},{c}\n" for i, c in enumerate(stats.counts)))
        (out / "summary.json").write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    _print(doc)
    return 0


def _report(result, args) -> int:
    if args.out:
        emit_report(result, args.out)
    doc = {"kind": result.kind, "aggregates": {str(m): v for m, v in result.aggregates.items()},
           "extra": {k: ({str(a): b for a, b in v.items()} if isinstance(v, dict) else v)
                     for k, v in result.extra.items()}}
    _print(doc)
    return 0


def cmd_lower_bound(args) -> int:
    cfg = _config(args, family="cantor", learner="erm_bad", splitter="three")
    return _report(run_lower_bound(cfg, workers=args.workers), args)


def cmd_upper_bound(args) -> int:
    cfg = _config(args, family="cantor-explicit", d=3, domain_size=15, learner="erm_bad",
                  splitter="three", marginal="geometric", m_grid="48,96,192,384", trials=300)
    return _report(run_upper_bound(cfg, workers=args.workers), args)


def _experiment_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="flat key = value config file")
    p.add_argument("--d", type=int)
    p.add_argument("--eps", type=float)
    p.add_argument("--domain-size", type=int)
    p.add_argument("--family", choices=("cantor", "cantor-explicit", "random"))
    p.add_argument("--learner", choices=("erm", "erm_bad"))
    p.add_argument("--splitter", choices=("hanneke", "bagging", "three", "none"))
    p.add_argument("--marginal", choices=("uniform", "geometric"))
    p.add_argument("--rho", type=float)
    p.add_argument("--delta", type=float)
    p.add_argument("--tie-policy", choices=("idk", "first_voter", "label_order"))
    p.add_argument("--m-grid", help="comma-separated sample sizes")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", help="directory for records.csv and summary.json")
    p.add_argument("--workers", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="erm-majorities", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("dims", help="VC / Graph / DS dimension of an explicit class")
    p.add_argument("--class", dest="class_file", required=True)
    p.add_argument("--which", choices=("vc", "graph", "ds", "all"), default="all")
    p.add_argument("--max-points", type=int, default=16)
    p.add_argument("--max-subset", type=int, default=6)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("split", help="print a splitting plan as JSON")
    p.add_argument("--scheme", choices=("hanneke", "bagging", "three"), required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--rho", type=float, default=1.0)
    p.add_argument("--delta", type=float, default=0.05)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_split)

    p = sub.add_parser("make-class", help="write an explicit class file")
    p.add_argument("--family", choices=("cantor", "witness", "two-const"), required=True)
    p.add_argument("--params", help="e.g. 'd=2,n=8' (cantor), 'd=4' (witness), 'n=5' (two-const)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_make_class)

    p = sub.add_parser("properness", help="properness number of a function w.r.t. a class")
    p.add_argument("--class", dest="class_file", required=True)
    p.add_argument("--function", required=True)
    p.add_argument("--greedy", action="store_true")
    p.set_defaults(func=cmd_properness)

    for name, func, text in (
        ("coupon", cmd_coupon, "coupon-collector draw counts"),
        ("lower-bound", cmd_lower_bound, "bad-ERM sweep on the Cantor instance"),
        ("upper-bound", cmd_upper_bound, "majority-of-ERM rate on an explicit class"),
    ):
        p = sub.add_parser(name, help=text)
        _experiment_flags(p)
        p.set_defaults(func=func)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except OverCapError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_OVER_CAP
    except (InvalidInput, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except ArtifactError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
