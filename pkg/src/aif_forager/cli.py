"""Command-line entry point.

    aif-forager list
    aif-forager run --scenario case2_learning [--seed N] [--out DIR] [--config FILE]
    aif-forager sweep --scenario case2_learning --param learning.learning_rate --values 0.3,1.0
    aif-forager plot --in DIR

Exit status is 0 on success, 1 for an invalid scenario or config and 2 when
a run or file operation fails.
"""

import argparse
import dataclasses
import json
import os
import sys

from . import model as modelmod
from .errors import ConfigError, ForagerError, InvalidModel
from .harness import emit, runner, scenarios

EXIT_OK, EXIT_CONFIG, EXIT_RUNTIME = 0, 1, 2


def _config(args):
    if args.config:
        return scenarios.load(args.config, base=args.scenario)
    if not args.scenario:
        raise ConfigError("give --scenario or --config")
    return scenarios.get(args.scenario)


def _with_seed(cfg, seed):
    return cfg if seed is None else dataclasses.replace(cfg, base_seed=seed)


def _write_run(cfg, summary, out):
    emit.emit_csv(summary, out)
    with open(os.path.join(out, "scenario.json"), "w", encoding="utf-8", newline="\n") as fh:
        json.dump(cfg.to_dict(), fh, indent=2)
        fh.write("\n")
    if cfg.learning.enabled:
        for agent, m in enumerate(summary.final_models):
            path = os.path.join(out, f"model_agent{agent:03d}.json")
            with open(path, "w", encoding="utf-8", newline="\n") as fh:
                json.dump(modelmod.to_dict(m), fh)
                fh.write("\n")


def _report(summary):
    per_run = " ".join(f"{x:.2f}" for x in summary.mean_survival_per_run())
    print(f"{summary.scenario_id}: mean survival {summary.mean_survival:.2f} "
          f"(min {summary.min_survival}, max {summary.max_survival}) of {summary.timesteps}")
    print(f"  per run: {per_run}")


def cmd_list(args):
    for c in scenarios.catalog():
        learn = "learning" if c.learning.enabled else "no learning"
        print(f"{c.id:28s} {c.case:8s} policy_len={c.policy_len} {learn} "
              f"agents={c.num_agents} runs={c.num_runs_per_agent}")


def cmd_run(args):
    cfg = _with_seed(_config(args), args.seed)
    summary = runner.run_batch(cfg)
    _report(summary)
    if args.out:
        _write_run(cfg, summary, args.out)
        print(f"  wrote {args.out}")


def _parse_value(text):
    try:
        return json.loads(text)
    except json.JSONDecodeError:
        return text


def cmd_sweep(args):
    base = _with_seed(_config(args), args.seed)
    values = [_parse_value(v) for v in args.values.split(",") if v != ""]
    if not values:
        raise ConfigError("--values needs at least one value")
    configs = [scenarios.with_param(base, args.param, v) for v in values]
    print(f"{'value':>12s} {'mean':>6s} {'min':>4s} {'max':>4s} {'final':>6s}")
    for v, cfg in zip(values, configs):
        s = runner.run_batch(cfg)
        final = s.mean_survival_per_run()[-1]
        print(f"{str(v):>12s} {s.mean_survival:6.2f} {s.min_survival:4d} {s.max_survival:4d} {final:6.2f}")
        if args.out:
            _write_run(cfg, s, os.path.join(args.out, f"{args.param}={v}"))


def cmd_plot(args):
    summary = emit.load_summary(args.indir)
    for path in emit.emit_plots(summary, args.out or os.path.join(args.indir, "plots")):
        print(path)


def build_parser():
    p = argparse.ArgumentParser(prog="aif-forager", description="Active-inference forager experiments.")
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("list", help="list built-in scenarios").set_defaults(func=cmd_list)

    r = sub.add_parser("run", help="run a scenario batch")
    r.add_argument("--scenario")
    r.add_argument("--seed", type=int)
    r.add_argument("--out")
    r.add_argument("--config", help="scenario JSON merged over the catalog entry")
    r.set_defaults(func=cmd_run)

    s = sub.add_parser("sweep", help="run a scenario over values of one parameter")
    s.add_argument("--scenario")
    s.add_argument("--config")
    s.add_argument("--param", required=True, help="dotted field, e.g. learning.learning_rate")
    s.add_argument("--values", required=True, help="comma-separated JSON values")
    s.add_argument("--seed", type=int)
    s.add_argument("--out")
    s.set_defaults(func=cmd_sweep)

    pl = sub.add_parser("plot", help="draw SVG panels for an emitted run directory")
    pl.add_argument("--in", dest="indir", required=True)
    pl.add_argument("--out")
    pl.set_defaults(func=cmd_plot)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_CONFIG
    try:
        args.func(args)
    except (ConfigError, InvalidModel) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ForagerError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
