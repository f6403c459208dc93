"""Command-line interface: ``privol run|sweep|attack|ld|report``."""

from __future__ import annotations

import argparse
import json
import sys

from .adversaries import (
    MonteCarloOracle,
    PackingOutput,
    build_packing_streams,
    constant_profile,
    decaying_profile,
    memorizing_profile,
    smoothed_binary_search,
    wlog_filter,
)
from .bench import (
    ExperimentConfig,
    emit_sweep,
    load_config,
    load_separation_config,
    parse_learner,
    run_sweep,
    separation_report,
)
from .bench.descriptors import split_descriptor
from .bench.outputs import SUMMARY_FIELDS, _fmt
from .errors import ConfigurationError, OutputError, PrivolError
from .hypotheses import LabeledExample, find_non_complementary_pair, parse_class
from .littlestone import littlestone_dimension
from .noise import NoiseSource, derive_seed


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _print_summary(stats, out=None):
    out = out or sys.stdout
    out.write("\t".join(SUMMARY_FIELDS) + "\n")
    for s in stats:
        d = s.to_dict()
        out.write("\t".join(_fmt(d[k]) for k in SUMMARY_FIELDS) + "\n")


def _sweep(cfg: ExperimentConfig, render: bool):
    res = run_sweep(cfg)
    if cfg.out:
        emit_sweep(res, cfg.out, render=render)
    _print_summary(res.stats)
    return 0


def cmd_run(args):
    cfg = ExperimentConfig(learner=args.learner, adversary=args.adversary, epsilon=args.epsilon,
                           delta=args.delta, T=args.rounds, d=args.d or [], replications=args.reps,
                           seed=args.seed, out=args.out, zero_noise=args.zero_noise,
                           record_rounds=not args.no_rounds, workers=args.workers)
    return _sweep(cfg, not args.no_render)


def cmd_sweep(args):
    cfg = load_config(args.config)
    if args.out:
        cfg.out = args.out
    if args.workers:
        cfg.workers = args.workers
    return _sweep(cfg, not args.no_render)


def _pair(args):
    cls = parse_class(args.cls)
    found = find_non_complementary_pair(cls)
    if found is None:
        raise ConfigurationError(f"class {args.cls!r} has no distinguishing tuple")
    return cls, found


def _learner_factory(args, T, d):
    spec = parse_learner(args.learner)
    return lambda rng: spec.build(T, d, args.epsilon, rng)


def attack_mw(params, args):
    d = int(params.get("d", args.d or 1024))
    cfg = ExperimentConfig(learner=args.learner, adversary=f"mw:d={d}", epsilon=args.epsilon,
                           T=args.rounds, d=[d], replications=args.reps, seed=args.seed,
                           out=args.out, record_rounds=not args.no_rounds)
    return _sweep(cfg, not args.no_render)


_MOCKS = {
    "memorizing": lambda: memorizing_profile(0.5),
    "constant": lambda: constant_profile(0.5),
    "decaying": lambda: decaying_profile(0.25),
}


def attack_packing(params, args):
    T = args.rounds[0]
    k = int(params.get("k", args.k or 4))
    cls, (f1, f2, u0, u1) = _pair(args)
    kind = params.get("oracle", "mock")
    if kind == "mock":
        name = params.get("mock", "memorizing")
        if name not in _MOCKS:
            raise ConfigurationError(f"unknown mock {name!r}; known: {', '.join(_MOCKS)}")
        oracle = _MOCKS[name]()
    elif kind == "mc":
        d = len(cls.domain)
        oracle = MonteCarloOracle(_learner_factory(args, T, d), runs=int(params.get("runs", args.runs)),
                                  seed=args.seed)
    else:
        raise ConfigurationError(f"unknown oracle {kind!r}; use mock or mc")
    f1, f2, kept, swapped = wlog_filter(oracle, T, f1, f2, u0, u1)
    out = build_packing_streams(oracle, T, k, f1, f2, u0, u1, kept_rounds=kept, swapped=swapped)
    text = out.to_json()
    if args.out:
        try:
            with open(args.out, "w") as f:
                f.write(text)
        except OSError as exc:
            raise OutputError(f"cannot write {args.out}: {exc.strerror}", args.out) from None
    info = {"kind": out.kind, "m": out.m, "timesteps": out.timesteps,
            "insertions": [len(out.insertions(i)) for i in range(1, out.m + 1)],
            "witness_index": out.witness_index}
    print(json.dumps(info))
    return 0


def attack_distinguish(params, args):
    if not args.family:
        raise ConfigurationError("distinguish needs --family FILE from a packing attack")
    try:
        with open(args.family) as f:
            fam = PackingOutput.from_json(f.read())
    except OSError as exc:
        raise ConfigurationError(f"cannot read {args.family}: {exc.strerror}") from None
    i = int(params.get("stream-index", 1))
    if not 1 <= i <= fam.m:
        raise ConfigurationError(f"stream-index must lie in [1, {fam.m}]")
    d = args.d[0] if args.d else max(max(x for x, _ in s) for s in fam.streams)
    factory = _learner_factory(args, fam.T, d)
    S = [LabeledExample(*ex) for ex in fam.streams[i - 1]]
    hits, guesses = 0, []
    for trial in range(args.reps):
        rng = NoiseSource(derive_seed(args.seed, "distinguish", i, trial))
        g = smoothed_binary_search(factory, fam.streams, fam.timesteps, S, fam.ref_label,
                                   fam.u1, rng, copies=args.copies)
        guesses.append(g)
        hits += g == i
    print(json.dumps({"stream_index": i, "m": fam.m, "trials": args.reps,
                      "success_rate": hits / args.reps, "guesses": guesses}))
    return 0


def cmd_attack(args):
    name, params = split_descriptor(args.attack)
    handlers = {"mw": attack_mw, "packing": attack_packing, "distinguish": attack_distinguish}
    if name not in handlers:
        raise ConfigurationError(f"unknown attack {name!r}; use mw, packing or distinguish")
    return handlers[name](params, args)


def cmd_ld(args):
    cls = parse_class(args.cls)
    print(json.dumps({"class": args.cls, "size": len(cls), "littlestone_dimension": littlestone_dimension(cls)}))
    return 0


def cmd_report(args):
    if args.kind != "separation":
        raise ConfigurationError(f"unknown report {args.kind!r}")
    cfg = load_separation_config(args.config)
    _, text = separation_report(cfg, out=args.out, render=not args.no_render)
    sys.stdout.write(text)
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        sys.stderr.write(json.dumps({"error": "usage_error", "message": message}) + "\n")
        sys.exit(2)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="privol", description="Private online learning workbench.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, rounds_default=None):
        sp.add_argument("--epsilon", type=float, default=1.0)
        sp.add_argument("--rounds", "-T", type=_int_list, default=rounds_default,
                        required=rounds_default is None, help="comma-separated T values")
        sp.add_argument("--d", type=_int_list, default=None, help="comma-separated domain sizes")
        sp.add_argument("--reps", type=int, default=1)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", default=None)
        sp.add_argument("--no-render", action="store_true", help="skip PNG figures")
        sp.add_argument("--no-rounds", action="store_true", help="skip per-round CSV")

    sp = sub.add_parser("run", help="play one learner against one adversary")
    sp.add_argument("--learner", required=True)
    sp.add_argument("--adversary", required=True)
    sp.add_argument("--delta", type=float, default=0.0)
    sp.add_argument("--zero-noise", action="store_true")
    sp.add_argument("--workers", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_run)

    sp = sub.add_parser("sweep", help="run a JSON experiment config")
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", default=None)
    sp.add_argument("--workers", type=int, default=None)
    sp.add_argument("--no-render", action="store_true")
    sp.set_defaults(func=cmd_sweep)

    sp = sub.add_parser("attack", help="mw, packing or distinguish attacks")
    sp.add_argument("attack", help='e.g. "mw:d=1024", "packing:k=4,oracle=mock", "distinguish:stream-index=2"')
    sp.add_argument("--learner", default="point-d")
    sp.add_argument("--class", dest="cls", default="point:d=3")
    sp.add_argument("--k", type=int, default=None)
    sp.add_argument("--runs", type=int, default=200, help="Monte Carlo learner runs")
    sp.add_argument("--copies", type=int, default=360, help="learner copies per distinguisher call")
    sp.add_argument("--family", default=None, help="packing JSON for distinguish")
    common(sp, rounds_default=[1024])
    sp.set_defaults(func=cmd_attack)

    sp = sub.add_parser("ld", help="Littlestone dimension of a finite class")
    sp.add_argument("--class", dest="cls", required=True)
    sp.set_defaults(func=cmd_ld)

    sp = sub.add_parser("report", help="separation report from several sweeps")
    sp.add_argument("kind", choices=["separation"])
    sp.add_argument("--config", required=True)
    sp.add_argument("--out", default=None)
    sp.add_argument("--no-render", action="store_true")
    sp.set_defaults(func=cmd_report)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except PrivolError as exc:
        sys.stderr.write(json.dumps(exc.to_dict()) + "\n")
        return 2
    except Exception as exc:  # surfaced as JSON so scripts can parse every failure
        sys.stderr.write(json.dumps({"error": "internal", "message": f"{type(exc).__name__}: {exc}"}) + "\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
