"""Command-line front end.

Subcommands: generate, order, oracle, estimate, experiment, check-lemmas.
Exit codes: 0 success, 1 violation or failed estimate, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ConfigError, ParseError
from .estimators import (
    Alg1Params,
    alg1_estimate,
    alg2_estimate,
    alg4_estimate_e_alpha,
    dynamic_estimate,
    estimate_matching_logspace,
)
from .graphs import (
    characterize,
    degeneracy,
    offline_alpha_good_set,
    parse_graph,
    serialize_graph,
)
from .harness import check_lemmas, parse_config, run_experiment, summarize_ratios
from .streams import (
    OrderingPolicy,
    generate_random_tree,
    generate_star_forest,
    generate_union_of_forests,
    order_stream,
    parse_stream,
    serialize_stream,
)


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w") as fh:
        fh.write(text)


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.kind == "union-of-forests":
        g = generate_union_of_forests(args.n, args.c, args.seed)
    elif args.kind == "star-forest":
        g = generate_star_forest(args.k, args.s)
    else:
        g = generate_random_tree(args.n, args.seed)
    _write(args.output, serialize_graph(g))
    return 0


def _cmd_order(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph), c_declared=args.c)
    stream = order_stream(g, args.policy, args.seed)
    _write(args.output, serialize_stream(stream))
    return 0


def _cmd_oracle(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph), c_declared=args.c)
    report = characterize(g, args.mu)
    payload = {
        "n": g.n,
        "m": g.m,
        "degeneracy": degeneracy(g),
        "mu": report.mu,
        "m_star": report.m_star,
        "h_mu": report.h_mu,
        "s_mu": report.s_mu,
        "m_mu": report.m_mu,
        "n_l": report.n_l,
    }
    if args.stream is not None:
        if args.alpha is None:
            raise ConfigError("--alpha is required when --stream is given")
        stream = parse_stream(_read(args.stream))
        payload["alpha"] = args.alpha
        payload["e_alpha"] = len(offline_alpha_good_set(stream, args.alpha))
    print(json.dumps(payload, sort_keys=True))
    return 0


def _cmd_estimate(args: argparse.Namespace) -> int:
    stream = parse_stream(_read(args.stream))
    if args.algorithm == "alg1":
        if args.mu is None or args.p is None:
            raise ConfigError("alg1 needs --mu and --p")
        params = Alg1Params(mu=args.mu, p=args.p, c=args.c, epsilon=args.epsilon)
        est = alg1_estimate(stream, params, args.seed)
    elif args.algorithm == "alg2":
        if args.mu is None:
            raise ConfigError("alg2 needs --mu")
        est = alg2_estimate(stream, c=args.c, mu=args.mu, epsilon=args.epsilon, seed=args.seed)
    elif args.algorithm == "alg4":
        if args.alpha is None:
            raise ConfigError("alg4 needs --alpha")
        est = alg4_estimate_e_alpha(
            stream, alpha=args.alpha, c=args.c, epsilon=args.epsilon, seed=args.seed
        )
    elif args.algorithm == "logspace":
        est = estimate_matching_logspace(stream, c=args.c, epsilon=args.epsilon, seed=args.seed)
    else:
        if args.mu is None:
            raise ConfigError("dynamic needs --mu")
        est = dynamic_estimate(stream, c=args.c, mu=args.mu, epsilon=args.epsilon, seed=args.seed)
    value = "" if est.value is None else est.value
    print(
        f"algorithm={args.algorithm} value={value} space_peak={est.space_peak} "
        f"fail={1 if est.failed else 0} seed={args.seed}"
    )
    return 1 if est.failed else 0


def _cmd_experiment(args: argparse.Namespace) -> int:
    config = parse_config(_read(args.config))
    if args.output is not None:
        config.output = args.output
    records = run_experiment(config)
    summary = summarize_ratios(records)
    parts = [f"trials={summary['trials']}", f"fails={summary['fails']}"]
    if "ratio_min" in summary:
        parts.append(f"ratio_min={summary['ratio_min']:.4f}")
        parts.append(f"ratio_median={summary['ratio_median']:.4f}")
        parts.append(f"ratio_max={summary['ratio_max']:.4f}")
    print(" ".join(parts))
    return 0


def _cmd_check_lemmas(args: argparse.Namespace) -> int:
    g = parse_graph(_read(args.graph), c_declared=args.c)
    report = check_lemmas(g, orderings=args.orderings, mu=args.mu, seed=args.seed)
    print(report.format())
    return 0 if report.passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arbormatch",
        description="Streaming matching-size estimators and exact oracles for sparse graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a generated graph to a file")
    p.add_argument("--kind", choices=("union-of-forests", "star-forest", "random-tree"),
                   required=True)
    p.add_argument("--n", type=int, default=100)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--k", type=int, default=10)
    p.add_argument("--s", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("order", help="stream a graph file under an ordering policy")
    p.add_argument("graph")
    p.add_argument("--policy", choices=[pol.value for pol in OrderingPolicy],
                   default=OrderingPolicy.UNIFORM_RANDOM.value)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_order)

    p = sub.add_parser("oracle", help="exact characterization of a graph (JSON)")
    p.add_argument("graph")
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--c", type=int, default=None)
    p.add_argument("--stream", default=None, help="also count surviving edges of this stream")
    p.add_argument("--alpha", type=float, default=None)
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("estimate", help="run one estimator over a stream file")
    p.add_argument("stream")
    p.add_argument("--algorithm", choices=("alg1", "alg2", "alg4", "logspace", "dynamic"),
                   required=True)
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--mu", type=int, default=None)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--epsilon", type=float, default=0.5)
    p.add_argument("--p", type=float, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("experiment", help="run a key=value config file, emit CSV")
    p.add_argument("config")
    p.add_argument("-o", "--output", default=None, help="override the config's output path")
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("check-lemmas", help="verify characterization inequalities on a graph")
    p.add_argument("graph")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--mu", type=int, required=True)
    p.add_argument("--orderings", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_check_lemmas)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ConfigError, ParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
