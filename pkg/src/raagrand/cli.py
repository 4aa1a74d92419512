"""Command-line interface: ``raagrand <subcommand> ...``.

Exit status is 0 on success, 2 for invalid arguments or values outside a
formula's domain, and 3 for I/O failures.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import asymptotics as asy
from .experiments import KINDS, ExperimentConfig, report_to_csv, report_to_json, run_experiment
from .graph import GnpParams, GraphFormatError, read_graph, sample_gnp, serialize_graph
from .invariants import raag_invariants

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_IO = 3


class _IOFailure(Exception):
    pass


def _write(text: str, path: str | None) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise _IOFailure(f"cannot write {path}: {exc.strerror or exc}") from exc


def _load_graph(path: str):
    try:
        return read_graph(path)
    except GraphFormatError:
        raise
    except (OSError, UnicodeDecodeError) as exc:
        raise _IOFailure(f"cannot read {path}: {getattr(exc, 'strerror', None) or exc}") from exc


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _maybe(fn, *args):
    try:
        return fn(*args)
    except asy.DomainError:
        return None


# -- subcommands ----------------------------------------------------------------


def cmd_sample(args) -> int:
    if args.n is None or args.p is None:
        raise ValueError("sample needs --n and --p")
    g = sample_gnp(GnpParams(args.n, args.p, args.seed))
    _write(serialize_graph(g), args.out)
    return EXIT_OK


def cmd_invariants(args) -> int:
    if args.graph is None:
        raise ValueError("invariants needs --graph")
    inv = raag_invariants(_load_graph(args.graph))
    _write(inv.to_json(), args.out)
    return EXIT_OK


def _resolve_p(args) -> float:
    if args.p is not None and args.c is not None:
        raise ValueError("give either --p or --c, not both")
    if args.p is not None:
        return args.p
    if args.c is not None and args.r is not None:
        return asy.critical_p(args.n, args.r, args.c)
    raise ValueError("need --p, or --r with --c")


def cmd_asymptotics(args) -> int:
    if args.n is None:
        raise ValueError("asymptotics needs --n")
    p = _resolve_p(args)
    n, r, eps = args.n, args.r, args.epsilon
    if not 0.0 < p < 1.0:
        raise asy.DomainError("asymptotics need 0 < p < 1")
    if not 0.0 < eps <= 0.5:
        raise asy.DomainError("epsilon must lie in (0, 1/2]")
    window = _maybe(asy.matula_window, n, p, eps)
    out = {
        "n": n,
        "p": p,
        "q": 1.0 / p,
        "epsilon": eps,
        "z": _maybe(asy.z_statistic, n, p),
        "matula_window": None if window is None else list(window),
        "tc_window": None if window is None else [2 * window[0] + 1, 2 * window[1] + 1],
        "lemma4_statistic": _maybe(asy.lemma4_statistic, n, p, eps),
        "split_lambda": asy.default_split_lambda(p),
    }
    if r is not None:
        out["r"] = r
        out["expected_betti"] = asy.expected_betti(n, p, r)
        out["expected_x"] = asy.expected_biclique_count(n, p, r) if r >= 1 else None
        if r >= 2:
            c = args.c if args.c is not None else n * p ** ((r - 1) / 2)
            out["c"] = c
            out["lambda_limit"] = asy.poisson_limit_mean(c, r)
        if r >= 1 and n >= 4 * r:
            out["second_moment_ratio"] = asy.second_moment_ratio(n, p, r).ratio
            f0, bound, holds = asy.f0_bound_check(n, r)
            out["f0"] = {"value": f0, "lower_bound": bound, "holds": holds}
    _write(_json(out), args.out)
    return EXIT_OK


def cmd_second_moment(args) -> int:
    if args.n is None or args.r is None:
        raise ValueError("second-moment needs --n, --r and --p")
    p = _resolve_p(args)
    terms = asy.second_moment_terms(args.n, p, args.r)
    summary = asy.second_moment_ratio(args.n, p, args.r)
    f0, bound, holds = asy.f0_bound_check(args.n, args.r)
    out = {
        "n": args.n,
        "p": p,
        "r": args.r,
        "ratio": summary.ratio,
        "log_ratio": summary.log_ratio,
        "f_sum": summary.f_sum,
        "n_terms": summary.n_terms,
        "f0": {"value": f0, "lower_bound": bound, "holds": holds},
    }
    if args.terms_csv:
        _write(asy.terms_to_csv(terms), args.terms_csv)
    _write(_json(out), args.out)
    return EXIT_OK


def cmd_experiment(args) -> int:
    graph = _load_graph(args.graph) if args.graph else None
    config = ExperimentConfig(
        kind=args.kind,
        n=args.n,
        p=args.p,
        r=args.r,
        c=args.c,
        epsilon=args.epsilon,
        trials=args.trials,
        seed=args.seed,
        output_path=args.out,
        format=args.format,
        graph_path=args.graph,
        graph=graph,
        workers=args.workers,
    )
    report = run_experiment(config)
    text = report_to_json(report) if args.format == "json" else report_to_csv(report)
    _write(text, args.out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--n", type=int)
    parser.add_argument("--p", type=float)
    parser.add_argument("--r", type=int)
    parser.add_argument("--c", type=float)
    parser.add_argument("--epsilon", type=float, default=asy.DEFAULT_EPSILON)
    parser.add_argument("--trials", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--out", help="output path (default: stdout)")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--graph", help="graph file (fixed-graph mode)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="raagrand",
        description="Topology of right-angled Artin groups of random graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="sample a G(n, p) graph and print it as an edge list")
    _common(p)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("invariants", help="Betti numbers, cd, cat and TC bounds of a graph file")
    _common(p)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("asymptotics", help="evaluate the closed-form quantities at (n, p, r, epsilon)")
    _common(p)
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("second-moment", help="E[X^2]/E[X]^2 for (r, r) bi-cliques")
    _common(p)
    p.add_argument("--terms-csv", help="also write the per-term table as CSV")
    p.set_defaults(func=cmd_second_moment)

    p = sub.add_parser("experiment", help="run a Monte Carlo experiment")
    p.add_argument("kind", choices=KINDS)
    _common(p)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _IOFailure as exc:
        print(f"raagrand: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValueError, OverflowError) as exc:
        # GraphFormatError and DomainError are ValueErrors
        print(f"raagrand: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"raagrand: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
