"""Command line interface.

Subcommands: aggregate (pool agent network files into a consensus
artifact), query (consensus probability of an event, optionally
conditioned), and check (built-in verification suites).

Exit codes: 0 success, 1 unexpected check outcome, 2 parse or usage
error, 3 variable mismatch across inputs, 4 degenerate CPT during
structured consensus building, 5 zero-probability evidence.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from .axioms import run_axioms_suite, run_examples_suite, run_oracle_suite
from .consensus import linop_query, logop_consensus_bn
from .errors import (
    DegenerateCpt,
    MismatchedVariables,
    ModelFormatError,
    ZeroEvidence,
)
from .inference import query_conditional
from .model_io import (
    LinopManifest,
    align_variables,
    load_model_file,
    load_network,
    manifest_to_dict,
    network_to_dict,
    save_manifest,
    save_network,
)
from .networks import BayesNet, MarkovNet
from .pools import normalize_weights

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_PARSE = 2
EXIT_MISMATCH = 3
EXIT_DEGENERATE = 4
EXIT_ZERO_EVIDENCE = 5


class _UsageError(Exception):
    """Bad literals, weights, or input kinds; maps to exit code 2."""


def _parse_weights(text: str | None) -> tuple[float, ...] | None:
    if text is None:
        return None
    try:
        return tuple(float(part) for part in text.split(","))
    except ValueError as err:
        raise _UsageError(f"bad weight list {text!r}: {err}") from err


def _parse_literals(text: str, labels: Sequence[str]) -> dict[int, bool]:
    index = {label: i for i, label in enumerate(labels)}
    out: dict[int, bool] = {}
    if not text:
        return out
    for item in text.split(","):
        label, sep, value = item.partition("=")
        if not sep or value not in ("0", "1"):
            raise _UsageError(
                f"bad literal {item!r}; expected LABEL=0 or LABEL=1"
            )
        if label not in index:
            raise _UsageError(f"unknown variable {label!r}")
        if index[label] in out:
            raise _UsageError(f"variable {label!r} assigned twice")
        out[index[label]] = value == "1"
    return out


def _load_bayes_inputs(paths: Sequence[str]) -> list[BayesNet]:
    models = []
    for path in paths:
        model = load_network(path)
        if isinstance(model, MarkovNet):
            raise _UsageError(
                f"{path} is a markov network; pooling needs bayes networks "
                f"(structure union for markov inputs is a library operation)"
            )
        models.append(model)
    return [m for m in align_variables(models)]


def _emit(data: dict, out: str | None) -> None:
    text = json.dumps(data, indent=2)
    if out is None:
        print(text)
    else:
        Path(out).write_text(text + "\n")


def cmd_aggregate(args: argparse.Namespace) -> int:
    weights = _parse_weights(args.weights)
    models = _load_bayes_inputs(args.inputs)
    if args.pool == "linop":
        normalized = normalize_weights(weights, len(models))
        manifest = LinopManifest(tuple(args.inputs), tuple(normalized))
        _emit(manifest_to_dict(manifest), args.out)
        return EXIT_OK
    consensus = logop_consensus_bn(
        models,
        weights,
        dense_oracle=args.dense_oracle,
        sources=tuple(args.inputs),
    )
    labels = consensus.bn.labels or tuple(
        f"x{i}" for i in range(consensus.bn.m)
    )
    provenance = {
        "pool": "logop",
        "weights": list(normalize_weights(weights, len(models))),
        "inputs": list(args.inputs),
        "elimination_order": [labels[v] for v in consensus.elimination_order],
        "agent_queries": consensus.agent_queries,
    }
    _emit(network_to_dict(consensus.bn, provenance), args.out)
    return EXIT_OK


def _resolve_query_inputs(
    args: argparse.Namespace,
) -> tuple[list[BayesNet], tuple[float, ...] | None]:
    weights = _parse_weights(args.weights)
    if len(args.inputs) == 1:
        model = load_model_file(args.inputs[0])
        if isinstance(model, LinopManifest):
            if args.pool != "linop":
                raise _UsageError(
                    "a linop manifest can only be queried with --pool linop"
                )
            base = Path(args.inputs[0]).parent
            paths = [str(base / p) for p in model.inputs]
            if weights is None:
                weights = model.weights
            return _load_bayes_inputs(paths), weights
    return _load_bayes_inputs(args.inputs), weights


def cmd_query(args: argparse.Namespace) -> int:
    models, weights = _resolve_query_inputs(args)
    labels = models[0].labels or ()
    event = _parse_literals(args.event, labels)
    evidence = _parse_literals(args.given, labels)
    if not event:
        raise _UsageError("--event must assign at least one variable")
    for var in list(event):
        if var in evidence:
            if event[var] != evidence[var]:
                print(f"{0.0:.6f}")
                return EXIT_OK
            del event[var]
    if not event:
        # event was entirely implied by the evidence
        print(f"{1.0:.6f}")
        return EXIT_OK
    if args.pool == "linop":
        value = linop_query(models, event, evidence, weights)
    else:
        consensus = logop_consensus_bn(
            models, weights, dense_oracle=args.dense_oracle
        )
        value = query_conditional(consensus.bn, event, evidence)
    print(f"{value:.6f}")
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    if args.suite == "examples":
        lines, ok = run_examples_suite()
    elif args.suite == "axioms":
        lines, ok = run_axioms_suite(args.seed, args.trials or 20)
    else:
        lines, ok = run_oracle_suite(args.seed, args.trials or 25)
    for line in lines:
        print(line)
    return EXIT_OK if ok else EXIT_UNEXPECTED


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="beliefpool",
        description=(
            "Pool multiple agents' probabilistic network files into "
            "consensus artifacts and query them."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    agg = sub.add_parser(
        "aggregate",
        help="pool agent networks into a consensus artifact",
    )
    agg.add_argument("inputs", nargs="+", metavar="NETWORK")
    agg.add_argument(
        "--pool", choices=("linop", "logop"), required=True,
        help="arithmetic (linop) or geometric (logop) pooling",
    )
    agg.add_argument(
        "--weights", help="comma-separated agent weights (default: equal)"
    )
    agg.add_argument(
        "--out", help="output file (default: print to stdout)"
    )
    agg.add_argument(
        "--dense-oracle", action="store_true",
        help="parameterize from the dense pooled table instead of queries",
    )
    agg.set_defaults(func=cmd_aggregate)

    qry = sub.add_parser(
        "query", help="consensus probability of an event"
    )
    qry.add_argument("inputs", nargs="+", metavar="NETWORK_OR_MANIFEST")
    qry.add_argument(
        "--pool", choices=("linop", "logop"), required=True,
    )
    qry.add_argument("--weights", help="comma-separated agent weights")
    qry.add_argument(
        "--event", required=True,
        help="comma-separated literals, e.g. A1=1,A2=0",
    )
    qry.add_argument(
        "--given", default="", help="evidence literals, same syntax"
    )
    qry.add_argument(
        "--dense-oracle", action="store_true",
        help="build the logop consensus from the dense pooled table",
    )
    qry.set_defaults(func=cmd_query)

    chk = sub.add_parser("check", help="run a built-in verification suite")
    chk.add_argument(
        "--suite", choices=("examples", "axioms", "oracle"), required=True
    )
    chk.add_argument("--seed", type=int, default=0)
    chk.add_argument(
        "--trials", type=int, default=None,
        help="instances per randomized check (suite-specific default)",
    )
    chk.set_defaults(func=cmd_check)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (_UsageError, ModelFormatError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_PARSE
    except MismatchedVariables as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_MISMATCH
    except DegenerateCpt as err:
        print(
            f"error: {err}\nhint: --dense-oracle parameterizes the consensus "
            f"from the dense pooled table instead",
            file=sys.stderr,
        )
        return EXIT_DEGENERATE
    except ZeroEvidence as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_ZERO_EVIDENCE


if __name__ == "__main__":
    sys.exit(main())
