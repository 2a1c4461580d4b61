"""``geodiv`` command-line interface.

Exit codes: 0 success, 1 selftest failure, 2 invalid input, 3 a quadrature
or iterative solver did not converge (the report is still printed).
"""

import argparse
import json
import logging
import math
import os
import sys
from datetime import datetime, timezone

from . import classical, manyparty, quantum, simplex
from .config import OptimizerConfig, QuadratureConfig
from .errors import GeodivError, NotConverged, QuadratureNotConverged
from .selftest import SUITES, failure_record, format_table, run_selftest
from .states import load_state

log = logging.getLogger("geodiv")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CONVERGENCE = 0, 1, 2, 3

SIMPLEX_KINDS = {"kl", "canonical", "dual"}
QUANTUM_KINDS = {"qre", "canonical-q", "dual-q"}

QUANTITY = {
    "kl": "kl",
    "canonical": "canonical_divergence_simplex",
    "dual": "dual_divergence_simplex",
    "qre": "quantum_relative_entropy",
    "canonical-q": "canonical_divergence_quantum",
    "dual-q": "dual_divergence_quantum",
}


class InputError(Exception):
    pass


def _emit(report: dict, no_timestamp: bool) -> None:
    if not no_timestamp:
        report["timestamp"] = datetime.now(timezone.utc).isoformat(timespec="seconds")
    print(json.dumps(report))


def _report(quantity, value, config, oracle=None, **extra) -> dict:
    rep = {"quantity": quantity, "value": value}
    if oracle is not None:
        rep["oracle"] = oracle
        rep["abs_error"] = abs(value - oracle)
    rep.update({k: v for k, v in extra.items() if v is not None})
    rep["config"] = config
    return rep


def _weights(state, flag):
    if state.kind not in ("simplex", "joint"):
        raise InputError(f"{flag}: expected a simplex or joint state, got {state.kind}")
    return state.flat


def _density(state, flag):
    if state.kind not in ("density", "multiqubit"):
        raise InputError(f"{flag}: expected a density or multiqubit state, got {state.kind}")
    return state.data


def cmd_divergence(args) -> int:
    cfg = QuadratureConfig(base_points=args.points, tolerance=args.tol)
    a, b = load_state(args.a), load_state(args.b)
    config = {
        "command": "divergence",
        "kind": args.kind,
        "a": str(args.a),
        "b": str(args.b),
        "tol": args.tol,
        "points": args.points,
        "compare_oracle": args.compare_oracle,
    }
    if args.kind in SIMPLEX_KINDS:
        p, q = _weights(a, "--a"), _weights(b, "--b")
        funcs = {
            "kl": (lambda: simplex.kl(p, q), lambda: simplex.canonical_divergence_simplex(p, q, cfg)),
            "canonical": (lambda: simplex.canonical_divergence_simplex(p, q, cfg), lambda: simplex.kl(p, q)),
            "dual": (lambda: simplex.dual_divergence_simplex(p, q, cfg), lambda: simplex.kl(q, p)),
        }
    else:
        r1, r2 = _density(a, "--a"), _density(b, "--b")
        qre = quantum.quantum_relative_entropy
        funcs = {
            "qre": (lambda: qre(r1, r2), lambda: quantum.canonical_divergence_quantum(r1, r2, cfg)),
            "canonical-q": (lambda: quantum.canonical_divergence_quantum(r1, r2, cfg), lambda: qre(r1, r2)),
            "dual-q": (lambda: quantum.dual_divergence_quantum(r1, r2, cfg), lambda: qre(r2, r1)),
        }
    value_fn, oracle_fn = funcs[args.kind]
    value = value_fn()
    oracle = oracle_fn() if args.compare_oracle else None
    _emit(_report(QUANTITY[args.kind], value, config, oracle), args.no_timestamp)
    return EXIT_OK


def _load_family(words, n):
    name = words[0]
    if name in ("singletons", "pairs"):
        if len(words) != 1:
            raise InputError(f"--family {name} takes no file")
        return classical.singletons(n) if name == "singletons" else classical.pairs(n)
    if name == "subsets":
        if len(words) != 2:
            raise InputError("--family subsets needs a FILE")
        try:
            with open(words[1]) as fh:
                doc = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read subsets file: {exc}") from exc
        subsets = doc.get("subsets") if isinstance(doc, dict) else doc
        if not isinstance(subsets, list) or not all(isinstance(s, list) for s in subsets):
            raise InputError("subsets file must hold a list of site-index lists")
        return subsets
    raise InputError(f"unknown family {name!r} (singletons, pairs, subsets FILE)")


def cmd_complexity(args) -> int:
    state = load_state(args.state)
    unit = math.log(2) if args.bits else 1.0
    config = {
        "command": "complexity",
        "mode": "classical" if args.classical else "quantum",
        "state": str(args.state),
        "max_iter": args.max_iter,
        "bits": args.bits,
    }
    if args.classical:
        if state.kind != "joint":
            raise InputError(f"--classical needs a joint state, got {state.kind}")
        if args.family is None:
            raise InputError("--classical needs --family")
        p = state.data
        family = _load_family(args.family, p.ndim)
        tol = 1e-9 if args.tol is None else args.tol
        cfg = OptimizerConfig(tolerance=tol, max_iterations=args.max_iter)
        config.update(family=args.family, tol=tol)
        oracle = classical.multi_information(p) if args.family[0] == "singletons" else None
        quantity = "complexity_classical"

        def run():
            return classical.complexity_classical(p, family, cfg)

        def unpack(rep):
            return rep.divergence, rep.iterations, rep.residual
    else:
        rho = _density(state, "--state")
        if args.k is None:
            raise InputError("--quantum needs --k")
        tol = 1e-7 if args.tol is None else args.tol
        cfg = OptimizerConfig(tolerance=tol, max_iterations=args.max_iter)
        config.update(k=args.k, tol=tol)
        oracle = manyparty.quantum_multi_information(rho) if args.k == 1 else None
        quantity = "many_party_correlation"

        def run():
            return manyparty.many_party_correlation(rho, args.k, cfg)

        def unpack(rep):
            return rep.divergence, rep.iterations, rep.gradient_residual

    code = EXIT_OK
    try:
        rep = run()
    except NotConverged as exc:
        log.error("%s", exc)
        if exc.report is None:
            raise
        rep, code = exc.report, EXIT_CONVERGENCE
    value, iterations, residual = unpack(rep)
    report = _report(
        quantity,
        value / unit,
        config,
        None if oracle is None else oracle / unit,
        iterations=iterations,
        residual=residual,
    )
    report["unit"] = "bits" if args.bits else "nats"
    _emit(report, args.no_timestamp)
    return code


def cmd_selftest(args) -> int:
    if args.trials is not None and args.trials < 0:
        raise InputError("--trials must be non-negative")
    results = run_selftest(seed=args.seed, trials=args.trials, only=args.suite)
    print(format_table(results))
    failures = [failure_record(r.name, c) for r in results for c in r.checks if not c.passed]
    if failures:
        print(f"{len(failures)} failing case(s):", file=sys.stderr)
        for rec in failures:
            print(json.dumps(rec), file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="geodiv", description="Canonical divergences and complexity measures.")
    sub = parser.add_subparsers(dest="command", required=True)

    div = sub.add_parser("divergence", help="divergence between two states")
    div.add_argument("--kind", required=True, choices=sorted(SIMPLEX_KINDS | QUANTUM_KINDS))
    div.add_argument("--a", required=True, help="first state file")
    div.add_argument("--b", required=True, help="second state file")
    div.add_argument("--tol", type=float, default=QuadratureConfig.tolerance)
    div.add_argument("--points", type=int, default=QuadratureConfig.base_points)
    div.add_argument("--compare-oracle", action="store_true")
    div.add_argument("--no-timestamp", action="store_true")
    div.set_defaults(func=cmd_divergence)

    cx = sub.add_parser("complexity", help="distance to an exponential or Gibbs family")
    mode = cx.add_mutually_exclusive_group(required=True)
    mode.add_argument("--classical", action="store_true")
    mode.add_argument("--quantum", action="store_true")
    cx.add_argument("--state", required=True)
    cx.add_argument("--family", nargs="+", metavar="NAME", help="singletons | pairs | subsets FILE")
    cx.add_argument("--k", type=int)
    cx.add_argument("--tol", type=float)
    cx.add_argument("--max-iter", type=int, default=OptimizerConfig.max_iterations)
    cx.add_argument("--bits", action="store_true", help="report in bits instead of nats")
    cx.add_argument("--no-timestamp", action="store_true")
    cx.set_defaults(func=cmd_complexity)

    st = sub.add_parser("selftest", help="run the seeded oracle suites")
    st.add_argument("--seed", type=int, default=0)
    st.add_argument("--trials", type=int, help="random cases per suite (default: per-suite)")
    st.add_argument("--suite", action="append", choices=[name for name, _, _ in SUITES])
    st.set_defaults(func=cmd_selftest)
    return parser


def _configure_logging():
    level = os.environ.get("GEODIV_LOG", "error").lower()
    levels = {"error": logging.ERROR, "info": logging.INFO, "debug": logging.DEBUG}
    logging.basicConfig(level=levels.get(level, logging.ERROR), format="%(levelname)s %(name)s: %(message)s")


def main(argv=None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (QuadratureNotConverged, NotConverged) as exc:
        print(f"geodiv: {exc}", file=sys.stderr)
        return EXIT_CONVERGENCE
    except (InputError, GeodivError, OSError, ValueError) as exc:
        print(f"geodiv: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
