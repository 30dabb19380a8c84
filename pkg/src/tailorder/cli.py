"""Command-line interface: one binary, JSON/CSV output, reproducible seeds.

Exit codes are a machine-readable contract for CI: 0 when the verdict is
membership IN / ConsistentWithSD (or the command only emits data), 2 when it
is OUT / ViolationFound (or weights fail to majorize), 3 for UNKNOWN
membership, and 1 for usage or parse errors.  Every output embeds the
resolved configuration and its hash, and identical (argv, seed) reruns are
byte-identical.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .class_h import GridSpec, Membership, analytic_h_membership, hstar_check, numeric_h_check
from .compound import CompoundPoissonSpec, sample_cp
from .distributions import from_spec
from .dominance import (
    QuadratureSpec,
    Verdict,
    exact_two_weight_tail,
    figure_data,
    mc_dominance_test,
    sd_star_test,
)
from .errors import NotMajorizedError, TailOrderError, UnsupportedFamilyError
from .majorization import majorizes, t_transform_chain
from .rng import RngStream
from .stable import StableParams, sample_stable, sd_classification

_SPEC_SCHEMA_HELP = """\
distribution specs are JSON, inline or in a file:
  {"family": "pareto", "params": {"alpha": 1.0}}
zoo families and params:
  pareto(alpha) log_pareto(alpha) inverse_burr(tau, alpha) stoppa(alpha, beta)
  log_cauchy() frechet(alpha) abs_cauchy() inverse_gamma(alpha, beta)
  feller_pareto(gamma, gamma1, gamma2) pointmass(value)
composites nest:
  {"family": "power", "params": {"beta": 2}, "base": ...}
  {"family": "deductible", "params": {"c": 1.0}, "base": ...}
  {"family": "affine", "params": {"scale": 2.0, "shift": 0.0}, "base": ...}
  {"family": "convex", "params": {"map": "power", "p": 2}, "base": ...}
  {"family": "max", "components": [..., ...]}
  {"family": "mixture", "weights": [0.5, 0.5], "components": [..., ...]}
"""

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_UNKNOWN = 3


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract reserves 2 for verdicts."""

    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _load_dist(text: str):
    s = text.strip()
    if s.startswith("{"):
        return from_spec(s)
    return from_spec(Path(s).read_text())


def _floats(text: str) -> list[float]:
    try:
        return [float(tok) for tok in text.split(",") if tok.strip() != ""]
    except ValueError as e:
        raise TailOrderError(f"could not parse float list {text!r}") from e


def _config_hash(config: dict) -> str:
    blob = json.dumps(config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _meta(command: str, config: dict) -> dict:
    return {
        "tool": "tailorder",
        "version": __version__,
        "command": command,
        "config": config,
        "config_hash": _config_hash(config),
    }


def _emit_json(payload: dict, out: str | None):
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _emit_csv(meta: dict, header: list[str], rows, out: str | None):
    lines = ["# " + json.dumps(meta, sort_keys=True, separators=(",", ":"))]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join(repr(float(v)) for v in row))
    text = "\n".join(lines) + "\n"
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_check_h(args) -> int:
    d = _load_dist(args.dist)
    grid = GridSpec(points=args.grid_points)
    config = {
        "dist": d.spec(),
        "grid_points": args.grid_points,
        "hstar": bool(args.hstar),
    }
    result: dict = {}
    if args.hstar:
        verdict = hstar_check(d, grid)
        result["hstar"] = verdict.to_dict()
    else:
        analytic = None
        try:
            analytic = analytic_h_membership(d)
            result["analytic"] = analytic.to_dict()
        except UnsupportedFamilyError:
            result["analytic"] = None
        if analytic is not None and analytic.status is not Membership.UNKNOWN:
            verdict = analytic
        else:
            verdict = numeric_h_check(d, grid)
            result["numeric"] = verdict.to_dict()
    result["status"] = verdict.status.value
    payload = {"meta": _meta("check-h", config), **result}
    _emit_json(payload, args.out)
    return {
        Membership.IN: EXIT_OK,
        Membership.OUT: EXIT_VIOLATION,
        Membership.UNKNOWN: EXIT_UNKNOWN,
    }[verdict.status]


def _cmd_check_sd(args) -> int:
    d = _load_dist(args.dist)
    theta = _floats(args.theta)
    eta = _floats(args.eta)
    config = {
        "dist": d.spec(),
        "theta": theta,
        "eta": eta,
        "n": args.n,
        "delta": args.delta,
        "seed": args.seed,
    }
    report = mc_dominance_test(d, theta, eta, n=args.n, delta=args.delta, rng=RngStream(args.seed))
    payload = {"meta": _meta("check-sd", config), **report.to_dict()}
    _emit_json(payload, args.out)
    return EXIT_OK if report.verdict is Verdict.CONSISTENT else EXIT_VIOLATION


def _cmd_sd_star(args) -> int:
    d = _load_dist(args.dist)
    theta = _floats(args.theta)
    config = {"dist": d.spec(), "theta": theta, "n": args.n, "delta": args.delta, "seed": args.seed}
    report = sd_star_test(d, theta, n=args.n, delta=args.delta, rng=RngStream(args.seed))
    payload = {"meta": _meta("sd-star", config), **report.to_dict()}
    _emit_json(payload, args.out)
    return EXIT_OK if report.verdict is Verdict.CONSISTENT else EXIT_VIOLATION


def _cmd_majorize(args) -> int:
    theta = _floats(args.theta)
    eta = _floats(args.eta)
    config = {"theta": theta, "eta": eta}
    ordered = majorizes(theta, eta)
    payload = {"meta": _meta("majorize", config), "majorized": ordered}
    if ordered:
        chain = t_transform_chain(eta, theta)
        payload["chain"] = [{"i": t.i, "j": t.j, "lam": t.lam} for t in chain]
    _emit_json(payload, args.out)
    return EXIT_OK if ordered else EXIT_VIOLATION


def _cmd_stable_sample(args) -> int:
    params = StableParams(args.alpha, args.beta, args.sigma, args.mu)
    config = {**params.to_dict(), "n": args.n, "seed": args.seed}
    samples = sample_stable(params, RngStream(args.seed), args.n)
    meta = _meta("stable-sample", config)
    meta["sd_classification"] = sd_classification(args.alpha, args.beta)
    _emit_csv(meta, ["sample"], ((v,) for v in samples), args.out)
    return EXIT_OK


def _cmd_cp_sim(args) -> int:
    severity = _load_dist(args.severity)
    spec = CompoundPoissonSpec(args.lam, severity)
    config = {"lambda": args.lam, "severity": severity.spec(), "n": args.n, "seed": args.seed}
    samples = sample_cp(spec, RngStream(args.seed), args.n)
    _emit_csv(_meta("cp-sim", config), ["sample"], ((v,) for v in samples), args.out)
    return EXIT_OK


def _cmd_figure(args) -> int:
    weights = _floats(args.weights)
    if len(weights) != 4:
        raise TailOrderError("--weights needs exactly four numbers a1,a2,b1,b2")
    config = {
        "alpha": args.alpha,
        "beta": args.beta,
        "weights": weights,
        "n": args.n,
        "seed": args.seed,
    }
    table = figure_data(args.alpha, args.beta, weights, n=args.n, seed=args.seed)
    meta = _meta("figure", config)
    meta["min_gap"] = table.min_gap()
    _emit_csv(meta, ["x", "F1", "F2"], table.rows(), args.out)
    return EXIT_OK


def _cmd_exact_tail(args) -> int:
    d = _load_dist(args.dist)
    avals = _floats(args.a)
    config = {"dist": d.spec(), "a": avals, "x": args.x, "tol": args.tol}
    quad = QuadratureSpec(abs_tol=args.tol)
    values = [exact_two_weight_tail(d, a, args.x, quad) for a in avals]
    payload = {"meta": _meta("exact-tail", config), "a": avals, "tail": values}
    if len(avals) == 1:
        payload["value"] = values[0]
    _emit_json(payload, args.out)
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(
        prog="tailorder",
        description="Stochastic-dominance toolkit for infinite-mean risks.",
        epilog=_SPEC_SCHEMA_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-h", help="membership check for a distribution spec")
    p.add_argument("--dist", required=True, help="spec file path or inline JSON")
    p.add_argument("--grid-points", type=int, default=1000)
    p.add_argument("--hstar", action="store_true", help="check the weaker superadditivity class")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_check_h)

    p = sub.add_parser("check-sd", help="Monte-Carlo dominance test for a weight pair")
    p.add_argument("--dist", required=True)
    p.add_argument("--theta", required=True, help="comma list, majorized by eta")
    p.add_argument("--eta", required=True, help="comma list")
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_check_sd)

    p = sub.add_parser("sd-star", help="pooled-versus-diversified Monte-Carlo test")
    p.add_argument("--dist", required=True)
    p.add_argument("--theta", required=True)
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--delta", type=float, default=0.01)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_sd_star)

    p = sub.add_parser("majorize", help="majorization verdict plus averaging chain")
    p.add_argument("--theta", required=True)
    p.add_argument("--eta", required=True)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_majorize)

    p = sub.add_parser("stable-sample", help="draw standard or scaled stable samples")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--sigma", type=float, default=1.0)
    p.add_argument("--mu", type=float, default=0.0)
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_stable_sample)

    p = sub.add_parser("cp-sim", help="simulate compound Poisson aggregates")
    p.add_argument("--lambda", dest="lam", type=float, required=True)
    p.add_argument("--severity", required=True, help="severity spec path or inline JSON")
    p.add_argument("--n", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_cp_sim)

    p = sub.add_parser("figure", help="merged-grid ECDF pair for two weighted |stable| sums")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--beta", type=float, default=0.0)
    p.add_argument("--weights", required=True, help="a1,a2,b1,b2")
    p.add_argument("--n", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_figure)

    p = sub.add_parser("exact-tail", help="exact two-weight combination tail by quadrature")
    p.add_argument("--dist", required=True)
    p.add_argument("--a", required=True, help="weight in (0,1); comma list probes several")
    p.add_argument("--x", type=float, required=True)
    p.add_argument("--tol", type=float, default=1e-8)
    p.add_argument("--out")
    p.set_defaults(func=_cmd_exact_tail)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except (TailOrderError, FileNotFoundError, OSError) as e:
        print(f"tailorder: error: {e}", file=sys.stderr)
        return EXIT_USAGE


def entry():  # console-script target
    raise SystemExit(main())
