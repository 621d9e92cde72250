"""Command line interface; every subcommand writes CSV to stdout.

Exit codes: 0 success, 2 argument errors, 3 resource errors.
"""

from __future__ import annotations

import argparse
import csv
import sys
from decimal import Decimal
from pathlib import Path

import numpy as np

from .algebra import rs_code
from .channels import ChannelSpec, ReceivedWord, TypeProfile, popcount
from .errors import NotApplicableError, ResourceError
from .kv import asd_decode, build_matrix
from .mas import BscMas, pmas_assign, sufficient
from .regions import (
    baseline_radii,
    bec_radius,
    bec_radius_oracle,
    bsc_optimal,
    bsc_radius_at,
    mod_radius,
)
from .sim import Strategy, TrialConfig, exact_fer_bec, fer_bounds, qawgn_crossover, run_fer

EXIT_ARGS = 2
EXIT_RESOURCE = 3


class ArgumentError(Exception):
    pass


def parse_grid(text: str) -> list[float]:
    """``start:stop:step`` with ``stop`` included; a single value is a one-point grid."""
    parts = str(text).split(":")
    if len(parts) == 1:
        return [float(parts[0])]
    if len(parts) != 3:
        raise ArgumentError(f"grid must be start:stop:step, got {text!r}")
    start, stop, step = (Decimal(p) for p in parts)
    if step <= 0 or stop < start:
        raise ArgumentError(f"bad grid {text!r}")
    out, x = [], start
    while x <= stop:
        out.append(float(x))
        x += step
    return out


def read_config(path: str) -> dict:
    """Plain ``key=value`` lines; ``#`` starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ArgumentError(f"{path}:{lineno}: expected key=value")
        key, value = line.split("=", 1)
        values[key.strip().lstrip("-").replace("-", "_")] = value.strip()
    return values


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _code(args):
    return rs_code(int(args.n), int(args.k), int(args.m))


def cmd_radius(args, out):
    params = _code(args)
    base = baseline_radii(params)
    flags = []
    gs = None
    if args.channel == "bec":
        r = bec_radius(params)
        asd, bm, branch = r.e_star, base["bm_erasures"], r.branch
    elif args.channel == "bsc":
        sol = bsc_optimal(params)
        asd, bm, gs = sol.d_floor, base["bm_errors"], base["gs_errors"]
        branch = "full_correction" if sol.full_correction else "tangent"
        if not sol.certified:
            flags.append("general_bsc_not_certified")
    elif args.channel == "mod":
        if args.u is None:
            raise ArgumentError("--u is required for --channel mod")
        u = int(args.u)
        bm = base["bm_erasures"]
        try:
            asd, branch = mod_radius(params, u), "closed_form"
        except NotApplicableError:
            asd, branch = bec_radius_oracle(params, u), "lp"
            flags.append("rate_below_threshold")
    else:
        raise ArgumentError(f"unknown channel {args.channel!r}")
    w = _writer(out)
    w.writerow(["n", "k", "m", "channel", "asd_radius", "bm_radius", "gs_radius", "branch", "flags"])
    w.writerow([params.n, params.k, params.m, args.channel, asd, bm, _fmt(gs), branch, ";".join(flags)])


def cmd_sweep_t(args, out):
    params = _code(args)
    grid = parse_grid(f"{args.t_min}:{args.t_max}:{args.t_step}")
    grid = [t for t in grid if t < 1]
    radii = bsc_radius_at(params, np.array(grid))
    w = _writer(out)
    w.writerow(["t", "radius"])
    for t, r in zip(grid, np.atleast_1d(radii)):
        w.writerow([_fmt(t), _fmt(float(r))])


def channel_at(kind: str, value: float, params) -> ChannelSpec:
    """Channel for one grid point.  ``kind`` is ``bec``, ``bsc``,
    ``one_bit_bsc``, ``mod_erasure(u)`` or ``qawgn`` (value in dB Eb/N0)."""
    kind = kind.strip()
    if kind == "qawgn":
        return ChannelSpec.bsc(qawgn_crossover(value, params.rate))
    if kind.startswith("mod_erasure"):
        inner = kind[kind.find("(") + 1: kind.rfind(")")] if "(" in kind else ""
        if not inner:
            raise ArgumentError("mod_erasure needs a group size: mod_erasure(u)")
        return ChannelSpec.mod_erasure(int(inner), value)
    if kind == "one_bit_bsc":
        return ChannelSpec.one_bit_bsc(int(round(value)))
    if kind in ("bec", "bsc"):
        return ChannelSpec(kind, value)
    raise ArgumentError(f"unknown channel {kind!r}")


def cmd_fer(args, out):
    params = _code(args)
    strategy = Strategy.parse(args.strategy)
    w = _writer(out)
    w.writerow(["param", "fer", "ci_lo", "ci_hi", "failures", "trials"])
    for value in parse_grid(args.param_grid):
        cfg = TrialConfig(params, channel_at(args.channel, value, params), strategy,
                          int(args.trials), int(args.seed), args.decoder)
        est = run_fer(cfg, workers=int(args.workers))
        w.writerow([_fmt(value), _fmt(est.fer), _fmt(est.ci_lo), _fmt(est.ci_hi), est.failures, est.trials])


def cmd_bounds(args, out):
    params = _code(args)
    w = _writer(out)
    w.writerow(["eps", "lower", "exact", "upper"])
    for eps in parse_grid(args.param_grid):
        b = fer_bounds(params, eps)
        w.writerow([_fmt(eps), _fmt(b["lower"]), _fmt(exact_fer_bec(params, eps)), _fmt(b["upper"])])


def _parse_hex_word(text: str, n: int, m: int, what: str) -> np.ndarray:
    width = (m + 3) // 4
    text = text.strip().lower().removeprefix("0x")
    if len(text) != n * width:
        raise ArgumentError(f"{what} must have {n * width} hex digits ({width} per symbol)")
    try:
        vals = [int(text[i: i + width], 16) for i in range(0, len(text), width)]
    except ValueError as exc:
        raise ArgumentError(f"{what} is not hex: {exc}") from None
    if max(vals) >= 1 << m:
        raise ArgumentError(f"{what} has a symbol wider than {m} bits")
    return np.array(vals, dtype=np.int64)


def _hex_word(vals, m: int) -> str:
    width = (m + 3) // 4
    return "".join(f"{int(v):0{width}x}" for v in vals)


def cmd_decode(args, out):
    params = _code(args)
    m = params.m
    values = _parse_hex_word(args.received, params.n, m, "--received")
    if args.erasure_mask:
        erased = _parse_hex_word(args.erasure_mask, params.n, m, "--erasure-mask")
    else:
        erased = np.zeros(params.n, dtype=np.int64)
    full = (1 << m) - 1
    mask = full ^ erased
    strategy = Strategy.parse(args.strategy).resolve(params)
    if strategy.kind == "pmas":
        rw = ReceivedWord(values & mask, mask, "bec", m)
        mas = pmas_assign(TypeProfile.from_types(popcount(erased), m), strategy.M)
        reduce = True
    elif strategy.kind in ("bsc_mas", "gs"):
        if erased.any():
            raise ArgumentError(f"{strategy.kind} does not accept erasures")
        rw = ReceivedWord(values, mask, "bsc", m)
        mas = BscMas(0, 1) if strategy.kind == "gs" else BscMas(strategy.t, strategy.m0)
        reduce = False
    else:
        raise ArgumentError(f"decode does not support strategy {strategy}")
    matrix = build_matrix(rw, mas)
    if reduce:
        matrix = matrix.reduced()
    cost = matrix.cost_exact()
    cl = asd_decode(rw, matrix, params, max_cost=int(args.max_cost))
    w = _writer(out)
    w.writerow(["message", "codeword", "score", "cost", "sufficient"])
    for msg, cw, s in zip(cl.messages, cl.codewords, cl.scores):
        w.writerow([_hex_word(msg, m), _hex_word(cw, m), s, cost, str(sufficient(s, cost, params)).lower()])


COMMANDS = {
    "radius": (cmd_radius, ["n", "k", "m", "channel"]),
    "sweep-t": (cmd_sweep_t, ["n", "k", "m", "t_min", "t_max", "t_step"]),
    "fer": (cmd_fer, ["n", "k", "m", "channel", "param_grid", "strategy", "decoder", "trials", "seed"]),
    "bounds": (cmd_bounds, ["n", "k", "m", "param_grid"]),
    "decode": (cmd_decode, ["n", "k", "m", "received", "strategy"]),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rsasd", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="key=value file; command-line flags take precedence")
        p.add_argument("--n", type=int)
        p.add_argument("--k", type=int)
        p.add_argument("--m", type=int)

    p = sub.add_parser("radius", help="guaranteed ASD radius next to BM and GS")
    common(p)
    p.add_argument("--channel", choices=["bec", "bsc", "mod"])
    p.add_argument("--u", type=int)

    p = sub.add_parser("sweep-t", help="1-bit flipped BSC radius against the coefficient t")
    common(p)
    p.add_argument("--t-min", type=float)
    p.add_argument("--t-max", type=float)
    p.add_argument("--t-step", type=float)

    p = sub.add_parser("fer", help="Monte Carlo frame error rate over a parameter grid")
    common(p)
    p.add_argument("--channel")
    p.add_argument("--param-grid")
    p.add_argument("--strategy")
    p.add_argument("--decoder", choices=["oracle", "kv"])
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--workers", type=int)

    p = sub.add_parser("bounds", help="BEC bounds and exact FER under PMAS")
    common(p)
    p.add_argument("--param-grid")

    p = sub.add_parser("decode", help="list-decode one received word")
    common(p)
    p.add_argument("--received")
    p.add_argument("--erasure-mask")
    p.add_argument("--strategy")
    p.add_argument("--max-cost", type=int)
    return parser


DEFAULTS = {"decoder": "oracle", "seed": 0, "workers": 1, "max_cost": 100_000, "strategy": None}


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.config:
            for key, value in read_config(args.config).items():
                if not hasattr(args, key):
                    raise ArgumentError(f"unknown config key {key!r}")
                if getattr(args, key) is None:
                    setattr(args, key, value)
        for key, value in DEFAULTS.items():
            if hasattr(args, key) and getattr(args, key) is None and value is not None:
                setattr(args, key, value)
        func, required = COMMANDS[args.command]
        missing = [r for r in required if getattr(args, r, None) is None]
        if missing:
            raise ArgumentError("missing " + ", ".join("--" + r.replace("_", "-") for r in missing))
        func(args, out)
    except ResourceError as exc:
        print(f"rsasd: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ArgumentError, ValueError) as exc:
        print(f"rsasd: {exc}", file=sys.stderr)
        return EXIT_ARGS
    return 0


if __name__ == "__main__":
    sys.exit(main())
