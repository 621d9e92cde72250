"""Frame error rate: Monte Carlo trials, exact probabilities and bounds.

The ``oracle`` decoder counts a frame as lost when the sufficient condition
fails in the infinite-cost limit (cost taken as the quadratic
approximation), which is the quantity the radius analysis describes.  The
``kv`` decoder runs the list decoder of :mod:`rsasd.kv` on every trial and
counts a loss when the transmitted message is missing from the list.

Trials are generated in fixed-size blocks; block ``b`` draws from
``make_rng(seed, b)``.  Results therefore do not depend on how blocks are
spread over worker processes.
"""

from __future__ import annotations

import itertools
import math
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from scipy import special, stats

from .algebra import CodeParams, encode_batch, erasure_decode
from .channels import ChannelSpec, FLIP_KINDS, ReceivedWord, TypeProfile, make_rng, popcount, transmit_batch
from .errors import DecodingFailure, ResourceError
from .kv import DEFAULT_MAX_COST, asd_decode
from .mas import BscMas, bsc_verdict, pmas_assign
from .regions import bec_radius, bec_undecodable_bound, certified_bsc_coefficient, gs_radius

BLOCK_SIZE = 4096
MAX_DP_STATES = 10 ** 7


@dataclass(frozen=True)
class Strategy:
    """Multiplicity strategy or baseline decoder.

    Text form: ``pmas(M)``, ``bsc_mas(t,m0)``, ``bsc_opt`` / ``bsc_opt(m0)``,
    ``gs``, ``bm_baseline``.
    """

    kind: str
    M: int = 16
    t: Fraction = Fraction(0)
    m0: int = 100

    @classmethod
    def parse(cls, text: str) -> "Strategy":
        text = text.strip()
        match = re.fullmatch(r"(\w+)\s*(?:\(([^)]*)\))?", text)
        if not match:
            raise ValueError(f"cannot parse strategy {text!r}")
        kind = match.group(1)
        args = [a.strip() for a in (match.group(2) or "").split(",") if a.strip()]
        if kind == "pmas":
            return cls("pmas", M=int(args[0]) if args else 16)
        if kind == "bsc_mas":
            if not args:
                raise ValueError("bsc_mas needs a coefficient: bsc_mas(t[,m0])")
            return cls("bsc_mas", t=Fraction(args[0]), m0=int(args[1]) if len(args) > 1 else 100)
        if kind == "bsc_opt":
            return cls("bsc_opt", m0=int(args[0]) if args else 100)
        if kind in ("gs", "bm_baseline", "bm"):
            if args:
                raise ValueError(f"{kind} takes no arguments")
            return cls("bm_baseline" if kind == "bm" else kind)
        raise ValueError(f"unknown strategy {kind!r}")

    def resolve(self, params: CodeParams) -> "Strategy":
        """Replace ``bsc_opt`` by the concrete ``bsc_mas`` coefficient."""
        if self.kind == "bsc_opt":
            return Strategy("bsc_mas", t=certified_bsc_coefficient(params), m0=self.m0)
        return self

    def __str__(self) -> str:
        if self.kind == "pmas":
            return f"pmas({self.M})"
        if self.kind == "bsc_mas":
            return f"bsc_mas({self.t},{self.m0})"
        if self.kind == "bsc_opt":
            return f"bsc_opt({self.m0})"
        return self.kind


@dataclass(frozen=True)
class TrialConfig:
    params: CodeParams
    channel: ChannelSpec
    strategy: Strategy
    trials: int
    seed: int = 0
    decoder: str = "oracle"
    max_cost: int = DEFAULT_MAX_COST
    # kv + pmas: divide the PMAS matrix by its gcd before interpolating
    reduce: bool = True

    def __post_init__(self):
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if self.decoder not in ("oracle", "kv"):
            raise ValueError(f"decoder must be 'oracle' or 'kv', got {self.decoder!r}")
        if self.decoder == "kv" and self.params.m > 8:
            raise ValueError("the kv decoder is limited to m <= 8")
        self.channel.check(self.params.m, self.params.n)
        kind = self.strategy.kind
        flip = self.channel.kind in FLIP_KINDS
        if kind == "pmas" and flip:
            raise ValueError("pmas is defined for erasure channels only")
        if kind in ("bsc_mas", "bsc_opt", "gs") and not flip:
            raise ValueError(f"{kind} is defined for bit-flip channels only")


@dataclass(frozen=True)
class FerEstimate:
    failures: int
    trials: int
    fer: float
    ci_lo: float
    ci_hi: float
    anomalies: int = 0


def wilson_interval(failures: int, trials: int, z: float = 1.959963984540054) -> tuple[float, float]:
    """Wilson score interval for a binomial proportion."""
    if trials <= 0:
        raise ValueError("trials must be positive")
    p = failures / trials
    denom = 1 + z * z / trials
    centre = (p + z * z / (2 * trials)) / denom
    half = z * math.sqrt(p * (1 - p) / trials + z * z / (4 * trials * trials)) / denom
    return max(0.0, centre - half), min(1.0, centre + half)


def qawgn_crossover(ebn0_db, rate: float):
    """Crossover probability of BPSK over AWGN with hard decisions, ``Q(sqrt(2 R Eb/N0))``."""
    ebn0 = 10.0 ** (np.asarray(ebn0_db, dtype=float) / 10.0)
    p = 0.5 * special.erfc(np.sqrt(rate * ebn0))
    return float(p) if p.ndim == 0 else p


# -- per-block trial evaluation ---------------------------------------------


def _bsc_ok_table(params: CodeParams, t: Fraction) -> np.ndarray:
    """``ok[e1, e2]``: verdict with e1 one-bit and e2 multi-bit symbols."""
    n, k, m = params.n, params.k, params.m
    ok = np.zeros((n + 1, n + 1), dtype=bool)
    for e1 in range(n + 1):
        for e2 in range(n + 1 - e1):
            ok[e1, e2] = bsc_verdict(n - e1 - e2, e1, n, m, k, t)
    return ok


def _oracle_failures(cfg: TrialConfig, strat: Strategy, types: np.ndarray) -> np.ndarray:
    params = cfg.params
    k, m = params.k, params.m
    if strat.kind == "pmas":
        eta_units = (np.int64(1) << (m - types)).sum(axis=1)
        return eta_units < ((k - 1) << m)
    return _radius_failures(cfg, strat, types)


def _radius_failures(cfg: TrialConfig, strat: Strategy, types: np.ndarray) -> np.ndarray:
    params = cfg.params
    n, k = params.n, params.k
    hit = (types > 0).sum(axis=1)
    if strat.kind == "bm_baseline":
        if cfg.channel.kind in FLIP_KINDS:
            return hit > (n - k) // 2
        return hit > n - k
    if strat.kind == "gs":
        return hit > gs_radius(params)
    if strat.kind == "bsc_mas":
        ok = _bsc_ok_table(params, strat.t)
        e1 = (types == 1).sum(axis=1)
        e2 = (types >= 2).sum(axis=1)
        return ~ok[e1, e2]
    raise ValueError(f"no radius rule for {strat.kind}")


def _kv_trial(cfg: TrialConfig, strat: Strategy, msg, cw, values, mask, types) -> bool:
    """True when the transmitted message is missing from the decoder's list."""
    params = cfg.params
    rw = ReceivedWord(values, mask, cfg.channel.kind, params.m)
    if strat.kind == "bm_baseline":
        if cfg.channel.kind in FLIP_KINDS:
            return bool((types > 0).sum() > (params.n - params.k) // 2)
        try:
            out = erasure_decode(values, mask != (1 << params.m) - 1, params)
        except DecodingFailure:
            return True
        return not np.array_equal(out, msg)
    if strat.kind == "pmas":
        mas = pmas_assign(TypeProfile.from_types(types, params.m), strat.M)
        cl = asd_decode(rw, mas, params, reduce=cfg.reduce, max_cost=cfg.max_cost)
    elif strat.kind == "gs":
        cl = asd_decode(rw, BscMas(0, 1), params, max_cost=cfg.max_cost)
    else:
        cl = asd_decode(rw, BscMas(strat.t, strat.m0), params, max_cost=cfg.max_cost)
    return msg not in cl


def _run_block(cfg: TrialConfig, block: int) -> tuple[int, int, int]:
    params = cfg.params
    start = block * BLOCK_SIZE
    size = min(BLOCK_SIZE, cfg.trials - start)
    rng = make_rng(cfg.seed, block)
    msgs = rng.integers(0, params.q, size=(size, params.k))
    cws = encode_batch(msgs, params)
    values, masks = transmit_batch(cws, cfg.channel, rng, params.m)
    if cfg.channel.kind in FLIP_KINDS:
        types = popcount(values ^ cws)
    else:
        types = popcount(((1 << params.m) - 1) ^ masks)
    strat = cfg.strategy.resolve(params)
    if cfg.decoder == "oracle":
        fails = _oracle_failures(cfg, strat, types)
        return int(fails.sum()), size, 0
    failures = anomalies = 0
    for i in range(size):
        try:
            failures += _kv_trial(cfg, strat, msgs[i], cws[i], values[i], masks[i], types[i])
        except ResourceError:
            anomalies += 1
    return failures, size, anomalies


def _run_block_star(args):
    return _run_block(*args)


def run_fer(cfg: TrialConfig, workers: int = 1) -> FerEstimate:
    """Estimate the frame error rate; identical output for any ``workers``."""
    blocks = range(math.ceil(cfg.trials / BLOCK_SIZE))
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            parts = list(pool.map(_run_block_star, [(cfg, b) for b in blocks]))
    else:
        parts = [_run_block(cfg, b) for b in blocks]
    failures = sum(p[0] for p in parts)
    trials = sum(p[1] for p in parts)
    anomalies = sum(p[2] for p in parts)
    lo, hi = wilson_interval(failures, trials)
    return FerEstimate(failures, trials, failures / trials, lo, hi, anomalies)


# -- exact probabilities ----------------------------------------------------


def _symbol_type_probs(m: int, eps: float) -> np.ndarray:
    i = np.arange(m + 1)
    return special.comb(m, i) * eps ** i * (1 - eps) ** (m - i)


def exact_fer_bec(params: CodeParams, eps: float) -> float:
    """P(eta < K - 1) under PMAS on the BEC, by convolution over eta.

    eta is tracked in integer units of ``2**-m``; every symbol independently
    has ``Binomial(m, eps)`` erased bits.
    """
    n, k, m = params.n, params.k, params.m
    size = n * (1 << m) + 1
    if size > MAX_DP_STATES:
        raise ResourceError(f"state space {size} exceeds {MAX_DP_STATES}")
    probs = _symbol_type_probs(m, eps)
    weights = [1 << (m - i) for i in range(m + 1)]
    dist = np.zeros(size)
    dist[0] = 1.0
    top = 0
    for _ in range(n):
        new = np.zeros(size)
        for p, w in zip(probs, weights):
            if p:
                new[w: top + w + 1] += p * dist[: top + 1]
        dist = new
        top += 1 << m
    return float(min(1.0, dist[: (k - 1) << m].sum()))


def exact_fer_bec_enumerated(params: CodeParams, eps: float) -> float:
    """Same quantity by summing multinomial probabilities over type compositions.

    Exponential in ``m``; meant as a cross-check for small codes.
    """
    n, k, m = params.n, params.k, params.m
    logp = [math.log(p) if p > 0 else -math.inf for p in _symbol_type_probs(m, eps)]
    total = 0.0
    for cut in itertools.combinations(range(n + m), m):
        a = [cut[0]] + [cut[i] - cut[i - 1] - 1 for i in range(1, m)] + [n + m - 1 - cut[-1]]
        eta = sum(Fraction(c, 1 << i) for i, c in enumerate(a))
        if eta >= k - 1:
            continue
        if any(c and logp[i] == -math.inf for i, c in enumerate(a)):
            continue
        lg = math.lgamma(n + 1) - sum(math.lgamma(c + 1) for c in a)
        lg += sum(c * logp[i] for i, c in enumerate(a) if c)
        total += math.exp(lg)
    return total


def bm_fer_bec(params: CodeParams, eps: float) -> float:
    """Symbol-erasure decoding on the BEC: lost when more than N-K symbols are touched."""
    p_sym = -math.expm1(params.m * math.log1p(-eps)) if eps < 1 else 1.0
    return float(stats.binom.sf(params.n - params.k, params.n, p_sym))


def fer_bounds(params: CodeParams, eps: float) -> dict:
    """Radius-tail upper bound and touched-symbol lower bound for PMAS on the BEC."""
    n, m = params.n, params.m
    bound = bec_undecodable_bound(params)
    e_star = bec_radius(params).e_star
    p_sym = -math.expm1(m * math.log1p(-eps)) if eps < 1 else 1.0
    return {
        "upper": float(stats.binom.sf(e_star, n * m, eps)),
        "lower": float(stats.binom.sf(bound, n, p_sym)),
    }


def exact_fer_flip(params: CodeParams, p: float, strategy: Strategy) -> float:
    """Exact FER on the BSC for the radius/oracle rules of ``run_fer``."""
    n, k, m = params.n, params.k, params.m
    strat = strategy.resolve(params)
    p_clean = (1 - p) ** m
    p_sym = -math.expm1(m * math.log1p(-p)) if p < 1 else 1.0
    if strat.kind == "gs":
        return float(stats.binom.sf(gs_radius(params), n, p_sym))
    if strat.kind == "bm_baseline":
        return float(stats.binom.sf((n - k) // 2, n, p_sym))
    if strat.kind != "bsc_mas":
        raise ValueError(f"{strat.kind} is not a bit-flip strategy")
    p1 = m * p * (1 - p) ** (m - 1)
    p2 = max(0.0, 1.0 - p_clean - p1)
    ok = _bsc_ok_table(params, strat.t)
    e1, e2 = np.meshgrid(np.arange(n + 1), np.arange(n + 1), indexing="ij")
    e0 = n - e1 - e2
    valid = e0 >= 0
    probs = np.zeros_like(e1, dtype=float)
    x = np.stack([e0[valid], e1[valid], e2[valid]], axis=1)
    probs[valid] = stats.multinomial.pmf(x, n, [p_clean, p1, p2])
    return float(probs[valid & ~ok].sum())
