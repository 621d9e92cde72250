"""Guaranteed decoding radii of ASD and of the classical baselines.

Radius convention: the radius is the largest error/erasure count ``e`` such
that every pattern of weight ``e`` still passes the sufficient condition
(equality counts as decodable).

Erasure radii come from closed forms where they apply and from an exact
search over symbol-type compositions otherwise.  The search keeps the
sum of ``2**-i`` weights in integer units of ``2**-m`` so boundary patterns
that sit exactly at ``eta == K - 1`` are judged exactly.
"""

from __future__ import annotations

import decimal
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import isqrt

import numpy as np

from .algebra import CodeParams
from .errors import NotApplicableError

_BIG = np.iinfo(np.int64).max // 4


def _nkm(params: CodeParams) -> tuple[int, int, int]:
    return params.n, params.k, params.m


@dataclass(frozen=True)
class WorstCasePattern:
    """Number of symbols of each type (index = erased/flipped bits or events)."""

    counts: tuple[int, ...]
    channel: str

    @property
    def weight(self) -> int:
        return sum(i * c for i, c in enumerate(self.counts))

    def eta(self, unit_bits: int = 1) -> Fraction:
        return sum((Fraction(c, 1 << (i * unit_bits)) for i, c in enumerate(self.counts)), Fraction(0))


@dataclass(frozen=True)
class BecRadius:
    e_star: int
    e1_star: int
    e2_star: int
    branch: str
    pattern: WorstCasePattern = field(repr=False)


# -- erasure channels -------------------------------------------------------


@lru_cache(maxsize=32)
def min_eta_table(n: int, m: int, u: int = 1) -> np.ndarray:
    """``table[e]`` = least ``eta * 2**m`` over all words with ``e`` erasure events.

    An event erases ``u`` aligned bits, so a symbol holds 0..m/u events and a
    symbol with ``i`` events contributes ``2**(m - i*u)``.  Exact min-plus
    dynamic program over symbols; covers every composition.
    """
    if m % u:
        raise ValueError(f"u={u} does not divide m={m}")
    levels = m // u
    weights = [1 << (m - i * u) for i in range(levels + 1)]
    best = np.full(n * levels + 1, _BIG, dtype=np.int64)
    best[0] = 0
    for j in range(1, n + 1):
        new = np.full_like(best, _BIG)
        top = j * levels
        for i, w in enumerate(weights):
            # place i events in symbol j on top of j-1 symbols
            prev = best[: top - i + 1]
            cand = np.where(prev < _BIG, prev + w, _BIG)
            np.minimum(new[i: top + 1], cand, out=new[i: top + 1])
        best = new
    best.flags.writeable = False
    return best


def bec_radius_oracle(params: CodeParams, u: int = 1) -> int:
    """Exact guaranteed radius in erasure events (bits when ``u == 1``).

    Smallest event count with some undecodable composition, minus one.
    """
    n, k, m = _nkm(params)
    table = min_eta_table(n, m, u)
    need = (k - 1) << m
    bad = np.nonzero(table < need)[0]
    return int(bad[0]) - 1 if bad.size else len(table) - 1


def worst_pattern_bec(params: CodeParams, e: int) -> WorstCasePattern:
    """Bit erasures spread as evenly as possible over the symbols."""
    n, _, m = _nkm(params)
    if not 0 <= e <= n * m:
        raise ValueError(f"erasure count must lie in [0, {n * m}], got {e}")
    lo, r = divmod(e, n)
    counts = [0] * (m + 1)
    counts[lo] += n - r
    if r:
        counts[lo + 1] += r
    return WorstCasePattern(tuple(counts), "bec")


def bec_radius(params: CodeParams) -> BecRadius:
    """Bit-erasure radius under PMAS.

    ``2(N-K+1)`` for ``K >= N/2 + 1``; ``3N - 4(K-1)`` for
    ``N/4 + 1 <= K <= N/2 + 1``; exact search below that.
    """
    n, k, m = _nkm(params)
    if 2 * (k - 1) >= n:
        e1, e2, branch = 2 * (n - k + 1), 0, "high_rate"
    elif 4 * (k - 1) >= n and m >= 2:
        e1, e2, branch = 4 * (k - 1) - n, 2 * (n - 2 * (k - 1)), "mid_rate"
    else:
        e = bec_radius_oracle(params)
        pattern = worst_pattern_bec(params, e)
        c = pattern.counts
        return BecRadius(e, c[1] if m >= 1 else 0, c[2] if m >= 2 else 0, "lp", pattern)
    e = e1 + 2 * e2
    return BecRadius(e, e1, e2, branch, worst_pattern_bec(params, e))


def bec_undecodable_bound(params: CodeParams) -> int:
    """Touched-symbol count beyond which the sufficient condition always fails.

    Only defined for rate ``>= 1/2 + 1/N``.
    """
    n, k, _ = _nkm(params)
    if 2 * (k - 1) < n:
        raise NotApplicableError(f"RS({n},{k}) has rate below 1/2 + 1/N")
    return 2 * (n - k + 1)


def mod_radius(params: CodeParams, u: int) -> int:
    """Guaranteed erasure-event radius with ``u`` bits per modulation symbol."""
    n, k, m = _nkm(params)
    if u < 1 or m % u:
        raise ValueError(f"u={u} must divide m={m}")
    if (k - 1) << u < n:
        raise NotApplicableError(f"RS({n},{k}) has rate below 2^-{u} + 1/N")
    return ((n - k + 1) << u) // ((1 << u) - 1)


# -- 1-bit flipped BSC ------------------------------------------------------


@dataclass(frozen=True)
class BscRadiusSolution:
    delta: int
    x0: float
    y0: float
    d: float
    d_floor: int
    d_tilde: float
    t_star: float
    full_correction: bool
    # t* <= 1/2: the radius also holds for the unrestricted BSC
    certified: bool


def bsc_radius_at(params: CodeParams, t):
    """Bit radius on the 1-bit flipped BSC for a fixed coefficient ``0 <= t < 1``.

    Accepts a scalar or an array of coefficients.
    """
    n, k, m = _nkm(params)
    t_arr = np.asarray(t, dtype=float)
    if (t_arr < 0).any() or (t_arr >= 1).any():
        raise ValueError("coefficient must lie in [0, 1)")
    r = (n - np.sqrt(n * (k - 1) * (1 + m * t_arr ** 2))) / (1 - t_arr)
    return float(r) if r.ndim == 0 else r


def bsc_errors_decodable(params: CodeParams, e: int) -> bool:
    """Whether some ``t`` in ``[0, 1]`` certifies every ``e``-error 1-bit pattern.

    Exact: maximises ``(N - e + e t)^2 - N(K-1)(1 + m t^2)`` over the interval.
    """
    n, k, m = _nkm(params)
    if not 0 <= e <= n:
        return False
    a = Fraction(e * e - n * (k - 1) * m)
    b = Fraction(2 * e * (n - e))
    c = Fraction((n - e) ** 2 - n * (k - 1))
    best = max(c, a + b + c)
    if a < 0:
        tv = -b / (2 * a)
        if 0 <= tv <= 1:
            best = max(best, c - b * b / (4 * a))
    return best >= 0


def _dec_sqrt(x: int) -> decimal.Decimal:
    r = isqrt(x)
    if r * r == x:
        return decimal.Decimal(r)
    return decimal.Decimal(x).sqrt()


def bsc_optimal(params: CodeParams) -> BscRadiusSolution:
    """Optimal two-level coefficient and radius on the 1-bit flipped BSC.

    The optimum is where the line through ``(1, N)`` is tangent to
    ``y^2 / (N(K-1)) - m x^2 = 1``.  ``x0`` is computed as
    ``(N-K+1) / (m(K-1) + sqrt(Delta))``, the rationalised form of the
    textbook root, which stays finite when ``m^2 (K-1) = m N``.
    """
    n, k, m = _nkm(params)
    if k < 2:
        raise ValueError("need K >= 2")
    r = n - k + 1
    delta = (m * (k - 1)) ** 2 + r * (m * m * (k - 1) - m * n)
    d_tilde = n * r / (n + k - 1)
    if n >= (k - 1) * (1 + m):
        y0 = float(np.sqrt(n * (k - 1) * (1 + m)))
        return BscRadiusSolution(delta, 1.0, y0, float(n), n, d_tilde, 1.0, True, False)
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        D = decimal.Decimal
        x0 = D(r) / (D(m * (k - 1)) + _dec_sqrt(delta))
        d = D(n * m) * x0 / (D(m) * x0 + 1)
        y0 = D(n) - d * (1 - x0)
        guess = int(d.to_integral_value(rounding=decimal.ROUND_FLOOR))
    # exact substitution settles values that land within rounding of an integer
    passing = [e for e in (guess - 1, guess, guess + 1) if bsc_errors_decodable(params, e)]
    d_floor = max(passing) if passing else guess
    return BscRadiusSolution(
        delta=delta,
        x0=float(x0),
        y0=float(y0),
        d=float(d),
        d_floor=d_floor,
        d_tilde=d_tilde,
        t_star=float(x0),
        full_correction=False,
        certified=x0 <= D(1) / 2,
    )


def certified_bsc_coefficient(params: CodeParams) -> Fraction:
    """Best coefficient for the unrestricted BSC: ``t*`` capped at 1/2.

    The radius ``e(t)`` increases up to ``t*``, so the cap is the best ``t``
    for which spreading errors over distinct symbols is the worst case.
    """
    sol = bsc_optimal(params)
    if sol.full_correction or sol.t_star > 0.5:
        return Fraction(1, 2)
    return Fraction(sol.t_star).limit_denominator(10 ** 6)


def two_level_score(n: int, single: int, double: int, t) -> Fraction:
    """Score in units of ``m0`` with ``single`` one-bit and ``double`` two-bit symbols."""
    return (n - single - double) + Fraction(t) * single


def worst_pattern_bsc(params: CodeParams, e: int, t) -> WorstCasePattern:
    """``e`` flipped bits in ``e`` distinct symbols; valid for ``t <= 1/2``."""
    n, _, m = _nkm(params)
    if Fraction(t) > Fraction(1, 2):
        raise NotApplicableError("spreading is only the worst case for t <= 1/2")
    if not 0 <= e <= n:
        raise ValueError(f"error count must lie in [0, {n}], got {e}")
    counts = [0] * (m + 1)
    counts[0] = n - e
    if m >= 1:
        counts[1] += e
    return WorstCasePattern(tuple(counts), "bsc")


# -- baselines --------------------------------------------------------------


def gs_radius(params: CodeParams) -> int:
    n, k, _ = _nkm(params)
    return n - 1 - isqrt(n * (k - 1))


def baseline_radii(params: CodeParams) -> dict:
    n, k, _ = _nkm(params)
    return {
        "bm_errors": (n - k) // 2,
        "bm_erasures": n - k,
        "gs_errors": gs_radius(params),
    }
