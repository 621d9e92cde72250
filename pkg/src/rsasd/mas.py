"""Multiplicity assignment, score/cost and the sufficient decodability test.

Two assignment rules are provided:

* proportional assignment (PMAS) for erasure channels: every candidate of a
  symbol with ``i`` erased bits gets ``M * 2**-i``;
* the two-level rule for bit-flip channels: the hard decision gets ``m0``
  and each of its ``m`` one-bit neighbours gets ``m1 = t * m0``.

All decodability verdicts are evaluated in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from numbers import Rational
from typing import Sequence

import numpy as np

from .algebra import CodeParams
from .channels import ReceivedWord, TypeProfile, popcount


def _k(params) -> int:
    return params.k if isinstance(params, CodeParams) else int(params)


def _frac(x) -> Fraction:
    # str() round-trips floats like 0.2 to 1/5 instead of the binary expansion
    if isinstance(x, (Fraction, Rational)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(str(x))
    return Fraction(x)


def eta(profile: TypeProfile) -> Fraction:
    """Sum of ``a_i * 2**-i``, exactly."""
    return sum((Fraction(a, 1 << i) for i, a in enumerate(profile.a)), Fraction(0))


def sufficient(score, cost, params) -> bool:
    """``S >= sqrt(2 (K-1) C)``, tested as ``S**2 >= 2 (K-1) C`` (equality passes).

    A zero score certifies nothing and is always rejected.
    """
    s, c = _frac(score), _frac(cost)
    if s < 0 or c < 0:
        raise ValueError("score and cost must be nonnegative")
    return s > 0 and s * s >= 2 * (_k(params) - 1) * c


@dataclass(frozen=True)
class MasProfile:
    """Per-type candidate multiplicities ``m_i`` for a PMAS of total ``M``."""

    m_i: tuple[Fraction, ...]
    M: Fraction
    mode: str = "finite"

    @property
    def m(self) -> int:
        return len(self.m_i) - 1

    def candidate_multiplicity(self, symbol_type: int) -> int:
        v = self.m_i[symbol_type]
        if v.denominator != 1:
            raise ValueError(f"type-{symbol_type} multiplicity {v} is not an integer")
        return int(v)


def pmas_assign(profile: TypeProfile, M, mode: str = "finite") -> MasProfile:
    """Proportional assignment ``m_i = M * 2**-i``.

    In finite mode ``M`` must be a positive integer divisible by ``2**m`` so
    that every ``m_i`` is an integer.
    """
    M = _frac(M)
    if M <= 0:
        raise ValueError("total multiplicity M must be positive")
    m = profile.m
    if mode == "finite":
        if M.denominator != 1 or M.numerator % (1 << m):
            raise ValueError(f"finite PMAS needs 2^{m} to divide M, got M={M}")
    elif mode != "asymptotic":
        raise ValueError(f"mode must be 'finite' or 'asymptotic', got {mode!r}")
    return MasProfile(tuple(M / (1 << i) for i in range(m + 1)), M, mode)


@dataclass(frozen=True)
class BscMas:
    """Two-level assignment for bit-flip channels, ``m1 = t * m0``."""

    t: Fraction
    m0: int = 100

    def __post_init__(self):
        t = _frac(self.t)
        if not 0 <= t <= 1:
            raise ValueError(f"multiplicity coefficient must lie in [0, 1], got {t}")
        if int(self.m0) != self.m0 or self.m0 < 1:
            raise ValueError("m0 must be a positive integer")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "m0", int(self.m0))

    @property
    def m1(self) -> int:
        """``t * m0`` rounded half-up."""
        x = self.t * self.m0 + Fraction(1, 2)
        return x.numerator // x.denominator


class MultiplicityMatrix:
    """Dense (q, n) table of interpolation multiplicities.

    Row ``i`` is the candidate symbol value, column ``j`` the code position.
    """

    def __init__(self, entries):
        entries = np.array(entries, dtype=np.int64)
        if entries.ndim != 2:
            raise ValueError("multiplicity matrix must be 2-D")
        if (entries < 0).any():
            raise ValueError("multiplicities must be nonnegative")
        self.entries = entries

    @classmethod
    def zeros(cls, q: int, n: int) -> "MultiplicityMatrix":
        return cls(np.zeros((q, n), dtype=np.int64))

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    def score(self, codeword: Sequence[int]) -> int:
        cw = np.asarray(codeword, dtype=np.int64)
        if cw.shape != (self.shape[1],):
            raise ValueError("codeword length does not match the matrix")
        return int(self.entries[cw, np.arange(len(cw))].sum())

    def cost_exact(self) -> int:
        e = self.entries
        return int((e * (e + 1) // 2).sum())

    def cost_asym(self) -> Fraction:
        return Fraction(int((self.entries ** 2).sum()), 2)

    def points(self):
        """Yield ``(position, symbol, multiplicity)`` for every nonzero entry."""
        rows, cols = np.nonzero(self.entries)
        order = np.lexsort((rows, cols))
        for r, c in zip(rows[order], cols[order]):
            yield int(c), int(r), int(self.entries[r, c])

    def reduced(self) -> "MultiplicityMatrix":
        """Divide out the gcd of all entries (same proportions, least cost)."""
        g = 0
        for v in np.unique(self.entries):
            g = gcd(g, int(v))
        if g <= 1:
            return MultiplicityMatrix(self.entries.copy())
        return MultiplicityMatrix(self.entries // g)

    def __eq__(self, other):
        return isinstance(other, MultiplicityMatrix) and np.array_equal(self.entries, other.entries)

    def __repr__(self):
        return f"MultiplicityMatrix(shape={self.shape}, cost={self.cost_exact()})"


def _subsets(mask: int) -> list[int]:
    out, sub = [], mask
    while True:
        out.append(sub)
        if sub == 0:
            return out
        sub = (sub - 1) & mask


def pmas_matrix(received: ReceivedWord, mas: MasProfile) -> MultiplicityMatrix:
    """Expand a PMAS profile over the candidates of each received symbol.

    A symbol with erased-bit mask ``E`` has ``2**popcount(E)`` equally likely
    candidates ``value ^ s`` for ``s`` a submask of ``E``.
    """
    q = 1 << received.m
    if mas.m != received.m:
        raise ValueError("profile and received word have different symbol sizes")
    out = np.zeros((q, received.n), dtype=np.int64)
    erased = received.erased_bits
    for j in range(received.n):
        mult = mas.candidate_multiplicity(int(popcount(erased[j])))
        base = int(received.values[j])
        for s in _subsets(int(erased[j])):
            out[base ^ s, j] = mult
    return MultiplicityMatrix(out)


def bsc_assign(received: ReceivedWord, bm: BscMas) -> MultiplicityMatrix:
    """Hard decision gets ``m0``; each one-bit neighbour gets ``m1``."""
    if (received.erased_bits != 0).any():
        raise ValueError("bsc_assign expects a word without erasures")
    q = 1 << received.m
    out = np.zeros((q, received.n), dtype=np.int64)
    cols = np.arange(received.n)
    vals = np.asarray(received.values, dtype=np.int64)
    m1 = bm.m1
    if m1:
        for b in range(received.m):
            out[vals ^ (1 << b), cols] = m1
    out[vals, cols] = bm.m0
    return MultiplicityMatrix(out)


@dataclass(frozen=True)
class DecodabilityReport:
    S: int
    C_exact: int
    C_asym: Fraction
    eta: Fraction | None
    decodable: bool
    decodable_asym: bool


def score_cost(matrix: MultiplicityMatrix, codeword: Sequence[int], params,
               profile: TypeProfile | None = None) -> DecodabilityReport:
    """Score of ``codeword`` under ``matrix``, both costs and the verdicts.

    ``decodable`` uses the exact constraint count; ``decodable_asym`` the
    quadratic approximation.  ``eta`` is filled in when a type profile is
    supplied.
    """
    s = matrix.score(codeword)
    c_exact = matrix.cost_exact()
    c_asym = matrix.cost_asym()
    return DecodabilityReport(
        S=s,
        C_exact=c_exact,
        C_asym=c_asym,
        eta=None if profile is None else eta(profile),
        decodable=sufficient(s, c_exact, params),
        decodable_asym=sufficient(s, c_asym, params),
    )


def pmas_verdict(profile: TypeProfile, k: int) -> bool:
    """Infinite-cost PMAS decodability: ``eta >= K - 1``."""
    return eta(profile) >= k - 1


def bsc_verdict(e0: int, e1: int, n: int, m: int, k: int, t) -> bool:
    """Infinite-cost verdict for the two-level rule.

    ``e0`` symbols are clean and ``e1`` have one flipped bit; all others have
    two or more and contribute no score.  With ``m0`` scaled out,
    ``S = e0 + t e1`` and ``C = n (1 + m t^2) / 2``.
    """
    t = _frac(t)
    return sufficient(e0 + t * e1, Fraction(n) * (1 + m * t * t) / 2, k)
