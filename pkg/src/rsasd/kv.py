"""Small-field algebraic soft-decision list decoder.

Interpolation is Koetter's iterative algorithm over the basis
``{Y^0, ..., Y^L}``, processing one Hasse-derivative constraint at a time.
``D`` is the least (1, k-1)-weighted degree at which a solution must
exist, so each basis polynomial is stored as a coefficient vector over the
monomials of weighted degree at most ``D``.  A polynomial whose leading
monomial passes ``D`` can never be the answer and is dropped.

Root finding is Roth-Ruckenstein, with every candidate re-checked by
direct substitution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .algebra import (
    CodeParams,
    FieldContext,
    encode,
    gf_inv,
    gf_mul_arr,
    poly_mul,
)
from .channels import ReceivedWord
from .errors import ResourceError
from .mas import BscMas, MasProfile, MultiplicityMatrix, bsc_assign, pmas_matrix

DEFAULT_MAX_COST = 100_000


class BivariatePoly:
    """Q(X, Y) with coefficients ``coeffs[b, a]`` of ``X^a Y^b``."""

    def __init__(self, coeffs, k: int, ctx: FieldContext):
        c = np.array(coeffs, dtype=np.int64, ndmin=2)
        nz = np.nonzero(c)
        if nz[0].size:
            c = c[: nz[0].max() + 1, : nz[1].max() + 1]
        else:
            c = np.zeros((1, 1), dtype=np.int64)
        self.coeffs = c
        self.k = k
        self.ctx = ctx

    @classmethod
    def from_dict(cls, terms: dict, k: int, ctx: FieldContext) -> "BivariatePoly":
        """Build from ``{(x_degree, y_degree): coefficient}``."""
        if not terms:
            return cls(np.zeros((1, 1)), k, ctx)
        ax = max(a for a, _ in terms) + 1
        by = max(b for _, b in terms) + 1
        c = np.zeros((by, ax), dtype=np.int64)
        for (a, b), v in terms.items():
            c[b, a] ^= v
        return cls(c, k, ctx)

    @classmethod
    def from_y_factors(cls, factors: Sequence[Sequence[int]], k: int,
                       ctx: FieldContext) -> "BivariatePoly":
        """Product of ``(Y - f_i(X))`` for the given coefficient lists."""
        # rows = y-degree, each row a univariate X-poly (list)
        rows: list[list[int]] = [[1]]
        for f in factors:
            new = [[] for _ in range(len(rows) + 1)]
            for b, row in enumerate(rows):
                new[b + 1] = _add(new[b + 1], row)
                new[b] = _add(new[b], poly_mul(row, list(f), ctx))
            rows = new
        width = max((len(r) for r in rows), default=1) or 1
        c = np.zeros((len(rows), width), dtype=np.int64)
        for b, row in enumerate(rows):
            c[b, : len(row)] = row
        return cls(c, k, ctx)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs.any()

    @property
    def y_degree(self) -> int:
        return self.coeffs.shape[0] - 1

    def terms(self):
        for b, a in zip(*np.nonzero(self.coeffs)):
            yield int(a), int(b), int(self.coeffs[b, a])

    @property
    def weighted_degree(self) -> int:
        """(1, k-1)-weighted degree; -1 for the zero polynomial."""
        return max((a + b * (self.k - 1) for a, b, _ in self.terms()), default=-1)

    def __call__(self, x: int, y: int) -> int:
        return self.hasse(0, 0, x, y)

    def hasse(self, r: int, s: int, x: int, y: int) -> int:
        """Hasse derivative ``D_{r,s} Q`` evaluated at ``(x, y)``."""
        b_idx = np.arange(self.coeffs.shape[0])
        a_idx = np.arange(self.coeffs.shape[1])
        u = _hasse_weights(a_idx, r, x, self.ctx)
        v = _hasse_weights(b_idx, s, y, self.ctx)
        w = gf_mul_arr(v[:, None], u[None, :], self.ctx)
        return int(np.bitwise_xor.reduce(gf_mul_arr(self.coeffs, w, self.ctx), axis=None))

    def substitute(self, f: Sequence[int]) -> list[int]:
        """Coefficients of ``Q(X, f(X))``, trailing zeros stripped."""
        acc: list[int] = []
        for b in range(self.coeffs.shape[0] - 1, -1, -1):
            acc = _add(poly_mul(acc, list(f), self.ctx), list(self.coeffs[b]))
        while acc and acc[-1] == 0:
            acc.pop()
        return acc

    def __eq__(self, other):
        return (isinstance(other, BivariatePoly) and self.coeffs.shape == other.coeffs.shape
                and np.array_equal(self.coeffs, other.coeffs))

    def __repr__(self):
        return f"BivariatePoly(wdeg={self.weighted_degree}, ydeg={self.y_degree})"


def _add(a: Sequence[int], b: Sequence[int]) -> list[int]:
    if len(a) < len(b):
        a, b = b, a
    out = [int(v) for v in a]
    for i, v in enumerate(b):
        out[i] ^= int(v)
    return out


def _hasse_weights(idx: np.ndarray, r: int, x: int, ctx: FieldContext) -> np.ndarray:
    """``binom(i, r) * x^(i-r)`` in GF(2^m); the binomial is taken mod 2 (Lucas)."""
    odd = ((idx & r) == r) & (idx >= r)
    exps = np.maximum(idx - r, 0)
    if x == 0:
        powers = np.where(exps == 0, 1, 0)
    else:
        lx = int(ctx.log_table[x])
        powers = ctx.exp_table[(exps * lx) % ctx.order]
    return np.where(odd, powers, 0)


def monomial_count(delta: int, k: int) -> int:
    """Number of monomials X^a Y^b with ``a + b(k-1) <= delta``."""
    if delta < 0:
        return 0
    w = k - 1
    return sum(delta - b * w + 1 for b in range(delta // w + 1))


def weighted_degree_bound(cost: int, k: int) -> int:
    """Least ``delta`` with more monomials than ``cost`` constraints."""
    if k < 2:
        raise ValueError("interpolation needs k >= 2")
    delta = max(0, int(np.sqrt(2 * (k - 1) * cost)) - k)
    while monomial_count(delta, k) <= cost:
        delta += 1
    while delta > 0 and monomial_count(delta - 1, k) > cost:
        delta -= 1
    return delta


def interpolate(matrix: MultiplicityMatrix, params: CodeParams,
                max_cost: int = DEFAULT_MAX_COST) -> BivariatePoly:
    """Least (1, k-1)-weighted-degree Q through every point of ``matrix``.

    Q has a zero of order ``m_{i,j}`` at ``(eval_points[j], i)`` for every
    nonzero entry.

    Raises
    ------
    ResourceError
        If the number of linear constraints exceeds ``max_cost``.
    """
    ctx = params.ctx
    k = params.k
    if matrix.shape != (params.q, params.n):
        raise ValueError(f"matrix shape {matrix.shape} does not match ({params.q}, {params.n})")
    cost = matrix.cost_exact()
    if cost > max_cost:
        raise ResourceError(f"interpolation cost {cost} exceeds budget {max_cost}")
    D = weighted_degree_bound(cost, k)
    L = D // (k - 1)
    w = k - 1

    # basis polynomials live on the monomials X^a Y^b with a + b*w <= D
    mono_b = np.concatenate([np.full(D - b * w + 1, b) for b in range(L + 1)])
    mono_a = np.concatenate([np.arange(D - b * w + 1) for b in range(L + 1)])
    start = np.concatenate([[0], np.cumsum([D - b * w + 1 for b in range(L + 1)])])
    # X * monomial: next slot in the same row, or out of range at the row end
    inner = mono_a < D - mono_b * w
    src = np.nonzero(inner)[0]
    G = np.zeros((L + 1, len(mono_a)), dtype=np.int64)
    G[np.arange(L + 1), start[:-1]] = 1
    lead_x = np.zeros(L + 1, dtype=np.int64)
    active = np.ones(L + 1, dtype=bool)
    xs = np.arange(D + 1)
    ys = np.arange(L + 1)

    for pos, sym, mult in matrix.points():
        x0 = params.eval_points[pos]
        u = [_hasse_weights(xs, r, x0, ctx)[mono_a] for r in range(mult)]
        v = [_hasse_weights(ys, s, sym, ctx)[mono_b] for s in range(mult)]
        for s in range(mult):
            for r in range(mult - s):
                idx = np.nonzero(active)[0]
                wts = gf_mul_arr(v[s], u[r], ctx)
                disc = np.bitwise_xor.reduce(gf_mul_arr(G[idx], wts[None], ctx), axis=1)
                nz = disc != 0
                hit = idx[nz]
                if hit.size == 0:
                    continue
                dh = disc[nz]
                wdeg = lead_x[hit] + hit * w
                p_pos = np.lexsort((hit, wdeg))[0]
                p = hit[p_pos]
                dp = int(dh[p_pos])
                others = np.delete(hit, p_pos)
                if others.size:
                    coef = gf_mul_arr(np.delete(dh, p_pos), gf_inv(dp, ctx), ctx)
                    G[others] ^= gf_mul_arr(coef[:, None], G[p][None], ctx)
                # G_p <- (X - x0) G_p
                gp = G[p]
                shifted = np.zeros_like(gp)
                shifted[src + 1] = gp[src]
                G[p] = shifted ^ gf_mul_arr(gp, x0, ctx)
                lead_x[p] += 1
                if lead_x[p] + p * w > D:
                    active[p] = False
                    G[p] = 0

    idx = np.nonzero(active)[0]
    wdeg = lead_x[idx] + idx * w
    best = idx[np.lexsort((idx, wdeg))[0]]
    dense = np.zeros((L + 1, D + 1), dtype=np.int64)
    dense[mono_b, mono_a] = G[best]
    return BivariatePoly(dense, k, ctx)


def _shift_y(Q: np.ndarray, gamma: int, ctx: FieldContext) -> np.ndarray:
    """Coefficients of Q(X, Y + gamma)."""
    rows = Q.shape[0]
    out = np.zeros_like(Q)
    b = np.arange(rows)
    for t in range(rows):
        wts = _hasse_weights(b, t, gamma, ctx)
        out[t] = np.bitwise_xor.reduce(gf_mul_arr(Q, wts[:, None], ctx), axis=0)
    return out


def y_roots(q: BivariatePoly, params: CodeParams) -> list[np.ndarray]:
    """All messages ``f`` (length k) with ``Q(X, f(X)) == 0``."""
    if q.is_zero:
        raise ValueError("the zero polynomial has every f as a root")
    ctx = params.ctx
    k = params.k
    field_elems = np.arange(ctx.q)
    found: list[tuple[int, ...]] = []

    def rec(Q: np.ndarray, prefix: list[int]):
        nz_cols = np.nonzero(Q.any(axis=0))[0]
        Q = Q[:, nz_cols[0]:]
        if len(prefix) == k:
            if not Q[0].any():
                found.append(tuple(prefix))
            return
        # roots of Q(0, Y)
        col = Q[:, 0]
        vals = np.zeros(ctx.q, dtype=np.int64)
        for b in range(len(col) - 1, -1, -1):
            vals = gf_mul_arr(vals, field_elems, ctx) ^ col[b]
        for gamma in np.nonzero(vals == 0)[0]:
            T = _shift_y(Q, int(gamma), ctx)
            # Y -> X*Y: multiply row t by X^t
            rows, cols = T.shape
            nxt = np.zeros((rows, cols + rows - 1), dtype=np.int64)
            for t in range(rows):
                nxt[t, t: t + cols] = T[t]
            rec(nxt, prefix + [int(gamma)])

    rec(q.coeffs.copy(), [])
    out = []
    for f in dict.fromkeys(found):
        if not q.substitute(f):
            out.append(np.array(f, dtype=np.int64))
    return out


@dataclass
class CandidateList:
    """Decoder output: messages, their codewords and achieved scores."""

    messages: list[np.ndarray]
    codewords: list[np.ndarray] = field(default_factory=list)
    scores: list[int] = field(default_factory=list)
    weighted_degree: int = -1

    def __len__(self):
        return len(self.messages)

    def __contains__(self, msg) -> bool:
        msg = np.asarray(msg, dtype=np.int64)
        return any(np.array_equal(msg, f) for f in self.messages)


def build_matrix(received: ReceivedWord, mas) -> MultiplicityMatrix:
    if isinstance(mas, MultiplicityMatrix):
        return mas
    if isinstance(mas, MasProfile):
        return pmas_matrix(received, mas)
    if isinstance(mas, BscMas):
        return bsc_assign(received, mas)
    raise TypeError(f"unsupported assignment {type(mas).__name__}")


def asd_decode(received: ReceivedWord, mas, params: CodeParams, *, reduce: bool = False,
               max_cost: int = DEFAULT_MAX_COST) -> CandidateList:
    """Multiplicities -> interpolation -> Y-roots -> re-encoded candidates.

    ``mas`` is a :class:`MasProfile`, a :class:`BscMas` or a ready
    :class:`MultiplicityMatrix`.  With ``reduce=True`` the matrix is divided
    by the gcd of its entries before interpolating.
    """
    matrix = build_matrix(received, mas)
    if reduce:
        matrix = matrix.reduced()
    q = interpolate(matrix, params, max_cost=max_cost)
    msgs = y_roots(q, params)
    cws = [encode(f, params) for f in msgs]
    return CandidateList(msgs, cws, [matrix.score(c) for c in cws], q.weighted_degree)
