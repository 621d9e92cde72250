"""GF(2^m) arithmetic, univariate polynomials and evaluation-map RS codes.

Field elements are plain ints whose bit j is the coefficient of x^j in the
polynomial basis.  Addition is XOR.  Multiplication goes through log/antilog
tables built once per :class:`FieldContext`; the tables are also exposed as
numpy arrays so that other modules can do elementwise products on whole
arrays (see :func:`gf_mul_arr`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Sequence

import numpy as np

from .errors import DecodingFailure

# Conventional primitive polynomials, bit i = coefficient of x^i.
DEFAULT_PRIMITIVE_POLY = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


@dataclass(frozen=True, eq=False)
class FieldContext:
    """GF(2^m) defined by a primitive polynomial.

    ``exp_table[i] = alpha**i`` for ``0 <= i < 2*(q-1)`` (doubled so that a
    sum of two logs needs no reduction) and ``log_table[a]`` is the discrete
    log of ``a != 0``.  ``log_table[0]`` holds a sentinel and must not be used.
    """

    m: int
    primitive_poly: int
    exp_table: np.ndarray = field(repr=False)
    log_table: np.ndarray = field(repr=False)

    @property
    def q(self) -> int:
        return 1 << self.m

    @property
    def order(self) -> int:
        """Size of the multiplicative group, ``q - 1``."""
        return (1 << self.m) - 1

    def alpha(self, i: int) -> int:
        return int(self.exp_table[i % self.order])

    @cached_property
    def mul_table(self) -> np.ndarray | None:
        """Full ``q x q`` product table for ``m <= 8``; ``None`` above that."""
        if self.m > 8:
            return None
        la = np.maximum(self.log_table, 0)
        t = self.exp_table[la[:, None] + la[None, :]]
        t[0, :] = 0
        t[:, 0] = 0
        t.flags.writeable = False
        return t

    def __hash__(self):
        return hash((self.m, self.primitive_poly))

    def __eq__(self, other):
        if not isinstance(other, FieldContext):
            return NotImplemented
        return (self.m, self.primitive_poly) == (other.m, other.primitive_poly)


@lru_cache(maxsize=None)
def make_field(m: int, primitive_poly: int | None = None) -> FieldContext:
    """Build (and cache) the field context for GF(2^m).

    Raises ``ValueError`` if the polynomial does not have degree ``m`` or
    ``x`` does not generate the multiplicative group.
    """
    if not 1 <= m <= 16:
        raise ValueError(f"m must be in 1..16, got {m}")
    poly = DEFAULT_PRIMITIVE_POLY[m] if primitive_poly is None else int(primitive_poly)
    if poly.bit_length() - 1 != m:
        raise ValueError(f"primitive polynomial {poly:#x} does not have degree {m}")
    q = 1 << m
    order = q - 1
    exp = np.zeros(2 * order, dtype=np.int64)
    log = np.full(q, -1, dtype=np.int64)
    x = 1
    for i in range(order):
        if i > 0 and x == 1:
            raise ValueError(f"{poly:#x} is not primitive: alpha has order {i}")
        exp[i] = x
        log[x] = i
        x <<= 1
        if x & q:
            x ^= poly
    if x != 1:
        raise ValueError(f"{poly:#x} is not primitive")
    exp[order:] = exp[:order]
    exp.flags.writeable = False
    log.flags.writeable = False
    return FieldContext(m, poly, exp, log)


def gf_add(a: int, b: int) -> int:
    return a ^ b


def gf_mul(a: int, b: int, ctx: FieldContext) -> int:
    if a == 0 or b == 0:
        return 0
    return int(ctx.exp_table[ctx.log_table[a] + ctx.log_table[b]])


def gf_inv(a: int, ctx: FieldContext) -> int:
    if a == 0:
        raise ZeroDivisionError("0 has no inverse in GF(2^m)")
    return int(ctx.exp_table[(ctx.order - ctx.log_table[a]) % ctx.order])


def gf_div(a: int, b: int, ctx: FieldContext) -> int:
    if b == 0:
        raise ZeroDivisionError("division by zero in GF(2^m)")
    if a == 0:
        return 0
    return int(ctx.exp_table[(ctx.log_table[a] - ctx.log_table[b]) % ctx.order])


def gf_pow(a: int, e: int, ctx: FieldContext) -> int:
    if e == 0:
        return 1
    if a == 0:
        return 0
    return int(ctx.exp_table[(ctx.log_table[a] * e) % ctx.order])


def gf_mul_arr(a, b, ctx: FieldContext) -> np.ndarray:
    """Elementwise product of two broadcastable integer arrays."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    table = ctx.mul_table
    if table is not None:
        return table[a, b]
    la = ctx.log_table[a]
    lb = ctx.log_table[b]
    out = ctx.exp_table[np.maximum(la, 0) + np.maximum(lb, 0)]
    return np.where((a == 0) | (b == 0), 0, out)


def gf_pow_arr(a, e: int, ctx: FieldContext) -> np.ndarray:
    a = np.asarray(a, dtype=np.int64)
    if e == 0:
        return np.ones_like(a)
    la = np.maximum(ctx.log_table[a], 0)
    return np.where(a == 0, 0, ctx.exp_table[(la * e) % ctx.order])


# -- univariate polynomials -------------------------------------------------


@dataclass(frozen=True)
class Poly:
    """Polynomial over GF(2^m), coefficients lowest degree first."""

    coeffs: tuple[int, ...]

    def __post_init__(self):
        c = list(self.coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(int(v) for v in c))

    @property
    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, x: int, ctx: FieldContext) -> int:
        return poly_eval(self.coeffs, x, ctx)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        return Poly(tuple(u ^ (b[i] if i < len(b) else 0) for i, u in enumerate(a)))

    def mul(self, other: "Poly", ctx: FieldContext) -> "Poly":
        return Poly(tuple(poly_mul(self.coeffs, other.coeffs, ctx)))

    def scale(self, c: int, ctx: FieldContext) -> "Poly":
        return Poly(tuple(gf_mul(v, c, ctx) for v in self.coeffs))


def poly_eval(coeffs: Sequence[int], x: int, ctx: FieldContext) -> int:
    acc = 0
    for c in reversed(coeffs):
        acc = gf_mul(acc, x, ctx) ^ c
    return acc


def poly_mul(a: Sequence[int], b: Sequence[int], ctx: FieldContext) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, u in enumerate(a):
        if u == 0:
            continue
        for j, v in enumerate(b):
            out[i + j] ^= gf_mul(u, v, ctx)
    return out


def lagrange_interpolate(xs: Sequence[int], ys: Sequence[int], ctx: FieldContext) -> Poly:
    """Unique polynomial of degree < len(xs) through the points (xs, ys)."""
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct")
    result = Poly(())
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        if yi == 0:
            continue
        num = [1]
        denom = 1
        for j, xj in enumerate(xs):
            if j == i:
                continue
            num = poly_mul(num, [xj, 1], ctx)
            denom = gf_mul(denom, xi ^ xj, ctx)
        scale = gf_div(yi, denom, ctx)
        result = result + Poly(tuple(gf_mul(c, scale, ctx) for c in num))
    return result


# -- Reed-Solomon codes -----------------------------------------------------


@dataclass(frozen=True)
class CodeParams:
    """RS(n, k) over ``ctx`` with evaluation points ``eval_points``."""

    n: int
    k: int
    ctx: FieldContext
    eval_points: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.k <= self.n <= self.ctx.order:
            raise ValueError(
                f"need 1 <= k <= n <= 2^m - 1, got n={self.n}, k={self.k}, m={self.ctx.m}"
            )
        pts = tuple(int(p) for p in self.eval_points)
        if len(pts) != self.n:
            raise ValueError("need exactly n evaluation points")
        if len(set(pts)) != self.n or 0 in pts or max(pts) >= self.ctx.q:
            raise ValueError("evaluation points must be distinct nonzero field elements")
        object.__setattr__(self, "eval_points", pts)

    @property
    def m(self) -> int:
        return self.ctx.m

    @property
    def q(self) -> int:
        return self.ctx.q

    @property
    def rate(self) -> float:
        return self.k / self.n


def rs_code(n: int, k: int, m: int, primitive_poly: int | None = None,
            eval_points: Sequence[int] | None = None) -> CodeParams:
    """Convenience constructor; evaluation points default to alpha^0..alpha^(n-1)."""
    ctx = make_field(m, primitive_poly)
    if eval_points is None:
        if n > ctx.order:
            raise ValueError(f"n={n} exceeds 2^m - 1 = {ctx.order}")
        eval_points = tuple(ctx.alpha(i) for i in range(n))
    return CodeParams(n, k, ctx, tuple(eval_points))


@lru_cache(maxsize=64)
def _vandermonde(params: CodeParams) -> np.ndarray:
    """(k, n) table of eval_points[j] ** i."""
    pts = np.array(params.eval_points, dtype=np.int64)
    return np.stack([gf_pow_arr(pts, i, params.ctx) for i in range(params.k)])


def encode(msg: Sequence[int], params: CodeParams) -> np.ndarray:
    """Evaluate the message polynomial at the code's evaluation points."""
    msg = np.asarray(msg, dtype=np.int64)
    if msg.shape != (params.k,):
        raise ValueError(f"message must have length k={params.k}, got shape {msg.shape}")
    return encode_batch(msg[None, :], params)[0]


def encode_batch(msgs: np.ndarray, params: CodeParams) -> np.ndarray:
    """Encode a (T, k) array of messages into a (T, n) array of codewords."""
    msgs = np.asarray(msgs, dtype=np.int64)
    if msgs.ndim != 2 or msgs.shape[1] != params.k:
        raise ValueError(f"messages must have shape (T, {params.k})")
    if msgs.size and (msgs.min() < 0 or msgs.max() >= params.q):
        raise ValueError("message symbols out of field range")
    vander = _vandermonde(params)
    out = np.zeros((msgs.shape[0], params.n), dtype=np.int64)
    for i in range(params.k):
        out ^= gf_mul_arr(msgs[:, i:i + 1], vander[i][None, :], params.ctx)
    return out


def erasure_decode(received: Sequence[int], erased: Sequence[bool], params: CodeParams) -> np.ndarray:
    """Recover the message from a word with symbol erasures.

    Interpolates on the first ``k`` clean coordinates and checks the
    remaining clean coordinates against the interpolant.  Corrects up to
    ``n - k`` erasures.

    Raises
    ------
    DecodingFailure
        If fewer than ``k`` coordinates are clean, or the clean coordinates
        are not consistent with any codeword.
    """
    received = [int(v) for v in received]
    erased = [bool(e) for e in erased]
    if len(received) != params.n or len(erased) != params.n:
        raise ValueError(f"received word and erasure flags must have length n={params.n}")
    clean = [j for j in range(params.n) if not erased[j]]
    if len(clean) < params.k:
        raise DecodingFailure("insufficient coordinates")
    xs = [params.eval_points[j] for j in clean[:params.k]]
    ys = [received[j] for j in clean[:params.k]]
    f = lagrange_interpolate(xs, ys, params.ctx)
    for j in clean[params.k:]:
        if f(params.eval_points[j], params.ctx) != received[j]:
            raise DecodingFailure("not a codeword")
    msg = list(f.coeffs) + [0] * (params.k - len(f.coeffs))
    return np.array(msg, dtype=np.int64)
