"""Bit-level channel models and symbol type profiles.

Bit ``j`` of a symbol is the coefficient of ``2**j``.  For the modulation
erasure channel the ``m`` bits of a symbol are split into ``m // u``
aligned groups, group ``g`` covering bits ``[g*u, (g+1)*u)``.

Randomness is counter based: every call takes a ``seed`` and a ``stream``
index, and the generator for a given pair is always the same, so trial
blocks can be run in any order or on any worker.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Sequence

import numpy as np

KINDS = ("bec", "bsc", "one_bit_bsc", "mod_erasure")
ERASURE_KINDS = ("bec", "mod_erasure")
FLIP_KINDS = ("bsc", "one_bit_bsc")


def make_rng(seed: int, stream: int = 0) -> np.random.Generator:
    """Philox generator keyed by ``(seed, stream)``."""
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([int(seed), int(stream)])))


@dataclass(frozen=True)
class ChannelSpec:
    """Channel kind plus its parameters.

    ``param`` is the erasure probability for ``bec``/``mod_erasure``, the
    crossover probability for ``bsc`` and the exact number of hit symbols
    for ``one_bit_bsc``.  ``u`` is only used by ``mod_erasure``.
    """

    kind: str
    param: float
    u: int | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown channel kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "one_bit_bsc":
            if int(self.param) != self.param or self.param < 0:
                raise ValueError("one_bit_bsc needs a nonnegative integer error count")
            object.__setattr__(self, "param", int(self.param))
        elif not 0.0 <= self.param <= 1.0:
            raise ValueError(f"probability must lie in [0, 1], got {self.param}")
        if self.kind == "mod_erasure":
            if self.u is None or self.u < 1:
                raise ValueError("mod_erasure needs a group size u >= 1")
        elif self.u is not None:
            raise ValueError(f"u is only meaningful for mod_erasure, not {self.kind}")

    @classmethod
    def bec(cls, eps: float) -> "ChannelSpec":
        return cls("bec", eps)

    @classmethod
    def bsc(cls, p: float) -> "ChannelSpec":
        return cls("bsc", p)

    @classmethod
    def one_bit_bsc(cls, e: int) -> "ChannelSpec":
        return cls("one_bit_bsc", e)

    @classmethod
    def mod_erasure(cls, u: int, eps: float) -> "ChannelSpec":
        return cls("mod_erasure", eps, u)

    @property
    def is_erasure(self) -> bool:
        return self.kind in ERASURE_KINDS

    def check(self, m: int, n: int | None = None) -> None:
        """Validate against a code with ``m``-bit symbols and length ``n``."""
        if self.kind == "mod_erasure" and m % self.u:
            raise ValueError(f"u={self.u} does not divide m={m}")
        if self.kind == "one_bit_bsc" and n is not None and self.param > n:
            raise ValueError(f"cannot hit {self.param} symbols in a length-{n} word")

    def __str__(self) -> str:
        if self.kind == "mod_erasure":
            return f"mod_erasure({self.u},{self.param:g})"
        if self.kind == "one_bit_bsc":
            return f"one_bit_bsc({self.param})"
        return f"{self.kind}({self.param:g})"

    @classmethod
    def parse(cls, text: str) -> "ChannelSpec":
        """Inverse of ``str()``: ``bec(0.1)``, ``bsc(0.01)``, ``one_bit_bsc(5)``,
        ``mod_erasure(4,0.1)``."""
        match = re.fullmatch(r"\s*(\w+)\s*\(([^)]*)\)\s*", text)
        if not match:
            raise ValueError(f"cannot parse channel spec {text!r}")
        kind, args = match.group(1), [a.strip() for a in match.group(2).split(",") if a.strip()]
        if kind == "mod_erasure":
            if len(args) != 2:
                raise ValueError("mod_erasure takes (u, eps)")
            return cls(kind, float(args[1]), int(args[0]))
        if len(args) != 1:
            raise ValueError(f"{kind} takes exactly one argument")
        return cls(kind, int(args[0]) if kind == "one_bit_bsc" else float(args[0]))


@dataclass(frozen=True, eq=False)
class ReceivedWord:
    """Channel output: symbol values plus a per-symbol mask of observed bits.

    Erased bits are zero in ``values``.
    """

    values: np.ndarray
    known_mask: np.ndarray
    kind: str
    m: int

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def erased_bits(self) -> np.ndarray:
        full = (1 << self.m) - 1
        return np.asarray(full ^ self.known_mask, dtype=np.int64)

    def __eq__(self, other):
        if not isinstance(other, ReceivedWord):
            return NotImplemented
        return (self.kind == other.kind and self.m == other.m
                and np.array_equal(self.values, other.values)
                and np.array_equal(self.known_mask, other.known_mask))


@dataclass(frozen=True)
class TypeProfile:
    """``a[i]`` = number of symbols with ``i`` erased (or flipped) bits."""

    a: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(v) for v in self.a)
        if any(v < 0 for v in a):
            raise ValueError("type counts must be nonnegative")
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return sum(self.a)

    @property
    def m(self) -> int:
        return len(self.a) - 1

    @classmethod
    def from_types(cls, types: Sequence[int], m: int) -> "TypeProfile":
        return cls(tuple(np.bincount(np.asarray(types, dtype=np.int64), minlength=m + 1)))


def popcount(x) -> np.ndarray:
    """Vectorised popcount for nonnegative int arrays of up to 16 bits."""
    x = np.asarray(x, dtype=np.int64)
    x = x - ((x >> 1) & 0x5555)
    x = (x & 0x3333) + ((x >> 2) & 0x3333)
    x = (x + (x >> 4)) & 0x0F0F
    return (x + (x >> 8)) & 0x1F


def _pack_bits(bits: np.ndarray) -> np.ndarray:
    weights = 1 << np.arange(bits.shape[-1], dtype=np.int64)
    return (bits.astype(np.int64) * weights).sum(axis=-1)


def transmit_batch(codewords: np.ndarray, spec: ChannelSpec, rng: np.random.Generator,
                   m: int) -> tuple[np.ndarray, np.ndarray]:
    """Send a (T, n) batch through the channel.

    Returns ``(values, known_mask)``, both (T, n) int arrays.
    """
    cw = np.asarray(codewords, dtype=np.int64)
    if cw.ndim != 2:
        raise ValueError("codewords must be a 2-D (T, n) array")
    t, n = cw.shape
    spec.check(m, n)
    full = (1 << m) - 1
    if spec.kind == "bec":
        erased = _pack_bits(rng.random((t, n, m)) < spec.param)
        mask = full ^ erased
        return cw & mask, mask
    if spec.kind == "mod_erasure":
        u = spec.u
        groups = rng.random((t, n, m // u)) < spec.param
        erased = _pack_bits(np.repeat(groups, u, axis=-1))
        mask = full ^ erased
        return cw & mask, mask
    mask = np.full_like(cw, full)
    if spec.kind == "bsc":
        flips = _pack_bits(rng.random((t, n, m)) < spec.param)
        return cw ^ flips, mask
    # one_bit_bsc: exactly e distinct symbols, one uniform bit each
    e = spec.param
    flips = np.zeros_like(cw)
    if e:
        pos = np.argsort(rng.random((t, n)), axis=1)[:, :e]
        bit = rng.integers(0, m, size=(t, e))
        np.put_along_axis(flips, pos, np.int64(1) << bit, axis=1)
    return cw ^ flips, mask


def transmit(codeword: Sequence[int], spec: ChannelSpec, seed: int, *, m: int,
             stream: int = 0) -> ReceivedWord:
    """Send one codeword; deterministic in ``(seed, stream)``."""
    cw = np.asarray(codeword, dtype=np.int64)[None, :]
    values, mask = transmit_batch(cw, spec, make_rng(seed, stream), m)
    return ReceivedWord(values[0], mask[0], spec.kind, m)


def symbol_types(received: ReceivedWord, transmitted: Sequence[int] | None = None,
                 group: int | None = None) -> np.ndarray:
    """Per-symbol type: erased bits for erasure channels, flipped bits for
    flip channels (needs ``transmitted``).  With ``group=u`` erasure types
    are counted in u-bit erasure events instead of bits."""
    if received.kind in FLIP_KINDS:
        if transmitted is None:
            raise ValueError("flip-channel types need the transmitted codeword")
        types = popcount(received.values ^ np.asarray(transmitted, dtype=np.int64))
    else:
        types = popcount(received.erased_bits)
    if group is not None:
        if received.m % group:
            raise ValueError(f"group size {group} does not divide m={received.m}")
        types = types // group
    return types


def type_profile(received: ReceivedWord, transmitted: Sequence[int] | None = None,
                 group: int | None = None) -> TypeProfile:
    m = received.m if group is None else received.m // group
    return TypeProfile.from_types(symbol_types(received, transmitted, group), m)
