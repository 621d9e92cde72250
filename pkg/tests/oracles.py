"""Brute-force reference implementations shared by the test modules."""

import itertools
from fractions import Fraction


def compositions(n, parts):
    """All (a_0, ..., a_{parts-1}) of nonnegative integers summing to n."""
    for cuts in itertools.combinations(range(n + parts - 1), parts - 1):
        prev, out = -1, []
        for c in cuts:
            out.append(c - prev - 1)
            prev = c
        out.append(n + parts - 2 - prev)
        yield tuple(out)


def brute_radius(n, k, m, u=1):
    """Radius by listing every type composition (events per symbol 0..m/u)."""
    levels = m // u
    bad = n * levels + 1
    for a in compositions(n, levels + 1):
        eta = sum(Fraction(c, 1 << (i * u)) for i, c in enumerate(a))
        if eta < k - 1:
            bad = min(bad, sum(i * c for i, c in enumerate(a)))
    return bad - 1
