"""
An actual list decode
=====================

The radius results only use the score/cost test.  Here the interpolation
and root-finding decoder runs on a short code to show the transmitted
message come out of the list.
"""

import numpy as np

from rsasd import (rs_code, encode, ReceivedWord, TypeProfile, pmas_assign, pmas_matrix,
                   score_cost, asd_decode, BscMas, bsc_assign)
from rsasd.channels import popcount

rng = np.random.default_rng(2024)
params = rs_code(15, 3, 4)
msg = rng.integers(0, 16, size=3)
cw = encode(msg, params)
print("message ", msg)
print("codeword", cw)

## Erase one bit in nine symbols and two bits in two more
erased = np.zeros(15, dtype=np.int64)
erased[:9] = 1 << rng.integers(0, 4, size=9)
erased[9:11] = 0b0110
keep = 15 ^ erased
rw = ReceivedWord(cw & keep, keep, "bec", 4)
profile = TypeProfile.from_types(popcount(erased), 4)
print("symbol types", profile.a)

## Proportional multiplicities, reduced by their gcd
matrix = pmas_matrix(rw, pmas_assign(profile, 16)).reduced()
report = score_cost(matrix, cw, params, profile)
print(f"S={report.S} C={report.C_exact} eta={report.eta} sufficient={report.decodable}")
found = asd_decode(rw, matrix, params)
print("list:", [f.tolist() for f in found.messages], "-> transmitted found:", msg in found)

## Seven symbol errors, multiplicity one on the hard decisions
rx = cw.copy()
pos = rng.choice(15, size=7, replace=False)
rx[pos] ^= rng.integers(1, 16, size=7)
hard = ReceivedWord(rx, np.full(15, 15), "bsc", 4)
gs = bsc_assign(hard, BscMas(0, 1))
print("\nGS score/cost:", score_cost(gs, cw, params).S, gs.cost_exact())
found = asd_decode(hard, gs, params)
print("list size", len(found), "-> transmitted found:", msg in found)
