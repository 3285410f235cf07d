"""Bijection between finite sequences of naturals and single naturals.

The empty sequence maps to 0; a nonempty sequence of length k maps to
1 + pair(k-1, code) where code folds the entries left to right through the
Cantor pairing function.  Both directions are exact on arbitrary-size ints.
"""

from __future__ import annotations

from math import isqrt

from .structures import FinSeq


def cantor_pair(a: int, b: int) -> int:
    if a < 0 or b < 0:
        raise ValueError("pairing is defined on nonnegative integers")
    return (a + b) * (a + b + 1) // 2 + b


def cantor_unpair(z: int) -> tuple[int, int]:
    if z < 0:
        raise ValueError("unpairing is defined on nonnegative integers")
    w = (isqrt(8 * z + 1) - 1) // 2
    b = z - w * (w + 1) // 2
    return w - b, b


def encode_seq_as_nat(s: FinSeq) -> int:
    entries = s.entries
    if not entries:
        return 0
    code = entries[0]
    for x in entries[1:]:
        code = cantor_pair(code, x)
    return 1 + cantor_pair(len(entries) - 1, code)


def decode_nat_as_seq(z: int) -> FinSeq:
    if z < 0:
        raise ValueError("codes are nonnegative integers")
    if z == 0:
        return FinSeq(())
    length_minus_1, code = cantor_unpair(z - 1)
    out = []
    for _ in range(length_minus_1):
        code, x = cantor_unpair(code)
        out.append(x)
    out.append(code)
    out.reverse()
    return FinSeq(tuple(out))
