"""Lazy decidable subsets of N and the diagonal family that escapes a base family.

Indices live in two copies of N ordered copy-then-index; the even/odd split
maps N onto them.  The derived set at position k diagonalizes against every
set at an earlier position: membership of xi is decided by looking up which
earlier set xi points at and negating membership there.  Evaluation always
terminates because the lookup strictly decreases the derived index.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable


@dataclass(frozen=True, order=True)
class TwoCopyOrdinal:
    """Position in two stacked copies of N: (0, m) comes before every (1, m)."""

    copy: int
    index: int

    def __post_init__(self) -> None:
        if self.copy not in (0, 1):
            raise ValueError("copy must be 0 or 1")
        if self.index < 0:
            raise ValueError("index must be nonnegative")


def to_two_copies(xi: int) -> TwoCopyOrdinal:
    """The even/odd bijection N -> N + N: 2m -> (0, m), 2m+1 -> (1, m)."""
    if xi < 0:
        raise ValueError("xi must be nonnegative")
    return TwoCopyOrdinal(xi % 2, xi // 2)


def from_two_copies(t: TwoCopyOrdinal) -> int:
    """Inverse of to_two_copies."""
    return 2 * t.index + t.copy


class LazySubset:
    """A decidable subset of N given by a total membership oracle.

    Membership queries are memoized per instance; the oracle must be total
    and deterministic, so this is observationally transparent.
    """

    def __init__(self, oracle: Callable[[int], bool], description: str):
        self._oracle = oracle
        self.description = description
        self._memo: dict[int, bool] = {}

    def __contains__(self, xi: int) -> bool:
        if xi < 0:
            raise ValueError("membership is only defined on nonnegative integers")
        if xi not in self._memo:
            self._memo[xi] = bool(self._oracle(xi))
        return self._memo[xi]

    def members_below(self, bound: int) -> list[int]:
        return [xi for xi in range(bound) if xi in self]

    def __repr__(self) -> str:
        return f"LazySubset({self.description})"


def singleton_subset(m: int) -> LazySubset:
    return LazySubset(lambda xi: xi == m, f"singleton:{m}")


def upto_subset(m: int) -> LazySubset:
    return LazySubset(lambda xi: xi <= m, f"upto:{m}")


def evens_subset() -> LazySubset:
    return LazySubset(lambda xi: xi % 2 == 0, "evens")


def periodic_subset(pattern: str) -> LazySubset:
    if not pattern or set(pattern) - {"0", "1"}:
        raise ValueError(f"pattern must be a nonempty string of 0/1, got {pattern!r}")
    bits = tuple(ch == "1" for ch in pattern)
    return LazySubset(lambda xi: bits[xi % len(bits)], f"periodic:{pattern}")


def parse_subset(text: str) -> LazySubset:
    """Parse one subset description: singleton:m | upto:m | evens | periodic:bits."""
    head, _, arg = text.partition(":")
    if head == "singleton":
        return singleton_subset(int(arg))
    if head == "upto":
        return upto_subset(int(arg))
    if head == "evens" and not arg:
        return evens_subset()
    if head == "periodic":
        return periodic_subset(arg)
    raise ValueError(f"unknown subset description {text!r}")


def parse_family(text: str) -> Callable[[int], LazySubset]:
    """Parse a base-family description.

    ``singletons`` is the family m -> {m}, ``intervals`` is m -> {0..m};
    any single subset description yields the constant family of that set.
    """
    if text == "singletons":
        return singleton_subset
    if text == "intervals":
        return upto_subset
    fixed = parse_subset(text)
    return lambda m: fixed


class DiagonalFamily:
    """The derived family G over a base family of lazy subsets.

    xi belongs to the derived set at k exactly when the position xi points
    at (under the two-copy split) is earlier than (1, k) and xi is absent
    from the set living there; positions at or beyond (1, k) admit xi
    vacuously.
    """

    def __init__(self, base: Callable[[int], LazySubset]):
        self._base = base
        self._base_memo: dict[int, LazySubset] = {}
        self._derived_memo: dict[int, LazySubset] = {}

    def base_set(self, m: int) -> LazySubset:
        if m not in self._base_memo:
            self._base_memo[m] = self._base(m)
        return self._base_memo[m]

    def derived_set(self, k: int) -> LazySubset:
        if k < 0:
            raise ValueError("derived index must be nonnegative")
        if k not in self._derived_memo:
            self._derived_memo[k] = LazySubset(
                lambda xi, k=k: self._member(k, xi), f"derived:{k}"
            )
        return self._derived_memo[k]

    def _member(self, k: int, xi: int) -> bool:
        t = to_two_copies(xi)
        if t.copy == 0:
            return xi not in self.base_set(t.index)
        if t.index < k:
            return xi not in self.derived_set(t.index)
        return True

    def set_at(self, t: TwoCopyOrdinal) -> LazySubset:
        """The set indexed by a two-copy position: base on copy 0, derived on copy 1."""
        return self.base_set(t.index) if t.copy == 0 else self.derived_set(t.index)

    def distinguishing_witness(self, k: int, earlier: TwoCopyOrdinal) -> int:
        """A point where the derived set at k differs from an earlier set.

        The witness is the preimage of the earlier position under the
        two-copy split; both oracles are evaluated to confirm the difference.
        """
        if not earlier < TwoCopyOrdinal(1, k):
            raise ValueError(f"{earlier} does not precede the derived position (1, {k})")
        xi = from_two_copies(earlier)
        if (xi in self.derived_set(k)) == (xi in self.set_at(earlier)):
            raise RuntimeError(
                f"witness {xi} failed to separate derived:{k} from {earlier}"
            )
        return xi


def diagonal_family(base: Callable[[int], LazySubset]) -> DiagonalFamily:
    """Build the derived diagonal family over an indexed base family."""
    return DiagonalFamily(base)


def distinguishing_witness(
    family: DiagonalFamily, k: int, earlier: TwoCopyOrdinal
) -> int:
    """Free-function form of DiagonalFamily.distinguishing_witness."""
    return family.distinguishing_witness(k, earlier)
