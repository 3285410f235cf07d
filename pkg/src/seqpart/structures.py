"""Finite carriers, sequences over them, and canonical set partitions.

Labels are plain integers 0..size-1.  Exact counts are plain Python ints,
which are arbitrary precision natively.  Partitions are kept in restricted
growth string (RGS) form so that equality, hashing, and injectivity checks
are structural.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property


class NotInRange(ValueError):
    """A decoder input that is not in the matching encoder's image.

    The message carries a human-readable diagnosis of the shape violation.
    """


@dataclass(frozen=True)
class Carrier:
    """A finite label set 0..size-1, optionally with display names."""

    size: int
    names: tuple[str, ...] | None = None

    def __post_init__(self) -> None:
        if self.size < 0:
            raise ValueError(f"carrier size must be nonnegative, got {self.size}")
        if self.names is not None:
            object.__setattr__(self, "names", tuple(self.names))
            if len(self.names) != self.size:
                raise ValueError(
                    f"{len(self.names)} names for a carrier of size {self.size}"
                )
            if len(set(self.names)) != self.size:
                raise ValueError("carrier names must be pairwise distinct")

    def labels(self) -> range:
        return range(self.size)

    def check_label(self, x: int) -> None:
        if not 0 <= x < self.size:
            raise ValueError(f"label {x} out of range for carrier of size {self.size}")

    def name_of(self, label: int) -> str:
        self.check_label(label)
        return self.names[label] if self.names is not None else str(label)

    def label_of(self, name: str) -> int:
        if self.names is None:
            label = int(name)
            self.check_label(label)
            return label
        try:
            return self.names.index(name)
        except ValueError:
            raise ValueError(f"unknown carrier label name {name!r}") from None


@dataclass(frozen=True)
class FinSeq:
    """A finite sequence of labels.

    The ``injective`` flag is an assertion checked at construction; it does
    not participate in equality.  Entries are validated against a carrier by
    the operations that receive one, not here.
    """

    entries: tuple[int, ...]
    injective: bool = field(default=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(self.entries))
        if any(x < 0 for x in self.entries):
            raise ValueError("sequence entries must be nonnegative labels")
        if self.injective and len(set(self.entries)) != len(self.entries):
            raise ValueError(f"entries {self.entries} flagged injective but repeat")

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    @property
    def entry_set(self) -> frozenset[int]:
        return frozenset(self.entries)

    def is_injective(self) -> bool:
        return len(set(self.entries)) == len(self.entries)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Length-then-lexicographic key, the enumeration order."""
        return (len(self.entries), self.entries)

    def __repr__(self) -> str:
        return f"FinSeq{self.entries!r}"


@dataclass(frozen=True)
class SetPartition:
    """A set partition of 0..n-1 in restricted growth string form.

    rgs[i] is the index of the block containing label i; block indices
    appear in increasing order of first use, so blocks come out ordered by
    their minimum element and the representation is canonical.
    """

    rgs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "rgs", tuple(self.rgs))
        top = -1
        for i, b in enumerate(self.rgs):
            if not 0 <= b <= top + 1:
                raise ValueError(f"rgs {self.rgs} invalid at position {i}")
            top = max(top, b)

    @classmethod
    def from_blocks(cls, blocks, size: int) -> "SetPartition":
        """Canonicalize an iterable of blocks (iterables of labels)."""
        owner: dict[int, int] = {}
        block_list = [frozenset(b) for b in blocks]
        for idx, block in enumerate(block_list):
            if not block:
                raise ValueError("partition blocks must be nonempty")
            for x in block:
                if not 0 <= x < size:
                    raise ValueError(f"label {x} out of range for size {size}")
                if x in owner:
                    raise ValueError(f"label {x} appears in two blocks")
                owner[x] = idx
        if len(owner) != size:
            missing = sorted(set(range(size)) - set(owner))
            raise ValueError(f"labels {missing} not covered by any block")
        rename: dict[int, int] = {}
        rgs = []
        for x in range(size):
            idx = owner[x]
            if idx not in rename:
                rename[idx] = len(rename)
            rgs.append(rename[idx])
        return cls(tuple(rgs))

    @property
    def size(self) -> int:
        return len(self.rgs)

    @cached_property
    def blocks(self) -> tuple[frozenset[int], ...]:
        """Blocks ordered by minimum element."""
        count = max(self.rgs, default=-1) + 1
        out: list[set[int]] = [set() for _ in range(count)]
        for x, b in enumerate(self.rgs):
            out[b].add(x)
        return tuple(frozenset(b) for b in out)

    @property
    def block_count(self) -> int:
        return max(self.rgs, default=-1) + 1

    def block_of(self, x: int) -> frozenset[int]:
        """The unique block containing label x."""
        if not 0 <= x < self.size:
            raise ValueError(f"label {x} out of range for partition of size {self.size}")
        return self.blocks[self.rgs[x]]

    @property
    def max_block_size(self) -> int:
        return max((len(b) for b in self.blocks), default=0)

    @property
    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        return (len(self.rgs), self.rgs)

    def __repr__(self) -> str:
        inner = " ".join(
            "{" + " ".join(str(x) for x in sorted(b)) + "}" for b in self.blocks
        )
        return f"SetPartition[{inner}]"


def block_of(p: SetPartition, x: int) -> frozenset[int]:
    """Free-function form of SetPartition.block_of."""
    return p.block_of(x)
