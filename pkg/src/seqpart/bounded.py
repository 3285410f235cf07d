"""Length-bounded sequence encoding through a reserved square grid of labels.

A grid of (n+2) x (n+2) distinguished labels gives every sequence of length
at most n a private row: the first row disjoint from the sequence's entries.
Position m is recorded by putting the row's m-th cell into the block of the
m-th entry; the rest of the row forms a tail block of size at least two that
pins down both the row and the length.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .structures import Carrier, FinSeq, NotInRange, SetPartition


@dataclass(frozen=True)
class MarkerGrid:
    """An (n+2) x (n+2) grid of pairwise-distinct labels inside a carrier."""

    n: int
    carrier: Carrier
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("length bound must be nonnegative")
        side = self.n + 2
        object.__setattr__(
            self, "cells", tuple(tuple(row) for row in self.cells)
        )
        if len(self.cells) != side or any(len(row) != side for row in self.cells):
            raise ValueError(f"grid must be {side}x{side}")
        flat = [x for row in self.cells for x in row]
        if len(set(flat)) != side * side:
            raise ValueError("grid cells must be pairwise distinct")
        for x in flat:
            self.carrier.check_label(x)

    @classmethod
    def leading(cls, n: int, carrier: Carrier) -> "MarkerGrid":
        """Grid over the first (n+2)^2 carrier labels, row-major."""
        side = n + 2
        if carrier.size < side * side:
            raise ValueError(
                f"carrier of size {carrier.size} cannot hold a {side}x{side} grid"
            )
        cells = tuple(
            tuple(j * side + i for i in range(side)) for j in range(side)
        )
        return cls(n, carrier, cells)

    @property
    def side(self) -> int:
        return self.n + 2

    def cell(self, j: int, i: int) -> int:
        return self.cells[j][i]

    @cached_property
    def rows(self) -> tuple[frozenset[int], ...]:
        return tuple(frozenset(row) for row in self.cells)

    def row(self, j: int) -> frozenset[int]:
        return self.rows[j]

    @cached_property
    def cell_set(self) -> frozenset[int]:
        return frozenset(x for row in self.cells for x in row)


def least_avoiding_row(c: FinSeq, g: MarkerGrid) -> int:
    """The first row index whose cells are disjoint from the entries of c.

    A sequence of length <= n has at most n distinct entries, and the n+2
    rows are pairwise disjoint, so such a row always exists.
    """
    if len(c) > g.n:
        raise ValueError(f"sequence of length {len(c)} exceeds the bound {g.n}")
    used = c.entry_set
    for j in range(g.side):
        if used.isdisjoint(g.row(j)):
            return j
    raise RuntimeError("unreachable: fewer distinct entries than rows")


def bounded_seq_to_partition(c: FinSeq, g: MarkerGrid) -> SetPartition:
    """Encode a sequence of length <= n as a partition of the grid's carrier."""
    k = len(c)
    if k > g.n:
        raise ValueError(f"sequence of length {k} exceeds the bound {g.n}")
    for x in c.entries:
        g.carrier.check_label(x)
    j = least_avoiding_row(c, g)
    value_blocks: dict[int, set[int]] = {}
    for m, v in enumerate(c.entries):
        value_blocks.setdefault(v, {v}).add(g.cell(j, m))
    tail = {g.cell(j, i) for i in range(k, g.side)}
    blocks: list[set[int]] = list(value_blocks.values()) + [tail]
    covered = set().union(*blocks)
    blocks += [{x} for x in g.carrier.labels() if x not in covered]
    return SetPartition.from_blocks(blocks, g.carrier.size)


def bounded_partition_to_seq(p: SetPartition, g: MarkerGrid) -> FinSeq:
    """Recover the unique sequence whose bounded encoding is p.

    The tail block is the unique non-singleton block that sits inside one
    grid row and contains that row's last cell; its size fixes the length k,
    and each of the first k cells of the row shares a block with exactly one
    label outside the row, the corresponding entry.  Raises NotInRange for
    any shape violation, including residue that fails to re-encode.
    """
    if p.size != g.carrier.size:
        raise NotInRange(
            f"partition of size {p.size} over a carrier of size {g.carrier.size}"
        )
    candidates = []
    for j in range(g.side):
        block = p.block_of(g.cell(j, g.side - 1))
        if len(block) >= 2 and block <= g.row(j):
            candidates.append((j, block))
    if len(candidates) != 1:
        raise NotInRange(
            f"{len(candidates)} candidate tail blocks; the image has exactly one"
        )
    j, tail = candidates[0]
    k = g.side - len(tail)
    if tail != frozenset(g.cell(j, i) for i in range(k, g.side)):
        raise NotInRange(f"tail block {sorted(tail)} is not a suffix of row {j}")
    entries = []
    for m in range(k):
        block = p.block_of(g.cell(j, m))
        outside = [x for x in block if x not in g.row(j)]
        if len(outside) != 1:
            raise NotInRange(
                f"block {sorted(block)} of cell ({j},{m}) holds {len(outside)}"
                " labels outside the row; expected exactly one"
            )
        entries.append(outside[0])
    c = FinSeq(tuple(entries))
    if bounded_seq_to_partition(c, g) != p:
        raise NotInRange("partition does not re-encode to itself")
    return c
