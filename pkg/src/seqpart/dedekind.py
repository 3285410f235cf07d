"""Sequence-to-partition encoding that spends one marker label per position.

The carrier is a base set extended by a budget of marker labels.  A sequence
becomes the partition whose blocks pair each distinct value with the markers
of the positions where it occurs; everything untouched stays a singleton.
The decoder recovers the unique preimage and rejects anything outside the
image shape.
"""

from __future__ import annotations

from dataclasses import dataclass

from .structures import Carrier, FinSeq, NotInRange, SetPartition


@dataclass(frozen=True)
class MarkerUniverse:
    """A base carrier extended by marker labels base.size .. base.size+M-1."""

    base: Carrier
    marker_count: int

    def __post_init__(self) -> None:
        if self.marker_count < 0:
            raise ValueError("marker count must be nonnegative")

    @property
    def size(self) -> int:
        return self.base.size + self.marker_count

    def marker_label(self, j: int) -> int:
        if not 0 <= j < self.marker_count:
            raise ValueError(f"marker index {j} out of range")
        return self.base.size + j

    def is_marker(self, label: int) -> bool:
        return self.base.size <= label < self.size

    def marker_index(self, label: int) -> int:
        if not self.is_marker(label):
            raise ValueError(f"label {label} is not a marker")
        return label - self.base.size

    def combined_carrier(self) -> Carrier:
        """The full carrier; markers are named m0, m1, ... when the base is named."""
        if self.base.names is None:
            return Carrier(self.size)
        marker_names = tuple(f"m{j}" for j in range(self.marker_count))
        if set(marker_names) & set(self.base.names):
            raise ValueError("base names collide with marker names m0, m1, ...")
        return Carrier(self.size, self.base.names + marker_names)


def seq_to_partition_dedekind(a: FinSeq, u: MarkerUniverse) -> SetPartition:
    """Encode a sequence over the base as a partition of the combined carrier.

    Block structure: for each distinct value v of the sequence, {v} plus the
    markers of the positions holding v; singletons for unused base labels and
    for the markers beyond the sequence length.  Every block holds at most
    one base label, which is what makes decoding unambiguous.
    """
    if len(a) > u.marker_count:
        raise ValueError(
            f"sequence of length {len(a)} exceeds marker budget {u.marker_count}"
        )
    for x in a.entries:
        u.base.check_label(x)
    value_blocks: dict[int, set[int]] = {}
    for j, v in enumerate(a.entries):
        value_blocks.setdefault(v, {v}).add(u.marker_label(j))
    blocks = list(value_blocks.values())
    blocks += [{x} for x in u.base.labels() if x not in value_blocks]
    blocks += [{u.marker_label(j)} for j in range(len(a), u.marker_count)]
    return SetPartition.from_blocks(blocks, u.size)


def partition_to_seq_dedekind(p: SetPartition, u: MarkerUniverse) -> FinSeq:
    """Recover the unique sequence whose encoding is p.

    Raises NotInRange when p is not in the encoder's image: a non-singleton
    block with zero or several base labels, or a used-marker set that is not
    a prefix of the marker list.
    """
    if p.size != u.size:
        raise NotInRange(
            f"partition of size {p.size} over a combined carrier of size {u.size}"
        )
    assigned: dict[int, int] = {}
    for block in p.blocks:
        if len(block) == 1:
            continue
        base_labels = [x for x in block if x < u.base.size]
        if len(base_labels) != 1:
            raise NotInRange(
                f"non-singleton block {sorted(block)} holds {len(base_labels)} base"
                " labels; image blocks pair markers with exactly one"
            )
        v = base_labels[0]
        for x in block:
            if x != v:
                assigned[u.marker_index(x)] = v
    k = len(assigned)
    if set(assigned) != set(range(k)):
        raise NotInRange(
            f"used markers {sorted(assigned)} are not a prefix of the marker list"
        )
    return FinSeq(tuple(assigned[j] for j in range(k)))
