"""Iteration helpers that squeeze injective streams out of injections.

escape_iteration alternates two injections starting from a seed outside the
first one's range; first_occurrence_order and flatten_to_injective_stream
linearize the fresh labels of a run of sequences.
"""

from __future__ import annotations

from typing import Callable, Iterable, Iterator, TypeVar

from .structures import FinSeq

X = TypeVar("X")
Y = TypeVar("Y")


class DuplicateDetected(RuntimeError):
    """A repeated value surfaced where the preconditions promise distinctness."""


class StreamExhausted(RuntimeError):
    """The input stream ran out before another fresh label could be produced."""


def escape_iteration(
    f: Callable[[X], Y], g: Callable[[Y], X], seed: Y, count: int
) -> list[X]:
    """The orbit g(seed), g(f(g(seed))), ... of length count.

    Pairwise distinct whenever f and g are injective and seed avoids
    range(f).  A repeat is reported with the precondition that must have
    failed, identified by re-evaluating the colliding calls.
    """
    if count < 0:
        raise ValueError("count must be nonnegative")
    out: list[X] = []
    fed: list[Y] = []  # the value passed to g at each step
    seen: dict[X, int] = {}
    for step in range(count):
        y = seed if step == 0 else f(out[-1])
        x = g(y)
        if x in seen:
            j = seen[x]
            y_j = fed[j]
            if y_j == y:
                if j == 0:
                    detail = (
                        f"g input at step {step} equals the seed: "
                        "seed lies in range(f)"
                    )
                else:
                    detail = (
                        f"f maps the distinct values at steps {j - 1} and "
                        f"{step - 1} to the same point: f is not injective"
                    )
            else:
                detail = (
                    f"g maps the distinct values fed at steps {j} and {step} "
                    "to the same point: g is not injective"
                )
            raise DuplicateDetected(
                f"step {step} repeats the value of step {j}; {detail}"
            )
        seen[x] = step
        fed.append(y)
        out.append(x)
    return out


def first_occurrence_order(seqs: Iterable[FinSeq]) -> list[int]:
    """Union of entry sets, ordered by (first containing sequence, first position)."""
    seen: set[int] = set()
    out: list[int] = []
    for s in seqs:
        for x in s.entries:
            if x not in seen:
                seen.add(x)
                out.append(x)
    return out


def flatten_to_injective_stream(seqs: Iterable[FinSeq]) -> Iterator[int]:
    """Emit pairwise-distinct labels from a stream of sequences.

    Each emitted label is the first not-yet-emitted entry of the earliest
    consumed sequence that still contains a fresh entry; a new sequence is
    pulled only when the consumed prefix is spent.  Raises StreamExhausted
    when the input ends with no fresh label left.
    """
    consumed: list[FinSeq] = []
    cursors: list[int] = []  # per sequence: first position not known stale
    emitted: set[int] = set()
    source = iter(seqs)
    while True:
        fresh = None
        for idx, s in enumerate(consumed):
            pos = cursors[idx]
            while pos < len(s) and s[pos] in emitted:
                pos += 1
            cursors[idx] = pos
            if pos < len(s):
                fresh = s[pos]
                break
        if fresh is None:
            nxt = next(source, None)
            if nxt is None:
                raise StreamExhausted(
                    f"no fresh label after {len(emitted)} emissions and "
                    f"{len(consumed)} consumed sequences"
                )
            consumed.append(nxt)
            cursors.append(0)
            continue
        emitted.add(fresh)
        yield fresh
