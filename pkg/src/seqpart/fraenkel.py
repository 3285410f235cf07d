"""Finite shadow of the basic permutation model over a set of atoms.

Atoms are a carrier acted on by permutations; an object is supported by a
set E of atoms when every permutation fixing E pointwise fixes the object.
fix(E) is handled through adjacent transpositions of the free atoms, which
generate it.  The certifier decides whether a fix(E)-equivariant injection
exists between two finite element sets by exact bipartite matching of
orbits, and backs a NO answer with a re-checkable certificate.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .counting import (
    arrangement_count,
    bell_count,
    enumerate_injective_sequences,
    enumerate_partitions,
)
from .structures import Carrier, FinSeq, SetPartition

# Atoms are just a carrier with size >= 2; no separate class is needed.
AtomSet = Carrier

Support = frozenset

DEFAULT_GROUP_LIMIT = 5040  # 7!
DEFAULT_BUNDLE_ATOM_LIMIT = 6


class GroupTooLarge(RuntimeError):
    """Group enumeration would exceed the configured element limit."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of 0..degree-1 stored as its image tuple."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "images", tuple(self.images))
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"{self.images} is not a permutation")

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls(tuple(range(degree)))

    @classmethod
    def transposition(cls, degree: int, a: int, b: int) -> "Permutation":
        """The cyclic permutation (a;b) swapping a and b."""
        images = list(range(degree))
        images[a], images[b] = images[b], images[a]
        return cls(tuple(images))

    @classmethod
    def from_cycle(cls, degree: int, cycle: tuple[int, ...]) -> "Permutation":
        images = list(range(degree))
        for pos, x in enumerate(cycle):
            images[x] = cycle[(pos + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: (p * q)(x) = p(q(x))."""
        return Permutation(tuple(self.images[y] for y in other.images))

    def inverse(self) -> "Permutation":
        images = [0] * self.degree
        for x, y in enumerate(self.images):
            images[y] = x
        return Permutation(tuple(images))

    def is_identity(self) -> bool:
        return all(y == x for x, y in enumerate(self.images))

    def __repr__(self) -> str:
        moved = [x for x in range(self.degree) if self.images[x] != x]
        if not moved:
            return f"Permutation(id/{self.degree})"
        return f"Permutation({self.images})"


def apply_to_seq(p: Permutation, s: FinSeq) -> FinSeq:
    """Pointwise action on a sequence."""
    return FinSeq(tuple(p(x) for x in s.entries), injective=s.injective)


def apply_to_partition(p: Permutation, part: SetPartition) -> SetPartition:
    """Blockwise action, re-canonicalized to RGS form."""
    return SetPartition.from_blocks(
        ({p(x) for x in block} for block in part.blocks), part.size
    )


def act(p: Permutation, x):
    """Action dispatch for the element kinds the orbit machinery meets."""
    if isinstance(x, FinSeq):
        return apply_to_seq(p, x)
    if isinstance(x, SetPartition):
        return apply_to_partition(p, x)
    if isinstance(x, int):
        return p(x)
    raise TypeError(f"no group action defined on {type(x).__name__}")


def _element_key(x):
    if isinstance(x, FinSeq):
        return (0,) + x.sort_key
    if isinstance(x, SetPartition):
        return (1,) + x.sort_key
    return (2, x)


def _check_support(atoms: Carrier, support: Iterable[int]) -> frozenset:
    e = frozenset(support)
    for x in e:
        atoms.check_label(x)
    return e


def fix_generators(atoms: Carrier, support: Iterable[int]) -> list[Permutation]:
    """Adjacent transpositions of the free atoms; they generate fix(support)."""
    e = _check_support(atoms, support)
    free = sorted(set(atoms.labels()) - e)
    return [
        Permutation.transposition(atoms.size, a, b)
        for a, b in zip(free, free[1:])
    ]


def is_supported(x, atoms: Carrier, support: Iterable[int]) -> bool:
    """Whether every permutation fixing the support pointwise fixes x.

    Checking the generators suffices because invariance under a generating
    set is invariance under the generated group.
    """
    return all(act(g, x) == x for g in fix_generators(atoms, support))


def supported_sequences(atoms: Carrier, support: Iterable[int]) -> frozenset:
    """All injective sequences over the atoms supported by the given set.

    Requires at least two free atoms, which is what forces every supported
    sequence to stay inside the support; the result is cross-checked against
    the directly-built set of injective sequences over the support.
    """
    e = _check_support(atoms, support)
    if atoms.size - len(e) < 2:
        raise ValueError("need at least two free atoms")
    gens = fix_generators(atoms, e)
    filtered = frozenset(
        s
        for s in enumerate_injective_sequences(atoms)
        if all(apply_to_seq(g, s) == s for g in gens)
    )
    inside = Carrier(len(e))
    relabel = sorted(e)
    direct = frozenset(
        FinSeq(tuple(relabel[i] for i in s.entries), injective=True)
        for s in enumerate_injective_sequences(inside)
    )
    if filtered != direct:
        raise RuntimeError("support characterization failed for sequences")
    if len(filtered) != arrangement_count(len(e)):
        raise RuntimeError("supported sequence count disagrees with the recurrence")
    return filtered


def supported_partitions(
    atoms: Carrier, support: Iterable[int], block_bound: int
) -> frozenset:
    """All partitions with blocks <= block_bound supported by the given set.

    Requires 1 <= block_bound < number of free atoms: under that bound the
    only invariant arrangement of the free atoms is all-singletons, so the
    supported partitions are exactly the partitions of the support extended
    by free singletons.  The filtered set is cross-checked against that
    direct construction.
    """
    e = _check_support(atoms, support)
    free = sorted(set(atoms.labels()) - e)
    if not 1 <= block_bound < len(free):
        raise ValueError(
            f"block bound {block_bound} outside [1, {len(free)}) for "
            f"{len(free)} free atoms"
        )
    gens = fix_generators(atoms, e)
    filtered = frozenset(
        p
        for p in enumerate_partitions(atoms, max_block=block_bound)
        if all(apply_to_partition(g, p) == p for g in gens)
    )
    relabel = sorted(e)
    direct = set()
    for y in enumerate_partitions(Carrier(len(e)), max_block=block_bound):
        blocks = [{relabel[i] for i in block} for block in y.blocks]
        blocks += [{x} for x in free]
        direct.add(SetPartition.from_blocks(blocks, atoms.size))
    if filtered != frozenset(direct):
        raise RuntimeError("support characterization failed for partitions")
    return filtered


def generate_group(
    generators: Iterable[Permutation],
    degree: int,
    limit: int = DEFAULT_GROUP_LIMIT,
) -> tuple[Permutation, ...]:
    """Close a generating set under composition; deterministic element order."""
    identity = Permutation.identity(degree)
    elements = {identity}
    frontier = [identity]
    gens = list(generators)
    for g in gens:
        if g.degree != degree:
            raise ValueError("generator degree mismatch")
    while frontier:
        new_frontier = []
        for h in frontier:
            for g in gens:
                candidate = g * h
                if candidate not in elements:
                    elements.add(candidate)
                    new_frontier.append(candidate)
                    if len(elements) > limit:
                        raise GroupTooLarge(
                            f"group exceeds the limit of {limit} elements"
                        )
        frontier = new_frontier
    return tuple(sorted(elements, key=lambda p: p.images))


def fix_group(
    atoms: Carrier,
    support: Iterable[int],
    limit: int = DEFAULT_GROUP_LIMIT,
) -> tuple[Permutation, ...]:
    """The full group fixing the support pointwise, enumerated."""
    return generate_group(fix_generators(atoms, support), atoms.size, limit)


@dataclass(frozen=True)
class OrbitRecord:
    """One orbit with its representative and the representative's stabilizer."""

    representative: object
    elements: tuple
    stabilizer: tuple[Permutation, ...]
    group_order: int

    def __post_init__(self) -> None:
        if len(self.elements) * len(self.stabilizer) != self.group_order:
            raise ValueError(
                f"orbit size {len(self.elements)} times stabilizer size "
                f"{len(self.stabilizer)} is not the group order {self.group_order}"
            )

    @property
    def size(self) -> int:
        return len(self.elements)


def orbit_decomposition(
    elements: Iterable, group: tuple[Permutation, ...]
) -> tuple[OrbitRecord, ...]:
    """Partition an action-closed element set into orbits."""
    pool = set(elements)
    ordered = sorted(pool, key=_element_key)
    records = []
    seen = set()
    for x in ordered:
        if x in seen:
            continue
        orbit = set()
        stabilizer = []
        for g in group:
            y = act(g, x)
            orbit.add(y)
            if y == x:
                stabilizer.append(g)
        if not orbit <= pool:
            raise ValueError("element set is not closed under the group action")
        seen |= orbit
        records.append(
            OrbitRecord(
                representative=x,
                elements=tuple(sorted(orbit, key=_element_key)),
                stabilizer=tuple(stabilizer),
                group_order=len(group),
            )
        )
    return tuple(records)


def _max_matching(
    left_count: int, adjacency: list[tuple[int, ...]]
) -> tuple[dict[int, int], tuple[int, ...]]:
    """Augmenting-path bipartite matching.

    Returns the left-to-right matching and, when it is not left-perfect, a
    set of left vertices S with |N(S)| < |S| (a Hall violator).
    """
    match_right: dict[int, int] = {}

    def try_assign(u: int, visited: set[int]) -> bool:
        for v in adjacency[u]:
            if v in visited:
                continue
            visited.add(v)
            if v not in match_right or try_assign(match_right[v], visited):
                match_right[v] = u
                return True
        return False

    unmatched = []
    for u in range(left_count):
        if not try_assign(u, set()):
            unmatched.append(u)
    match_left = {u: v for v, u in match_right.items()}
    if not unmatched:
        return match_left, ()
    # Alternating reachability from an unmatched left vertex yields a violator.
    reach_left = set(unmatched)
    reach_right: set[int] = set()
    grew = True
    while grew:
        grew = False
        for u in list(reach_left):
            for v in adjacency[u]:
                if v not in reach_right:
                    reach_right.add(v)
                    grew = True
                    if v in match_right and match_right[v] not in reach_left:
                        reach_left.add(match_right[v])
    return match_left, tuple(sorted(reach_left))


@dataclass(frozen=True)
class NonexistenceCertificate:
    """Why no equivariant injection exists, in independently re-checkable form.

    The orbit-level obstruction: an injective assignment of every X orbit to
    an admissible Y orbit (some representative pair with equal stabilizers)
    does not exist, witnessed by a Hall violator.  The fixed-point counts
    give the pigeonhole comparison, flagged when it alone already decides.
    """

    group_order: int
    x_fixed_count: int
    y_fixed_count: int
    pigeonhole_sufficient: bool
    x_orbits: tuple[OrbitRecord, ...]
    y_orbits: tuple[OrbitRecord, ...]
    admissible: tuple[tuple[int, ...], ...]
    matching_size: int
    hall_witness: tuple[int, ...]

    def to_record(self) -> dict:
        neighborhood = sorted(
            {v for u in self.hall_witness for v in self.admissible[u]}
        )
        return {
            "kind": "nonexistence-certificate",
            "group_order": self.group_order,
            "x_fixed": self.x_fixed_count,
            "y_fixed": self.y_fixed_count,
            "pigeonhole_sufficient": self.pigeonhole_sufficient,
            "x_orbit_sizes": [r.size for r in self.x_orbits],
            "y_orbit_sizes": [r.size for r in self.y_orbits],
            "admissible": [list(row) for row in self.admissible],
            "matching_size": self.matching_size,
            "x_orbit_count": len(self.x_orbits),
            "hall_witness": list(self.hall_witness),
            "hall_neighborhood": neighborhood,
        }


@dataclass
class CertifierResult:
    exists: bool
    mapping: dict | None
    certificate: NonexistenceCertificate | None


def _stabilizer_sets(group, elements):
    out = {}
    for x in elements:
        out[x] = frozenset(g for g in group if act(g, x) == x)
    return out


def equivariant_injection_exists(
    x_elements: Iterable, y_elements: Iterable, group: tuple[Permutation, ...]
) -> CertifierResult:
    """Decide whether a group-equivariant injection X -> Y exists.

    On an orbit, an equivariant injection forces equal orbit sizes and equal
    stabilizers of matched representatives, and distinct X orbits must land
    in distinct Y orbits; so existence is exactly a left-perfect matching in
    the orbit graph whose edges join orbits with an equal-stabilizer
    representative pair.  YES returns an explicit verified map, NO a
    certificate.
    """
    x_set = set(x_elements)
    y_set = set(y_elements)
    x_orbits = orbit_decomposition(x_set, group)
    y_orbits = orbit_decomposition(y_set, group)
    y_stabs = {
        idx: _stabilizer_sets(group, rec.elements) for idx, rec in enumerate(y_orbits)
    }
    adjacency = []
    witnesses: dict[tuple[int, int], object] = {}
    for xi, xrec in enumerate(x_orbits):
        x_stab = frozenset(xrec.stabilizer)
        row = []
        for yi, yrec in enumerate(y_orbits):
            if xrec.size != yrec.size:
                continue
            for y in yrec.elements:
                if y_stabs[yi][y] == x_stab:
                    row.append(yi)
                    witnesses[(xi, yi)] = y
                    break
        adjacency.append(tuple(row))
    matching, violator = _max_matching(len(x_orbits), adjacency)
    if len(matching) == len(x_orbits):
        mapping: dict = {}
        for xi, yi in sorted(matching.items()):
            rep = x_orbits[xi].representative
            target = witnesses[(xi, yi)]
            for g in group:
                src = act(g, rep)
                dst = act(g, target)
                if mapping.get(src, dst) != dst:
                    raise RuntimeError("orbit map is not well defined")
                mapping[src] = dst
        if set(mapping) != x_set:
            raise RuntimeError("constructed map does not cover X")
        if len(set(mapping.values())) != len(mapping):
            raise RuntimeError("constructed map is not injective")
        for g in group:
            for src, dst in mapping.items():
                if mapping[act(g, src)] != act(g, dst):
                    raise RuntimeError("constructed map is not equivariant")
        return CertifierResult(exists=True, mapping=mapping, certificate=None)
    x_fixed = sum(1 for rec in x_orbits if rec.size == 1)
    y_fixed = sum(1 for rec in y_orbits if rec.size == 1)
    certificate = NonexistenceCertificate(
        group_order=len(group),
        x_fixed_count=x_fixed,
        y_fixed_count=y_fixed,
        pigeonhole_sufficient=x_fixed > y_fixed,
        x_orbits=x_orbits,
        y_orbits=y_orbits,
        admissible=tuple(adjacency),
        matching_size=len(matching),
        hall_witness=violator,
    )
    return CertifierResult(exists=False, mapping=None, certificate=certificate)


def recheck_nonexistence(
    certificate: NonexistenceCertificate,
    x_elements: Iterable,
    y_elements: Iterable,
    group: tuple[Permutation, ...],
) -> bool:
    """Re-verify a NO certificate from scratch.

    Fixed-point counts are recomputed by direct scans of the element sets,
    the Hall violator is checked against the recomputed orbit graph, and the
    matching is re-run; any disagreement with the certificate returns False.
    """
    x_set = set(x_elements)
    y_set = set(y_elements)
    x_fixed = sum(1 for x in x_set if all(act(g, x) == x for g in group))
    y_fixed = sum(1 for y in y_set if all(act(g, y) == y for g in group))
    if x_fixed != certificate.x_fixed_count or y_fixed != certificate.y_fixed_count:
        return False
    if certificate.pigeonhole_sufficient != (x_fixed > y_fixed):
        return False
    result = equivariant_injection_exists(x_set, y_set, group)
    if result.exists or result.certificate is None:
        return False
    fresh = result.certificate
    if fresh.matching_size >= len(fresh.x_orbits):
        return False
    violator = set(certificate.hall_witness)
    if violator:
        neighborhood = {
            yi for xi in violator for yi in fresh.admissible[xi] if xi < len(fresh.admissible)
        }
        if len(neighborhood) >= len(violator):
            return False
    return fresh.matching_size == certificate.matching_size


@dataclass
class SupportReport:
    """Counts and certificate for one support size in the reporting bundle."""

    atoms: int
    support_size: int
    block_bound: int
    supported_sequences_count: int
    supported_partitions_count: int
    partitions_of_support_count: int
    inequality_claimed: bool
    inequality_holds: bool | None
    result: CertifierResult

    def to_record(self) -> dict:
        record = {
            "kind": "support-report",
            "atoms": self.atoms,
            "support_size": self.support_size,
            "block_bound": self.block_bound,
            "supported_sequences": self.supported_sequences_count,
            "supported_partitions": self.supported_partitions_count,
            "partitions_of_support": self.partitions_of_support_count,
            "inequality": (
                f"{self.supported_sequences_count}>{self.partitions_of_support_count}"
                if self.inequality_claimed
                else None
            ),
            "inequality_holds": self.inequality_holds,
            "equivariant_injection": self.result.exists,
        }
        if self.result.certificate is not None:
            record["certificate"] = self.result.certificate.to_record()
        return record


@dataclass
class FraenkelBundle:
    """Per-support-size reports, serializable as line-delimited records."""

    atom_count: int
    block_bound: int
    reports: list[SupportReport]

    def to_records(self) -> list[dict]:
        return [report.to_record() for report in self.reports]

    def to_jsonl(self) -> str:
        return "\n".join(
            json.dumps(record, sort_keys=True) for record in self.to_records()
        )


def fraenkel_report(
    atom_count: int,
    support_sizes: Iterable[int],
    block_bound: int,
    atom_limit: int = DEFAULT_BUNDLE_ATOM_LIMIT,
) -> FraenkelBundle:
    """Run the full mechanism for each support size and bundle the evidence.

    For each size e: the supported injective sequences number a(e) and the
    supported bounded partitions embed into the partitions of the support,
    so for e >= 1 the strict count inequality a(e) > B(e) pins the
    obstruction; the certifier then produces the explicit NO certificate for
    an equivariant injection from all injective sequences to all bounded
    partitions.
    """
    if atom_count > atom_limit:
        raise ValueError(f"atom count {atom_count} exceeds the limit {atom_limit}")
    if atom_count < 2:
        raise ValueError("need at least two atoms")
    sizes = list(support_sizes)
    for e in sizes:
        if e < 0:
            raise ValueError("support sizes must be nonnegative")
        if not 1 <= block_bound < atom_count - e:
            raise ValueError(
                f"block bound {block_bound} outside [1, {atom_count - e}) "
                f"for support size {e}"
            )
    atoms = Carrier(atom_count)
    all_sequences = frozenset(enumerate_injective_sequences(atoms))
    all_partitions = frozenset(enumerate_partitions(atoms, max_block=block_bound))
    reports = []
    for e in sizes:
        support = frozenset(range(e))
        seqs = supported_sequences(atoms, support)
        parts = supported_partitions(atoms, support, block_bound)
        part_e = bell_count(e)
        group = fix_group(atoms, support)
        result = equivariant_injection_exists(all_sequences, all_partitions, group)
        reports.append(
            SupportReport(
                atoms=atom_count,
                support_size=e,
                block_bound=block_bound,
                supported_sequences_count=len(seqs),
                supported_partitions_count=len(parts),
                partitions_of_support_count=part_e,
                inequality_claimed=e >= 1,
                inequality_holds=(len(seqs) > part_e) if e >= 1 else None,
                result=result,
            )
        )
    return FraenkelBundle(atom_count=atom_count, block_bound=block_bound, reports=reports)
