"""Operators on finite independence systems.

Covers union, principal truncation, the difference system of a nested pair,
the difference/union duality check, spectra of nested pairs, minimal spanning
complements, the block counterexample generator, and a union conformance
runner.  Everything here is exhaustive and only meant for grounds under the
sweep cap; the symbolic analogues for infinite families live elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import (
    ENUM_CAP,
    AxiomReport,
    ExplicitSystem,
    GroundSet,
    OracleMatroid,
    System,
    check_axioms,
    dual,
    enumerate_bases,
    family_masks,
    maximal_masks,
    rank_of,
    uniform_matroid,
)
from .errors import InputError
from .util import INF, is_inf, iter_bits, sort_key, submasks


@dataclass(frozen=True)
class NestedPair:
    """Two systems on one ground with every inner-independent set outer-independent."""

    inner: System
    outer: System

    def __post_init__(self):
        if self.inner.ground.labels != self.outer.ground.labels:
            raise InputError("nested pair members must share one ground set")
        for s in family_masks(self.inner):
            if not self.outer.is_independent(s):
                raise InputError(
                    f"nesting violated: inner-independent mask {s:#x} is outer-dependent"
                )

    @property
    def ground(self) -> GroundSet:
        return self.inner.ground


@dataclass
class SpectrumReport:
    """Value set of |F - B| over nested base pairs, with one witness per value.

    values is sorted ascending with the infinity marker last.  witnesses maps
    each value to a JSON-ready payload; raw keeps the native witness objects
    (mask pairs here, symbolic edge sets in the periodic engine).  complete is
    False only when a bounded symbolic search had to stop early.
    """

    values: tuple
    witnesses: dict
    bounds: dict
    raw: dict = field(default_factory=dict, repr=False)
    complete: bool = True

    def to_dict(self) -> dict:
        return {
            "values": ["inf" if is_inf(v) else v for v in self.values],
            "witnesses": {
                ("inf" if is_inf(v) else str(v)): self.witnesses[v] for v in self.values
            },
            "bounds": dict(sorted(self.bounds.items())),
            "complete_within_bounds": self.complete,
        }


# ---------------------------------------------------------------------------
# union


def _remap(mask: int, mapping: list[int]) -> int:
    out = 0
    for i in iter_bits(mask):
        out |= 1 << mapping[i]
    return out


def union(m1: System, m2: System, cap: int | None = None) -> ExplicitSystem:
    """Independence union: sets S1 | S2 with Si independent in mi.

    Grounds merge by label, so shared labels become shared elements.  For
    downward-closed inputs the family is generated from maximal-member unions;
    otherwise every pair is combined directly (diagnostic families are small).
    """
    seen = set(m1.ground.labels)
    labels = m1.ground.labels + tuple(l for l in m2.ground.labels if l not in seen)
    ground = GroundSet(labels)
    map1 = [ground.index(l) for l in m1.ground.labels]
    map2 = [ground.index(l) for l in m2.ground.labels]
    fam1 = [_remap(s, map1) for s in family_masks(m1, cap)]
    fam2 = [_remap(s, map2) for s in family_masks(m2, cap)]

    def closed(fam):
        fs = set(fam)
        return all(s ^ (1 << e) in fs for s in fam for e in iter_bits(s))

    out: set[int] = set()
    if closed(fam1) and closed(fam2):
        for b1 in maximal_masks(sorted(fam1)):
            for b2 in maximal_masks(sorted(fam2)):
                out.update(submasks(b1 | b2))
    else:
        out = {s1 | s2 for s1 in fam1 for s2 in fam2}
    return ExplicitSystem(ground, frozenset(out))


def check_unionable(m1: System, m2: System, cap: int | None = None) -> AxiomReport:
    """Full I-axiom conformance of union(m1, m2); the verdict is the caller's."""
    return check_axioms(union(m1, m2, cap), "I", cap)


# ---------------------------------------------------------------------------
# principal truncation


def truncate_top(m: System, k: int, cap: int | None = None) -> System:
    """Sets independent and still extendable by exactly k more elements.

    On a matroid this is the principal truncation: rank drops by k.  Oracle
    input gives an oracle with rank min(r(S), r(E)-k); explicit input filters
    the family literally, which also covers non-matroid systems.
    """
    if k < 0:
        raise InputError("truncation depth must be a natural number")
    if isinstance(m, OracleMatroid):
        r_total = m.full_rank
        if r_total < k:
            raise InputError(f"cannot truncate rank {r_total} by {k}")
        inner = m.rank_fn
        ceiling = r_total - k

        def rk(mask: int) -> int:
            return min(inner(mask), ceiling)

        return OracleMatroid(m.ground, rk, label=f"{m.label}[{k}]")
    fam = family_masks(m, cap)
    if rank_of(m) < k:
        raise InputError(f"cannot truncate rank {rank_of(m)} by {k}")
    by_size: dict[int, list[int]] = {}
    for s in fam:
        by_size.setdefault(s.bit_count(), []).append(s)
    keep = set()
    for s in fam:
        target = s.bit_count() + k
        if any(t & s == s for t in by_size.get(target, ())):
            keep.add(s)
    return ExplicitSystem(m.ground, frozenset(keep))


# ---------------------------------------------------------------------------
# nested-pair operators


def _nested_base_pairs(pair: NestedPair, cap: int | None = None):
    inner_bases = enumerate_bases(pair.inner, cap)
    outer_bases = enumerate_bases(pair.outer, cap)
    return inner_bases, outer_bases


def difference(outer: System, inner: System, cap: int | None = None) -> ExplicitSystem:
    """The system of subsets of F - B over nested base pairs B of inner, F of outer."""
    pair = NestedPair(inner, outer)
    inner_bases, outer_bases = _nested_base_pairs(pair, cap)
    fam: set[int] = set()
    for f in outer_bases:
        for b in inner_bases:
            if b & ~f == 0:
                fam.update(submasks(f & ~b))
    return ExplicitSystem(pair.ground, frozenset(fam))


def verify_difference_duality(
    outer: System, inner: System, cap: int | None = None
) -> tuple[bool, int | None]:
    """Compare difference(outer, inner) against dual(union(dual(outer), inner)).

    Returns (equal, witness): witness is the smallest mask in exactly one of
    the two families, None when they agree.  Equality is a theorem for nested
    finite matroids; running it on non-matroid systems may legitimately differ.
    """
    left = set(family_masks(difference(outer, inner, cap), cap))
    right_sys = dual(union(dual(outer), inner, cap))
    right = set(family_masks(right_sys, cap))
    if left == right:
        return True, None
    return False, min(left ^ right)


def spectrum(pair: NestedPair, cap: int | None = None) -> SpectrumReport:
    """All values |F - B| over nested base pairs, one canonical witness each."""
    inner_bases, outer_bases = _nested_base_pairs(pair, cap)
    raw: dict[int, tuple[int, int]] = {}
    for b in inner_bases:
        for f in outer_bases:
            if b & ~f:
                continue
            v = (f & ~b).bit_count()
            if v not in raw:
                raw[v] = (b, f)
    ground = pair.ground
    witnesses = {
        v: {"base": list(ground.names(b)), "outer_base": list(ground.names(f))}
        for v, (b, f) in raw.items()
    }
    return SpectrumReport(
        values=tuple(sorted(raw, key=sort_key)),
        witnesses=witnesses,
        bounds={"inner_bases": len(inner_bases), "outer_bases": len(outer_bases)},
        raw=raw,
    )


def smin_enumerate(pair: NestedPair, cap: int | None = None) -> list[int]:
    """Minimal sets (E - F) | B over nested base pairs; ascending masks.

    These are the minimal spanning complements: remove an outer cobase, keep
    an inner base disjoint from it.
    """
    inner_bases, outer_bases = _nested_base_pairs(pair, cap)
    full = pair.ground.full_mask
    candidates: set[int] = set()
    for f in outer_bases:
        co = full ^ f
        for b in inner_bases:
            if b & ~f == 0:
                candidates.add(co | b)
    minimal = [
        s for s in candidates if not any(t != s and t & s == t for t in candidates)
    ]
    return sorted(minimal)


# ---------------------------------------------------------------------------
# block counterexample generator


def ch4_blocks(r: int) -> list[tuple[int, ...]]:
    """Consecutive blocks of sizes 1..r over elements 0..r(r+1)/2-1."""
    if r < 1:
        raise InputError("block count must be at least 1")
    out = []
    start = 0
    for i in range(1, r + 1):
        out.append(tuple(range(start, start + i)))
        start += i
    return out


def ch4_system(r: int) -> NestedPair:
    """Nested pair whose inner member is the block-avoidance system.

    Ground is {1..r(r+1)/2} (labels are 1-based numerals); a set is inner-
    independent when it misses at least one block entirely; the outer member
    is free.  Inner bases are the block complements, so the spectrum is 1..r,
    and for r >= 2 the inner system fails I3.
    """
    blocks = ch4_blocks(r)
    n = r * (r + 1) // 2
    if n > ENUM_CAP:
        raise InputError(f"r={r} needs {n} elements, over the encoding cap {ENUM_CAP}")
    ground = GroundSet(tuple(str(i + 1) for i in range(n)))
    full = ground.full_mask
    fam: set[int] = set()
    for block in blocks:
        bm = ground.mask(block)
        fam.update(submasks(full ^ bm))
    inner = ExplicitSystem(ground, frozenset(fam))
    outer = uniform_matroid(n, n, labels=ground.labels)
    return NestedPair(inner, outer)


def ch4_i3_witness(r: int) -> dict[str, int]:
    """The canonical maximality-failure pair for ch4_system(r), r >= 2.

    A drops the first block and the first element of the second block; B is
    the complement of the second block.  A's only extension is the dropped
    second-block element, which B does not contain, and the element B does
    offer leaves every block inhabited.
    """
    if r < 2:
        raise InputError("the block system satisfies I3 for r < 2")
    n = r * (r + 1) // 2
    full = (1 << n) - 1
    t1 = 0b001  # first block = element 0
    t2 = 0b110  # second block = elements 1, 2
    return {"A": full ^ (t1 | 0b010), "B": full ^ t2}
