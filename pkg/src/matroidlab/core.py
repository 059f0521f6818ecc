"""Finite independence systems: explicit set families and rank-oracle matroids.

Subsets of the ground set are encoded as int bitmasks, element i = bit i.
Canonical order on subsets is ascending mask value; families and witnesses are
always reported in that order so repeated runs are byte-stable.

Two system kinds share one functional API:

* ExplicitSystem  -- the family of independent sets, stored outright.
* OracleMatroid   -- a rank function (uniform formula, graphic union-find,
                     linear elimination, or a wrapped explicit family).

Operations that sweep the full powerset are capped at SWEEP_CAP elements;
encodings themselves are capped at ENUM_CAP.  Both caps can be overridden per
call by passing cap=... where offered.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Collection, Iterable

from .errors import InputError, ResourceLimitError
from .util import iter_bits, submasks

ENUM_CAP = 24
SWEEP_CAP = 16


# ---------------------------------------------------------------------------
# ground sets and subset handling


@dataclass(frozen=True)
class GroundSet:
    """Ordered finite ground set. Element i carries labels[i] and bit i."""

    labels: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise InputError("duplicate labels in ground set")
        if len(self.labels) > ENUM_CAP:
            raise ResourceLimitError(
                f"ground set of size {len(self.labels)} exceeds encoding cap {ENUM_CAP}"
            )

    @classmethod
    def of_size(cls, m: int, prefix: str = "e") -> "GroundSet":
        return cls(tuple(f"{prefix}{i}" for i in range(m)))

    @classmethod
    def named(cls, labels: Iterable[str]) -> "GroundSet":
        return cls(tuple(str(x) for x in labels))

    @property
    def size(self) -> int:
        return len(self.labels)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"label {label!r} not in ground set") from None

    def mask(self, elements: Iterable[int]) -> int:
        m = 0
        for e in elements:
            if not 0 <= e < self.size:
                raise InputError(f"element {e} outside ground set of size {self.size}")
            m |= 1 << e
        return m

    def elements(self, mask: int) -> tuple[int, ...]:
        return tuple(iter_bits(mask))

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in iter_bits(mask))


def as_mask(ground: GroundSet, subset) -> int:
    """Accept an int mask or an iterable of element indices."""
    if isinstance(subset, int):
        if subset < 0 or subset > ground.full_mask:
            raise InputError("subset mask outside ground set")
        return subset
    return ground.mask(subset)


# ---------------------------------------------------------------------------
# system kinds


@dataclass(frozen=True)
class ExplicitSystem:
    """An independence system given by the explicit family of its members."""

    ground: GroundSet
    independents: frozenset[int]

    def __post_init__(self):
        full = self.ground.full_mask
        for s in self.independents:
            if s < 0 or s > full:
                raise InputError("family member outside ground set")

    def is_independent(self, mask: int) -> bool:
        return mask in self.independents

    def family(self) -> list[int]:
        return sorted(self.independents)

    @property
    def size(self) -> int:
        return self.ground.size


@dataclass(frozen=True)
class OracleMatroid:
    """A matroid presented by its rank function on subset masks."""

    ground: GroundSet
    rank_fn: Callable[[int], int] = field(compare=False)
    label: str = "matroid"

    def rank(self, mask: int) -> int:
        return self.rank_fn(mask)

    def is_independent(self, mask: int) -> bool:
        return self.rank_fn(mask) == mask.bit_count()

    @property
    def full_rank(self) -> int:
        return self.rank_fn(self.ground.full_mask)

    @property
    def size(self) -> int:
        return self.ground.size

    def __repr__(self):
        return f"OracleMatroid({self.label}, m={self.size})"


System = ExplicitSystem | OracleMatroid


def explicit_system(ground: GroundSet, subsets, check: bool = True) -> ExplicitSystem:
    """Build an ExplicitSystem from an iterable of element collections or masks.

    check=True insists on a nonempty downward-closed family containing the
    empty set; check=False stores the family raw, so axiom violations of the
    basic kind can be constructed and then diagnosed by check_axioms.
    """
    masks = frozenset(as_mask(ground, s) for s in subsets)
    sys_ = ExplicitSystem(ground, masks)
    if check:
        if 0 not in masks:
            raise InputError("family does not contain the empty set")
        for s in masks:
            for e in iter_bits(s):
                if s ^ (1 << e) not in masks:
                    raise InputError("family is not downward closed")
    return sys_


# ---------------------------------------------------------------------------
# canned constructors


def uniform_matroid(rank: int, size: int, labels=None) -> OracleMatroid:
    if rank < 0 or rank > size:
        raise InputError("uniform rank must lie in 0..size")
    ground = GroundSet.named(labels) if labels else GroundSet.of_size(size)

    def rk(mask: int, _r=rank) -> int:
        return min(mask.bit_count(), _r)

    return OracleMatroid(ground, rk, label=f"U({rank},{size})")


def free_matroid(size: int, labels=None) -> OracleMatroid:
    return uniform_matroid(size, size, labels)


def graphic_matroid(n_vertices: int, edges: Collection[tuple[int, int]], labels=None) -> OracleMatroid:
    """Cycle matroid of a multigraph; ground element i is edges[i]. Loops rank 0."""
    edges = tuple((int(u), int(v)) for u, v in edges)
    for u, v in edges:
        if not (0 <= u < n_vertices and 0 <= v < n_vertices):
            raise InputError("edge endpoint outside vertex range")
    ground = GroundSet.named(labels) if labels else GroundSet.of_size(len(edges))
    if ground.size != len(edges):
        raise InputError("ground size must match edge count")

    def rk(mask: int) -> int:
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        r = 0
        for i in iter_bits(mask):
            u, v = edges[i]
            for w in (u, v):
                if w not in parent:
                    parent[w] = w
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                r += 1
        return r

    return OracleMatroid(ground, rk, label=f"graphic(n={n_vertices},m={len(edges)})")


def from_explicit(sys_: ExplicitSystem) -> OracleMatroid:
    """Wrap an explicit family as a rank oracle (max member size inside S)."""
    fam = sys_.independents

    def rk(mask: int) -> int:
        best = 0
        for s in fam:
            if s & ~mask == 0:
                c = s.bit_count()
                if c > best:
                    best = c
        return best

    return OracleMatroid(sys_.ground, rk, label="explicit")


# ---------------------------------------------------------------------------
# family materialization and basic queries


def _check_sweep(ground: GroundSet, cap: int | None):
    cap = SWEEP_CAP if cap is None else cap
    if ground.size > cap:
        raise ResourceLimitError(
            f"powerset sweep over {ground.size} elements exceeds cap {cap}"
        )


def family_masks(sys_: System, cap: int | None = None) -> list[int]:
    """All independent sets as masks, ascending. Sweeps the powerset for oracles."""
    if isinstance(sys_, ExplicitSystem):
        return sys_.family()
    _check_sweep(sys_.ground, cap)
    full = sys_.ground.full_mask
    # downward closure lets us skip rank calls on sets with a dependent subset
    indep = bytearray(full + 1)
    out = []
    for mask in range(full + 1):
        if mask == 0:
            ok = sys_.is_independent(0)
        else:
            low = mask & -mask
            ok = bool(indep[mask ^ low]) and sys_.is_independent(mask)
        if ok:
            indep[mask] = 1
            out.append(mask)
    return out


def is_independent(sys_: System, subset) -> bool:
    return sys_.is_independent(as_mask(sys_.ground, subset))


def rank_of(sys_: System, subset=None, cap: int | None = None) -> int:
    """Rank of a subset: size of a largest independent set inside it."""
    mask = sys_.ground.full_mask if subset is None else as_mask(sys_.ground, subset)
    if isinstance(sys_, OracleMatroid):
        return sys_.rank(mask)
    best = 0
    for s in sys_.independents:
        if s & ~mask == 0 and s.bit_count() > best:
            best = s.bit_count()
    return best


def _downward_closed(fam: list[int], fam_set: set[int]) -> bool:
    return all(s ^ (1 << e) in fam_set for s in fam for e in iter_bits(s))


def maximal_masks(fam: list[int]) -> list[int]:
    """Inclusion-maximal members of a family of masks, ascending.

    One-bit extension only detects maximality in downward-closed families, so
    a non-closed family (possible with check=False) falls back to the exact
    quadratic test; such families are hand-built counterexamples and small.
    """
    fam_set = set(fam)
    if _downward_closed(fam, fam_set):
        width = max(fam).bit_length() if fam else 0
        return [
            s
            for s in fam
            if not any(not s & (1 << e) and (s | (1 << e)) in fam_set for e in range(width))
        ]
    return [s for s in fam if not any(t != s and t & s == s for t in fam)]


def enumerate_bases(sys_: System, cap: int | None = None) -> list[int]:
    """Maximal independent sets, ascending masks."""
    fam = family_masks(sys_, cap)
    if isinstance(sys_, OracleMatroid):
        # oracle families are closed by construction of family_masks
        fam_set = set(fam)
        m = sys_.ground.size
        return [
            s
            for s in fam
            if not any(not s & (1 << e) and (s | (1 << e)) in fam_set for e in range(m))
        ]
    return maximal_masks(fam)


def enumerate_circuits(sys_: System, cap: int | None = None) -> list[int]:
    """Minimal dependent sets, ascending masks. Loops are singleton circuits."""
    _check_sweep(sys_.ground, cap)
    fam_set = set(family_masks(sys_, cap))
    full = sys_.ground.full_mask
    out = []
    for mask in range(full + 1):
        if mask in fam_set or mask == 0:
            continue
        if all((mask ^ (1 << e)) in fam_set for e in iter_bits(mask)):
            out.append(mask)
    return out


# ---------------------------------------------------------------------------
# axiom conformance


AXIOM_SETS = {
    "I": ("I1", "I2", "I3", "I4"),
    "B": ("B1", "B2", "B3"),
    "F": ("F1", "F2", "F3", "F4"),
}


@dataclass
class AxiomReport:
    """Outcome of an axiom-system conformance run.

    verdicts maps axiom name to "pass", "fail", or "vacuous-pass"; witnesses
    holds mask payloads for failures, minimized by cardinality then by mask
    value, so reruns always produce the same certificate.
    """

    system_id: str
    ground: GroundSet
    verdicts: dict[str, str]
    witnesses: dict[str, dict]
    notes: dict[str, str]

    @property
    def conformant(self) -> bool:
        return all(v != "fail" for v in self.verdicts.values())

    def to_dict(self) -> dict:
        def namesof(mask):
            return list(self.ground.names(mask))

        wit = {
            ax: {k: namesof(v) for k, v in payload.items()}
            for ax, payload in self.witnesses.items()
        }
        return {
            "system_id": self.system_id,
            "verdicts": dict(sorted(self.verdicts.items())),
            "witnesses": {k: wit[k] for k in sorted(wit)},
            "notes": {k: self.notes[k] for k in sorted(self.notes)},
            "conformant": self.conformant,
        }


def _by_card(masks):
    return sorted(masks, key=lambda s: (s.bit_count(), s))


def check_axioms(sys_: System, system_id: str = "I", cap: int | None = None) -> AxiomReport:
    """Check one axiom system (I, B, or F) exhaustively on a finite ground set."""
    if system_id not in AXIOM_SETS:
        raise InputError(f"unknown axiom system {system_id!r}; expected I, B, or F")
    fam = family_masks(sys_, cap)
    fam_set = set(fam)
    ground = sys_.ground
    m = ground.size
    verdicts: dict[str, str] = {}
    witnesses: dict[str, dict] = {}
    notes: dict[str, str] = {}

    def downward_witness():
        for s in _by_card(fam):
            for e in iter_bits(s):
                if s ^ (1 << e) not in fam_set:
                    return s, s ^ (1 << e)
        return None

    bases = maximal_masks(fam)
    bases_set = set(bases)
    addable: dict[int, int] = {}
    for s in fam:
        a = 0
        for e in range(m):
            b = 1 << e
            if not s & b and (s | b) in fam_set:
                a |= b
        addable[s] = a

    if system_id == "I":
        verdicts["I1"] = "pass" if 0 in fam_set else "fail"
        if verdicts["I1"] == "fail":
            witnesses["I1"] = {}
        dw = downward_witness()
        verdicts["I2"] = "pass" if dw is None else "fail"
        if dw:
            witnesses["I2"] = {"set": dw[0], "missing_subset": dw[1]}
        verdicts["I3"], w3 = _check_i3(fam, addable, bases_set)
        if w3:
            witnesses["I3"] = w3
        verdicts["I4"] = "vacuous-pass"
        notes["I4"] = (
            "every nonempty finite family has a maximal member; the candidate set "
            "always contains A, so the axiom cannot fail on a finite ground set"
        )
    elif system_id == "B":
        verdicts["B1"] = "pass" if bases else "fail"
        if not bases:
            witnesses["B1"] = {}
        verdicts["B2"], w2 = _check_base_exchange(bases)
        if w2:
            witnesses["B2"] = w2
        verdicts["B3"] = "vacuous-pass"
        notes["B3"] = "subsets of maximal members form a finite family; see I4 note"
    else:
        verdicts["F1"] = "pass" if 0 in fam_set else "fail"
        if verdicts["F1"] == "fail":
            witnesses["F1"] = {}
        dw = downward_witness()
        verdicts["F2"] = "pass" if dw is None else "fail"
        if dw:
            witnesses["F2"] = {"set": dw[0], "missing_subset": dw[1]}
        verdicts["F3"], w3 = _check_augmentation(fam, fam_set)
        if w3:
            witnesses["F3"] = w3
        # on a finite ground every subset is finite and contains itself, so the
        # backward direction is automatic and F4 reduces to downward closure
        verdicts["F4"] = "pass" if dw is None else "fail"
        if dw:
            witnesses["F4"] = {"set": dw[0], "missing_subset": dw[1]}
        notes["F4"] = "finite ground: equivalent to downward closure"

    return AxiomReport(system_id, ground, verdicts, witnesses, notes)


def _check_i3(fam, addable, bases_set):
    """Maximality augmentation: non-maximal A, maximal B, some b in B-A extends A.

    A violating pair is one where no element of B extends A, i.e. B avoids A's
    addable mask entirely (addable never meets A, so B & X == 0 is the test).
    """
    base_by_card = _by_card(bases_set)
    for a in _by_card(fam):
        if a in bases_set:
            continue
        x = addable[a]
        for b in base_by_card:
            if b & x == 0:
                return "fail", {"A": a, "B": b}
    return "pass", None


def _check_base_exchange(bases):
    bases_set = set(bases)
    for b1 in _by_card(bases):
        for b2 in _by_card(bases):
            if b1 == b2:
                continue
            for x in iter_bits(b1 & ~b2):
                ok = False
                for y in iter_bits(b2 & ~b1):
                    if (b1 ^ (1 << x)) | (1 << y) in bases_set:
                        ok = True
                        break
                if not ok:
                    return "fail", {"B1": b1, "B2": b2, "x": 1 << x}
    return "pass", None


def _check_augmentation(fam, fam_set):
    by_card = _by_card(fam)
    for a in by_card:
        ca = a.bit_count()
        for b in by_card:
            if b.bit_count() <= ca:
                continue
            if not any((a | (1 << e)) in fam_set for e in iter_bits(b & ~a)):
                return "fail", {"A": a, "B": b}
    return "pass", None


def replay_witness(sys_: System, axiom: str, witness: dict, cap: int | None = None) -> bool:
    """True iff the witness still falsifies the axiom on sys_."""
    fam_set = set(family_masks(sys_, cap))

    def is_max(s):
        return s in fam_set and all(t == s or t & s != s for t in fam_set)

    if axiom in ("I2", "F2", "F4"):
        return witness["set"] in fam_set and witness["missing_subset"] not in fam_set
    if axiom == "I3":
        a, b = witness["A"], witness["B"]
        if a not in fam_set or is_max(a) or not is_max(b) or b not in fam_set:
            return False
        return all((a | (1 << e)) not in fam_set for e in iter_bits(b & ~a))
    if axiom == "B2":
        b1, b2, x = witness["B1"], witness["B2"], witness["x"]
        if not (is_max(b1) and is_max(b2) and b1 & x):
            return False
        return all(
            ((b1 ^ x) | (1 << y)) not in fam_set or not is_max((b1 ^ x) | (1 << y))
            for y in iter_bits(b2 & ~b1)
        )
    if axiom == "F3":
        a, b = witness["A"], witness["B"]
        if a not in fam_set or b not in fam_set or a.bit_count() >= b.bit_count():
            return False
        return all((a | (1 << e)) not in fam_set for e in iter_bits(b & ~a))
    if axiom in ("I1", "F1"):
        return 0 not in fam_set
    if axiom == "B1":
        return not fam_set or all(not is_max(s) for s in fam_set)
    raise InputError(f"no replay rule for axiom {axiom!r}")


# ---------------------------------------------------------------------------
# duality and minors


def dual(sys_: System) -> System:
    """Dual system. Oracles use the rank identity; explicit families use cobases.

    For a non-matroid family the rank identity is meaningless, so the dual is
    taken as all subsets of complements of maximal members.  For matroids the
    two constructions agree.
    """
    if isinstance(sys_, OracleMatroid):
        ground = sys_.ground
        full = ground.full_mask
        r_total = sys_.rank(full)
        inner = sys_.rank_fn

        def rk(mask: int) -> int:
            return mask.bit_count() + inner(full ^ mask) - r_total

        return OracleMatroid(ground, rk, label=f"dual({sys_.label})")
    full = sys_.ground.full_mask
    closure = set()
    for b in enumerate_bases(sys_):
        for s in submasks(full ^ b):
            closure.add(s)
    return ExplicitSystem(sys_.ground, frozenset(closure))


def _minor_ground(ground: GroundSet, keep_mask: int) -> tuple[GroundSet, list[int]]:
    keep = list(iter_bits(keep_mask))
    return GroundSet(tuple(ground.labels[i] for i in keep)), keep


def delete(sys_: System, subset) -> System:
    """Restriction to the complement of subset; ground relabels to the survivors."""
    x = as_mask(sys_.ground, subset)
    keep_mask = sys_.ground.full_mask ^ x
    new_ground, keep = _minor_ground(sys_.ground, keep_mask)
    if isinstance(sys_, OracleMatroid):
        inner = sys_.rank_fn

        def rk(mask: int) -> int:
            return inner(_expand(mask, keep))

        return OracleMatroid(new_ground, rk, label=f"{sys_.label}|del")
    fam = frozenset(_compress(s, keep) for s in sys_.independents if s & x == 0)
    return ExplicitSystem(new_ground, fam)


def contract(sys_: System, subset) -> System:
    """Contraction of subset.  Satisfies contract(m, X) == dual(delete(dual(m), X))."""
    x = as_mask(sys_.ground, subset)
    if isinstance(sys_, OracleMatroid):
        keep_mask = sys_.ground.full_mask ^ x
        new_ground, keep = _minor_ground(sys_.ground, keep_mask)
        inner = sys_.rank_fn
        rx = inner(x)

        def rk(mask: int) -> int:
            return inner(_expand(mask, keep) | x) - rx

        return OracleMatroid(new_ground, rk, label=f"{sys_.label}/con")
    return dual(delete(dual(sys_), subset))


def _expand(mask: int, keep: list[int]) -> int:
    out = 0
    for new_bit, old_bit in enumerate(keep):
        if mask & (1 << new_bit):
            out |= 1 << old_bit
    return out


def _compress(mask: int, keep: list[int]) -> int:
    out = 0
    for new_bit, old_bit in enumerate(keep):
        if mask & (1 << old_bit):
            out |= 1 << new_bit
    return out
