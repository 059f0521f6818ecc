"""Finite edits of periodic families: deletions, coloop contraction, batch scans.

Edits touch only finitely many edge instances.  Early-window instances are
first absorbed into the prefix (unrolling), which keeps the repeating zone
untouched and the symbolic engine applicable to the edited family.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .cycles import (
    GluingSpec,
    _candidate_sets,
    _gluing,
    cycle_independent,
    cycle_is_base,
    edge_sets_difference,
    edge_sets_intersect,
    edge_sets_union,
    glue_all,
    spectrum_search,
)
from .errors import InputError
from .ops import NestedPair, SpectrumReport, spectrum as finite_spectrum
from .periodic import (
    PeriodicGraphSpec,
    UPEdgeSet,
    contains_finite_cycle,
    shift_edge_set,
    unroll,
)
from .util import INF


def _slot_len(g: PeriodicGraphSpec, kind: str) -> int:
    return len(
        {"win": g.window_edges, "spl": g.splice_edges, "apx": g.apex_edges}[kind]
    )


def _collect_finite(g: PeriodicGraphSpec, instances) -> UPEdgeSet:
    """Validate an iterable of single edge instances; reject recurring slots."""
    pre = set()
    explicit = set()
    for item in instances:
        inst = tuple(item)
        if len(inst) == 2 and inst[0] == "pre":
            if not 0 <= inst[1] < len(g.prefix_edges):
                raise InputError(f"prefix edge index {inst[1]} out of range")
            pre.add(inst[1])
            continue
        if len(inst) == 2:
            raise InputError(
                f"{inst!r} names a recurring slot; finite edits take single instances"
            )
        kind, j, w = inst
        if kind not in ("win", "spl", "apx") or not 0 <= j < _slot_len(g, kind):
            raise InputError(f"no such edge slot: {inst!r}")
        if not isinstance(w, int) or w < 0:
            raise InputError(f"window index must be a natural number: {inst!r}")
        explicit.add((kind, j, w))
    p = 1 + max((w for _, _, w in explicit), default=-1)
    return UPEdgeSet(p, frozenset(pre), frozenset(explicit), frozenset())


def delete_edges(g: PeriodicGraphSpec, instances) -> PeriodicGraphSpec:
    """Remove finitely many edge instances, returning a standalone family.

    Windows holding a removal are absorbed into the prefix first, so the
    result's window 0 is the first untouched window of the input.
    """
    doomed = _collect_finite(g, instances)
    if not (doomed.prefix_present or doomed.explicit):
        return g
    k = doomed.p
    rolled = unroll(g, k)
    ids = shift_edge_set(g, doomed, k).prefix_present
    kept = tuple(e for i, e in enumerate(rolled.prefix_edges) if i not in ids)
    return replace(rolled, prefix_edges=kept)


@dataclass(frozen=True)
class ContractedSystem:
    """The glued system with a certified coloop set removed from every base.

    Independence of s here means s plus the contracted edges is independent
    there; bases correspond by dropping the contracted edges, which leaves
    every defect value unchanged.
    """

    family: PeriodicGraphSpec
    glue: GluingSpec
    contracted: UPEdgeSet
    profile: tuple = (2, 1)

    def _joined(self, s: UPEdgeSet) -> UPEdgeSet:
        if edge_sets_intersect(s, self.contracted):
            raise InputError("the queried set overlaps the contracted edges")
        return edge_sets_union(s, self.contracted)

    def is_independent(self, s: UPEdgeSet) -> bool:
        return cycle_independent(self.family, self._joined(s), self.glue)[0]

    def is_base(self, s: UPEdgeSet) -> bool:
        return cycle_is_base(self.family, self._joined(s), self.glue)[0]

    def spectrum(self) -> SpectrumReport:
        rep = spectrum_search(self.family, self.glue, self.profile)
        witnesses = {}
        raw_witnesses = {}
        for v in rep.values:
            base, fin = rep.raw["witnesses"][v]
            reduced = edge_sets_difference(base, self.contracted)
            fin_red = (
                edge_sets_difference(fin, self.contracted) if fin is not None else None
            )
            witnesses[v] = {
                "base": reduced.to_obj(),
                "fin_base": fin_red.to_obj() if fin_red is not None else None,
            }
            raw_witnesses[v] = (reduced, fin_red)
        bounds = dict(rep.bounds)
        bounds["contracted"] = self.contracted.to_obj()
        return SpectrumReport(
            values=rep.values,
            witnesses=witnesses,
            bounds=bounds,
            raw={"parent": rep, "witnesses": raw_witnesses},
        )


def contract_coloops(
    g: PeriodicGraphSpec,
    glue: GluingSpec | None,
    t,
    profile: tuple = (2, 1),
) -> ContractedSystem:
    """View of the glued system with the finite edge set t contracted.

    Every element of t must lie in every base found within the profile; the
    first base avoiding part of t is returned inside the error instead.
    """
    glue = _gluing(g, glue)
    t_set = _collect_finite(g, t)
    p, q = profile
    if q != 1:
        raise InputError("coloop certificates use period-1 profiles")
    if not (t_set.prefix_present or t_set.explicit):
        return ContractedSystem(g, glue, t_set, profile)
    for cand in _candidate_sets(g, p):
        missing = edge_sets_difference(t_set, cand)
        if not (missing.prefix_present or missing.explicit):
            continue
        if contains_finite_cycle(g, cand)[0]:
            continue
        if cycle_is_base(g, cand, glue)[0]:
            raise InputError(
                f"not a coloop set within bounds: {missing.to_obj()} stays outside "
                f"the base {cand.to_obj()}"
            )
    return ContractedSystem(g, glue, t_set, profile)


def spectrum_scan(entries, profile: tuple = (2, 1)) -> list:
    """Batch spectra with a gap flag per row.

    Each entry is (name, family, gluing) for the symbolic engine,
    (name, nested_pair) for a finite system, or (name, contracted_view).
    A gap is an absent value strictly between two present finite values.
    """
    rows = []
    for entry in entries:
        name, obj = entry[0], entry[1]
        if isinstance(obj, PeriodicGraphSpec):
            glue = entry[2] if len(entry) > 2 and entry[2] is not None else glue_all(obj)
            rep = spectrum_search(obj, glue, profile)
        elif isinstance(obj, NestedPair):
            rep = finite_spectrum(obj)
        elif isinstance(obj, ContractedSystem):
            rep = obj.spectrum()
        else:
            raise InputError(f"cannot scan {type(obj).__name__}")
        finite = [v for v in rep.values if v is not INF]
        gap = any(b - a > 1 for a, b in zip(finite, finite[1:]))
        rows.append({"name": name, "values": rep.values, "gap": gap, "report": rep})
    return rows
