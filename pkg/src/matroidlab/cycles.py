"""Cycle systems of glued periodic graphs.

Gluing identifies selected end classes to single points at infinity.  A set of
edges is independent when it contains neither a finite cycle nor a circle
through glue points; a circle is a cyclic arrangement of m >= 1 vertex-disjoint
double rays whose tails converge to the (distinct) glue points it visits, the
minimal case being one double ray with both tails at the same point.

Bases of this system are compared against bases of the plain finite-cycle
system: the defect of a glued base is how many edges it needs to become one of
those, and the spectrum collects the defects of all bases within a search
profile.  Everything here reduces to the window-sweep machine plus bounded
enumeration, so results are exact within the stated bounds.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass

import networkx as nx

from .errors import InputError, ResourceLimitError, StructuralMismatchError
from .ops import SpectrumReport
from .periodic import (
    PeriodicGraphSpec,
    UPEdgeSet,
    contains_finite_cycle,
    corridor_width,
    edges_by_role,
    ends_of,
    full_edge_set,
    run_machine,
    split_components,
    surviving_classes,
    truncate_graph,
)
from .util import INF, sort_key


# ---------------------------------------------------------------------------
# gluing specs


@dataclass(frozen=True)
class GluingSpec:
    """Partition of the end classes, with the glued groups named by index."""

    groups: tuple = ()
    psi: tuple = ()

    def __post_init__(self):
        seen = set()
        for grp in self.groups:
            for label in grp:
                if label in seen:
                    raise InputError(f"end class {label!r} listed twice")
                seen.add(label)
        if len(set(self.psi)) != len(self.psi):
            raise InputError("glued group indices must be distinct")
        for i in self.psi:
            if not 0 <= i < len(self.groups):
                raise InputError(f"glued group index {i} out of range")

    def validate_for(self, g: PeriodicGraphSpec):
        declared = {label for grp in self.groups for label in grp}
        if declared != set(g.ends):
            raise InputError(
                f"gluing groups cover {sorted(declared)} but the family declares "
                f"ends {sorted(g.ends)}"
            )

    def as_map(self) -> dict:
        """End label -> glue point name, for the glued groups only."""
        out = {}
        for i in self.psi:
            for label in self.groups[i]:
                out[label] = f"w{i}"
        return out


def glue_all(g: PeriodicGraphSpec) -> GluingSpec:
    if not g.ends:
        return GluingSpec((), ())
    return GluingSpec((tuple(g.ends),), (0,))


def no_glue(g: PeriodicGraphSpec) -> GluingSpec:
    return GluingSpec(tuple((e,) for e in g.ends), ())


def _gluing(g, glue):
    glue = no_glue(g) if glue is None else glue
    glue.validate_for(g)
    return glue


# ---------------------------------------------------------------------------
# edge-set algebra


def edge_sets_union(a: UPEdgeSet, b: UPEdgeSet) -> UPEdgeSet:
    p = max(a.p, b.p)
    a, b = a.normalized(p), b.normalized(p)
    return UPEdgeSet(
        p,
        a.prefix_present | b.prefix_present,
        a.explicit | b.explicit,
        a.pattern | b.pattern,
    )


def edge_sets_difference(a: UPEdgeSet, b: UPEdgeSet) -> UPEdgeSet:
    p = max(a.p, b.p)
    a, b = a.normalized(p), b.normalized(p)
    return UPEdgeSet(
        p,
        a.prefix_present - b.prefix_present,
        a.explicit - b.explicit,
        a.pattern - b.pattern,
    )


def edge_sets_intersect(a: UPEdgeSet, b: UPEdgeSet) -> bool:
    p = max(a.p, b.p)
    a, b = a.normalized(p), b.normalized(p)
    return bool(
        (a.prefix_present & b.prefix_present)
        or (a.explicit & b.explicit)
        or (a.pattern & b.pattern)
    )


def edge_set_is_empty(s: UPEdgeSet) -> bool:
    return not (s.prefix_present or s.explicit or s.pattern)


def _slot_counts(g):
    return {
        "win": len(g.window_edges),
        "spl": len(g.splice_edges),
        "apx": len(g.apex_edges),
    }


def absent_representatives(g: PeriodicGraphSpec, s: UPEdgeSet):
    """Finitely many absent instances standing for all of them.

    Explicit-zone absences are listed one by one.  For a slot missing from the
    pattern, instances at windows past the sweep depth of s behave identically
    (the machine state there is the stationary one), so windows up to that
    depth plus a splice margin represent the whole tail.
    """
    stab = run_machine(g, s).depth
    hi = max(s.p, stab) + 3
    reps = []
    for i in range(len(g.prefix_edges)):
        if i not in s.prefix_present:
            reps.append(("pre", i))
    for kind in ("win", "spl", "apx"):
        for j in range(_slot_counts(g)[kind]):
            for w in range(s.p):
                if not s.has(kind, j, w):
                    reps.append((kind, j, w))
            if (kind, j) not in s.pattern:
                reps.extend((kind, j, w) for w in range(s.p, hi))
    return reps


def present_representatives(g: PeriodicGraphSpec, s: UPEdgeSet, context: UPEdgeSet):
    """Present instances of s, with pattern tails represented up to the sweep
    depth of the context set (the set the instances will be tested against)."""
    stab = run_machine(g, context).depth
    hi = max(s.p, context.p, stab) + 3
    reps = [("pre", i) for i in sorted(s.prefix_present)]
    reps += sorted(s.explicit)
    for kind, j in sorted(s.pattern):
        reps.extend((kind, j, w) for w in range(s.p, hi))
    return reps


# ---------------------------------------------------------------------------
# glued circles


def _glued_slots(g, s, point_map):
    """Ray slots of s whose end class is glued: one entry per disjoint ray.

    Returns (slots, truncation); each slot has the unglued component id, the
    glue point, and its ray's vertex path inside the truncation.
    """
    full = run_machine(g, s)
    lane_cid = {}
    for cid, cls in enumerate(full.live):
        for tok in cls:
            if tok[0] == "R":
                lane_cid[tok[1]] = cid
    lane_end = {}
    for label, lanes in ends_of(g).items():
        for lane in lanes:
            lane_end[lane] = label
    pieces = []
    for piece in surviving_classes(g, s):
        label = lane_end[min(piece)]
        if label not in point_map:
            continue
        width = corridor_width(g, piece, s)
        if width:
            pieces.append((piece, point_map[label], width))
    if not pieces:
        return [], None
    stab2 = run_machine(g, s, use_prefix=False, use_apex=False).depth
    start = max(full.depth, stab2, s.p) + 1
    depth = start + max(len(p) for p, _, _ in pieces) + sum(w for _, _, w in pieces) + 4
    trunc = truncate_graph(g, s, depth)
    slots = []
    for piece, point, width in pieces:
        for path in _disjoint_forward_paths(trunc, piece, start, depth, width):
            slots.append(
                {"cid": lane_cid[min(piece)], "point": point, "path": path}
            )
    if len(slots) > 12:
        raise ResourceLimitError("too many glued ray slots to arrange")
    return slots, trunc


def _disjoint_forward_paths(trunc, lanes, start, depth, width):
    """width vertex-disjoint paths from window `start` to the last window,
    inside the given lanes; realizes the corridor width in the truncation."""
    D = nx.DiGraph()
    big = len(lanes) * depth + 2
    nodes = {(l, w) for l in lanes for w in range(start, depth)}
    for n in nodes:
        D.add_edge((n, "i"), (n, "o"), capacity=1)
    for a, b in trunc.edges():
        if a in nodes and b in nodes:
            D.add_edge((a, "o"), (b, "i"), capacity=big)
            D.add_edge((b, "o"), (a, "i"), capacity=big)
    for l in lanes:
        D.add_edge("S", ((l, start), "i"), capacity=1)
        D.add_edge(((l, depth - 1), "o"), "T", capacity=big)
    value, flow = nx.maximum_flow(D, "S", "T")
    if value < width:
        raise ResourceLimitError(
            f"expected {width} forward paths, packed {value} in the truncation"
        )
    # decompose unit flow into vertex paths
    residual = {u: dict(vs) for u, vs in flow.items()}
    paths = []
    for _ in range(width):
        node = "S"
        path = []
        while node != "T":
            nxt = next(k for k, f in residual[node].items() if f >= 1)
            residual[node][nxt] -= 1
            if isinstance(nxt, tuple) and nxt[1] == "i":
                path.append(nxt[0])
            node = nxt
        paths.append(path)
    return paths


def _minimal_arc(trunc, slot_a, slot_b):
    """Least vertex set realizing a double ray through the two slots' rays.

    Only valid inside a finite-cycle-free set: the component is a tree, so the
    bridge between the two rays is unique and every realization contains it.
    """
    try:
        walk = nx.shortest_path(trunc, slot_a["path"][0], slot_b["path"][0])
    except (nx.NetworkXNoPath, nx.NodeNotFound):
        return None
    set_a, set_b = set(slot_a["path"]), set(slot_b["path"])
    last_a = max(i for i, v in enumerate(walk) if v in set_a)
    first_b = min(i for i, v in enumerate(walk) if v in set_b)
    if last_a > first_b:
        return None  # overlapping rays cannot seat two tails
    attach_a, attach_b = walk[last_a], walk[first_b]
    tail_a = slot_a["path"][slot_a["path"].index(attach_a):]
    tail_b = slot_b["path"][slot_b["path"].index(attach_b):]
    return frozenset(walk[last_a : first_b + 1]) | frozenset(tail_a) | frozenset(tail_b)


def _find_circle(g, s, glue):
    """A circle witness in s (assumed finite-cycle-free), or None."""
    point_map = glue.as_map()
    if not point_map:
        return None
    slots, trunc = _glued_slots(g, s, point_map)
    if not slots:
        return None
    # one segment: two rays to the same point inside one component; the tree
    # path between them always completes the double ray
    counts = Counter((sl["cid"], sl["point"]) for sl in slots)
    for (cid, point), n in sorted(counts.items()):
        if n >= 2:
            lanes = sorted(
                {v[0] for sl in slots if (sl["cid"], sl["point"]) == (cid, point) for v in sl["path"]}
            )
            return {
                "kind": "glued-circle",
                "points": [point],
                "segments": 1,
                "component": cid,
                "ray_lanes": lanes,
            }
    # several segments: arcs between distinct points, pairwise vertex-disjoint
    arcs = []
    for i, a in enumerate(slots):
        for b in slots[i + 1 :]:
            if a["cid"] != b["cid"] or a["point"] == b["point"]:
                continue
            vertices = _minimal_arc(trunc, a, b)
            if vertices is not None:
                arcs.append({"pts": (a["point"], b["point"]), "vertices": vertices, "cid": a["cid"]})
    if not arcs:
        return None

    def extend(path_points, used, first):
        cur = path_points[-1]
        for arc in arcs:
            if cur not in arc["pts"]:
                continue
            nxt = arc["pts"][1] if arc["pts"][0] == cur else arc["pts"][0]
            if any(arc["vertices"] & u["vertices"] for u in used):
                continue
            if nxt == first and len(used) >= 1:
                return used + [arc]
            if nxt in path_points:
                continue
            res = extend(path_points + [nxt], used + [arc], first)
            if res:
                return res
        return None

    for start in sorted({p for arc in arcs for p in arc["pts"]}):
        found = extend([start], [], start)
        if found:
            return {
                "kind": "glued-circle",
                "points": sorted({p for arc in found for p in arc["pts"]}),
                "segments": len(found),
                "component": sorted({arc["cid"] for arc in found}),
            }
    return None


# ---------------------------------------------------------------------------
# independence, bases, defect


def cycle_independent(g: PeriodicGraphSpec, s: UPEdgeSet, glue: GluingSpec | None = None):
    """(independent, violation): violation names its kind with a witness."""
    glue = _gluing(g, glue)
    present, wit = contains_finite_cycle(g, s)
    if present:
        return False, {"kind": "finite-cycle", **wit}
    circle = _find_circle(g, s, glue)
    if circle is not None:
        return False, circle
    return True, None


def cycle_is_base(g: PeriodicGraphSpec, s: UPEdgeSet, glue: GluingSpec | None = None):
    """(is_base, obstruction): dependent sets return their violation,
    extendable sets return the addable instance."""
    glue = _gluing(g, glue)
    ok, why = cycle_independent(g, s, glue)
    if not ok:
        return False, why
    for rep in absent_representatives(g, s):
        if cycle_independent(g, s.with_edge(rep), glue)[0]:
            return False, {"kind": "addable", "edge": rep}
    return True, None


def fin_is_base(g: PeriodicGraphSpec, s: UPEdgeSet):
    """Base test in the plain finite-cycle system."""
    present, wit = contains_finite_cycle(g, s)
    if present:
        return False, {"kind": "finite-cycle", **wit}
    for rep in absent_representatives(g, s):
        if not contains_finite_cycle(g, s.with_edge(rep))[0]:
            return False, {"kind": "addable", "edge": rep}
    return True, None


def defect(g: PeriodicGraphSpec, s: UPEdgeSet, glue: GluingSpec | None = None):
    """Components of s beyond those of the whole graph; INF when s sheds
    components faster than the graph does.

    The value does not depend on the gluing: extending to a spanning set
    joins plain components, and glue points never absorb an edge.  The glue
    argument is accepted for call-site symmetry and validated only.
    """
    if glue is not None:
        glue.validate_for(g)
    a = run_machine(g, s)
    b = run_machine(g, full_edge_set(g))
    if a.delta > b.delta:
        return INF
    if a.delta < b.delta:
        raise StructuralMismatchError(
            "edge subset closes fewer components per window than its graph"
        )
    w = max(a.depth, b.depth)

    def total(res):
        return res.closed + res.delta * (w - res.depth) + len(res.live)

    return total(a) - total(b)


def extend_to_fin_base(g: PeriodicGraphSpec, s: UPEdgeSet):
    """Grow s to a base of the finite-cycle system by joining components.

    Returns None when the defect is infinite.  Each added edge must not close
    a finite cycle; the loop ends when every absent instance would.
    """
    if contains_finite_cycle(g, s)[0]:
        raise InputError("only finite-cycle-free sets extend to a base")
    d = defect(g, s)
    if d is INF:
        return None
    cur = s
    # each accepted edge joins two components of cur, so d additions suffice
    for _ in range(d + 1):
        for rep in absent_representatives(g, cur):
            if not contains_finite_cycle(g, cur.with_edge(rep))[0]:
                cur = cur.with_edge(rep)
                break
        else:
            return cur
    raise ResourceLimitError("extension did not settle within the defect bound")


# ---------------------------------------------------------------------------
# spectra


def _candidate_sets(g, p):
    slots = sorted(
        [("win", j) for j in range(len(g.window_edges))]
        + [("spl", j) for j in range(len(g.splice_edges))]
        + [("apx", j) for j in range(len(g.apex_edges))]
    )
    bits = len(slots) * (p + 1) + len(g.prefix_edges)
    if bits > 16:
        raise ResourceLimitError(
            f"profile spans {bits} free instance choices; enumeration is capped at 16"
        )
    instances = [(kind, j, w) for w in range(p) for (kind, j) in slots]
    prefixes = list(range(len(g.prefix_edges)))
    for pat_bits in range(1 << len(slots)):
        pattern = frozenset(s for i, s in enumerate(slots) if pat_bits >> i & 1)
        for exp_bits in range(1 << len(instances)):
            explicit = frozenset(
                inst for i, inst in enumerate(instances) if exp_bits >> i & 1
            )
            for pre_bits in range(1 << len(prefixes)):
                prefix = frozenset(
                    i for i in prefixes if pre_bits >> i & 1
                )
                yield UPEdgeSet(p, prefix, explicit, pattern)


def _remap_instance(maps, inst):
    if inst[0] == "pre":
        return ("pre", maps["pre"][inst[1]])
    if len(inst) == 2:
        return (inst[0], maps[inst[0]][inst[1]])
    return (inst[0], maps[inst[0]][inst[1]], inst[2])


def _remap_edge_set(maps, s: UPEdgeSet) -> UPEdgeSet:
    return UPEdgeSet(
        s.p,
        frozenset(maps["pre"][i] for i in s.prefix_present),
        frozenset(_remap_instance(maps, e) for e in s.explicit),
        frozenset(_remap_instance(maps, e) for e in s.pattern),
    )


def _component_spectrum(g, glue, p):
    """Defect -> first witness (base, fin_base or None), exhaustively within p.

    A candidate whose defect is already witnessed skips the base check; the
    value set is unchanged and the kept witness is the enumeration-first one.
    """
    out = {}
    for cand in _candidate_sets(g, p):
        d = defect(g, cand)
        if d in out:
            continue
        if not cycle_is_base(g, cand, glue)[0]:
            continue
        fin = extend_to_fin_base(g, cand) if d is not INF else None
        out[d] = {"base": cand, "fin_base": fin}
    return out


def spectrum_search(
    g: PeriodicGraphSpec, glue: GluingSpec | None = None, profile: tuple = (2, 1)
):
    """Defect values of all glued bases within the search profile.

    profile = (p, q): candidate bases are explicit over p windows and repeat
    with period q afterwards.  The family splits into structural components;
    base-ness and defect factor across them, so the component spectra combine
    by sums, which keeps the enumeration per component.
    """
    glue = _gluing(g, glue)
    p, q = profile
    if p < 0 or q < 1:
        raise InputError("profile must have p >= 0 and q >= 1")
    if q != 1:
        from .periodic import reblock

        report = spectrum_search(reblock(g, q), glue, (p, 1))
        report.bounds["profile_q"] = q
        report.bounds["witness_presentation"] = f"windows grouped {q} at a time"
        return report
    values = {0: {"parts": []}}
    for spec, maps in split_components(g):
        if spec is None:
            # a finite all-prefix piece: its bases are its spanning forests
            forest = _finite_piece_forest(g, maps)
            values = {
                d: {"parts": info["parts"] + [{"pre_forest": forest}]}
                for d, info in values.items()
            }
            continue
        local_ends = spec.ends
        sub = _component_spectrum(spec, _project_glue(glue, local_ends), p)
        if not sub:
            raise StructuralMismatchError(
                "a structural component has no base within the profile"
            )
        combined = {}
        for d0, info in values.items():
            for d1, wit in sub.items():
                d = d0 + d1 if not (d0 is INF or d1 is INF) else INF
                if d in combined:
                    continue
                combined[d] = {
                    "parts": info["parts"]
                    + [{"maps": maps, "base": wit["base"], "fin_base": wit["fin_base"]}]
                }
        values = combined
    report_values = []
    witnesses = {}
    raw_witnesses = {}
    for d, info in sorted(values.items(), key=lambda kv: sort_key(kv[0])):
        report_values.append(d)
        base = UPEdgeSet()
        fin = UPEdgeSet()
        fin_ok = True
        for part in info["parts"]:
            if "pre_forest" in part:
                add = UPEdgeSet(0, frozenset(part["pre_forest"]), frozenset(), frozenset())
                base = edge_sets_union(base, add)
                fin = edge_sets_union(fin, add)
                continue
            base = edge_sets_union(base, _remap_edge_set(part["maps"], part["base"]))
            if part["fin_base"] is None:
                fin_ok = False
            else:
                fin = edge_sets_union(fin, _remap_edge_set(part["maps"], part["fin_base"]))
        witnesses[d] = {
            "base": base.to_obj(),
            "fin_base": fin.to_obj() if fin_ok else None,
        }
        raw_witnesses[d] = (base, fin if fin_ok else None)
    return SpectrumReport(
        values=tuple(report_values),
        witnesses={v: witnesses[v] for v in report_values},
        bounds={"profile_p": p, "profile_q": q},
        raw={"witnesses": {v: raw_witnesses[v] for v in report_values}},
    )


def _project_glue(glue: GluingSpec, local_ends) -> GluingSpec:
    groups = []
    psi = []
    for i, grp in enumerate(glue.groups):
        kept = tuple(label for label in grp if label in local_ends)
        if kept:
            if i in glue.psi:
                psi.append(len(groups))
            groups.append(kept)
    return GluingSpec(tuple(groups), tuple(psi))


def _finite_piece_forest(g, maps):
    G = nx.Graph()
    for i in maps["pre"]:
        u, v, _ = g.prefix_edges[i]
        G.add_edge(("p", u), ("p", v), idx=i)
    return sorted(
        d["idx"] for _, _, d in nx.minimum_spanning_edges(G, data=True)
    )


def _instance_stream(s: UPEdgeSet):
    """Every instance of s: prefix, explicit zone, then pattern windows forever."""
    yield from (("pre", i) for i in sorted(s.prefix_present))
    yield from sorted(s.explicit)
    if not s.pattern:
        return
    for w in itertools.count(s.p):
        for kind, j in sorted(s.pattern):
            yield (kind, j, w)


def mk_spectrum(
    g: PeriodicGraphSpec,
    glue: GluingSpec | None = None,
    k: int = 0,
    profile: tuple = (2, 1),
):
    """Spectrum of bases with k edges removed: every value shifts up by k,
    because each removed edge of an independent set splits one component."""
    if k < 0:
        raise InputError("removal count must be a natural number")
    glue = _gluing(g, glue)
    base_report = spectrum_search(g, glue, profile)
    values = []
    witnesses = {}
    raw_witnesses = {}
    for v in base_report.values:
        shifted = v + k if v is not INF else INF
        values.append(shifted)
        base, fin = base_report.raw["witnesses"][v]
        removed = []
        cur = base
        for inst in _instance_stream(base):
            if len(removed) == k:
                break
            removed.append(inst)
            cur = cur.without_edge(inst)
        if len(removed) < k:
            raise InputError(
                "a base within the profile has fewer edges than the removal count"
            )
        witnesses[shifted] = {
            "reduced": cur.to_obj(),
            "removed": [list(i) for i in removed],
            "fin_base": fin.to_obj() if fin is not None else None,
        }
        raw_witnesses[shifted] = (cur, removed, fin)
    bounds = dict(base_report.bounds)
    bounds["removed"] = k
    return SpectrumReport(
        values=tuple(values),
        witnesses=witnesses,
        bounds=bounds,
        raw={"unshifted": base_report, "witnesses": raw_witnesses},
    )


def hat_check(
    g: PeriodicGraphSpec,
    glue: GluingSpec | None,
    s: UPEdgeSet,
    profile: tuple = (2, 1),
):
    """Is s contained in F minus B for some glued base B inside a fin-base F?

    Equivalent search: a base B disjoint from s with B union s free of finite
    cycles and jointly extendable; any such union grows to the required
    fin-base one component-joining edge at a time.
    """
    glue = _gluing(g, glue)
    p, q = profile
    if q != 1:
        raise InputError("only period-1 profiles are supported here")
    chosen = []
    for spec, maps in split_components(g):
        if spec is None:
            # a forest avoiding s exists iff dropping s's edges keeps the
            # piece connected; take a spanning forest of what remains
            G = nx.Graph()
            for i in maps["pre"]:
                u, v, _ = g.prefix_edges[i]
                G.add_edge(("p", u), ("p", v), idx=i)
            H = nx.Graph()
            H.add_nodes_from(G.nodes)
            for a, b, d in G.edges(data=True):
                if d["idx"] not in s.prefix_present:
                    H.add_edge(a, b, idx=d["idx"])
            if nx.number_connected_components(H) != nx.number_connected_components(G):
                return False, None
            ids = [d["idx"] for _, _, d in nx.minimum_spanning_edges(H, data=True)]
            chosen.append(UPEdgeSet(0, frozenset(ids), frozenset(), frozenset()))
            continue
        local_glue = _project_glue(glue, spec.ends)
        # restrict the fixed set to this component's edges
        local_s = UPEdgeSet(
            s.p,
            frozenset(maps["pre"].index(i) for i in s.prefix_present if i in maps["pre"]),
            frozenset(
                (kind, maps[kind].index(j), w)
                for kind, j, w in s.explicit
                if j in maps[kind]
            ),
            frozenset(
                (kind, maps[kind].index(j))
                for kind, j in s.pattern
                if j in maps[kind]
            ),
        )
        found = None
        for cand in _candidate_sets(spec, p):
            if edge_sets_intersect(cand, local_s):
                continue
            joint = edge_sets_union(cand, local_s)
            if contains_finite_cycle(spec, joint)[0]:
                continue
            if defect(spec, joint) is INF:
                # no finite extension reaches a spanning set
                continue
            if cycle_is_base(spec, cand, local_glue)[0]:
                found = cand
                break
        if found is None:
            return False, None
        chosen.append(_remap_edge_set(maps, found))
    witness = UPEdgeSet()
    for part in chosen:
        witness = edge_sets_union(witness, part)
    return True, {"base": witness.to_obj(), "raw": witness}


# ---------------------------------------------------------------------------
# the engineered exchange failure


def _role_or(g, preferred, fallback):
    return preferred if preferred in g.roles() else fallback


def verify_i3_violation(g: PeriodicGraphSpec, glue: GluingSpec | None = None):
    """Check the five-step maximality exchange failure on a two-rail family.

    Steps: (1) both rails form a base; (2) swapping the first top splice for
    the first cross edge yields another base; (3) the top rail plus all cross
    edges is a base; (4) dropping the first top splice from it leaves a
    non-base independent set; (5) nothing the step-2 base has beyond that set
    can be added back.  Families where step 5 fails (the broken square lets a
    bottom splice in) raise StructuralMismatchError naming the step.

    With no gluing given, all ends are glued to one point; the open system
    has no such failure to exhibit.
    """
    glue = glue_all(g) if glue is None else glue
    glue.validate_for(g)
    cross_role = _role_or(g, "spoke", "rung")
    H = edges_by_role(g, {"top", "bottom"})
    TH = edges_by_role(g, "top")
    N = edges_by_role(g, cross_role)
    top_splices = [j for j, (_, _, r) in enumerate(g.splice_edges) if r == "top"]
    if not top_splices or edge_set_is_empty(N):
        raise InputError("family lacks the top/bottom/cross roles this check needs")
    e = ("spl", top_splices[0], 0)
    if N.pattern:
        kind, j = sorted(N.pattern)[0]
        f = (kind, j, 0)
    else:
        f = ("pre", sorted(N.prefix_present)[0])

    def claim(idx, cond, detail):
        if not cond:
            raise StructuralMismatchError(f"sub-claim {idx} failed: {detail}")

    ok, why = cycle_is_base(g, H, glue)
    claim(1, ok, f"both rails are not a base ({why})")
    H_f = H.without_edge(e).with_edge(f)
    ok, why = cycle_is_base(g, H_f, glue)
    claim(2, ok, f"the swapped set is not a base ({why})")
    S = edge_sets_union(TH, N)
    ok, why = cycle_is_base(g, S, glue)
    claim(3, ok, f"top rail plus cross edges is not a base ({why})")
    S1 = S.without_edge(e)
    ok, why = cycle_independent(g, S1, glue)
    claim(4, ok, f"the stranded set is dependent ({why})")
    is_base, obstruction = cycle_is_base(g, S1, glue)
    claim(4, not is_base, "the stranded set is still a base")
    D = edge_sets_difference(H_f, S1)
    claim(5, not edge_set_is_empty(D), "the two bases do not differ")
    for rep in present_representatives(g, D, S1):
        if cycle_independent(g, S1.with_edge(rep), glue)[0]:
            raise StructuralMismatchError(
                f"sub-claim 5 failed: instance {rep} from the base difference "
                f"extends the stranded set"
            )
    return {
        "maximal_base": H_f.to_obj(),
        "stranded_independent": S1.to_obj(),
        "blocked_difference": D.to_obj(),
        "addable_elsewhere": list(obstruction["edge"]) if obstruction and obstruction.get("kind") == "addable" else None,
        "raw": (H_f, S1, D),
    }


# ---------------------------------------------------------------------------
# the headline verdict


@dataclass
class VerdictReport:
    verdict: str
    k: object
    notes: tuple

    def to_dict(self) -> dict:
        return {
            "verdict": self.verdict,
            "k": "inf" if self.k is INF else self.k,
            "notes": list(self.notes),
        }


def nearly_finitary_verdict(g: PeriodicGraphSpec, glue: GluingSpec | None = None) -> VerdictReport:
    """How far glued bases can sit from finite-cycle bases, at worst.

    The defect of any glued base is bounded by the number of vertex-disjoint
    rays converging to glued points: each edge a base is missing strands a
    component that still reaches a glue point, and only that many components
    can do so disjointly.  With nothing glued the two systems coincide.
    """
    glue = _gluing(g, glue)
    glued_labels = {label for i in glue.psi for label in glue.groups[i]}
    end_map = ends_of(g)
    k = sum(corridor_width(g, end_map[label]) for label in sorted(glued_labels))
    if k == 0:
        notes = ("no end class is glued, so the system equals its finite-cycle system",)
    else:
        notes = (
            f"every base of the glued system extends to a finite-cycle base "
            f"within {k} edges",
            "bound: vertex-disjoint rays into the glued end classes",
        )
    return VerdictReport(verdict="yes", k=k, notes=notes)
