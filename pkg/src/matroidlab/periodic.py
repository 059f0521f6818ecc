"""Finitely presented infinite graphs: one prefix block plus a window repeated forever.

A PeriodicGraphSpec has prefix vertices (existing once, apexes among them) and
repeat vertices (one copy per window w = 0, 1, 2, ...).  Four edge kinds:

* prefix edges: one-off, between prefix vertices and/or window-0 repeat copies;
* window edges: inside every window w;
* splice edges: from a lane at window w to a lane at window w+1;
* apex edges: from a prefix vertex to a lane, repeated at every window.

Edge instances are addressed as ("pre", i), ("win", j, w), ("spl", j, w)
(the copy joining w to w+1), ("apx", j, w).  An UPEdgeSet picks instances
explicitly over the first p windows and by a per-window pattern afterwards.

All infinite-graph questions are answered by a window-sweep fixpoint: walk
windows left to right, keep a union-find partition over prefix tokens plus the
current window's lane tokens, retire the previous window, and stop when the
projected partition repeats.  Once the state repeats it repeats forever (the
transition is a deterministic function of the state), which is what makes the
answers about the infinite object exact rather than sampled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import networkx as nx

from .errors import InputError, ResourceLimitError
from .util import INF


# ---------------------------------------------------------------------------
# specs


def _check_role(role):
    if not isinstance(role, str) or not role:
        raise InputError("edge role must be a nonempty string")


@dataclass(frozen=True)
class PeriodicGraphSpec:
    """Presentation of an infinite graph; validated on construction.

    The declared end labels are checked against the computed corridor count
    (corridors = stable connected classes of the repeat-only structure), so a
    spec that lies about its ends does not construct.
    """

    prefix_vertices: tuple[str, ...] = ()
    repeat_vertices: tuple[str, ...] = ()
    prefix_edges: tuple[tuple, ...] = ()
    window_edges: tuple[tuple, ...] = ()
    splice_edges: tuple[tuple, ...] = ()
    apex_edges: tuple[tuple, ...] = ()
    ends: tuple[str, ...] = ()

    def __post_init__(self):
        names = self.prefix_vertices + self.repeat_vertices
        if len(set(names)) != len(names):
            raise InputError("vertex names must be unique across prefix and repeat")
        if not self.repeat_vertices:
            raise InputError("a periodic spec needs at least one repeat vertex")
        prefix = set(self.prefix_vertices)
        repeat = set(self.repeat_vertices)

        def check_pref_ref(ref):
            if isinstance(ref, str):
                if ref not in prefix:
                    raise InputError(f"prefix edge endpoint {ref!r} undeclared")
            elif isinstance(ref, tuple) and len(ref) == 2 and ref[0] == "r":
                if ref[1] not in repeat:
                    raise InputError(f"window-0 endpoint {ref[1]!r} undeclared")
            else:
                raise InputError(f"bad prefix edge endpoint {ref!r}")

        for u, v, role in self.prefix_edges:
            check_pref_ref(u)
            check_pref_ref(v)
            _check_role(role)
        for u, v, role in self.window_edges + self.splice_edges:
            if u not in repeat or v not in repeat:
                raise InputError(f"repeat edge endpoint ({u!r}, {v!r}) undeclared")
            _check_role(role)
        for a, v, role in self.apex_edges:
            if a not in prefix:
                raise InputError(f"apex {a!r} must be a prefix vertex")
            if v not in repeat:
                raise InputError(f"apex edge target {v!r} undeclared")
            _check_role(role)
        if len(set(self.ends)) != len(self.ends):
            raise InputError("end labels must be unique")
        cors = corridors(self)
        if len(cors) != len(self.ends):
            raise InputError(
                f"spec declares {len(self.ends)} ends but the repeat structure "
                f"has {len(cors)} corridors"
            )

    @property
    def apexes(self) -> tuple[str, ...]:
        return tuple(sorted({a for a, _, _ in self.apex_edges}))

    def roles(self) -> set[str]:
        out = set()
        for decl in self.prefix_edges + self.window_edges + self.splice_edges + self.apex_edges:
            out.add(decl[2])
        return out


@dataclass(frozen=True)
class UPEdgeSet:
    """Ultimately periodic edge set: explicit over windows < p, pattern after.

    prefix_present: indices into prefix_edges that are in the set.
    explicit: instances (kind, j, w) with w < p (kind one of win/spl/apx).
    pattern: slots (kind, j) present at every window >= p.
    """

    p: int = 0
    prefix_present: frozenset = frozenset()
    explicit: frozenset = frozenset()
    pattern: frozenset = frozenset()

    def __post_init__(self):
        if self.p < 0:
            raise InputError("explicit zone length must be a natural number")
        for item in self.explicit:
            kind, _, w = item
            if kind not in ("win", "spl", "apx"):
                raise InputError(f"bad explicit instance {item!r}")
            if not 0 <= w < self.p:
                raise InputError(f"explicit instance {item!r} outside zone of length {self.p}")
        for item in self.pattern:
            if item[0] not in ("win", "spl", "apx"):
                raise InputError(f"bad pattern slot {item!r}")

    def has(self, kind: str, j: int, w: int) -> bool:
        if w < self.p:
            return (kind, j, w) in self.explicit
        return (kind, j) in self.pattern

    def normalized(self, p_new: int) -> "UPEdgeSet":
        """Same set with the explicit zone widened to p_new windows."""
        if p_new < self.p:
            raise InputError("cannot shrink the explicit zone")
        extra = {
            (kind, j, w)
            for (kind, j) in self.pattern
            for w in range(self.p, p_new)
        }
        return UPEdgeSet(p_new, self.prefix_present, self.explicit | extra, self.pattern)

    def with_edge(self, instance) -> "UPEdgeSet":
        """Add one instance; widens the explicit zone as needed."""
        if instance[0] == "pre":
            return UPEdgeSet(
                self.p, self.prefix_present | {instance[1]}, self.explicit, self.pattern
            )
        kind, j, w = instance
        p_new = max(self.p, w + 1)
        base = self.normalized(p_new)
        return UPEdgeSet(
            p_new, base.prefix_present, base.explicit | {(kind, j, w)}, base.pattern
        )

    def without_edge(self, instance) -> "UPEdgeSet":
        """Remove one instance; widens the explicit zone as needed."""
        if instance[0] == "pre":
            return UPEdgeSet(
                self.p, self.prefix_present - {instance[1]}, self.explicit, self.pattern
            )
        kind, j, w = instance
        p_new = max(self.p, w + 1)
        base = self.normalized(p_new)
        return UPEdgeSet(
            p_new, base.prefix_present, base.explicit - {(kind, j, w)}, base.pattern
        )

    def to_obj(self) -> dict:
        """JSON-ready form; one-off content under prefix_edges, slots under repeat_edges."""
        one_off = [["pre", i] for i in sorted(self.prefix_present)]
        one_off += [list(t) for t in sorted(self.explicit)]
        return {
            "prefix_blocks": self.p,
            "prefix_edges": one_off,
            "repeat_edges": [list(t) for t in sorted(self.pattern)],
        }

    @staticmethod
    def from_obj(obj: dict) -> "UPEdgeSet":
        try:
            p = int(obj["prefix_blocks"])
            prefix = set()
            explicit = set()
            for item in obj["prefix_edges"]:
                if item[0] == "pre":
                    prefix.add(int(item[1]))
                else:
                    explicit.add((item[0], int(item[1]), int(item[2])))
            pattern = {(item[0], int(item[1])) for item in obj["repeat_edges"]}
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise InputError(f"malformed edge-set object: {exc}") from exc
        return UPEdgeSet(p, frozenset(prefix), frozenset(explicit), frozenset(pattern))


def validate_edge_set(g: PeriodicGraphSpec, s: UPEdgeSet):
    counts = {
        "win": len(g.window_edges),
        "spl": len(g.splice_edges),
        "apx": len(g.apex_edges),
    }
    for i in s.prefix_present:
        if not 0 <= i < len(g.prefix_edges):
            raise InputError(f"prefix edge index {i} undeclared")
    for kind, j, _ in s.explicit:
        if not 0 <= j < counts[kind]:
            raise InputError(f"{kind} slot {j} undeclared")
    for kind, j in s.pattern:
        if not 0 <= j < counts[kind]:
            raise InputError(f"{kind} slot {j} undeclared")


def full_edge_set(g: PeriodicGraphSpec) -> UPEdgeSet:
    pattern = (
        {("win", j) for j in range(len(g.window_edges))}
        | {("spl", j) for j in range(len(g.splice_edges))}
        | {("apx", j) for j in range(len(g.apex_edges))}
    )
    return UPEdgeSet(0, frozenset(range(len(g.prefix_edges))), frozenset(), frozenset(pattern))


def edges_by_role(g: PeriodicGraphSpec, roles) -> UPEdgeSet:
    """The edge set holding every instance whose declaration has one of the roles."""
    roles = {roles} if isinstance(roles, str) else set(roles)
    pre = frozenset(i for i, (_, _, r) in enumerate(g.prefix_edges) if r in roles)
    pattern = set()
    for kind, decls in (("win", g.window_edges), ("spl", g.splice_edges), ("apx", g.apex_edges)):
        for j, (_, _, r) in enumerate(decls):
            if r in roles:
                pattern.add((kind, j))
    return UPEdgeSet(0, pre, frozenset(), frozenset(pattern))


# ---------------------------------------------------------------------------
# the window-sweep fixpoint machine


@dataclass
class MachineResult:
    depth: int              # first window whose projected state repeats the previous one
    closed: int             # components fully retired by window `depth`
    delta: int              # components retiring per window at the fixpoint
    live: tuple             # stationary classes that persist forever (confirmed one step ahead)
    cycle_event: tuple | None  # (edge instance, window) of the first redundant union

    @property
    def live_count(self) -> int:
        return len(self.live)

    def component_count(self):
        if self.delta > 0:
            return INF
        return self.closed + self.live_count


# results are immutable in practice; sharing across callers is safe
_machine_cache: dict = {}


def _window_bound(g: PeriodicGraphSpec, s: UPEdgeSet, extra: int = 0) -> int:
    tokens = len(g.prefix_vertices) + len(g.repeat_vertices) + len(g.apex_edges) + 2
    return 4 * tokens + 2 * s.p + 8 + extra


def run_machine(
    g: PeriodicGraphSpec,
    s: UPEdgeSet,
    use_prefix: bool = True,
    use_apex: bool = True,
    glue_lanes: dict | None = None,
    glue_from: int = 0,
) -> MachineResult:
    """Sweep windows until the projected partition repeats.

    Tokens: ("P", name) persistent prefix vertices, ("R", lane) the current
    window's repeat vertices, ("G", point) persistent glue points.  glue_lanes
    maps ray-bearing lanes to glue point names; those unions start at window
    glue_from (the caller passes the depth at which ray-bearing is certified).
    """
    validate_edge_set(g, s)
    glue_lanes = glue_lanes or {}
    cache_key = (g, s, use_prefix, use_apex, tuple(sorted(glue_lanes.items())), glue_from)
    hit = _machine_cache.get(cache_key)
    if hit is not None:
        return hit

    parent: dict = {}
    members: dict = {}
    next_id = itertools.count()

    def add_token(tok):
        cid = next(next_id)
        parent[tok] = cid
        members[cid] = {tok}

    def find(tok):
        return parent[tok]

    closed = 0
    cycle_event = None

    def union(a, b, instance=None, window=None):
        nonlocal cycle_event
        ca, cb = parent[a], parent[b]
        if ca == cb:
            if instance is not None and cycle_event is None:
                cycle_event = (instance, window)
            return
        if len(members[ca]) < len(members[cb]):
            ca, cb = cb, ca
        for tok in members[cb]:
            parent[tok] = ca
        members[ca] |= members[cb]
        del members[cb]

    if use_prefix:
        for name in g.prefix_vertices:
            add_token(("P", name))
    for point in sorted(set(glue_lanes.values())):
        add_token(("G", point))

    def resolve_pref(ref):
        if isinstance(ref, str):
            return ("P", ref)
        return ("R", ref[1])

    def apply_window(w):
        for lane in g.repeat_vertices:
            add_token(("R", lane))
        if w == 0 and use_prefix:
            for i in sorted(s.prefix_present):
                u, v, _ = g.prefix_edges[i]
                union(resolve_pref(u), resolve_pref(v), ("pre", i), 0)
        if w > 0:
            for j, (u, v, _) in enumerate(g.splice_edges):
                if s.has("spl", j, w - 1):
                    union(("Q", u), ("R", v), ("spl", j, w - 1), w)
        for j, (u, v, _) in enumerate(g.window_edges):
            if s.has("win", j, w):
                union(("R", u), ("R", v), ("win", j, w), w)
        if use_prefix and use_apex:
            for j, (a, v, _) in enumerate(g.apex_edges):
                if s.has("apx", j, w):
                    union(("P", a), ("R", v), ("apx", j, w), w)
        if w >= glue_from:
            for lane, point in glue_lanes.items():
                union(("G", point), ("R", lane))

    def retire():
        d = 0
        for lane in g.repeat_vertices:
            tok = ("Q", lane)
            if tok in parent:
                cid = parent.pop(tok)
                members[cid].discard(tok)
                if not members[cid]:
                    del members[cid]
                    d += 1
        return d

    def relabel():
        for lane in g.repeat_vertices:
            tok = ("R", lane)
            cid = parent.pop(tok)
            members[cid].discard(tok)
            qtok = ("Q", lane)
            parent[qtok] = cid
            members[cid].add(qtok)

    sig_prev = None
    # splices applied at window w have index w-1, so the first window whose
    # step reads only pattern entries is p+1; same shift for glue unions
    min_depth = max(s.p + 1, glue_from + 1)
    bound = _window_bound(g, s)
    w = 0
    while True:
        apply_window(w)
        delta = retire()
        closed += delta
        sig = frozenset(frozenset(c) for c in members.values())
        if w >= min_depth and sig == sig_prev:
            break
        sig_prev = sig
        relabel()
        w += 1
        if w > bound:
            raise ResourceLimitError(
                f"window sweep did not stabilize within {bound} windows"
            )
    # the stationary state can still shed classes every window (delta > 0);
    # a class persists forever only if the next step keeps it inhabited
    stationary = sorted(sig, key=lambda c: sorted(map(str, c)))
    relabel()
    apply_window(w + 1)
    ids = {}
    for cls in stationary:
        tok = next(iter(cls))
        if tok[0] == "R":
            tok = ("Q", tok[1])
        ids[cls] = parent[tok]
    retire()
    live = tuple(cls for cls in stationary if ids[cls] in members)
    result = MachineResult(
        depth=w,
        closed=closed,
        delta=delta,
        live=live,
        cycle_event=cycle_event,
    )
    if len(_machine_cache) >= 16384:
        _machine_cache.clear()
    _machine_cache[cache_key] = result
    return result


# ---------------------------------------------------------------------------
# corridors, ends, widths, rays


@lru_cache(maxsize=512)
def corridors(g: PeriodicGraphSpec) -> tuple[frozenset, ...]:
    """Stable connected lane classes of the repeat-only structure, canonical order.

    A corridor survives the sweep without prefix or apex help, so by local
    finiteness it carries a ray; distinct corridors cannot be joined by any
    finite vertex set, which is exactly the end relation.
    """
    res = run_machine(g, full_edge_set(g), use_prefix=False, use_apex=False)
    out = []
    for cls in res.live:
        lanes = frozenset(tok[1] for tok in cls if tok[0] == "R")
        if lanes:
            out.append(lanes)
    return tuple(sorted(out, key=lambda lanes: sorted(lanes)))


def ends_of(g: PeriodicGraphSpec) -> dict:
    """Declared end label -> corridor lane set, in canonical corridor order."""
    cors = corridors(g)
    return dict(zip(g.ends, cors))


def _undirected_capacity_graph(nodes, undirected_edges):
    """Vertex-split digraph: each node capacity 1, edges both ways."""
    G = nx.DiGraph()
    big = len(nodes) + len(undirected_edges) + 3
    for n in nodes:
        G.add_edge((n, "i"), (n, "o"), capacity=1)
    for u, v in undirected_edges:
        G.add_edge((u, "o"), (v, "i"), capacity=big)
        G.add_edge((v, "o"), (u, "i"), capacity=big)
    return G, big


@lru_cache(maxsize=4096)
def corridor_width(g: PeriodicGraphSpec, lanes: frozenset, s: UPEdgeSet | None = None) -> int:
    """Maximum vertex-disjoint forward paths the corridor sustains per window.

    Computed as max flow across k-window strips of the pattern zone; the
    values decrease with k, and a plateau of length |lanes|+1 is taken as the
    limit.  Only pattern-zone edges matter: widths describe tails.
    """
    s = full_edge_set(g) if s is None else s
    if len(lanes) == 1:
        # a surviving single lane is one forward path, nothing to pack
        (lane,) = lanes
        return int(
            any(
                ("spl", j) in s.pattern
                for j, (u, v, _) in enumerate(g.splice_edges)
                if u == lane and v == lane
            )
        )
    lane_list = sorted(lanes)
    win_present = [
        (u, v)
        for j, (u, v, _) in enumerate(g.window_edges)
        if ("win", j) in s.pattern and u in lanes and v in lanes
    ]
    spl_present = [
        (u, v)
        for j, (u, v, _) in enumerate(g.splice_edges)
        if ("spl", j) in s.pattern and u in lanes and v in lanes
    ]
    history = []
    needed = len(lane_list) + 1
    for k in range(2, 8 * (len(lane_list) + 2)):
        nodes = [(l, w) for l in lane_list for w in range(k)]
        edges = []
        for w in range(k):
            edges += [((u, w), (v, w)) for u, v in win_present]
        for w in range(k - 1):
            edges += [((u, w), (v, w + 1)) for u, v in spl_present]
        G, big = _undirected_capacity_graph(nodes, edges)
        for l in lane_list:
            G.add_edge("S", ((l, 0), "i"), capacity=big)
            G.add_edge(((l, k - 1), "o"), "T", capacity=big)
        value, _ = nx.maximum_flow(G, "S", "T")
        history.append(value)
        if len(history) >= needed and len(set(history[-needed:])) == 1:
            return history[-1]
    raise ResourceLimitError("corridor width flow did not plateau")


def ray_count(g: PeriodicGraphSpec) -> int:
    """Maximum number of vertex-disjoint rays: corridor widths summed."""
    return sum(corridor_width(g, lanes) for lanes in corridors(g))


def ray_bearing_lanes(g: PeriodicGraphSpec, s: UPEdgeSet) -> tuple[dict, int]:
    """Lanes that carry a ray of s, mapped to their end label, plus the
    certification depth (sweep depth of the repeat-only machine on s)."""
    res = run_machine(g, s, use_prefix=False, use_apex=False)
    ends = ends_of(g)
    lane_end = {}
    for label, lanes in ends.items():
        for lane in lanes:
            lane_end[lane] = label
    out = {}
    for cls in res.live:
        for tok in cls:
            if tok[0] == "R":
                out[tok[1]] = lane_end[tok[1]]
    return out, res.depth


def surviving_classes(g: PeriodicGraphSpec, s: UPEdgeSet) -> tuple[frozenset, ...]:
    """Ray-bearing lane classes of s itself (repeat-only machine), canonical order."""
    res = run_machine(g, s, use_prefix=False, use_apex=False)
    out = []
    for cls in res.live:
        lanes = frozenset(tok[1] for tok in cls if tok[0] == "R")
        if lanes:
            out.append(lanes)
    return tuple(sorted(out, key=lambda lanes: sorted(lanes)))


# ---------------------------------------------------------------------------
# component summaries


@dataclass
class ComponentSummary:
    count: object           # int or INF
    interface: dict         # token name -> component id at the fixpoint
    depth: int
    closing_rate: int

    def to_dict(self) -> dict:
        return {
            "count": "inf" if self.count is INF else self.count,
            "interface": {str(k): v for k, v in sorted(self.interface.items(), key=lambda kv: str(kv[0]))},
            "depth": self.depth,
            "closing_rate": self.closing_rate,
        }


def _glued_run(g: PeriodicGraphSpec, s: UPEdgeSet, gluing: dict | None) -> MachineResult:
    """Full sweep of s with glue points attached to its ray-bearing lanes.

    gluing maps end labels to point names; unmapped labels stay open.
    """
    if not gluing:
        return run_machine(g, s)
    lane_end, depth = ray_bearing_lanes(g, s)
    glue_lanes = {
        lane: gluing[label] for lane, label in lane_end.items() if label in gluing
    }
    return run_machine(g, s, glue_lanes=glue_lanes, glue_from=depth)


def component_summary(g: PeriodicGraphSpec, s: UPEdgeSet, gluing: dict | None = None) -> ComponentSummary:
    """Connected components of the edge set, with optional end gluing.

    Components containing a ray whose end label is glued to a point are merged
    at that point.  The interface partition at the fixpoint is the certificate:
    one more window reproduces it exactly.
    """
    res = _glued_run(g, s, gluing)
    class_ids = {}
    interface = {}
    for cid, cls in enumerate(res.live):
        for tok in sorted(cls, key=str):
            if tok[0] == "P":
                interface[tok[1]] = cid
            elif tok[0] == "R":
                interface[tok[1]] = cid
            else:
                interface[f"point:{tok[1]}"] = cid
        class_ids[cls] = cid
    return ComponentSummary(
        count=res.component_count(),
        interface=interface,
        depth=res.depth,
        closing_rate=res.delta,
    )


# ---------------------------------------------------------------------------
# explicit truncations (testing backend and witness extraction)


def truncate_graph(g: PeriodicGraphSpec, s: UPEdgeSet, depth: int) -> nx.MultiGraph:
    """Explicit finite graph over windows 0..depth-1, edges restricted to s.

    Nodes are ("p", name) and (lane, w).  Edge keys are instance ids, so
    parallel copies stay distinguishable.
    """
    validate_edge_set(g, s)
    G = nx.MultiGraph()
    for name in g.prefix_vertices:
        G.add_node(("p", name))
    for w in range(depth):
        for lane in g.repeat_vertices:
            G.add_node((lane, w))

    def node_of(ref):
        if isinstance(ref, str):
            return ("p", ref)
        return (ref[1], 0)

    for i in sorted(s.prefix_present):
        u, v, _ = g.prefix_edges[i]
        G.add_edge(node_of(u), node_of(v), key=("pre", i))
    for w in range(depth):
        for j, (u, v, _) in enumerate(g.window_edges):
            if s.has("win", j, w):
                G.add_edge((u, w), (v, w), key=("win", j, w))
        for j, (a, v, _) in enumerate(g.apex_edges):
            if s.has("apx", j, w):
                G.add_edge(("p", a), (v, w), key=("apx", j, w))
    for w in range(depth - 1):
        for j, (u, v, _) in enumerate(g.splice_edges):
            if s.has("spl", j, w):
                G.add_edge((u, w), (v, w + 1), key=("spl", j, w))
    return G


# ---------------------------------------------------------------------------
# finite cycles and double rays


def contains_finite_cycle(g: PeriodicGraphSpec, s: UPEdgeSet):
    """(present, witness): witness is a vertex list closing through one instance.

    Sound because a redundant union joins endpoints already connected through
    real processed edges; complete because once the sweep state repeats, a
    later window can only replay unions the stationary window already ran.
    """
    res = run_machine(g, s)
    if res.cycle_event is None:
        return False, None
    instance, window = res.cycle_event
    G = truncate_graph(g, s, window + 2)
    kind = instance[0]
    if kind == "pre":
        u, v, _ = g.prefix_edges[instance[1]]
        a = ("p", u) if isinstance(u, str) else (u[1], 0)
        b = ("p", v) if isinstance(v, str) else (v[1], 0)
    elif kind == "win":
        _, j, w = instance
        du, dv, _ = g.window_edges[j]
        a, b = (du, w), (dv, w)
    elif kind == "spl":
        _, j, w = instance
        du, dv, _ = g.splice_edges[j]
        a, b = (du, w), (dv, w + 1)
    else:
        _, j, w = instance
        da, dv, _ = g.apex_edges[j]
        a, b = ("p", da), (dv, w)
    H = G.copy()
    H.remove_edge(a, b, key=instance)
    if a == b:
        path = [a]
    else:
        path = nx.shortest_path(H, a, b)
    return True, {"closing_edge": instance, "cycle_vertices": path}


def contains_double_ray(g: PeriodicGraphSpec, s: UPEdgeSet):
    """(present, witness): true iff one component of s can seat two disjoint rays."""
    full = run_machine(g, s)
    lane_class = {}
    for cid, cls in enumerate(full.live):
        for tok in cls:
            if tok[0] == "R":
                lane_class[tok[1]] = cid
    per_class: dict[int, list] = {}
    for piece in surviving_classes(g, s):
        width = corridor_width(g, piece, s)
        lane = sorted(piece)[0]
        cid = lane_class.get(lane)
        if cid is None:
            continue
        per_class.setdefault(cid, []).append((piece, width))
    for cid, pieces in sorted(per_class.items()):
        capacity = sum(w for _, w in pieces)
        if capacity >= 2:
            return True, {
                "component": cid,
                "ray_pieces": [
                    {"lanes": sorted(piece), "width": w} for piece, w in pieces
                ],
            }
    return False, None


# ---------------------------------------------------------------------------
# domination


def _finite_degree(g: PeriodicGraphSpec, v) -> int | None:
    """Degree of a vertex ref; None when infinite (an apex)."""
    if isinstance(v, str):
        if v in g.apexes:
            return None
        d = 0
        for u, w, _ in g.prefix_edges:
            d += (u == v) + (w == v)
        return d
    lane, w = v
    d = 0
    if w == 0:
        for u, x, _ in g.prefix_edges:
            d += (not isinstance(u, str) and u[1] == lane) + (
                not isinstance(x, str) and x[1] == lane
            )
    for u, x, _ in g.window_edges:
        d += (u == lane) + (x == lane)
    for u, x, _ in g.splice_edges:
        d += u == lane        # copy leaving window w
        if w > 0:
            d += x == lane    # copy arriving from window w-1
    for _, x, _ in g.apex_edges:
        d += x == lane
    return d


def domination_witness(g: PeriodicGraphSpec, v, k: int):
    """Smallest truncation depth realizing k paths from v into the deep region.

    The paths are internally vertex-disjoint (they share only v) and must end
    beyond the stabilization horizon of the full graph, so they genuinely
    approach the tail.  Returns None when no depth under the search cap works;
    a finite-degree vertex with degree < k fails immediately.
    """
    if k < 1:
        raise InputError("path count must be at least 1")
    if isinstance(v, str):
        if v not in g.prefix_vertices:
            raise InputError(f"unknown prefix vertex {v!r}")
    else:
        lane, w = v
        if lane not in g.repeat_vertices or w < 0:
            raise InputError(f"unknown repeat vertex {v!r}")
    deg = _finite_degree(g, v)
    if deg is not None and deg < k:
        return None
    s = full_edge_set(g)
    horizon = run_machine(g, s).depth + 1
    if not isinstance(v, str):
        horizon = max(horizon, v[1] + 1)
    src = ("p", v) if isinstance(v, str) else (v[0], v[1])
    for depth in range(horizon + 1, horizon + max(4 * k, 32) + 1):
        G = truncate_graph(g, s, depth)
        D = nx.DiGraph()
        big = G.number_of_nodes() + 2
        for n in G.nodes:
            if n == src:
                continue
            D.add_edge((n, "i"), (n, "o"), capacity=1)
        for a, b in G.edges():
            if a == b:
                continue
            if a == src:
                D.add_edge("SRC", (b, "i"), capacity=big)
            elif b == src:
                D.add_edge("SRC", (a, "i"), capacity=big)
            else:
                D.add_edge((a, "o"), (b, "i"), capacity=big)
                D.add_edge((b, "o"), (a, "i"), capacity=big)
        for lane in g.repeat_vertices:
            for w in range(horizon, depth):
                node = (lane, w)
                if node == src:
                    continue
                D.add_edge((node, "o"), "SINK", capacity=big)
        if "SRC" not in D or "SINK" not in D:
            continue
        value, _ = nx.maximum_flow(D, "SRC", "SINK")
        if value >= k:
            return depth
    return None


# ---------------------------------------------------------------------------
# spec transforms


def unroll(g: PeriodicGraphSpec, k: int) -> PeriodicGraphSpec:
    """Absorb the first k windows into the prefix.

    Window w of the result corresponds to window w+k of the input; absorbed
    copies become prefix vertices named lane@w.  This is how one-off edits to
    early windows (deletions, extra edges) become expressible.
    """
    if k < 0:
        raise InputError("unroll depth must be a natural number")
    if k == 0:
        return g

    def pv(lane, w):
        return f"{lane}@{w}"

    new_prefix_vertices = g.prefix_vertices + tuple(
        pv(lane, w) for w in range(k) for lane in g.repeat_vertices
    )

    def shift_ref(ref, w):
        # a repeat endpoint at absorbed window w becomes a prefix vertex
        if w < k:
            return pv(ref, w)
        return ("r", ref)

    new_prefix_edges = []
    for u, v, role in g.prefix_edges:
        nu = u if isinstance(u, str) else shift_ref(u[1], 0)
        nv = v if isinstance(v, str) else shift_ref(v[1], 0)
        new_prefix_edges.append((nu, nv, role))
    for w in range(k):
        for u, v, role in g.window_edges:
            new_prefix_edges.append((shift_ref(u, w), shift_ref(v, w), role))
        for a, v, role in g.apex_edges:
            new_prefix_edges.append((a, shift_ref(v, w), role))
        for u, v, role in g.splice_edges:
            new_prefix_edges.append((shift_ref(u, w), shift_ref(v, w + 1), role))
    return PeriodicGraphSpec(
        prefix_vertices=new_prefix_vertices,
        repeat_vertices=g.repeat_vertices,
        prefix_edges=tuple(new_prefix_edges),
        window_edges=g.window_edges,
        splice_edges=g.splice_edges,
        apex_edges=g.apex_edges,
        ends=g.ends,
    )


def shift_edge_set(g: PeriodicGraphSpec, s: UPEdgeSet, k: int) -> UPEdgeSet:
    """Rewrite an edge set of g for unroll(g, k): absorbed instances become
    prefix edges of the unrolled spec (by declaration order), later instances
    shift left by k windows."""
    if k == 0:
        return s
    base = s.normalized(max(s.p, k + 1))
    # prefix edges of unroll(g, k) are ordered: original, then per absorbed
    # window: window edges, apex edges, splice edges
    n0 = len(g.prefix_edges)
    nw, na, nsp = len(g.window_edges), len(g.apex_edges), len(g.splice_edges)
    pre = set(base.prefix_present)
    per = nw + na + nsp
    for w in range(k):
        off = n0 + w * per
        for j in range(nw):
            if base.has("win", j, w):
                pre.add(off + j)
        for j in range(na):
            if base.has("apx", j, w):
                pre.add(off + nw + j)
        for j in range(nsp):
            if base.has("spl", j, w):
                pre.add(off + nw + na + j)
    explicit = set()
    for kind, j, w in base.explicit:
        if kind == "spl" and w == k - 1:
            continue  # absorbed above as a boundary prefix edge
        if w >= k:
            explicit.add((kind, j, w - k))
    return UPEdgeSet(max(base.p - k, 0), frozenset(pre), frozenset(explicit), base.pattern)


def split_components(g: PeriodicGraphSpec):
    """Structural components (lane-level connectivity) as independent specs.

    Returns a list of (spec, maps) where maps holds, per edge kind, the list
    of parent indices in the order the component spec declares them.
    """
    nodes = list(g.prefix_vertices) + list(g.repeat_vertices)
    parent = {n: n for n in nodes}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def join(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    def name_of(ref):
        return ref if isinstance(ref, str) else ref[1]

    for u, v, _ in g.prefix_edges:
        join(name_of(u), name_of(v))
    for u, v, _ in g.window_edges + g.splice_edges + g.apex_edges:
        join(name_of(u), name_of(v))
    groups: dict = {}
    for n in nodes:
        groups.setdefault(find(n), []).append(n)
    comps = []
    end_map = ends_of(g)
    for root in sorted(groups, key=lambda r: sorted(groups[r])[0]):
        names = set(groups[root])
        rep = tuple(l for l in g.repeat_vertices if l in names)
        if not rep:
            comps.append((None, {"prefix_vertices": tuple(p for p in g.prefix_vertices if p in names),
                                 "pre": [i for i, (u, v, _) in enumerate(g.prefix_edges)
                                         if name_of(u) in names]}))
            continue
        pre_ids = [
            i for i, (u, v, _) in enumerate(g.prefix_edges) if name_of(u) in names
        ]
        win_ids = [j for j, (u, _, _) in enumerate(g.window_edges) if u in names]
        spl_ids = [j for j, (u, _, _) in enumerate(g.splice_edges) if u in names]
        apx_ids = [j for j, (a, _, _) in enumerate(g.apex_edges) if a in names]
        ends = tuple(
            label for label, lanes in end_map.items() if lanes <= names
        )
        spec = PeriodicGraphSpec(
            prefix_vertices=tuple(p for p in g.prefix_vertices if p in names),
            repeat_vertices=rep,
            prefix_edges=tuple(g.prefix_edges[i] for i in pre_ids),
            window_edges=tuple(g.window_edges[j] for j in win_ids),
            splice_edges=tuple(g.splice_edges[j] for j in spl_ids),
            apex_edges=tuple(g.apex_edges[j] for j in apx_ids),
            ends=ends,
        )
        comps.append((spec, {"pre": pre_ids, "win": win_ids, "spl": spl_ids, "apx": apx_ids}))
    return comps


def reblock(g: PeriodicGraphSpec, q: int) -> PeriodicGraphSpec:
    """Present the same graph with windows grouped q at a time."""
    if q < 1:
        raise InputError("reblock factor must be positive")
    if q == 1:
        return g

    def lane(name, r):
        return f"{name}%{r}"

    rep = tuple(lane(n, r) for r in range(q) for n in g.repeat_vertices)
    win = []
    for r in range(q):
        for u, v, role in g.window_edges:
            win.append((lane(u, r), lane(v, r), role))
    for r in range(q - 1):
        for u, v, role in g.splice_edges:
            win.append((lane(u, r), lane(v, r + 1), role))
    spl = tuple((lane(u, q - 1), lane(v, 0), role) for u, v, role in g.splice_edges)
    apx = tuple(
        (a, lane(v, r), role) for r in range(q) for a, v, role in g.apex_edges
    )
    pre = tuple(
        (
            u if isinstance(u, str) else ("r", lane(u[1], 0)),
            v if isinstance(v, str) else ("r", lane(v[1], 0)),
            role,
        )
        for u, v, role in g.prefix_edges
    )
    return PeriodicGraphSpec(
        prefix_vertices=g.prefix_vertices,
        repeat_vertices=rep,
        prefix_edges=pre,
        window_edges=tuple(win),
        splice_edges=spl,
        apex_edges=apx,
        ends=g.ends,
    )


# ---------------------------------------------------------------------------
# canned families


def ladder_family(n: int = 1) -> PeriodicGraphSpec:
    """n disjoint one-way two-rail ladders; 3 edge slots per window per ladder.

    Window w of ladder i holds lanes t{i}, b{i}, the rung between them, and
    the two rail splices onward; window 0's rung is the closed left edge.
    """
    if n < 1:
        raise InputError("need at least one ladder")
    rep = []
    win = []
    spl = []
    for i in range(n):
        t, b = f"t{i}", f"b{i}"
        rep += [t, b]
        win.append((t, b, "rung"))
        spl.append((t, t, "top"))
        spl.append((b, b, "bottom"))
    return PeriodicGraphSpec(
        repeat_vertices=tuple(rep),
        window_edges=tuple(win),
        splice_edges=tuple(spl),
        ends=tuple(f"end{i}" for i in range(n)),
    )


def bean_family() -> PeriodicGraphSpec:
    """A two-rail family whose lower rail is spoked from a single hub vertex.

    The hub heads the upper rail (one-off edge to x at window 0) and sends a
    spoke to y in every window, so the lower end is dominated by the hub while
    the upper end is not.
    """
    return PeriodicGraphSpec(
        prefix_vertices=("v",),
        repeat_vertices=("x", "y"),
        prefix_edges=((("v"), ("r", "x"), "top"),),
        splice_edges=(("x", "x", "top"), ("y", "y", "bottom")),
        apex_edges=(("v", "y", "spoke"),),
        ends=("end_top", "end_bottom"),
    )
