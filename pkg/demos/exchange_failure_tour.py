"""Where glued cycle systems stop being matroids.

The hub family has two lanes, a prefix vertex joined to the bottom lane in
every window, and one top-lane anchor edge.  With both ends glued, a maximal
independent set and a smaller independent set coexist even though nothing
from their difference can be added back: the maximality exchange axiom fails.
The hub's unbounded degree is what makes this possible, and the domination
probe below shows exactly that asymmetry.
"""

from matroidlab.cycles import glue_all, nearly_finitary_verdict, verify_i3_violation
from matroidlab.periodic import (
    bean_family,
    domination_witness,
    ladder_family,
    ray_count,
)

bean = bean_family()
print("prefix vertices:", bean.prefix_vertices)
print("lanes:          ", bean.repeat_vertices)

wit = verify_i3_violation(bean)
print("\nexchange failure certificate:")
print("  maximal base:        ", wit["maximal_base"])
print("  stranded independent:", wit["stranded_independent"])
print("  blocked difference:  ", wit["blocked_difference"])
print("  addable elsewhere:   ", wit["addable_elsewhere"])

# the hub pushes any number of disjoint paths into the tail of the graph
print("\ndisjoint deep paths from the hub:")
for k in (2, 4, 6):
    print(f"  k={k}: reached at truncation depth {domination_witness(bean, 'v', k)}")

# no ladder vertex can do the same past its own degree
g = ladder_family(1)
print("ladder rail vertex (t0, 0) at k=4:", domination_witness(g, ("t0", 0), 4))

# the gap between glued and plain bases stays bounded by the ray packing
for n in (1, 2, 3):
    g = ladder_family(n)
    verdict = nearly_finitary_verdict(g, glue_all(g))
    print(f"{n}-rung ladder: {ray_count(g)} disjoint rays,",
          f"verdict {verdict.verdict!r} with bound {verdict.k}")
