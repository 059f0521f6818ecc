"""Finite independence systems: screens, operators, and a non-matroid.

Everything here runs on explicit or oracle-backed systems over small ground
sets, so every claim is checked by enumeration.
"""

from matroidlab.core import (
    check_axioms,
    dual,
    graphic_matroid,
    rank_of,
    uniform_matroid,
)
from matroidlab.linear import GF2, MatrixRep, linear_matroid, span_maximality_check
from matroidlab.ops import (
    NestedPair,
    ch4_system,
    check_unionable,
    smin_enumerate,
    spectrum,
    truncate_top,
    verify_difference_duality,
)

# three presentations of small matroids
u24 = uniform_matroid(2, 4)
triangle = graphic_matroid(3, ((0, 1), (1, 2), (0, 2)))
m = MatrixRep.from_rows(GF2, [[1, 0, 1], [0, 1, 1]], col_labels=("a", "b", "c"))
binary = linear_matroid(m)
print("ranks:", rank_of(u24), rank_of(triangle), rank_of(binary))

# every one passes the independence axiom screen
for sys_ in (u24, triangle, binary):
    report = check_axioms(sys_, "I")
    print(f"{sys_.label}:", dict(report.verdicts))

# the union of two matroids is again a matroid; the screen confirms it
print("\nunion screen conformant:", check_unionable(u24, triangle).conformant)

# difference of a nested pair equals a dual-union-dual composite
inner = truncate_top(triangle, 1)
equal, _ = verify_difference_duality(triangle, inner)
print("difference/duality identity:", equal)

# nested bases leave gaps of every size between the two ranks
pair = NestedPair(inner, triangle)
print("nested pair spectrum:", list(spectrum(pair).values))
print("minimal spanning complements:", len(smin_enumerate(pair)))

# spanning tests agree with maximality for matrices; columns go by index
print("\nfirst two columns span:", span_maximality_check(m, (0, 1)))

# the block-avoidance system: independent iff one block is missed entirely,
# a family that fails maximality exchange from r = 2 onward
for r in (2, 3):
    blocks = ch4_system(r)
    report = check_axioms(blocks.inner, "I")
    print(f"block system r={r}: spectrum {list(spectrum(blocks).values)},",
          f"I3 {report.verdicts['I3']}")

# duality is an involution on every matroid here
dd = dual(dual(u24))
print("\ndouble dual matches:",
      all(rank_of(dd, s) == rank_of(u24, s) for s in range(1 << 4)))
