"""Periodic column families and the rows that keep growing.

A periodic matrix spec repeats a block of columns window after window.
Persistent rows exist once and can pick up support in every window; block
rows are local to their window.  A persistent row whose support keeps
growing is what separates these column matroids from finitary behaviour.
"""

from fractions import Fraction

from matroidlab.linear import (
    Q,
    PeriodicMatrixSpec,
    materialize,
    matrix_rank,
    nearly_thin_count,
    verify_thinAC_equiv,
)

# one persistent row "a", one block row "u" per window, two columns per block:
# the first column hits the persistent row in every window
spec = PeriodicMatrixSpec(
    field=Q,
    persistent_rows=("a",),
    block_rows=("u",),
    block_cols=(
        ((("p", "a"), Fraction(1)), (("b", "u", 0), Fraction(1))),
        ((("b", "u", 0), Fraction(1)), (("b", "u", 1), Fraction(-1))),
    ),
)

count, growing = nearly_thin_count(spec)
print("rows with unbounded support:", count, growing)

# truncations make the growth visible
for n in (2, 4, 6):
    m = materialize(spec, n)
    support = sum(1 for col in m.columns if col[0] != 0)
    print(f"{n} windows: shape {len(m.row_labels)}x{len(m.col_labels)},",
          f"rank {matrix_rank(m)}, persistent-row support {support}")

# incidence columns of a finite multigraph agree with its cycle matroid,
# the finite shadow of the same column-versus-cycle comparison
square_plus_diagonal = ((0, 1), (1, 2), (2, 3), (0, 3), (0, 2))
print("incidence matches cycles over Q:",
      verify_thinAC_equiv(4, square_plus_diagonal, Q))
