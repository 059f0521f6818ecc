"""Field-backed matroids with exact arithmetic.

Supports GF(2) (columns packed into int bitsets) and the rationals (Fraction
entries).  No floating point anywhere: membership answers are discrete and a
rounded pivot would corrupt them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .core import GroundSet, OracleMatroid, graphic_matroid, family_masks
from .errors import InputError, ResourceLimitError
from .util import iter_bits

GF2 = "gf2"
Q = "q"
FIELDS = (GF2, Q)


def _check_field(field: str):
    if field not in FIELDS:
        raise InputError(f"unknown field {field!r}; expected one of {FIELDS}")


@dataclass(frozen=True)
class MatrixRep:
    """Dense column-major matrix over GF(2) or Q, with labelled rows and columns."""

    field: str
    row_labels: tuple[str, ...]
    col_labels: tuple[str, ...]
    columns: tuple[tuple, ...]

    def __post_init__(self):
        _check_field(self.field)
        n = len(self.row_labels)
        if len(self.columns) != len(self.col_labels):
            raise InputError("column count does not match column labels")
        for col in self.columns:
            if len(col) != n:
                raise InputError("column length does not match row count")
            if self.field == GF2 and any(v not in (0, 1) for v in col):
                raise InputError("GF(2) entries must be 0 or 1")

    @classmethod
    def from_rows(cls, field: str, rows, row_labels=None, col_labels=None) -> "MatrixRep":
        rows = [list(r) for r in rows]
        n_rows = len(rows)
        n_cols = len(rows[0]) if rows else 0
        if any(len(r) != n_cols for r in rows):
            raise InputError("ragged matrix")
        if field == Q:
            rows = [[Fraction(v) for v in r] for r in rows]
        else:
            rows = [[int(v) % 2 for v in r] for r in rows]
        cols = tuple(tuple(rows[i][j] for i in range(n_rows)) for j in range(n_cols))
        rl = tuple(row_labels) if row_labels else tuple(f"r{i}" for i in range(n_rows))
        cl = tuple(col_labels) if col_labels else tuple(f"c{j}" for j in range(n_cols))
        return cls(field, rl, cl, cols)

    @property
    def n_rows(self) -> int:
        return len(self.row_labels)

    @property
    def n_cols(self) -> int:
        return len(self.col_labels)

    def column_bitsets(self) -> tuple[int, ...]:
        """GF(2) columns packed as ints, row i = bit i."""
        if self.field != GF2:
            raise InputError("bitset view is a GF(2) representation")
        out = []
        for col in self.columns:
            m = 0
            for i, v in enumerate(col):
                if v:
                    m |= 1 << i
            out.append(m)
        return tuple(out)


# ---------------------------------------------------------------------------
# exact rank kernels


def gf2_rank(vectors) -> int:
    """Rank of int-packed GF(2) vectors by pivoting on the highest set bit."""
    pivots: dict[int, int] = {}
    rank = 0
    for v in vectors:
        while v:
            top = v.bit_length() - 1
            if top in pivots:
                v ^= pivots[top]
            else:
                pivots[top] = v
                rank += 1
                break
    return rank


def q_rank(vectors) -> int:
    """Rank of rational vectors; elimination strictly advances the lead index.

    Entries are coerced to Fraction up front: int entries would otherwise hit
    true division and drop to floats mid-elimination.
    """
    pivots: dict[int, list] = {}
    rank = 0
    for vec in vectors:
        v = [Fraction(a) for a in vec]
        while True:
            lead = next((i for i, a in enumerate(v) if a != 0), None)
            if lead is None:
                break
            if lead in pivots:
                p = pivots[lead]
                c = v[lead] / p[lead]
                v = [a - c * b for a, b in zip(v, p)]
            else:
                pivots[lead] = v
                rank += 1
                break
    return rank


def matrix_rank(m: MatrixRep, col_mask: int | None = None) -> int:
    cols = (
        m.columns
        if col_mask is None
        else [m.columns[j] for j in iter_bits(col_mask)]
    )
    if m.field == GF2:
        packed = []
        for col in cols:
            b = 0
            for i, v in enumerate(col):
                if v:
                    b |= 1 << i
            packed.append(b)
        return gf2_rank(packed)
    return q_rank(cols)


# ---------------------------------------------------------------------------
# matroids from matrices


def linear_matroid(m: MatrixRep) -> OracleMatroid:
    """Column matroid: a subset is independent iff its columns are."""
    ground = GroundSet(m.col_labels)
    if m.field == GF2:
        packed = m.column_bitsets()

        def rk(mask: int) -> int:
            return gf2_rank([packed[j] for j in iter_bits(mask)])

    else:
        cols = m.columns

        def rk(mask: int) -> int:
            return q_rank([cols[j] for j in iter_bits(mask)])

    return OracleMatroid(ground, rk, label=f"linear({m.field},{m.n_rows}x{m.n_cols})")


def incidence_matrix(n_vertices: int, edges, field: str = Q) -> MatrixRep:
    """Vertex-edge incidence with the canonical low-to-high orientation.

    The low endpoint gets +1 and the high endpoint -1 (both collapse to 1 over
    GF(2)); a loop cancels itself and yields a zero column.
    """
    _check_field(field)
    edges = tuple((int(u), int(v)) for u, v in edges)
    for u, v in edges:
        if not (0 <= u < n_vertices and 0 <= v < n_vertices):
            raise InputError("edge endpoint outside vertex range")
    cols = []
    for u, v in edges:
        col = [0] * n_vertices
        lo, hi = min(u, v), max(u, v)
        if lo == hi:
            cols.append(tuple(col))
            continue
        if field == GF2:
            col[lo] = 1
            col[hi] = 1
        else:
            col[lo] = Fraction(1)
            col[hi] = Fraction(-1)
        cols.append(tuple(col))
    return MatrixRep(
        field,
        tuple(f"v{i}" for i in range(n_vertices)),
        tuple(f"e{j}" for j in range(len(edges))),
        tuple(cols),
    )


def verify_thinAC_equiv(n_vertices: int, edges, field: str = Q, cap: int | None = None) -> bool:
    """Incidence column matroid vs cycle matroid of the same multigraph."""
    lin = linear_matroid(incidence_matrix(n_vertices, edges, field))
    gra = graphic_matroid(n_vertices, edges)
    return family_masks(lin, cap) == family_masks(gra, cap)


def span_maximality_check(m: MatrixRep, s) -> bool:
    """True iff independent set s already spans the whole column space."""
    ground = GroundSet(m.col_labels)
    mask = s if isinstance(s, int) else ground.mask(s)
    r = matrix_rank(m, mask)
    if r != mask.bit_count():
        raise InputError("span test requires an independent set")
    return r == matrix_rank(m)


# ---------------------------------------------------------------------------
# periodic column families


@dataclass(frozen=True)
class PeriodicMatrixSpec:
    """Column family repeated window by window.

    persistent_rows exist once; block_rows are freshly instantiated in every
    window.  Each column pattern is a tuple of (rowref, value) entries, where
    a rowref is ("p", name) for a persistent row or ("b", name, delta) for the
    block row of this window (delta 0) or the next (delta 1).
    """

    field: str
    persistent_rows: tuple[str, ...]
    block_rows: tuple[str, ...]
    block_cols: tuple[tuple, ...]

    def __post_init__(self):
        _check_field(self.field)
        names = self.persistent_rows + self.block_rows
        if len(set(names)) != len(names):
            raise InputError("row names must be unique across both kinds")
        for col in self.block_cols:
            for ref, value in col:
                if value == 0:
                    raise InputError("pattern entries must be nonzero")
                if self.field == GF2 and value != 1:
                    raise InputError("GF(2) entries must be 1")
                if ref[0] == "p":
                    if ref[1] not in self.persistent_rows:
                        raise InputError(f"unknown persistent row {ref[1]!r}")
                elif ref[0] == "b":
                    if ref[1] not in self.block_rows:
                        raise InputError(f"unknown block row {ref[1]!r}")
                    if ref[2] not in (0, 1):
                        raise InputError("block row offset must be 0 or 1")
                else:
                    raise InputError(f"bad row reference {ref!r}")


def materialize(spec: PeriodicMatrixSpec, n_windows: int) -> MatrixRep:
    """Truncate the family to n_windows windows of columns.

    Entries pointing at the block row after the last window are dropped, the
    usual truncation of forward references at the boundary.
    """
    if n_windows < 1:
        raise InputError("need at least one window")
    row_labels = list(spec.persistent_rows)
    row_index = {("p", name): i for i, name in enumerate(spec.persistent_rows)}
    for w in range(n_windows):
        for name in spec.block_rows:
            row_index[("b", name, w)] = len(row_labels)
            row_labels.append(f"{name}@{w}")
    cols = []
    col_labels = []
    zero = 0 if spec.field == GF2 else Fraction(0)
    for w in range(n_windows):
        for j, pattern in enumerate(spec.block_cols):
            col = [zero] * len(row_labels)
            for ref, value in pattern:
                if ref[0] == "p":
                    col[row_index[ref]] = value
                else:
                    target = w + ref[2]
                    if target >= n_windows:
                        continue
                    col[row_index[("b", ref[1], target)]] = value
            cols.append(tuple(col))
            col_labels.append(f"c{j}@{w}")
    return MatrixRep(spec.field, tuple(row_labels), tuple(col_labels), tuple(cols))


def _persistent_supports(spec: PeriodicMatrixSpec, n_windows: int) -> dict[str, int]:
    m = materialize(spec, n_windows)
    out = {name: 0 for name in spec.persistent_rows}
    for i, name in enumerate(spec.persistent_rows):
        out[name] = sum(1 for col in m.columns if col[i] != 0)
    return out


def nearly_thin_count(spec: PeriodicMatrixSpec, depth: int = 2) -> tuple[int, tuple[str, ...]]:
    """Persistent rows whose column support keeps growing with the window count.

    Returns (count, growing row names).  The growing-row set is compared at
    depth and depth+1; disagreement means the pattern has not settled within
    the requested depth.
    """
    if depth < 2:
        raise InputError("support comparison needs depth >= 2")
    s0 = _persistent_supports(spec, depth)
    s1 = _persistent_supports(spec, depth + 1)
    s2 = _persistent_supports(spec, depth + 2)
    g1 = {name for name in s0 if s1[name] > s0[name]}
    g2 = {name for name in s0 if s2[name] > s1[name]}
    if g1 != g2:
        raise ResourceLimitError(
            f"support growth not stable at depth {depth}: {sorted(g1 ^ g2)}"
        )
    growing = tuple(sorted(g1))
    return len(growing), growing
