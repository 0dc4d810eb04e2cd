"""
Sparse integer assembly of the loop Hamiltonian over a diagram basis.

The operator is the sum over all L sites of (3 - 2*monoid_i - braid_i).
Columns are input diagrams: the column of a diagram d carries +3L on the
diagonal and, for every site, -2 at the row of the monoid image and -1 at
the row of the braid image (contributions landing back on d reduce the
diagonal). The result is an intensity matrix: off-diagonal entries are
nonpositive and every column sums to zero, so the kernel describes the
stationary state of a continuous-time chain on diagrams.

The reduced build lumps the matrix over dihedral orbits by summing whole
orbit blocks. Because the generator action commutes with rotations and
reflections, each row of an orbit contributes the same per-orbit column
sums; that agreement is verified entry by entry during assembly rather than
assumed, and the lumped matrix keeps zero column sums while its kernel is
exactly the vector of per-orbit weights.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .diagrams import ChordDiagram, DiagramBasis, SymmetryOrbit
from .generators import apply_braid, apply_monoid

FULL = "full"
REDUCED = "reduced"


@dataclass(frozen=True)
class IntensityMatrix:
    """Column-sparse integer matrix with zero column sums."""

    length: int
    kind: str
    dimension: int
    columns: tuple[dict[int, int], ...]

    def entry(self, row: int, col: int) -> int:
        return self.columns[col].get(row, 0)

    def column_sum(self, col: int) -> int:
        return sum(self.columns[col].values())

    def validate(self, basis: DiagramBasis | None = None) -> None:
        """Check the intensity-matrix structure; raises on violation."""
        for c, col in enumerate(self.columns):
            if sum(col.values()) != 0:
                raise ArithmeticError(f"column {c} does not sum to zero")
            for r, v in col.items():
                if r != c and v > 0:
                    raise ArithmeticError(f"positive off-diagonal entry at ({r}, {c})")
        if self.kind == FULL and basis is not None:
            three_l = 3 * self.length
            for c, diagram in enumerate(basis.diagrams):
                expected = three_l - 3 * diagram.adjacent_pair_count()
                if self.entry(c, c) != expected:
                    raise ArithmeticError(
                        f"diagonal of column {c} is {self.entry(c, c)}, expected {expected}"
                    )

    def to_triplet_text(self) -> str:
        """Plain-text dump: header "L kind dimension", then "row col value" lines."""
        lines = [f"{self.length} {self.kind} {self.dimension}"]
        triplets = sorted(
            (r, c, v) for c, col in enumerate(self.columns) for r, v in col.items()
        )
        lines.extend(f"{r} {c} {v}" for r, c, v in triplets)
        return "\n".join(lines) + "\n"


def _assemble_column(basis: DiagramBasis, diagram: ChordDiagram) -> dict[int, int]:
    size = basis.length
    col = {basis.index_of(diagram): 3 * size}
    for i in range(1, size + 1):
        m = basis.index_of(apply_monoid(i, diagram))
        col[m] = col.get(m, 0) - 2
        b = basis.index_of(apply_braid(i, diagram))
        col[b] = col.get(b, 0) - 1
    return {r: v for r, v in col.items() if v}


def build_full(basis: DiagramBasis) -> IntensityMatrix:
    """Assemble the operator column by column over the full diagram basis."""
    columns = tuple(_assemble_column(basis, d) for d in basis.diagrams)
    return IntensityMatrix(
        length=basis.length, kind=FULL, dimension=len(basis), columns=columns
    )


def build_reduced(
    basis: DiagramBasis, orbits: list[SymmetryOrbit] | tuple[SymmetryOrbit, ...]
) -> IntensityMatrix:
    """Lump the full operator over dihedral orbits by summing orbit blocks.

    For each pair of orbits (R, C) the entry is the sum of all full entries
    with row in R and column in C. Equivariance makes the per-row sums
    constant across R; that representative independence is asserted for
    every column orbit, so a broken symmetry cannot pass silently.
    """
    orbit_of = [-1] * len(basis)
    seen = 0
    for oi, orbit in enumerate(orbits):
        for m in orbit.members:
            if orbit_of[m] != -1:
                raise ValueError("orbits overlap: not a partition of the basis")
            orbit_of[m] = oi
            seen += 1
    if seen != len(basis) or any(o == -1 for o in orbit_of):
        raise ValueError("orbits do not cover the basis")

    columns = []
    for oi, orbit in enumerate(orbits):
        acc: dict[int, int] = {}
        for ci in orbit.members:
            for r, v in _assemble_column(basis, basis.diagrams[ci]).items():
                acc[r] = acc.get(r, 0) + v
        by_row_orbit: dict[int, dict[int, int]] = {}
        for r, v in acc.items():
            by_row_orbit.setdefault(orbit_of[r], {})[r] = v
        col: dict[int, int] = {}
        for ri, row_values in by_row_orbit.items():
            members = orbits[ri].members
            values = [row_values.get(r, 0) for r in members]
            if any(v != values[0] for v in values):
                raise ArithmeticError(
                    "symmetry lumping is not representative-independent for rows "
                    f"of orbit {ri} against columns of orbit {oi}"
                )
            if values[0]:
                col[ri] = values[0] * len(members)
        columns.append(col)
    return IntensityMatrix(
        length=basis.length, kind=REDUCED, dimension=len(orbits), columns=tuple(columns)
    )


def connectivity_check(matrix: IntensityMatrix) -> bool:
    """True iff the off-diagonal transition graph is strongly connected."""
    n = matrix.dimension
    if n <= 1:
        return True
    forward: list[list[int]] = [[] for _ in range(n)]
    backward: list[list[int]] = [[] for _ in range(n)]
    for c, col in enumerate(matrix.columns):
        for r in col:
            if r != c:
                forward[c].append(r)
                backward[r].append(c)

    def reaches_all(adj) -> bool:
        seen = [False] * n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            x = queue.popleft()
            for y in adj[x]:
                if not seen[y]:
                    seen[y] = True
                    count += 1
                    queue.append(y)
        return count == n

    return reaches_all(forward) and reaches_all(backward)


def annihilates(basis: DiagramBasis, values) -> bool:
    """Exact check that the operator sends the given diagram vector to zero.

    Streams the columns instead of storing the matrix, so it stays cheap
    even for lengths where the full operator would be bulky.
    """
    if len(values) != len(basis):
        raise ValueError("value vector does not match the basis size")
    out = [0] * len(basis)
    for ci, diagram in enumerate(basis.diagrams):
        w = values[ci]
        if w == 0:
            continue
        for r, v in _assemble_column(basis, diagram).items():
            out[r] += v * w
    return all(x == 0 for x in out)
