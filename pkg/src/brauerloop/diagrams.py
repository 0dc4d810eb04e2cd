"""
Chord diagrams on a circle and their dihedral symmetry classes.

A diagram on L sites pairs the sites 0..L-1 by chords (internally 0-based;
all text I/O is 1-based). The pairing is stored as a partner array:
partner[i] is the site paired with i. For odd L exactly one site stays
unpaired and carries the DEFECT marker instead; think of it as attached to a
fixed virtual point at the centre of the circle.

Diagrams compare by their partner tuples, with DEFECT (-1) sorting below any
site index. A basis lists every diagram of one length in increasing
lexicographic order of partner tuples, which pins the index of each diagram
and keeps downstream matrices and cache files reproducible. Symmetry orbits
group basis indices under the 2L rotations and reflections of the circle;
the orbit representative is the lexicographically smallest member.

Even-length diagrams whose left half-circle connects entirely into the
right half-circle are labelled by a permutation; odd-length diagrams whose
right half-circle connects entirely into the left half-circle are labelled
by a partial permutation (the defect sits on the left). These labels drive
the verification suite in :mod:`brauerloop.checks`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

DEFECT = -1

UNDEFINED = None


@dataclass(frozen=True, order=True)
class ChordDiagram:
    """Pairing of circle sites, one optional defect when the length is odd."""

    partner: tuple[int, ...]

    def __post_init__(self):
        p = self.partner
        size = len(p)
        if size < 2:
            raise ValueError(f"a diagram needs at least 2 sites, got {size}")
        defects = 0
        for i, j in enumerate(p):
            if j == DEFECT:
                defects += 1
                continue
            if not 0 <= j < size:
                raise ValueError(f"partner {j} of site {i} is out of range")
            if j == i:
                raise ValueError(f"site {i} is paired with itself")
            if p[j] != i:
                raise ValueError(f"pairing is not an involution at site {i}")
        if defects != size % 2:
            raise ValueError(
                f"length {size} requires exactly {size % 2} defect(s), found {defects}"
            )

    @property
    def length(self) -> int:
        return len(self.partner)

    @property
    def defect(self) -> int | None:
        """0-based defect site, or None when every site is paired."""
        try:
            return self.partner.index(DEFECT)
        except ValueError:
            return None

    def chords(self) -> list[tuple[int, int]]:
        """The chords as sorted 0-based pairs (i, j) with i < j."""
        return [(i, j) for i, j in enumerate(self.partner) if j != DEFECT and i < j]

    def adjacent_pair_count(self) -> int:
        """Number of sites i paired with their cyclic successor i+1."""
        size = len(self.partner)
        return sum(1 for i, j in enumerate(self.partner) if j == (i + 1) % size)

    def encode(self) -> str:
        """1-based comma-separated partner list with '.' at the defect."""
        return ",".join("." if j == DEFECT else str(j + 1) for j in self.partner)

    @classmethod
    def decode(cls, text: str) -> ChordDiagram:
        fields = text.strip().split(",")
        return cls(tuple(DEFECT if f.strip() == "." else int(f) - 1 for f in fields))

    @classmethod
    def from_pairs(cls, length: int, pairs) -> ChordDiagram:
        """Build from 1-based site pairs; unmentioned sites become the defect."""
        partner = [DEFECT] * length
        for a, b in pairs:
            partner[a - 1] = b - 1
            partner[b - 1] = a - 1
        return cls(tuple(partner))

    def __str__(self) -> str:
        return self.encode()


class DiagramBasis:
    """Every diagram of one length, in increasing lexicographic order."""

    __slots__ = ("length", "diagrams", "_index")

    def __init__(self, length: int, diagrams):
        self.length = length
        self.diagrams = tuple(diagrams)
        self._index = {d.partner: i for i, d in enumerate(self.diagrams)}

    @property
    def index(self) -> dict[tuple[int, ...], int]:
        """Partner tuple -> basis position; the exact inverse of `diagrams`."""
        return dict(self._index)

    def index_of(self, diagram: ChordDiagram) -> int:
        return self._index[diagram.partner]

    def __len__(self) -> int:
        return len(self.diagrams)

    def __iter__(self):
        return iter(self.diagrams)

    def __getitem__(self, i: int) -> ChordDiagram:
        return self.diagrams[i]


@dataclass(frozen=True)
class SymmetryOrbit:
    """One dihedral symmetry class: canonical representative plus members."""

    representative: ChordDiagram
    size: int
    members: tuple[int, ...]

    def __post_init__(self):
        if self.size != len(self.members):
            raise ValueError("orbit size disagrees with its member list")


@dataclass(frozen=True, order=True)
class Permutation:
    """Bijection of {1..n} stored as its one-line image tuple."""

    image: tuple[int, ...]

    def __post_init__(self):
        n = len(self.image)
        if sorted(self.image) != list(range(1, n + 1)):
            raise ValueError(f"{self.image} is not a permutation of 1..{n}")

    @property
    def n(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def longest(cls, n: int) -> Permutation:
        """The order-reversing permutation (n, n-1, ..., 1)."""
        return cls(tuple(range(n, 0, -1)))

    def compact(self) -> str:
        if self.n <= 9:
            return "".join(str(v) for v in self.image)
        return ",".join(str(v) for v in self.image)

    def __str__(self) -> str:
        return f"({self.compact()})"


@dataclass(frozen=True)
class PartialPermutation:
    """Injective map of all but one of {1..n+1} onto {1..n}.

    The image tuple has length n+1 with UNDEFINED (None) at the one
    unmapped point; `reverse()` gives the inverse-direction map on {1..n}.
    """

    image: tuple[int | None, ...]

    def __post_init__(self):
        n = len(self.image) - 1
        if n < 1:
            raise ValueError("a partial permutation needs rank at least 1")
        defined = [v for v in self.image if v is not None]
        if len(defined) != n:
            raise ValueError("exactly one image entry must be UNDEFINED")
        if sorted(defined) != list(range(1, n + 1)):
            raise ValueError(f"defined entries must be 1..{n} without repeats")

    @property
    def rank(self) -> int:
        return len(self.image) - 1

    def reverse(self) -> tuple[int, ...]:
        """The reverse-connectivity map: position of each value 1..n."""
        back = {v: i + 1 for i, v in enumerate(self.image) if v is not None}
        return tuple(back[v] for v in range(1, self.rank + 1))

    def compact(self) -> str:
        if self.rank <= 8:
            return "".join("." if v is None else str(v) for v in self.image)
        return ",".join("." if v is None else str(v) for v in self.image)

    def __str__(self) -> str:
        return f"({self.compact()})"

    def _key(self) -> tuple[int, ...]:
        return tuple(0 if v is None else v for v in self.image)

    def __lt__(self, other: PartialPermutation) -> bool:
        return self._key() < other._key()


def enumerate_diagrams(length: int) -> DiagramBasis:
    """All chord diagrams of the given length, lexicographically ordered.

    There are (L-1)!! diagrams for even L and L*(L-2)!! for odd L.
    """
    if length < 2:
        raise ValueError(f"diagram enumeration needs length >= 2, got {length}")
    found: list[tuple[int, ...]] = []
    partner = [DEFECT] * length

    def fill(free: tuple[int, ...]):
        if not free:
            found.append(tuple(partner))
            return
        i = free[0]
        rest = free[1:]
        for k, j in enumerate(rest):
            partner[i] = j
            partner[j] = i
            fill(rest[:k] + rest[k + 1 :])
            partner[j] = DEFECT
        partner[i] = DEFECT

    sites = tuple(range(length))
    if length % 2:
        for hole in sites:
            fill(sites[:hole] + sites[hole + 1 :])
    else:
        fill(sites)
    found.sort()
    return DiagramBasis(length, [ChordDiagram(p) for p in found])


def _rotate_tuple(p: tuple[int, ...], k: int) -> tuple[int, ...]:
    size = len(p)
    k %= size
    out = [DEFECT] * size
    for i, j in enumerate(p):
        out[(i + k) % size] = DEFECT if j == DEFECT else (j + k) % size
    return tuple(out)


def _reflect_tuple(p: tuple[int, ...]) -> tuple[int, ...]:
    size = len(p)
    out = [DEFECT] * size
    for i, j in enumerate(p):
        out[size - 1 - i] = DEFECT if j == DEFECT else size - 1 - j
    return tuple(out)


def rotate(diagram: ChordDiagram, k: int) -> ChordDiagram:
    """Rotate every site (and the defect) forward by k positions."""
    return ChordDiagram(_rotate_tuple(diagram.partner, k))


def reflect(diagram: ChordDiagram) -> ChordDiagram:
    """Mirror the circle: site i goes to site L-1-i."""
    return ChordDiagram(_reflect_tuple(diagram.partner))


def _dihedral_images(p: tuple[int, ...]):
    straight = p
    mirrored = _reflect_tuple(p)
    for _ in range(len(p)):
        yield straight
        yield mirrored
        straight = _rotate_tuple(straight, 1)
        mirrored = _rotate_tuple(mirrored, 1)


def canonical_representative(diagram: ChordDiagram) -> ChordDiagram:
    """Lexicographically smallest of the 2L dihedral images of the diagram."""
    return ChordDiagram(min(_dihedral_images(diagram.partner)))


def compute_orbits(basis: DiagramBasis) -> list[SymmetryOrbit]:
    """Partition the basis into dihedral orbits, sorted by representative.

    Orbits are connected components under one rotation step and the
    reflection, which generate the full dihedral group; since the basis is
    sorted, the smallest member index is the canonical representative.
    """
    n = len(basis)
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    lookup = basis._index
    for idx, diagram in enumerate(basis.diagrams):
        p = diagram.partner
        for image in (_rotate_tuple(p, 1), _reflect_tuple(p)):
            a, b = find(idx), find(lookup[image])
            if a != b:
                parent[max(a, b)] = min(a, b)

    groups: dict[int, list[int]] = {}
    for idx in range(n):
        groups.setdefault(find(idx), []).append(idx)
    orbits = [
        SymmetryOrbit(
            representative=basis.diagrams[members[0]],
            size=len(members),
            members=tuple(members),
        )
        for members in groups.values()
    ]
    orbits.sort(key=lambda orbit: orbit.representative.partner)
    return orbits


def permutation_label(diagram: ChordDiagram) -> Permutation | None:
    """Label of an even diagram whose left half maps onto its right half.

    With 1-based sites and L = 2n, a labelled diagram pairs site i of the
    left block {1..n} with site n + pi(i) of the right block. Returns None
    when any left-block site pairs inside the left block.
    """
    size = diagram.length
    if size % 2:
        raise ValueError("permutation labels require an even number of sites")
    half = size // 2
    image = []
    for i in range(half):
        j = diagram.partner[i]
        if j < half:
            return None
        image.append(j - half + 1)
    return Permutation(tuple(image))


def partial_permutation_label(diagram: ChordDiagram) -> PartialPermutation | None:
    """Label of an odd diagram whose right half maps into its left half.

    With L = 2n+1 the left block {1..n+1} holds the defect; each right-block
    site n+1+k pairs with some left site. Returns None when a right-block
    site pairs inside the right block or carries the defect.
    """
    size = diagram.length
    if size % 2 == 0:
        raise ValueError("partial permutation labels require an odd number of sites")
    half = size // 2
    for i in range(half + 1, size):
        j = diagram.partner[i]
        if j == DEFECT or j > half:
            return None
    image = []
    for i in range(half + 1):
        j = diagram.partner[i]
        image.append(None if j == DEFECT else j - half)
    return PartialPermutation(tuple(image))


def diagram_of_label(label: Permutation | PartialPermutation) -> ChordDiagram:
    """The unique chord diagram carrying the given (partial) permutation label."""
    if isinstance(label, Permutation):
        n = label.n
        partner = [0] * (2 * n)
        for i, v in enumerate(label.image):
            partner[i] = n + v - 1
            partner[n + v - 1] = i
        return ChordDiagram(tuple(partner))
    n = label.rank
    partner = [DEFECT] * (2 * n + 1)
    for i, v in enumerate(label.image):
        if v is not None:
            partner[i] = n + v
            partner[n + v] = i
    return ChordDiagram(tuple(partner))


@lru_cache(maxsize=16)
def shared_basis(length: int) -> DiagramBasis:
    """Process-wide memoised basis; enumeration is deterministic, so sharing is safe."""
    return enumerate_diagrams(length)


@lru_cache(maxsize=16)
def shared_orbits(length: int) -> tuple[SymmetryOrbit, ...]:
    return tuple(compute_orbits(shared_basis(length)))
