"""
Generator action of the periodic Brauer algebra on chord diagrams.

Two families act at each site i (1-based; the site after L is site 1, so the
action is periodic). The monoid generator joins i and i+1 and rejoins their
former partners to each other; the braid generator swaps the partners of i
and i+1. When i and i+1 are already paired, both act as the identity. A
former partner may be the immovable virtual centre of an odd diagram, in
which case whatever would have been joined to it becomes the new defect.

Both maps are pure functions returning new diagrams. `check_relations`
verifies the defining relations of the algebra on every diagram of a given
length (or on a sample) and reports a counterexample on failure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .diagrams import DEFECT, ChordDiagram, enumerate_diagrams, rotate


def _check_index(i: int, size: int) -> None:
    if not 1 <= i <= size:
        raise IndexError(f"generator index {i} out of range 1..{size}")


def apply_monoid(i: int, diagram: ChordDiagram) -> ChordDiagram:
    """Join sites i and i+1, and rejoin their former partners."""
    size = diagram.length
    _check_index(i, size)
    a = i - 1
    b = i % size
    p = diagram.partner
    pa, pb = p[a], p[b]
    if pa == b:
        return diagram
    out = list(p)
    out[a] = b
    out[b] = a
    if pa == DEFECT:
        out[pb] = DEFECT
    elif pb == DEFECT:
        out[pa] = DEFECT
    else:
        out[pa] = pb
        out[pb] = pa
    return ChordDiagram(tuple(out))


def apply_braid(i: int, diagram: ChordDiagram) -> ChordDiagram:
    """Swap the partners of sites i and i+1."""
    size = diagram.length
    _check_index(i, size)
    a = i - 1
    b = i % size
    p = diagram.partner
    pa, pb = p[a], p[b]
    if pa == b:
        return diagram
    out = list(p)
    if pa == DEFECT:
        out[a] = pb
        out[pb] = a
        out[b] = DEFECT
    elif pb == DEFECT:
        out[b] = pa
        out[pa] = b
        out[a] = DEFECT
    else:
        out[a] = pb
        out[pb] = a
        out[b] = pa
        out[pa] = b
    return ChordDiagram(tuple(out))


@dataclass(frozen=True)
class RelationCheck:
    name: str
    passed: bool
    cases: int
    counterexample: str | None = None


@dataclass(frozen=True)
class RelationReport:
    length: int
    exhaustive: bool
    checks: tuple[RelationCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self) -> str:
        width = max(len(c.name) for c in self.checks)
        lines = [f"relations for length {self.length} "
                 f"({'exhaustive' if self.exhaustive else 'sampled'})"]
        for c in self.checks:
            status = "pass" if c.passed else "FAIL"
            line = f"  {c.name.ljust(width)}  {status}  ({c.cases} cases)"
            if c.counterexample:
                line += f"  counterexample: {c.counterexample}"
            lines.append(line)
        return "\n".join(lines)


def _cyclic_distance(i: int, j: int, size: int) -> int:
    d = (i - j) % size
    return min(d, size - d)


def check_relations(
    length: int, exhaustive: bool = True, sample: int = 50, seed: int = 0
) -> RelationReport:
    """Verify the defining relations as equalities of maps on diagrams.

    Covers idempotence of the monoids, the braid relations, the mixed
    monoid/braid relations, commutation at cyclic distance > 1, and the
    rotation covariance that closes the family periodically.
    """
    if length < 3:
        raise ValueError("relation checks need length >= 3")
    basis = enumerate_diagrams(length)
    if exhaustive:
        diagrams = list(basis.diagrams)
    else:
        rng = random.Random(seed)
        diagrams = [basis.diagrams[rng.randrange(len(basis))] for _ in range(sample)]

    sites = range(1, length + 1)
    adjacent = [(i, j) for i in sites for j in sites
                if i != j and _cyclic_distance(i, j, length) == 1]
    distant = [(i, j) for i in sites for j in sites
               if i != j and _cyclic_distance(i, j, length) > 1]

    def e(i):
        return lambda d: apply_monoid(i, d)

    def b(i):
        return lambda d: apply_braid(i, d)

    def rot(k):
        return lambda d: rotate(d, k)

    def word(*ops):
        def run(d):
            for op in reversed(ops):
                d = op(d)
            return d

        return run

    # Each relation family: (name, [(lhs, rhs, tag), ...] per index choice).
    families: list[tuple[str, list[tuple]]] = []

    families.append((
        "monoid idempotent: e_i e_i = e_i",
        [(word(e(i), e(i)), word(e(i)), f"i={i}") for i in sites],
    ))
    families.append((
        "braid involution: b_i b_i = 1",
        [(word(b(i), b(i)), word(), f"i={i}") for i in sites],
    ))
    families.append((
        "monoid absorption: e_i e_j e_i = e_i",
        [(word(e(i), e(j), e(i)), word(e(i)), f"i={i},j={j}") for i, j in adjacent],
    ))
    families.append((
        "braid relation: b_i b_j b_i = b_j b_i b_j",
        [(word(b(i), b(j), b(i)), word(b(j), b(i), b(j)), f"i={i},j={j}")
         for i, j in adjacent],
    ))
    families.append((
        "mixed absorption: b_i e_i = e_i b_i = e_i",
        [(word(b(i), e(i)), word(e(i)), f"i={i} (left)") for i in sites]
        + [(word(e(i), b(i)), word(e(i)), f"i={i} (right)") for i in sites],
    ))
    families.append((
        "mixed slide: b_i b_j e_i = e_j b_i b_j = e_j e_i",
        [(word(b(i), b(j), e(i)), word(e(j), e(i)), f"i={i},j={j} (left)")
         for i, j in adjacent]
        + [(word(e(j), b(i), b(j)), word(e(j), e(i)), f"i={i},j={j} (middle)")
           for i, j in adjacent],
    ))
    families.append((
        "monoid commutation: [e_i, e_j] = 0",
        [(word(e(i), e(j)), word(e(j), e(i)), f"i={i},j={j}")
         for i, j in distant if i < j],
    ))
    families.append((
        "braid commutation: [b_i, b_j] = 0",
        [(word(b(i), b(j)), word(b(j), b(i)), f"i={i},j={j}")
         for i, j in distant if i < j],
    ))
    families.append((
        "mixed commutation: [e_i, b_j] = 0",
        [(word(e(i), b(j)), word(b(j), e(i)), f"i={i},j={j}") for i, j in distant],
    ))
    # Periodic closure: conjugating by one rotation shifts the site index,
    # so the generator at site L is the wrap-around of the one at site 1.
    families.append((
        "rotation covariance: g_{i+1} = r g_i r^-1",
        [(word(e(i % length + 1)), word(rot(1), e(i), rot(length - 1)), f"e,i={i}")
         for i in sites]
        + [(word(b(i % length + 1)), word(rot(1), b(i), rot(length - 1)), f"b,i={i}")
           for i in sites],
    ))

    checks = []
    for name, instances in families:
        cases = 0
        failure = None
        for lhs, rhs, tag in instances:
            for d in diagrams:
                cases += 1
                if lhs(d) != rhs(d):
                    failure = f"{tag} on {d.encode()}"
                    break
            if failure:
                break
        checks.append(RelationCheck(name, failure is None, cases, failure))
    return RelationReport(length, exhaustive, tuple(checks))
