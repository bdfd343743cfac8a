"""Degree-sequence parsing, leaf completion, realisation and majorisation."""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from itertools import accumulate

from .errors import IncomparableLength, Infeasible, NotRealizable, ParseError
from .tree import DegreeSequence, Edge, Tree


@dataclass(frozen=True)
class PartialDegreeSpec:
    """``(value, multiplicity)`` pairs, values distinct, largest first."""

    entries: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        values = [v for v, _ in self.entries]
        if len(set(values)) != len(values):
            raise ValueError("degree values must be distinct")
        if any(v < 1 or c < 1 for v, c in self.entries):
            raise ValueError("values and multiplicities must be positive")

    @property
    def count(self) -> int:
        return sum(c for _, c in self.entries)

    @property
    def total(self) -> int:
        return sum(v * c for v, c in self.entries)

    def as_sequence(self) -> DegreeSequence:
        return DegreeSequence(tuple(v for v, c in self.entries for _ in range(c)))

    def __str__(self) -> str:
        return ",".join(f"{v}^{c}" if c > 1 else str(v) for v, c in self.entries)


_TERM = re.compile(r"\s*(\d+)\s*(?:\^\s*(\d+)\s*)?")


def parse_degree_sequence(text: str) -> PartialDegreeSpec:
    """Parse ``term ("," term)*`` with ``term = INT ("^" INT)?``.

    >>> str(parse_degree_sequence("2^11,10"))
    '10,2^11'
    """
    if not text or not text.strip():
        raise ParseError("empty degree sequence")
    counts: dict[int, int] = {}
    for term in text.split(","):
        m = _TERM.fullmatch(term)
        if m is None:
            raise ParseError(f"malformed term {term.strip()!r} in {text!r}")
        value = int(m.group(1))
        mult = int(m.group(2)) if m.group(2) is not None else 1
        if value < 1:
            raise ParseError(f"degree values must be >= 1, got {value}")
        if mult < 1:
            raise ParseError(f"multiplicity must be >= 1, got {mult}")
        counts[value] = counts.get(value, 0) + mult
    return PartialDegreeSpec(tuple(sorted(counts.items(), reverse=True)))


def complete_with_leaves(spec: PartialDegreeSpec) -> DegreeSequence:
    """Append the unique number of 1s making the sum equal to 2(n-1)."""
    leaves = spec.total - 2 * spec.count + 2
    has_ones = any(v == 1 for v, _ in spec.entries)
    if has_ones:
        if leaves != 0:
            raise Infeasible(f"{spec} lists leaves explicitly but is not a tree sequence")
        seq = spec.as_sequence()
    else:
        if leaves < 0:
            raise Infeasible(f"{spec} would need {leaves} leaves")
        seq = DegreeSequence(spec.as_sequence().degrees + (1,) * leaves)
    if not seq.is_tree_realizable:
        raise Infeasible(f"{seq} is not tree-realizable")
    return seq


def sequence_from_text(text: str, complete: bool = True) -> DegreeSequence:
    spec = parse_degree_sequence(text)
    return complete_with_leaves(spec) if complete else spec.as_sequence()


def realize_canonical(d: DegreeSequence) -> Tree:
    """Breadth-first greedy realisation.

    Vertex ``i`` gets degree ``d[i]``; each new vertex hangs from the earliest
    created vertex that still has a free slot.
    """
    if not d.is_tree_realizable:
        raise NotRealizable(f"{d} is not tree-realizable")
    degs = d.degrees
    slots: deque[tuple[int, int]] = deque([(0, degs[0])])
    edges: list[Edge] = []
    for v in range(1, d.n):
        if not slots:
            raise NotRealizable(f"{d}: no open slot for vertex {v}")
        u, free = slots[0]
        edges.append((u, v))
        if free == 1:
            slots.popleft()
        else:
            slots[0] = (u, free - 1)
        if degs[v] > 1:
            slots.append((v, degs[v] - 1))
    return Tree(d.n, tuple(edges))


def extremal_leaf_count(x: int, y: int, mu: int) -> int:
    """Leaves required for ``x`` vertices of degree mu+2 and ``y`` of degree mu+1."""
    return x * mu + y * (mu - 1) + 2


def extremal_construction(x: int, y: int, leaves: int, mu: int) -> Tree:
    """Spine of ``x`` degree-(mu+2) vertices then ``y`` degree-(mu+1) vertices,
    leaves attached greedily to the vertex with most free capacity.

    Other attachment orders give trees with the same degree multiset that
    need not be isomorphic to this one.
    """
    if min(x, y, leaves) < 0 or mu < 1:
        raise Infeasible("x, y, leaves must be >= 0 and mu >= 1")
    if x + y < 1:
        raise Infeasible("need at least one non-leaf vertex")
    n = x + y + leaves
    if x * (mu + 2) + y * (mu + 1) + leaves != 2 * (n - 1):
        raise Infeasible(f"degree sum mismatch for x={x}, y={y}, leaves={leaves}, mu={mu}")
    spine = x + y
    target = [mu + 2] * x + [mu + 1] * y
    edges: list[Edge] = [(i, i + 1) for i in range(spine - 1)]
    free = list(target)
    for u, v in edges:
        free[u] -= 1
        free[v] -= 1
    if min(free) < 0:
        raise Infeasible("spine overfills a vertex")
    for leaf in range(spine, n):
        best = max(range(spine), key=lambda v: (free[v], -v))
        if free[best] == 0:
            raise Infeasible("ran out of capacity for leaves")
        edges.append((best, leaf))
        free[best] -= 1
    return Tree(n, tuple(edges))


def majorizes(a: DegreeSequence, b: DegreeSequence) -> bool:
    """True when every prefix sum of ``a`` dominates that of ``b``."""
    if a.n != b.n:
        raise IncomparableLength(f"lengths differ: {a.n} vs {b.n}")
    if a.degree_sum != b.degree_sum:
        raise IncomparableLength(f"sums differ: {a.degree_sum} vs {b.degree_sum}")
    return all(p >= q for p, q in zip(accumulate(a.degrees), accumulate(b.degrees)))


def tree_sequences(n: int) -> list[DegreeSequence]:
    """All tree-realisable degree sequences of order ``n``, reverse-lex order."""
    if n < 2:
        return []
    if n == 2:
        return [DegreeSequence((1, 1))]
    out: list[DegreeSequence] = []

    # n - 2 extra degree units spread over nonincreasing excesses
    def parts(remaining: int, cap: int, slots: int, acc: list[int]):
        if remaining == 0:
            excess = acc + [0] * (n - len(acc))
            out.append(DegreeSequence(tuple(e + 1 for e in excess)))
            return
        if slots == 0:
            return
        for p in range(min(cap, remaining), 0, -1):
            parts(remaining - p, p, slots - 1, acc + [p])

    parts(n - 2, n - 2, n, [])
    return out
