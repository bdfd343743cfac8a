"""Extremal trees for a fixed degree sequence.

``exact`` scans every realisation; ``local`` hill-climbs over degree-preserving
2-edge exchanges from seeded random starts.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .construct import realize_canonical
from .enumeration import DEFAULT_REALIZATION_CAP, realizations
from .errors import DomainError, NotATree, NotRealizable
from .indices import IndexKind, Number, compute_index, to_json_value
from .tree import (
    CanonicalCode,
    DegreeSequence,
    Tree,
    code_sort_key,
    code_string,
    format_edge_list,
    from_pruefer,
)

TIE_TOLERANCE = 1e-9


def _sombor_term(a: int, b: int) -> float:
    return math.sqrt(a * a + b * b)


def exchange_gain(du: int, dv: int, dw: int) -> float:
    """``f(du,dv) + f(dw,1) - f(du,1) - f(dw,dv)`` with ``f(a,b) = sqrt(a^2+b^2)``.

    Requires ``du >= dv >= dw >= 1``. Since ``r -> f(r,dv) - f(r,1)`` is
    nonincreasing, the result is never positive.
    """
    if not (du >= dv >= dw >= 1):
        raise DomainError(f"need du >= dv >= dw >= 1, got ({du}, {dv}, {dw})")
    return (_sombor_term(du, dv) + _sombor_term(dw, 1)) - (_sombor_term(du, 1) + _sombor_term(dw, dv))


def degree_preserving_moves(t: Tree) -> Iterator[Tree]:
    """Trees reachable by one 2-edge exchange, one per isomorphism class.

    The input's own class is excluded. Output is sorted by canonical code.
    """
    edges = sorted(t.edge_set)
    own = code_string(t)
    found: dict[str, Tree] = {}
    for i in range(len(edges)):
        a, b = edges[i]
        for j in range(i + 1, len(edges)):
            c, d = edges[j]
            if len({a, b, c, d}) < 4:
                continue
            rest = edges[:i] + edges[i + 1 : j] + edges[j + 1 :]
            for e1, e2 in (((a, c), (b, d)), ((a, d), (b, c))):
                try:
                    cand = Tree(t.n, tuple(rest) + (e1, e2))
                except NotATree:
                    continue
                key = code_string(cand)
                if key != own and key not in found:
                    found[key] = cand
    for key in sorted(found, key=code_sort_key):
        yield found[key]


@dataclass(frozen=True)
class ExtremalResult:
    sequence: DegreeSequence
    index: IndexKind
    direction: str
    best_value: Number
    best_tree_code: CanonicalCode
    method: str
    trees_visited: int
    certified: bool
    best_tree: Tree = field(repr=False, compare=False)

    def to_json(self) -> dict:
        return {
            "sequence": str(self.sequence),
            "index": self.index.value,
            "direction": self.direction,
            "best_value": to_json_value(self.best_value),
            "best_tree_code": str(self.best_tree_code),
            "method": self.method,
            "trees_visited": self.trees_visited,
            "certified": self.certified,
        }

    def witness_edge_list(self) -> str:
        return format_edge_list(self.best_tree)


def _improves(new: Number, old: Number, direction: str, tol: float) -> bool:
    if direction == "max":
        return new > old + tol
    return new < old - tol


def _tolerance(value: Number) -> float:
    return TIE_TOLERANCE if isinstance(value, float) else 0.0


def _check_args(index: IndexKind | str, direction: str, d: DegreeSequence) -> IndexKind:
    kind = index if isinstance(index, IndexKind) else IndexKind.parse(index)
    if direction not in ("max", "min"):
        raise ValueError(f"direction must be 'max' or 'min', got {direction!r}")
    if not d.is_tree_realizable:
        raise NotRealizable(f"{d} is not tree-realizable")
    return kind


def _exact(kind: IndexKind, direction: str, d: DegreeSequence, cap: int) -> ExtremalResult:
    best: tuple[Number, str, Tree] | None = None
    visited = 0
    for t in realizations(d, cap):
        visited += 1
        value = compute_index(kind, t)
        if best is None or _improves(value, best[0], direction, _tolerance(value)):
            best = (value, code_string(t), t)
    assert best is not None
    value, code, tree = best
    return ExtremalResult(d, kind, direction, value, CanonicalCode(code.encode()), "exact", visited, True, tree)


def _random_start(d: DegreeSequence, rng: random.Random) -> Tree:
    word = [v for v, deg in enumerate(d.degrees) for _ in range(deg - 1)]
    rng.shuffle(word)
    return from_pruefer(word, d.n)


def _climb(kind: IndexKind, direction: str, start: Tree, max_steps: int) -> tuple[Number, str, Tree, int]:
    current = start
    value = compute_index(kind, current)
    visited = 1
    for _ in range(max_steps):
        step: tuple[Number, Tree] | None = None
        for cand in degree_preserving_moves(current):
            visited += 1
            v = compute_index(kind, cand)
            if step is None or _improves(v, step[0], direction, _tolerance(v)):
                step = (v, cand)
        if step is None or not _improves(step[0], value, direction, _tolerance(value)):
            break
        value, current = step
    return value, code_string(current), current, visited


def _local(
    kind: IndexKind, direction: str, d: DegreeSequence, restarts: int, max_steps: int, seed: int
) -> ExtremalResult:
    rng = random.Random(seed)
    starts = [realize_canonical(d)] + [_random_start(d, rng) for _ in range(max(restarts, 1) - 1)]
    best: tuple[Number, str, Tree] | None = None
    visited = 0
    for start in starts:
        value, code, tree, seen = _climb(kind, direction, start, max_steps)
        visited += seen
        if (
            best is None
            or _improves(value, best[0], direction, _tolerance(value))
            or (not _improves(best[0], value, direction, _tolerance(value)) and code_sort_key(code) < code_sort_key(best[1]))
        ):
            best = (value, code, tree)
    assert best is not None
    value, code, tree = best
    return ExtremalResult(d, kind, direction, value, CanonicalCode(code.encode()), "local", visited, False, tree)


def optimize(
    index: IndexKind | str,
    direction: str,
    d: DegreeSequence,
    strategy: str = "exact",
    restarts: int = 5,
    max_steps: int = 10_000,
    seed: int = 0,
    cap: int = DEFAULT_REALIZATION_CAP,
) -> ExtremalResult:
    kind = _check_args(index, direction, d)
    if strategy == "exact":
        return _exact(kind, direction, d, cap)
    if strategy == "local":
        return _local(kind, direction, d, restarts, max_steps, seed)
    raise ValueError(f"unknown strategy {strategy!r}")


@lru_cache(maxsize=4096)
def exact_extremum(index: IndexKind, direction: str, d: DegreeSequence) -> ExtremalResult:
    """Cached exact optimum; used heavily by the audit."""
    return optimize(index, direction, d, "exact")
