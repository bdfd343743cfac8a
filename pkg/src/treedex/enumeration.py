"""Exhaustive generation of unlabelled trees.

Two independent routes exist for every stream so counts can be cross-checked:

* free trees: level-sequence generation (Wright, Richmond, Odlyzko and McKay)
  versus Prüfer decoding over every degree sequence with canonical dedup;
* realisations of a degree sequence: planted-forest construction versus
  multiset-Prüfer decoding with canonical dedup.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product
from typing import Iterable, Iterator

from .construct import tree_sequences
from .errors import BadOrder, CapExceeded, NotRealizable
from .tree import (
    DegreeSequence,
    Tree,
    code_sort_key,
    code_string,
    from_pruefer,
    path_tree,
    star_tree,
    tree_from_code,
)

DEFAULT_ORDER_CAP = 16
DEFAULT_REALIZATION_CAP = 100_000
SORTED_BELOW = 13


def order_cap() -> int:
    value = os.environ.get("TREEDEX_CAP")
    return int(value) if value else DEFAULT_ORDER_CAP


# --------------------------------------------------------------------------
# free trees, level-sequence route


def _next_rooted(layout: list[int], p: int | None = None) -> list[int] | None:
    if p is None:
        p = len(layout) - 1
        while layout[p] == 1:
            p -= 1
    if p == 0:
        return None
    q = p - 1
    while layout[q] != layout[p] - 1:
        q -= 1
    out = list(layout)
    for i in range(p, len(out)):
        out[i] = out[i - p + q]
    return out


def _split(layout: list[int]) -> tuple[list[int], list[int]]:
    # left: first subtree of the root (levels shifted); rest: root plus the others
    m = len(layout)
    ones = 0
    for i, level in enumerate(layout):
        if level == 1:
            ones += 1
            if ones == 2:
                m = i
                break
    left = [layout[i] - 1 for i in range(1, m)]
    rest = [0] + layout[m:]
    return left, rest


def _next_free(candidate: list[int]) -> list[int] | None:
    left, rest = _split(candidate)
    lh, rh = max(left), max(rest)
    valid = rh >= lh
    if valid and rh == lh:
        if len(left) > len(rest) or (len(left) == len(rest) and left > rest):
            valid = False
    if valid:
        return candidate
    p = len(left)
    nxt = _next_rooted(candidate, p)
    if nxt is not None and candidate[p] > 2:
        new_left, _ = _split(nxt)
        height = max(new_left)
        suffix = list(range(1, height + 2))
        nxt[-len(suffix):] = suffix
    return nxt


def _layout_tree(layout: list[int]) -> Tree:
    edges = []
    stack: list[int] = []
    for i, level in enumerate(layout):
        while stack and layout[stack[-1]] >= level:
            stack.pop()
        if stack:
            edges.append((stack[-1], i))
        stack.append(i)
    return Tree(len(layout), tuple(edges))


def _level_sequence_trees(n: int) -> Iterator[Tree]:
    if n == 1:
        yield Tree(1, ())
        return
    if n == 2:
        yield path_tree(2)
        return
    layout: list[int] | None = list(range(n // 2 + 1)) + list(range(1, (n + 1) // 2))
    while layout is not None:
        layout = _next_free(layout)
        if layout is not None:
            yield _layout_tree(layout)
            layout = _next_rooted(layout)


def free_trees(n: int, cap: int | None = None) -> Iterator[Tree]:
    """One tree per isomorphism class on ``n`` vertices.

    Sorted by canonical code below ``SORTED_BELOW`` vertices; above that the
    stream is generation-ordered (still deterministic).
    """
    cap = order_cap() if cap is None else cap
    if n < 1:
        raise BadOrder(f"order must be >= 1, got {n}")
    if n > cap:
        raise CapExceeded(f"order {n} exceeds enumeration cap {cap}")
    if n >= SORTED_BELOW:
        yield from _level_sequence_trees(n)
        return
    keyed = sorted(((code_string(t), t) for t in _level_sequence_trees(n)), key=lambda p: code_sort_key(p[0]))
    for _, t in keyed:
        yield t


def free_tree_codes_pruefer(n: int) -> list[str]:
    """Independent route: every tree sequence, every multiset-Prüfer word, dedup."""
    if n == 1:
        return ["()"]
    codes: set[str] = set()
    for d in tree_sequences(n):
        codes.update(code_string(t) for t in _pruefer_realizations_raw(d))
    return sorted(codes, key=code_sort_key)


# --------------------------------------------------------------------------
# realisations of a degree sequence


def _multiset_permutations(items: list[int]) -> Iterator[tuple[int, ...]]:
    a = sorted(items)
    n = len(a)
    while True:
        yield tuple(a)
        i = n - 2
        while i >= 0 and a[i] >= a[i + 1]:
            i -= 1
        if i < 0:
            return
        j = n - 1
        while a[j] <= a[i]:
            j -= 1
        a[i], a[j] = a[j], a[i]
        a[i + 1 :] = reversed(a[i + 1 :])


def _pruefer_realizations_raw(d: DegreeSequence) -> Iterator[Tree]:
    word = [v for v, deg in enumerate(d.degrees) for _ in range(deg - 1)]
    for seq in _multiset_permutations(word):
        yield from_pruefer(seq, d.n)


def realizations_pruefer(d: DegreeSequence, cap: int = DEFAULT_REALIZATION_CAP) -> list[Tree]:
    """Oracle route: decode every word where vertex v appears deg(v)-1 times."""
    if not d.is_tree_realizable:
        raise NotRealizable(f"{d} is not tree-realizable")
    seen: dict[str, Tree] = {}
    for t in _pruefer_realizations_raw(d):
        seen.setdefault(code_string(t), t)
    keys = sorted(seen, key=code_sort_key)
    if len(keys) > cap:
        raise CapExceeded(f"{len(keys)} realizations exceed cap {cap}")
    return [seen[k] for k in keys]


class _PlantedForests:
    """Memoised generator of planted trees / forests over a degree multiset.

    A planted tree's root has one edge to its (absent) parent, so a root of
    degree ``d`` has ``d - 1`` children. Codes match :func:`rooted_code`.
    """

    def __init__(self, values: tuple[int, ...]):
        self.values = values
        self._planted: dict[tuple[int, ...], list[str]] = {}
        self._forests: dict[tuple[int, tuple[int, ...], str], list[tuple[str, ...]]] = {}

    def _weight(self, counts: tuple[int, ...]) -> tuple[int, int]:
        size = sum(counts)
        total = sum(v * c for v, c in zip(self.values, counts))
        return size, total

    def planted(self, counts: tuple[int, ...]) -> list[str]:
        hit = self._planted.get(counts)
        if hit is not None:
            return hit
        size, total = self._weight(counts)
        out: list[str] = []
        if size > 0 and total == 2 * size - 1:
            for i, c in enumerate(counts):
                if c == 0:
                    continue
                rest = counts[:i] + (c - 1,) + counts[i + 1 :]
                for forest in self.forests(self.values[i] - 1, rest, ""):
                    out.append("(" + "".join(forest) + ")")
            out.sort()
        self._planted[counts] = out
        return out

    def forests(self, k: int, counts: tuple[int, ...], lower: str) -> list[tuple[str, ...]]:
        key = (k, counts, lower)
        hit = self._forests.get(key)
        if hit is not None:
            return hit
        size, total = self._weight(counts)
        out: list[tuple[str, ...]] = []
        if k == 0:
            if size == 0:
                out.append(())
        elif total == 2 * size - k:
            for sub in product(*(range(c + 1) for c in counts)):
                s_size, s_total = self._weight(sub)
                if s_size == 0 or s_total != 2 * s_size - 1:
                    continue
                rest = tuple(c - s for c, s in zip(counts, sub))
                for first in self.planted(sub):
                    if first < lower:
                        continue
                    for tail in self.forests(k - 1, rest, first):
                        out.append((first,) + tail)
        self._forests[key] = out
        return out


def _planted_realization_codes(d: DegreeSequence) -> list[str]:
    counts_map = d.counts()
    values = tuple(counts_map)
    counts = tuple(counts_map.values())
    gen = _PlantedForests(values)
    # root at a vertex of maximum degree: it has that many children
    rest = (counts[0] - 1,) + counts[1:]
    codes = set()
    for forest in gen.forests(values[0], rest, ""):
        root_code = "(" + "".join(forest) + ")"
        codes.add(code_string(tree_from_code(root_code)))
    return sorted(codes, key=code_sort_key)


def realizations(d: DegreeSequence, cap: int = DEFAULT_REALIZATION_CAP) -> Iterator[Tree]:
    """Non-isomorphic trees with degree multiset ``d``, sorted by canonical code.

    If there are more than ``cap`` classes the first ``cap`` are yielded and
    :class:`CapExceeded` is raised afterwards.
    """
    if not d.is_tree_realizable:
        raise NotRealizable(f"{d} is not tree-realizable")
    if cap < 1:
        raise ValueError("cap must be >= 1")
    codes = _planted_realization_codes(d)
    for code in codes[:cap]:
        yield tree_from_code(code)
    if len(codes) > cap:
        raise CapExceeded(f"{len(codes)} realizations of {d} exceed cap {cap}")


def count_realizations(d: DegreeSequence) -> int:
    if not d.is_tree_realizable:
        raise NotRealizable(f"{d} is not tree-realizable")
    return len(_planted_realization_codes(d))


# --------------------------------------------------------------------------
# corpora


def is_spider(t: Tree) -> bool:
    return sum(1 for x in t.degrees if x >= 3) == 1


@dataclass(frozen=True)
class CorpusSpec:
    kind: str
    n_min: int = 0
    n_max: int = 0
    sequence: DegreeSequence | None = None
    max_degree: int | None = None
    family: str | None = None

    def __post_init__(self) -> None:
        if self.kind not in {"all_trees", "fixed_sequence", "max_degree_family", "named_family"}:
            raise ValueError(f"unknown corpus kind {self.kind!r}")
        if self.kind == "fixed_sequence":
            if self.sequence is None:
                raise ValueError("fixed_sequence corpus needs a sequence")
        else:
            if self.n_min > self.n_max:
                raise ValueError(f"n_min {self.n_min} > n_max {self.n_max}")
            if self.n_min < 2:
                raise ValueError("corpus orders start at 2")
        if self.kind == "named_family" and self.family not in {"path", "star", "spider"}:
            raise ValueError(f"unknown family {self.family!r}")

    @classmethod
    def all_trees(cls, n_min: int, n_max: int) -> "CorpusSpec":
        return cls("all_trees", n_min, n_max)

    @classmethod
    def fixed_sequence(cls, d: DegreeSequence) -> "CorpusSpec":
        return cls("fixed_sequence", d.n, d.n, sequence=d)

    @classmethod
    def max_degree_family(cls, n_min: int, n_max: int, max_degree: int) -> "CorpusSpec":
        return cls("max_degree_family", n_min, n_max, max_degree=max_degree)

    @classmethod
    def named_family(cls, family: str, n_min: int, n_max: int) -> "CorpusSpec":
        return cls("named_family", n_min, n_max, family=family)

    def orders(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def describe(self) -> str:
        if self.kind == "fixed_sequence":
            return f"fixed_sequence({self.sequence})"
        if self.kind == "max_degree_family":
            return f"max_degree_family({self.n_min},{self.n_max},{self.max_degree})"
        if self.kind == "named_family":
            return f"named_family({self.family},{self.n_min},{self.n_max})"
        return f"all_trees({self.n_min},{self.n_max})"


def corpus(spec: CorpusSpec, cap: int | None = None) -> Iterator[Tree]:
    if spec.kind == "fixed_sequence":
        assert spec.sequence is not None
        yield from realizations(spec.sequence, cap or DEFAULT_REALIZATION_CAP)
        return
    for n in spec.orders():
        if spec.kind == "named_family" and spec.family == "path":
            yield path_tree(n)
        elif spec.kind == "named_family" and spec.family == "star":
            yield star_tree(n)
        else:
            for t in free_trees(n, cap):
                if spec.kind == "max_degree_family" and t.max_degree != spec.max_degree:
                    continue
                if spec.kind == "named_family" and not is_spider(t):
                    continue
                yield t


def chunked(items: Iterable, size: int) -> Iterator[list]:
    batch: list = []
    for item in items:
        batch.append(item)
        if len(batch) == size:
            yield batch
            batch = []
    if batch:
        yield batch
