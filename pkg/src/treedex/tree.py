"""Tree values, degree sequences, canonical codes and Prüfer coding.

Vertices are dense 0-based integers. A :class:`Tree` is validated on
construction and never mutated afterwards.
"""

from __future__ import annotations

import heapq
from collections import Counter, deque
from dataclasses import dataclass, field
from functools import cached_property, total_ordering
from pathlib import Path
from typing import Iterable, Sequence

from .errors import BadLabel, BadOrder, NotATree, ParseError

Edge = tuple[int, int]


@dataclass(frozen=True, eq=False)
class Tree:
    """An immutable simple tree on vertices ``0..n-1``.

    ``edges`` keeps the order and orientation it was given in (so edge-list
    files round-trip), but equality and hashing use the unordered edge set.
    """

    n: int
    edges: tuple[Edge, ...]
    degrees: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        n = self.n
        if not isinstance(n, int) or n < 1:
            raise NotATree(f"vertex count must be a positive integer, got {n!r}")
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        if len(edges) != n - 1:
            raise NotATree(f"a tree on {n} vertices has {n - 1} edges, got {len(edges)}")
        deg = [0] * n
        seen: set[frozenset[int]] = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise BadLabel(f"edge ({u}, {v}) has a label outside 0..{n - 1}")
            if u == v:
                raise NotATree(f"self-loop at vertex {u}")
            key = frozenset((u, v))
            if key in seen:
                raise NotATree(f"duplicate edge ({u}, {v})")
            seen.add(key)
            deg[u] += 1
            deg[v] += 1
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "degrees", tuple(deg))
        # n-1 edges + connected <=> tree
        if _reachable_count(n, self.adjacency) != n:
            raise NotATree("edge set is disconnected (or contains a cycle)")

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return tuple(tuple(sorted(a)) for a in adj)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset((min(u, v), max(u, v)) for u, v in self.edges)

    @property
    def m(self) -> int:
        return self.n - 1

    @property
    def max_degree(self) -> int:
        return max(self.degrees)

    @property
    def min_degree(self) -> int:
        return min(self.degrees)

    def degree_sequence(self) -> "DegreeSequence":
        return DegreeSequence(self.degrees)

    def relabel(self, perm: Sequence[int]) -> "Tree":
        """Return the tree with vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise BadLabel("relabeling must be a permutation of 0..n-1")
        return Tree(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Tree):
            return NotImplemented
        return self.n == other.n and self.edge_set == other.edge_set

    def __hash__(self) -> int:
        return hash((self.n, self.edge_set))


def _reachable_count(n: int, adj: Sequence[Sequence[int]]) -> int:
    seen = [False] * n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count


def build_tree(n: int, edges: Iterable[Sequence[int]]) -> Tree:
    """Validate ``edges`` as a tree on ``n`` vertices."""
    pairs = []
    for e in edges:
        if len(e) != 2:
            raise NotATree(f"edge {tuple(e)!r} is not a vertex pair")
        pairs.append((e[0], e[1]))
    return Tree(n, tuple(pairs))


def path_tree(n: int) -> Tree:
    return Tree(n, tuple((i, i + 1) for i in range(n - 1)))


def star_tree(n: int) -> Tree:
    return Tree(n, tuple((0, i) for i in range(1, n)))


def spider_tree(legs: Sequence[int]) -> Tree:
    """Centre 0 with one hanging path of each given length."""
    edges: list[Edge] = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Tree(nxt, tuple(edges))


# --------------------------------------------------------------------------
# degree sequences


@dataclass(frozen=True)
class DegreeSequence:
    """Nonincreasing degree list. Input order is normalised on construction."""

    degrees: tuple[int, ...]

    def __post_init__(self) -> None:
        degs = tuple(sorted((int(d) for d in self.degrees), reverse=True))
        if not degs:
            raise ValueError("degree sequence must be nonempty")
        if degs != (0,) and degs[-1] < 1:
            raise ValueError(f"degrees must be positive, got {degs}")
        object.__setattr__(self, "degrees", degs)

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def max_degree(self) -> int:
        return self.degrees[0]

    @property
    def min_degree(self) -> int:
        return self.degrees[-1]

    @property
    def degree_sum(self) -> int:
        return sum(self.degrees)

    @property
    def sum_of_squares(self) -> int:
        return sum(d * d for d in self.degrees)

    @property
    def is_tree_realizable(self) -> bool:
        return self.n >= 2 and self.degree_sum == 2 * (self.n - 1)

    def counts(self) -> dict[int, int]:
        """Multiplicity of each degree value, largest value first."""
        return dict(sorted(Counter(self.degrees).items(), reverse=True))

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self) -> int:
        return len(self.degrees)

    def __str__(self) -> str:
        return ",".join(f"{d}^{c}" if c > 1 else str(d) for d, c in self.counts().items())


def degree_sequence_of(t: Tree) -> DegreeSequence:
    return DegreeSequence(t.degrees)


# --------------------------------------------------------------------------
# canonical codes


@total_ordering
@dataclass(frozen=True, eq=True)
class CanonicalCode:
    """Bracket encoding of a tree rooted at its centroid(s).

    Codes order shortlex: by length (i.e. by tree order) then bytewise.
    """

    code: bytes

    def __lt__(self, other: "CanonicalCode") -> bool:
        if not isinstance(other, CanonicalCode):
            return NotImplemented
        return (len(self.code), self.code) < (len(other.code), other.code)

    def __str__(self) -> str:
        return self.code.decode("ascii")

    @property
    def order(self) -> int:
        return len(self.code) // 2


def code_sort_key(code: str) -> tuple[int, str]:
    return (len(code), code)


def centroids(t: Tree) -> list[int]:
    n = t.n
    if n == 1:
        return [0]
    adj = t.adjacency
    parent = [-1] * n
    order = [0]
    seen = [False] * n
    seen[0] = True
    for v in order:
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                order.append(w)
    size = [1] * n
    for v in reversed(order):
        if parent[v] >= 0:
            size[parent[v]] += size[v]
    out = []
    for v in range(n):
        heaviest = n - size[v]
        for w in adj[v]:
            if w != parent[v] and size[w] > heaviest:
                heaviest = size[w]
        if 2 * heaviest <= n:
            out.append(v)
    return out


def rooted_code(adj: Sequence[Sequence[int]], root: int, blocked: int = -1) -> str:
    """AHU bracket code of the subtree at ``root``, never entering ``blocked``."""
    parent = {root: blocked}
    order = [root]
    for v in order:
        for w in adj[v]:
            if w != parent[v]:
                parent[w] = v
                order.append(w)
    children: dict[int, list[str]] = {}
    code = ""
    for v in reversed(order):
        kids = children.pop(v, [])
        kids.sort()
        code = "(" + "".join(kids) + ")"
        p = parent[v]
        if p != blocked:
            children.setdefault(p, []).append(code)
    return code


def code_string(t: Tree) -> str:
    cents = centroids(t)
    adj = t.adjacency
    if len(cents) == 1:
        return rooted_code(adj, cents[0])
    a, b = cents
    halves = sorted((rooted_code(adj, a, b), rooted_code(adj, b, a)))
    return halves[0] + halves[1]


def canonical_code(t: Tree) -> CanonicalCode:
    return CanonicalCode(code_string(t).encode("ascii"))


def tree_from_code(code: CanonicalCode | str | bytes) -> Tree:
    """Rebuild a representative tree from a canonical code (preorder labels)."""
    if isinstance(code, CanonicalCode):
        text = str(code)
    elif isinstance(code, bytes):
        text = code.decode("ascii")
    else:
        text = code
    edges: list[Edge] = []
    roots: list[int] = []
    stack: list[int] = []
    nxt = 0
    for ch in text:
        if ch == "(":
            if stack:
                edges.append((stack[-1], nxt))
            else:
                roots.append(nxt)
            stack.append(nxt)
            nxt += 1
        elif ch == ")":
            if not stack:
                raise ValueError(f"unbalanced code {text!r}")
            stack.pop()
        else:
            raise ValueError(f"bad character {ch!r} in code")
    if stack or len(roots) not in (1, 2):
        raise ValueError(f"malformed code {text!r}")
    if len(roots) == 2:
        edges.append((roots[0], roots[1]))
    return Tree(nxt, tuple(edges))


# --------------------------------------------------------------------------
# Prüfer sequences


def to_pruefer(t: Tree) -> tuple[int, ...]:
    """Prüfer sequence, removing the smallest-labelled leaf first."""
    n = t.n
    if n < 2:
        raise BadOrder("Prüfer sequences need n >= 2")
    adj = [set(a) for a in t.adjacency]
    deg = list(t.degrees)
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    seq = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        (nb,) = adj[leaf]
        seq.append(nb)
        adj[nb].discard(leaf)
        deg[nb] -= 1
        if deg[nb] == 1:
            heapq.heappush(leaves, nb)
    return tuple(seq)


def from_pruefer(seq: Sequence[int], n: int) -> Tree:
    if n < 2:
        raise BadOrder("Prüfer sequences need n >= 2")
    if len(seq) != n - 2:
        raise BadOrder(f"sequence of length {len(seq)} does not encode a tree on {n} vertices")
    deg = [1] * n
    for v in seq:
        if not (isinstance(v, int) and 0 <= v < n):
            raise BadLabel(f"label {v!r} outside 0..{n - 1}")
        deg[v] += 1
    leaves = [v for v in range(n) if deg[v] == 1]
    heapq.heapify(leaves)
    edges: list[Edge] = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        deg[v] -= 1
        if deg[v] == 1:
            heapq.heappush(leaves, v)
    u, w = heapq.heappop(leaves), heapq.heappop(leaves)
    edges.append((u, w))
    return Tree(n, tuple(edges))


# --------------------------------------------------------------------------
# edge-list files


def format_edge_list(t: Tree) -> str:
    lines = [str(t.n)] + [f"{u} {v}" for u, v in t.edges]
    return "\n".join(lines) + "\n"


def _data_tokens(text: str) -> list[list[str]]:
    rows = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            rows.append(line.split())
    return rows


def _int_token(tok: str) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}") from None


def parse_edge_lists(text: str) -> list[Tree]:
    """Parse one or more consecutive edge-list blocks."""
    rows = [[_int_token(tok) for tok in row] for row in _data_tokens(text)]
    trees = []
    i = 0
    while i < len(rows):
        head = rows[i]
        if len(head) != 1:
            raise ParseError(f"expected a vertex count, got {' '.join(map(str, head))!r}")
        n = head[0]
        body = rows[i + 1 : i + n]
        if len(body) != n - 1 or any(len(r) != 2 for r in body):
            raise ParseError(f"expected {n - 1} 'u v' lines after n={n}")
        trees.append(build_tree(n, [(a, b) for a, b in body]))
        i += n
    return trees


def parse_edge_list(text: str) -> Tree:
    trees = parse_edge_lists(text)
    if len(trees) != 1:
        raise NotATree(f"expected exactly one tree, found {len(trees)}")
    return trees[0]


def read_edge_list(path: str | Path) -> Tree:
    return parse_edge_list(Path(path).read_text())


def write_edge_list(t: Tree, path: str | Path) -> None:
    Path(path).write_text(format_edge_list(t))
