from __future__ import annotations

import itertools
import math
import random

import pytest
from hypothesis import settings

from treedex.tree import Tree, from_pruefer

settings.register_profile("ci", max_examples=200, deadline=None)
settings.load_profile("ci")


def brute_isomorphic(a: Tree, b: Tree) -> bool:
    """Vertex-bijection search; only for tiny trees."""
    if a.n != b.n or sorted(a.degrees) != sorted(b.degrees):
        return False
    target = b.edge_set
    for perm in itertools.permutations(range(a.n)):
        if any(a.degrees[v] != b.degrees[perm[v]] for v in range(a.n)):
            continue
        if all(tuple(sorted((perm[u], perm[v]))) in target for u, v in a.edges):
            return True
    return False


def random_tree(n: int, rng: random.Random) -> Tree:
    if n == 1:
        return Tree(1, ())
    return from_pruefer([rng.randrange(n) for _ in range(n - 2)], n)


# naive index formulas, independent of treedex.indices
def naive_degrees(t: Tree) -> list[int]:
    deg = [0] * t.n
    for u, v in t.edges:
        deg[u] += 1
        deg[v] += 1
    return deg


def naive_indices(t: Tree) -> dict:
    from fractions import Fraction

    deg = naive_degrees(t)
    n, m = t.n, len(t.edges)
    mean = Fraction(2 * m, n)
    return {
        "irr": sum(abs(deg[u] - deg[v]) for u, v in t.edges),
        "sigma_edge": sum((deg[u] - deg[v]) ** 2 for u, v in t.edges),
        "sigma_moment": sum((d - mean) ** 2 for d in deg),
        "criado": sum(abs(d - mean) for d in deg) / n,
        "SO": sum(math.hypot(deg[u], deg[v]) for u, v in t.edges),
        "M1": sum(d * d for d in deg),
        "M2": sum(deg[u] * deg[v] for u, v in t.edges),
        "Delta": max(deg),
        "delta": min(deg),
    }


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20261016)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name in mod.CRITERIA:
        if name in mod.RESULTS:
            terminalreporter.write_line(mod.format_line(name, *mod.RESULTS[name]))
