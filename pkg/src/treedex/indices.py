"""Degree-based indices of trees and the derived scalars of a degree sequence.

Integer and rational indices are exact (``int`` / :class:`fractions.Fraction`).
The Sombor family involves square roots and is computed in double precision;
sums go through :func:`math.fsum`, which keeps the relative error well under
1e-12 for every tree size this package enumerates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Union

from .errors import BadOrder, DegenerateParams, NotRealizable
from .tree import DegreeSequence, Tree

Number = Union[int, Fraction, float]


class IndexKind(str, Enum):
    ALBERTSON = "albertson"
    SIGMA_EDGE = "sigma_edge"
    SIGMA_MOMENT = "sigma_moment"
    CRIADO = "criado"
    SOMBOR = "sombor"
    ZAGREB1 = "zagreb1"
    ZAGREB2 = "zagreb2"

    @classmethod
    def parse(cls, text: str) -> "IndexKind":
        aliases = {"irr": "albertson", "sigma": "sigma_edge", "so": "sombor", "m1": "zagreb1", "m2": "zagreb2"}
        key = text.strip().lower()
        return cls(aliases.get(key, key))


def albertson(t: Tree) -> int:
    d = t.degrees
    return sum(abs(d[u] - d[v]) for u, v in t.edges)


def sigma_edge(t: Tree) -> int:
    d = t.degrees
    return sum((d[u] - d[v]) ** 2 for u, v in t.edges)


def sigma_moment(t: Tree) -> Fraction:
    """Sum over vertices of (d_i - 2m/n)^2, exactly."""
    mean = Fraction(2 * t.m, t.n)
    return sum(((d - mean) ** 2 for d in t.degrees), Fraction(0))


def criado_irr(t: Tree) -> Fraction:
    mean = Fraction(2 * t.m, t.n)
    return sum((abs(d - mean) for d in t.degrees), Fraction(0)) / t.n


def sombor(t: Tree) -> float:
    d = t.degrees
    return math.fsum(math.sqrt(d[u] * d[u] + d[v] * d[v]) for u, v in t.edges)


def zagreb1(t: Tree) -> int:
    return sum(x * x for x in t.degrees)


def zagreb1_edgewise(t: Tree) -> int:
    d = t.degrees
    return sum(d[u] + d[v] for u, v in t.edges)


def zagreb2(t: Tree) -> int:
    d = t.degrees
    return sum(d[u] * d[v] for u, v in t.edges)


INDEX_FUNCTIONS: dict[IndexKind, Callable[[Tree], Number]] = {
    IndexKind.ALBERTSON: albertson,
    IndexKind.SIGMA_EDGE: sigma_edge,
    IndexKind.SIGMA_MOMENT: sigma_moment,
    IndexKind.CRIADO: criado_irr,
    IndexKind.SOMBOR: sombor,
    IndexKind.ZAGREB1: zagreb1,
    IndexKind.ZAGREB2: zagreb2,
}


def compute_index(kind: IndexKind | str, t: Tree) -> Number:
    if not isinstance(kind, IndexKind):
        kind = IndexKind.parse(kind)
    return INDEX_FUNCTIONS[kind](t)


def sombor_path_closed(n: int) -> float:
    """Sombor index of the path on ``n >= 3`` vertices."""
    if n < 3:
        raise BadOrder(f"closed form needs n >= 3, got {n}")
    return 2 * math.sqrt(5) + 2 * (n - 3) * math.sqrt(2)


def sombor_closed_form(x: int, y: int, leaves: int, mu: int) -> float:
    """Evaluate ``xy*sqrt(2mu^2+6mu+5) + x*leaves*sqrt(mu^2+4mu+5) + y*leaves*sqrt(mu^2+2mu+2)``.

    This is the closed-form expression for the extremal construction;
    it is not the Sombor index of :func:`treedex.construct.extremal_construction`
    in general (see claim ``C-SO-EXTREMAL-FORM``).
    """
    return math.fsum(
        (
            x * y * math.sqrt(2 * mu * mu + 6 * mu + 5),
            x * leaves * math.sqrt(mu * mu + 4 * mu + 5),
            y * leaves * math.sqrt(mu * mu + 2 * mu + 2),
        )
    )


@dataclass(frozen=True)
class DerivedParams:
    k: Fraction
    eta: int
    mu: int
    x: int
    y: int

    def as_dict(self) -> dict[str, Number]:
        return {"k": self.k, "eta": self.eta, "mu": self.mu, "x": self.x, "y": self.y}


def derived_params(d: DegreeSequence) -> DerivedParams:
    """k = sum(d^2)/(n - max), eta = floor(k n / 2), mu = floor((eta-2)/(eta-n)).

    Raises :class:`DegenerateParams` where a denominator vanishes.
    """
    if not d.is_tree_realizable:
        raise NotRealizable(f"{d} is not a tree degree sequence")
    n, big = d.n, d.max_degree
    if n == big:
        raise DegenerateParams("n - max_degree = 0")
    k = Fraction(d.sum_of_squares, n - big)
    eta = math.floor(k * n / 2)
    if eta == n:
        raise DegenerateParams(f"eta = n = {n}")
    mu = (eta - 2) // (eta - n)
    x = eta - mu * (eta - n) - 2
    y = mu * (eta - n) - n + 2
    return DerivedParams(k=k, eta=eta, mu=mu, x=x, y=y)


def try_derived_params(d: DegreeSequence) -> DerivedParams | None:
    try:
        return derived_params(d)
    except (DegenerateParams, NotRealizable):
        return None


# --------------------------------------------------------------------------
# serialisation


def format_real(x: float) -> str:
    """15 significant digits, no locale."""
    return format(x, ".15g")


def to_json_value(v: Number | None):
    if v is None or isinstance(v, bool):
        return v
    if isinstance(v, int):
        return v
    if isinstance(v, Fraction):
        if v.denominator == 1:
            return int(v)
        return {"num": v.numerator, "den": v.denominator}
    if isinstance(v, float):
        if math.isinf(v):
            return "inf" if v > 0 else "-inf"
        return format_real(v)
    raise TypeError(f"cannot serialise {type(v).__name__}")


def from_json_value(v) -> Number | None:
    if v is None or isinstance(v, int):
        return v
    if isinstance(v, dict):
        return Fraction(v["num"], v["den"])
    if isinstance(v, str):
        return float(v)
    raise TypeError(f"cannot deserialise {v!r}")


def to_csv_value(v: Number | None) -> str:
    if v is None:
        return ""
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    if isinstance(v, float):
        return format_real(v)
    return str(v)
