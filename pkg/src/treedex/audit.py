"""Registry of inequality claims and their evaluation over tree corpora.

A claim is a conjunction of comparisons between expressions over one tree's
quantities (:class:`Quantities`). Exact sides (``int``/``Fraction``) are
compared exactly; anything involving a square root is compared in floating
point with an absolute tolerance of :data:`FLOAT_TOL`.

Claims that mention the ambiguous sigma index run once per variant and
produce one report row each (``ID[edge]``, ``ID[moment]``).
"""

from __future__ import annotations

import csv
import io
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Callable, Iterable, Sequence

from . import __version__
from .construct import (
    complete_with_leaves,
    extremal_construction,
    extremal_leaf_count,
    majorizes,
    parse_degree_sequence,
    tree_sequences,
)
from .enumeration import CorpusSpec, corpus, count_realizations, realizations
from .errors import CapExceeded, TreedexError
from .indices import (
    DerivedParams,
    IndexKind,
    Number,
    albertson,
    from_json_value,
    format_real,
    sigma_edge,
    sigma_moment,
    sombor,
    sombor_closed_form,
    sombor_path_closed,
    to_csv_value,
    to_json_value,
    try_derived_params,
    zagreb1,
    zagreb2,
)
from .search import exact_extremum
from .tree import DegreeSequence, Tree, code_sort_key, code_string, format_edge_list, parse_edge_lists, tree_from_code

FLOAT_TOL = 1e-9
DEFAULT_WITNESSES = 10
DEFAULT_ALPHA = Fraction(2)
DEFAULT_BETA = Fraction(4)
MAJORIZATION_MAX_ORDER = 10
SQRT2 = math.sqrt(2)


class TreeQuantities:
    """Variant-independent quantities of one tree, computed lazily."""

    def __init__(self, t: Tree):
        self.tree = t
        self.n = t.n
        self.m = t.m

    @cached_property
    def Delta(self) -> int:
        return self.tree.max_degree

    @cached_property
    def delta(self) -> int:
        return self.tree.min_degree

    @cached_property
    def irr(self) -> int:
        return albertson(self.tree)

    @cached_property
    def sigma_edge(self) -> int:
        return sigma_edge(self.tree)

    @cached_property
    def sigma_moment(self) -> Fraction:
        return sigma_moment(self.tree)

    @cached_property
    def SO(self) -> float:
        return sombor(self.tree)

    @cached_property
    def M1(self) -> int:
        return zagreb1(self.tree)

    @cached_property
    def M2(self) -> int:
        return zagreb2(self.tree)

    @cached_property
    def sequence(self) -> DegreeSequence:
        return self.tree.degree_sequence()

    @cached_property
    def params(self) -> DerivedParams | None:
        return _params_for(self.sequence)


class Quantities:
    """Every symbol a claim may reference: tree quantities plus ``sigma``
    resolved to one variant and the derived scalars ``k, eta, mu, x, y``."""

    def __init__(self, t: Tree | TreeQuantities, variant: str = "edge"):
        if variant not in ("edge", "moment"):
            raise ValueError(f"unknown sigma variant {variant!r}")
        self.base = t if isinstance(t, TreeQuantities) else TreeQuantities(t)
        self.variant = variant

    def __getattr__(self, name: str):
        if name.startswith("_") or name == "base":
            raise AttributeError(name)
        return getattr(self.base, name)

    @property
    def sigma(self) -> Number:
        return self.base.sigma_edge if self.variant == "edge" else self.base.sigma_moment

    @property
    def k(self) -> Fraction:
        return self._p().k

    @property
    def eta(self) -> int:
        return self._p().eta

    @property
    def mu(self) -> int:
        return self._p().mu

    @property
    def x(self) -> int:
        return self._p().x

    @property
    def y(self) -> int:
        return self._p().y

    def _p(self) -> DerivedParams:
        p = self.base.params
        if p is None:
            raise TreedexError("derived parameters undefined for this tree")
        return p


@lru_cache(maxsize=None)
def _params_for(d: DegreeSequence) -> DerivedParams | None:
    return try_derived_params(d)


Expr = Callable[[Quantities], Number]


@dataclass(frozen=True)
class Part:
    lhs: Expr
    relation: str  # "<=", "<", "=", "info"
    rhs: Expr


@dataclass(frozen=True)
class Claim:
    id: str
    description: str
    parts: tuple[Part, ...] = ()
    relation: str = "<="
    sigma_variant: str = "n/a"
    variants: tuple[str, ...] = ("edge",)
    scope: Callable[[Quantities], bool] | None = None
    params: dict[str, Fraction] = field(default_factory=dict)
    informational: bool = False
    pairwise: IndexKind | None = None
    observe: Callable[[Quantities], dict[str, float]] | None = None
    # keeps "[variant]" row ids stable when a selection narrows ``variants``
    suffixed: bool | None = None

    def row_ids(self) -> list[tuple[str, str]]:
        """``(row id, variant)`` for each audited variant."""
        if self.pairwise is not None:
            return [(f"{self.id}[{self.pairwise.value},{d}]", d) for d in ("max", "min")]
        suffixed = len(self.variants) > 1 if self.suffixed is None else self.suffixed
        if not suffixed:
            return [(self.id, self.variants[0])]
        return [(f"{self.id}[{v}]", v) for v in self.variants]


@dataclass(frozen=True)
class ClaimEvaluation:
    claim_id: str
    code: str
    lhs: Number | None
    rhs: Number | None
    status: str  # holds | violated | undefined | info
    slack: Number | None
    boundary: bool = False
    ratio: float | None = None
    observed: tuple[tuple[str, float], ...] = ()


# --------------------------------------------------------------------------
# registry


def _n_at_least(k: int) -> Callable[[Quantities], bool]:
    return lambda q: q.n >= k


def _has_params(q: Quantities) -> bool:
    return q.params is not None


def _has_positive_mu(q: Quantities) -> bool:
    return q.params is not None and q.params.mu >= 1


def _extremal_form_scope(q: Quantities) -> bool:
    p = q.params
    return p is not None and p.mu >= 1 and p.x >= 0 and p.y >= 0 and p.x + p.y >= 1


@lru_cache(maxsize=None)
def _extremal_form_values(d: DegreeSequence) -> tuple[float, float]:
    p = _params_for(d)
    assert p is not None
    leaves = extremal_leaf_count(p.x, p.y, p.mu)
    built = extremal_construction(p.x, p.y, leaves, p.mu)
    return sombor(built), sombor_closed_form(p.x, p.y, leaves, p.mu)


def _so_max_over_sequence(q: Quantities) -> float:
    return exact_extremum(IndexKind.SOMBOR, "max", q.sequence).best_value  # type: ignore[return-value]


def _alpha_beta_observe(alpha: Fraction) -> Callable[[Quantities], dict[str, float]]:
    def observe(q: Quantities) -> dict[str, float]:
        total = q.SO + q.irr
        out = {"alpha_min_feasible": float(q.sigma) * q.mu / (SQRT2 * total)}
        if q.sigma > 0:
            out["beta_min_feasible"] = float(alpha) * total / float(q.sigma)
        else:
            out["beta_min_feasible"] = math.inf
        return out

    return observe


BOTH = ("edge", "moment")


def builtin_claims(alpha: Fraction | int = DEFAULT_ALPHA, beta: Fraction | int = DEFAULT_BETA) -> list[Claim]:
    """Every inequality audited by default, sorted by id."""
    alpha, beta = Fraction(alpha), Fraction(beta)
    a_f, b_f = float(alpha), float(beta)
    claims = [
        Claim(
            "C-IRR-DELTA",
            "irr > delta (Delta - delta)^2 n / (Delta + 1)",
            (Part(lambda q: Fraction(q.delta * (q.Delta - q.delta) ** 2 * q.n, q.Delta + 1), "<", lambda q: q.irr),),
            relation="<",
        ),
        Claim(
            "C-IRR-STAR-MAX",
            "irr <= (n-2)(n-1) for n >= 3",
            (Part(lambda q: q.irr, "<=", lambda q: (q.n - 2) * (q.n - 1)),),
            scope=_n_at_least(3),
        ),
        Claim(
            "C-SIGMA-RANGE",
            "0 <= sigma <= (n-1)(n-2) for n >= 3",
            (Part(lambda q: 0, "<=", lambda q: q.sigma), Part(lambda q: q.sigma, "<=", lambda q: (q.n - 1) * (q.n - 2))),
            relation="two_sided",
            sigma_variant="both",
            variants=BOTH,
            scope=_n_at_least(3),
        ),
        Claim(
            "C-SO-PATH-MIN",
            "SO(P_n) <= SO(T) for n >= 3",
            (Part(lambda q: sombor_path_closed(q.n), "<=", lambda q: q.SO),),
            scope=_n_at_least(3),
        ),
        Claim(
            "C-SIGMA-SANDWICH",
            "floor(3 (eta-n)^2 / (k Delta)) <= sigma <= eta (2 n mu^2 + eta mu (mu-1) irr)",
            (
                Part(lambda q: math.floor(3 * (q.eta - q.n) ** 2 / (q.k * q.Delta)), "<=", lambda q: q.sigma),
                Part(lambda q: q.sigma, "<=", lambda q: q.eta * (2 * q.n * q.mu**2 + q.eta * q.mu * (q.mu - 1) * q.irr)),
            ),
            relation="two_sided",
            sigma_variant="both",
            variants=BOTH,
            scope=_has_params,
        ),
        Claim(
            "C-IRR-ETA-SIGMA",
            "irr < eta < sigma",
            (Part(lambda q: q.irr, "<", lambda q: q.eta), Part(lambda q: q.eta, "<", lambda q: q.sigma)),
            relation="two_sided",
            sigma_variant="both",
            variants=BOTH,
            scope=_has_params,
        ),
        Claim(
            "C-SO-EXTREMAL",
            "SO(T) <= max SO over all realisations of T's degree sequence",
            (Part(lambda q: q.SO, "<=", _so_max_over_sequence),),
        ),
        Claim(
            "C-SO-EXTREMAL-FORM",
            "SO of the spine-then-leaves construction for (x, y, mu) vs the closed form "
            "(leaves forced by the degree sum); gap report only",
            (
                Part(
                    lambda q: _extremal_form_values(q.sequence)[0],
                    "info",
                    lambda q: _extremal_form_values(q.sequence)[1],
                ),
            ),
            relation="info",
            scope=_extremal_form_scope,
            informational=True,
        ),
        Claim(
            "C-SANDWICH-ALPHA-BETA",
            "sigma <= (alpha sqrt2 / mu)(SO + irr) <= (beta sqrt2 / mu) sigma",
            (
                Part(lambda q: q.sigma, "<=", lambda q: a_f * SQRT2 / q.mu * (q.SO + q.irr)),
                Part(lambda q: a_f * SQRT2 / q.mu * (q.SO + q.irr), "<=", lambda q: b_f * SQRT2 / q.mu * float(q.sigma)),
            ),
            relation="two_sided",
            sigma_variant="both",
            variants=BOTH,
            scope=_has_positive_mu,
            params={"alpha": alpha, "beta": beta},
            observe=_alpha_beta_observe(alpha),
        ),
        Claim(
            "C-SO-SIGMA-DIFF",
            "SO - sigma <= 2n - 2 and sigma - irr <= 2(n + Delta) - 2",
            (
                Part(lambda q: q.SO - float(q.sigma), "<=", lambda q: 2 * q.n - 2),
                Part(lambda q: q.sigma - q.irr, "<=", lambda q: 2 * (q.n + q.Delta) - 2),
            ),
            relation="conjunction",
            sigma_variant="both",
            variants=BOTH,
        ),
        Claim(
            "C-SO-UPPER-MIX",
            "SO <= (2m/n) sqrt(Delta^2 + delta^2) + (sqrt2/3) sigma + 2n - 2",
            (
                Part(
                    lambda q: q.SO,
                    "<=",
                    lambda q: 2 * q.m / q.n * math.sqrt(q.Delta**2 + q.delta**2) + SQRT2 / 3 * float(q.sigma) + 2 * q.n - 2,
                ),
            ),
            sigma_variant="both",
            variants=BOTH,
        ),
        Claim(
            "C-SO-TWOSIDED",
            "(sigma + 4m^2/n)/sqrt2 <= SO <= sigma + 4m^2/n",
            (
                Part(lambda q: float(q.sigma + Fraction(4 * q.m**2, q.n)) / SQRT2, "<=", lambda q: q.SO),
                Part(lambda q: q.SO, "<=", lambda q: float(q.sigma + Fraction(4 * q.m**2, q.n))),
            ),
            relation="two_sided",
            sigma_variant="moment",
            variants=("moment", "edge"),
        ),
        Claim(
            "C-SO-IRR-M1",
            "irr <= SO <= sqrt2 irr + M1",
            (Part(lambda q: q.irr, "<=", lambda q: q.SO), Part(lambda q: q.SO, "<=", lambda q: SQRT2 * q.irr + q.M1)),
            relation="two_sided",
        ),
        Claim(
            "C-IRR-SIGMA-CS",
            "sqrt(sigma) <= irr <= sqrt(m sigma)",
            (
                Part(lambda q: math.sqrt(q.sigma_edge), "<=", lambda q: q.irr),
                Part(lambda q: q.irr, "<=", lambda q: math.sqrt(q.m * q.sigma_edge)),
            ),
            relation="two_sided",
            sigma_variant="edge",
        ),
        Claim(
            "C-THETA-RATIO",
            "ratio SO / (irr + M1); statistics only",
            (Part(lambda q: q.SO, "info", lambda q: q.irr + q.M1),),
            relation="info",
            informational=True,
        ),
        Claim(
            "C-SO-IRR-RATIO",
            "ratio SO / irr over irregular trees; statistics only",
            (Part(lambda q: q.SO, "info", lambda q: q.irr),),
            relation="info",
            scope=lambda q: q.irr > 0,
            informational=True,
        ),
    ]
    for kind in (IndexKind.SIGMA_EDGE, IndexKind.ALBERTSON, IndexKind.SOMBOR):
        claims.append(
            Claim(
                "C-MAJORIZATION",
                f"if a majorizes b (same order) then ext {kind.value}(b) <= ext {kind.value}(a), "
                "ext = exact extremum over realisations",
                relation="<=",
                pairwise=kind,
            )
        )
    return sorted(claims, key=lambda c: (c.id, c.pairwise.value if c.pairwise else ""))


def claim_rows(claims: Iterable[Claim]) -> list[tuple[str, Claim, str]]:
    rows = [(rid, c, v) for c in claims for rid, v in c.row_ids()]
    return sorted(rows, key=lambda r: r[0])


def select_claims(claims: list[Claim], ids: Sequence[str] | None) -> list[Claim]:
    """Filter by claim id or by row id (``C-X[edge]`` keeps only that variant)."""
    if not ids:
        return claims
    out = []
    wanted = set(ids)
    known = {c.id for c in claims} | {rid for c in claims for rid, _ in c.row_ids()}
    unknown = wanted - known
    if unknown:
        raise TreedexError(f"unknown claim ids: {', '.join(sorted(unknown))}")
    for c in claims:
        if c.id in wanted:
            out.append(c)
            continue
        keep = [(rid, v) for rid, v in c.row_ids() if rid in wanted]
        if keep and c.pairwise is None:
            out.append(replace(c, variants=tuple(v for _, v in keep), suffixed=len(c.variants) > 1))
        elif keep:
            out.append(c)
    return out


# --------------------------------------------------------------------------
# evaluation


def _is_exact(v: Number) -> bool:
    return isinstance(v, (int, Fraction)) and not isinstance(v, bool)


def _round(v: Number) -> Number:
    # reports carry 15 significant digits so JSON round trips are exact
    if isinstance(v, float) and math.isfinite(v):
        return float(format_real(v))
    return v


def _compare(l: Number, rel: str, r: Number) -> tuple[str, Number, bool]:
    """Return (status, slack, boundary) for ``l rel r``."""
    if _is_exact(l) and _is_exact(r):
        slack = r - l
        ok = {"<=": slack >= 0, "<": slack > 0, "=": slack == 0}[rel]
        return ("holds" if ok else "violated"), slack, False
    slack = float(r) - float(l)
    if rel == "<=":
        return ("holds" if slack >= -FLOAT_TOL else "violated"), slack, False
    if rel == "<":
        if abs(slack) <= FLOAT_TOL:
            return "holds", slack, True
        return ("holds" if slack > 0 else "violated"), slack, False
    return ("holds" if abs(slack) <= FLOAT_TOL else "violated"), slack, False


def _evaluate(claim: Claim, q: Quantities, row_id: str, code: str) -> ClaimEvaluation:
    if q.n < 2 or (claim.scope is not None and not claim.scope(q)):
        return ClaimEvaluation(row_id, code, None, None, "undefined", None)
    observed: tuple[tuple[str, float], ...] = ()
    if claim.observe is not None:
        observed = tuple(sorted((k, _round(v)) for k, v in claim.observe(q).items()))
    if claim.informational:
        part = claim.parts[0]
        l, r = part.lhs(q), part.rhs(q)
        ratio = float(l) / float(r) if r else math.inf
        return ClaimEvaluation(row_id, code, _round(l), _round(r), "info", _round(r - l), False, _round(ratio), observed)
    status, slack, boundary = "holds", None, False
    first_l = last_r = None
    for part in claim.parts:
        l, r = part.lhs(q), part.rhs(q)
        if first_l is None:
            first_l = l
        last_r = r
        st, s, b = _compare(l, part.relation, r)
        if st == "violated":
            status = "violated"
        boundary = boundary or b
        if slack is None or s < slack:
            slack = s
    return ClaimEvaluation(row_id, code, _round(first_l), _round(last_r), status, _round(slack), boundary, None, observed)


def evaluate_claim(c: Claim, t: Tree, variant: str | None = None) -> ClaimEvaluation:
    """Evaluate a tree-level claim on ``t`` under one sigma variant."""
    if c.pairwise is not None:
        raise TreedexError(f"{c.id} is evaluated over sequence pairs, see evaluate_pair")
    rows = dict((v, rid) for rid, v in c.row_ids())
    variant = variant or c.variants[0]
    if variant not in rows:
        raise TreedexError(f"{c.id} is not audited under the {variant} variant")
    return _evaluate(c, Quantities(t, variant), rows[variant], code_string(t))


def pair_code(a: DegreeSequence, b: DegreeSequence) -> str:
    return f"{a}>{b}"


def parse_pair_code(code: str) -> tuple[DegreeSequence, DegreeSequence]:
    left, right = code.split(">")
    return parse_degree_sequence(left).as_sequence(), parse_degree_sequence(right).as_sequence()


def evaluate_pair(c: Claim, a: DegreeSequence, b: DegreeSequence, direction: str) -> ClaimEvaluation:
    """``a`` majorizes ``b``: the extremum over ``b`` must not exceed the one over ``a``."""
    assert c.pairwise is not None
    row = f"{c.id}[{c.pairwise.value},{direction}]"
    code = pair_code(a, b)
    if a == b or not majorizes(a, b):
        return ClaimEvaluation(row, code, None, None, "undefined", None)
    low = exact_extremum(c.pairwise, direction, b).best_value
    high = exact_extremum(c.pairwise, direction, a).best_value
    status, slack, boundary = _compare(low, "<=", high)
    return ClaimEvaluation(row, code, _round(low), _round(high), status, _round(slack), boundary)


def _pair_evaluations(c: Claim, orders: Iterable[int]) -> list[ClaimEvaluation]:
    out = []
    for n in orders:
        if n > MAJORIZATION_MAX_ORDER:
            continue
        seqs = tree_sequences(n)
        for a in seqs:
            for b in seqs:
                if a != b and majorizes(a, b):
                    for direction in ("max", "min"):
                        out.append(evaluate_pair(c, a, b, direction))
    return out


def reevaluate(row_id: str, code: str, alpha: Fraction = DEFAULT_ALPHA, beta: Fraction = DEFAULT_BETA) -> ClaimEvaluation:
    """Recompute one report row for one witness code from scratch."""
    for rid, c, variant in claim_rows(builtin_claims(alpha, beta)):
        if rid != row_id:
            continue
        if c.pairwise is not None:
            a, b = parse_pair_code(code)
            return evaluate_pair(c, a, b, variant)
        return _evaluate(c, Quantities(tree_from_code(code), variant), rid, code)
    raise TreedexError(f"unknown report row {row_id!r}")


# --------------------------------------------------------------------------
# reports


@dataclass
class ClaimSummary:
    id: str
    description: str
    sigma_variant: str
    tested: int = 0
    holds: int = 0
    violated: int = 0
    boundary: int = 0
    undefined: int = 0
    info: int = 0
    min_slack: Number | None = None
    max_slack: Number | None = None
    tightest: str | None = None
    witnesses: list[str] = field(default_factory=list)
    boundary_witnesses: list[str] = field(default_factory=list)
    min_ratio: float | None = None
    max_ratio: float | None = None
    observed: dict[str, float] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "id": self.id,
            "description": self.description,
            "sigma_variant": self.sigma_variant,
            "tested": self.tested,
            "holds": self.holds,
            "violated": self.violated,
            "boundary": self.boundary,
            "undefined": self.undefined,
            "info": self.info,
            "min_slack": to_json_value(self.min_slack),
            "max_slack": to_json_value(self.max_slack),
            "tightest": self.tightest,
            "witnesses": list(self.witnesses),
            "boundary_witnesses": list(self.boundary_witnesses),
            "min_ratio": to_json_value(self.min_ratio),
            "max_ratio": to_json_value(self.max_ratio),
            "observed": {k: to_json_value(v) for k, v in self.observed.items()},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ClaimSummary":
        def real(v):
            return None if v is None else float(v)

        return cls(
            id=obj["id"],
            description=obj["description"],
            sigma_variant=obj["sigma_variant"],
            tested=obj["tested"],
            holds=obj["holds"],
            violated=obj["violated"],
            boundary=obj["boundary"],
            undefined=obj["undefined"],
            info=obj["info"],
            min_slack=from_json_value(obj["min_slack"]),
            max_slack=from_json_value(obj["max_slack"]),
            tightest=obj["tightest"],
            witnesses=list(obj["witnesses"]),
            boundary_witnesses=list(obj["boundary_witnesses"]),
            min_ratio=real(obj["min_ratio"]),
            max_ratio=real(obj["max_ratio"]),
            observed={k: float(v) for k, v in obj["observed"].items()},
        )


TOLERANCES = {
    "float_abs": format_real(FLOAT_TOL),
    "strict_boundary_band": format_real(FLOAT_TOL),
    "exact": "int and rational sides compared exactly",
}


@dataclass
class AuditReport:
    claims: list[ClaimSummary]
    corpus: str
    tolerances: dict = field(default_factory=lambda: dict(TOLERANCES))
    version: str = __version__
    truncated: bool = False
    trees: int = 0
    parameters: dict = field(default_factory=dict)
    worked_examples: list = field(default_factory=list)

    def claim(self, row_id: str) -> ClaimSummary:
        for c in self.claims:
            if c.id == row_id:
                return c
        raise KeyError(row_id)

    def to_json(self) -> dict:
        return {
            "claims": [c.to_json() for c in self.claims],
            "corpus": self.corpus,
            "trees": self.trees,
            "truncated": self.truncated,
            "tolerances": dict(self.tolerances),
            "parameters": self.parameters,
            "worked_examples": self.worked_examples,
            "version": self.version,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "AuditReport":
        return cls(
            claims=[ClaimSummary.from_json(c) for c in obj["claims"]],
            corpus=obj["corpus"],
            tolerances=dict(obj["tolerances"]),
            version=obj["version"],
            truncated=obj["truncated"],
            trees=obj["trees"],
            parameters=obj["parameters"],
            worked_examples=obj["worked_examples"],
        )


def _summarise(rid: str, claim: Claim, evals: list[ClaimEvaluation], witnesses: int) -> ClaimSummary:
    variant = claim.sigma_variant if claim.pairwise is None else "n/a"
    s = ClaimSummary(rid, claim.description, variant)
    best: tuple[Number, str] | None = None
    observed: dict[str, float] = {}
    for e in sorted(evals, key=lambda e: code_sort_key(e.code)):
        if e.status == "undefined":
            s.undefined += 1
            continue
        if e.status == "info":
            s.info += 1
        else:
            s.tested += 1
        if e.status == "holds":
            s.holds += 1
        elif e.status == "violated":
            s.violated += 1
            if len(s.witnesses) < witnesses:
                s.witnesses.append(e.code)
        if e.boundary:
            s.boundary += 1
            if len(s.boundary_witnesses) < witnesses:
                s.boundary_witnesses.append(e.code)
        if e.slack is not None:
            if best is None or e.slack < best[0]:
                best = (e.slack, e.code)
            s.min_slack = e.slack if s.min_slack is None else min(s.min_slack, e.slack)
            s.max_slack = e.slack if s.max_slack is None else max(s.max_slack, e.slack)
        if e.ratio is not None:
            s.min_ratio = e.ratio if s.min_ratio is None else min(s.min_ratio, e.ratio)
            s.max_ratio = e.ratio if s.max_ratio is None else max(s.max_ratio, e.ratio)
        for k, v in e.observed:
            observed[k] = max(observed.get(k, -math.inf), v)
    s.tightest = best[1] if best else None
    s.observed = dict(sorted(observed.items()))
    return s


def _evaluate_trees(rows: list[tuple[str, Claim, str]], trees: Sequence[Tree]) -> list[ClaimEvaluation]:
    out = []
    for t in trees:
        code = code_string(t)
        base = TreeQuantities(t)
        per_variant = {"edge": Quantities(base, "edge"), "moment": Quantities(base, "moment")}
        for rid, claim, variant in rows:
            out.append(_evaluate(claim, per_variant[variant], rid, code))
    return out


def _worker(payload: tuple[str, tuple[str, ...], Fraction, Fraction]) -> list[ClaimEvaluation]:
    text, row_ids, alpha, beta = payload
    wanted = set(row_ids)
    rows = [r for r in claim_rows(builtin_claims(alpha, beta)) if r[0] in wanted]
    return _evaluate_trees(rows, parse_edge_lists(text))


def _is_builtin(claims: list[Claim], alpha: Fraction, beta: Fraction) -> bool:
    builtin = {rid for rid, _, _ in claim_rows(builtin_claims(alpha, beta))}
    return all(rid in builtin for rid, _, _ in claim_rows(claims))


def audit(
    claims: list[Claim],
    spec: CorpusSpec,
    workers: int = 1,
    witnesses: int = DEFAULT_WITNESSES,
    include_examples: bool = False,
    cap: int | None = None,
) -> AuditReport:
    """Evaluate ``claims`` over every tree of ``spec`` and aggregate.

    Output is independent of ``workers``: evaluations are merged and sorted by
    row id, then canonical code, before summarising.
    """
    trees: list[Tree] = []
    truncated = False
    try:
        for t in corpus(spec, cap):
            trees.append(t)
    except CapExceeded:
        truncated = True

    alpha = beta = None
    for c in claims:
        if "alpha" in c.params:
            alpha, beta = c.params["alpha"], c.params["beta"]
    alpha = DEFAULT_ALPHA if alpha is None else alpha
    beta = DEFAULT_BETA if beta is None else beta

    all_rows = claim_rows(claims)
    tree_rows = [r for r in all_rows if r[1].pairwise is None]
    evals: list[ClaimEvaluation] = []
    if workers > 1 and len(trees) > 1 and _is_builtin(claims, alpha, beta):
        size = -(-len(trees) // workers)
        chunks = [trees[i : i + size] for i in range(0, len(trees), size)]
        ids = tuple(r[0] for r in tree_rows)
        payloads = [("".join(format_edge_list(t) for t in chunk), ids, alpha, beta) for chunk in chunks]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_worker, payloads):
                evals.extend(part)
    else:
        evals = _evaluate_trees(tree_rows, trees)

    orders = sorted({t.n for t in trees})
    by_row: dict[str, list[ClaimEvaluation]] = {rid: [] for rid, _, _ in all_rows}
    for e in evals:
        by_row[e.claim_id].append(e)
    seen_pairwise: set[str] = set()
    for rid, c, _ in all_rows:
        if c.pairwise is not None and c.pairwise.value not in seen_pairwise:
            seen_pairwise.add(c.pairwise.value)
            for e in _pair_evaluations(c, orders):
                by_row[e.claim_id].append(e)

    summaries = [_summarise(rid, c, by_row[rid], witnesses) for rid, c, _ in all_rows]
    parameters = {"alpha": to_json_value(alpha), "beta": to_json_value(beta)}
    return AuditReport(
        claims=summaries,
        corpus=spec.describe(),
        truncated=truncated,
        trees=len(trees),
        parameters=parameters,
        worked_examples=worked_examples() if include_examples else [],
    )


def export_report(r: AuditReport, fmt: str = "json") -> bytes:
    if fmt == "json":
        return (json.dumps(r.to_json(), indent=2) + "\n").encode("utf-8")
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["id", "tested", "holds", "violated", "boundary", "undefined", "min_slack", "max_slack"])
        for c in r.claims:
            w.writerow(
                [c.id, c.tested, c.holds, c.violated, c.boundary, c.undefined, to_csv_value(c.min_slack), to_csv_value(c.max_slack)]
            )
        return buf.getvalue().encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}")


def load_report(data: bytes | str) -> AuditReport:
    return AuditReport.from_json(json.loads(data))


# --------------------------------------------------------------------------
# worked examples printed alongside the bounds


PRINTED_EXAMPLES = (
    {"sequence": "2^11,10", "sigma": 794, "irr": 90, "eta": None, "lower": 573, "upper": 8208},
    {"sequence": "2^18,3,10", "sigma": 5178, "irr": 310, "eta": 1755, "lower": 2858, "upper": 70200},
)


def _sandwich_bounds(p: DerivedParams, n: int, big: int, irr: int) -> tuple[int, int]:
    lower = math.floor(3 * (p.eta - n) ** 2 / (p.k * big))
    upper = p.eta * (2 * n * p.mu**2 + p.eta * p.mu * (p.mu - 1) * irr)
    return lower, upper


@lru_cache(maxsize=None)
def _example_entry(text: str) -> dict:
    printed = next(e for e in PRINTED_EXAMPLES if e["sequence"] == text)
    d = complete_with_leaves(parse_degree_sequence(text))
    p = _params_for(d)
    assert p is not None
    sig, irr = [], []
    for t in realizations(d):
        sig.append(sigma_edge(t))
        irr.append(albertson(t))
    mom = float(d.sum_of_squares - Fraction(4 * (d.n - 1) ** 2, d.n))
    # upper bound depends on irr; report it at the smallest and largest irr
    lo_at_min, up_at_min = _sandwich_bounds(p, d.n, d.max_degree, min(irr))
    _, up_at_max = _sandwich_bounds(p, d.n, d.max_degree, max(irr))
    return {
        "sequence": text,
        "completed": str(d),
        "n": d.n,
        "realizations": count_realizations(d),
        "k": to_json_value(p.k),
        "eta": {"printed": printed["eta"], "computed": p.eta},
        "mu": p.mu,
        "x": p.x,
        "y": p.y,
        "lower_bound": {"printed": printed["lower"], "computed": lo_at_min},
        "upper_bound": {"printed": printed["upper"], "computed_at_min_irr": up_at_min, "computed_at_max_irr": up_at_max},
        "sigma_edge": {"printed": printed["sigma"], "computed_min": min(sig), "computed_max": max(sig)},
        "sigma_moment": to_json_value(_round(mom)),
        "irr": {"printed": printed["irr"], "computed_min": min(irr), "computed_max": max(irr)},
    }


def worked_examples() -> list[dict]:
    return [_example_entry(e["sequence"]) for e in PRINTED_EXAMPLES]
