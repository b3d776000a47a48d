"""Numerical classification of Q-Fano threefolds of large Fano index.

A candidate is a pair (q, basket) that survives a set of named filters.
Filters are necessary conditions, so a larger filter set can only shrink
the output.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .basket import Basket, basket_to_json, enumerate_baskets, format_fraction
from .riemann_roch import PolarizedBasket, chi, dim_linear_system
from .torsion import torsion_free as _torsion_free

INDEX_SET = frozenset({1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 13, 17, 19})
DEGREE_BOUND = Fraction(125, 2)

DEFAULT_FILTERS = frozenset({"index_set", "coprime", "positive", "integral", "degree", "vanishing"})
OPTIONAL_FILTERS = frozenset({"suzuki", "torsion_free"})
ALL_FILTERS = DEFAULT_FILTERS | OPTIONAL_FILTERS

WORKERS_ENV = "FANOINDEX_WORKERS"


@dataclass(frozen=True)
class Preset:
    name: str
    q_min: int
    q_max: int
    filters: frozenset[str]


PRESETS = {
    "lemma-comput": Preset("lemma-comput", 8, 19, DEFAULT_FILTERS),
    "prop-comput": Preset("prop-comput", 9, 19, DEFAULT_FILTERS | OPTIONAL_FILTERS),
}


@dataclass(frozen=True)
class FanoCandidate:
    q: int
    basket: Basket
    a_cubed: Fraction
    kc2: Fraction
    dims: tuple[int | Fraction, ...]  # dim|kA| for k = 1 .. max(q, 7)
    torsion_free: bool
    filters_applied: frozenset[str] = field(default=frozenset(), compare=False)

    @property
    def indices(self) -> tuple[int, ...]:
        return self.basket.indices

    @property
    def dim_minus_k(self) -> int | Fraction:
        return self.dims[self.q - 1]

    @property
    def polarized(self) -> PolarizedBasket:
        return PolarizedBasket(self.q, self.basket)

    def sort_key(self):
        return (self.q, self.basket.points)

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "basket": basket_to_json(self.basket),
            "a_cubed": format_fraction(self.a_cubed),
            "kc2": format_fraction(self.kc2),
            "dims": [format_fraction(d) for d in self.dims],
            "dim_minus_k": format_fraction(self.dim_minus_k),
            "torsion_free": self.torsion_free,
            "filters_applied": sorted(self.filters_applied),
        }


def check_vanishing(pb: PolarizedBasket) -> bool:
    """chi(tA) = 0 for -q < t < 0, and chi(tA) is a nonnegative integer for 0 < t <= 2q."""
    q = pb.q
    if any(chi(pb, t) != 0 for t in range(1 - q, 0)):
        return False
    for t in range(1, 2 * q + 1):
        x = chi(pb, t)
        if x.denominator != 1 or x < 0:
            return False
    return True


def suzuki_filter(pb: PolarizedBasket) -> bool:
    return (4 * pb.q * pb.q - 3 * pb.q) * pb.a_cubed <= 4 * pb.kc2


def _dims(pb: PolarizedBasket) -> tuple[int | Fraction, ...]:
    # at least k = 1..7 so that every index has the same table columns
    out = []
    for k in range(1, max(pb.q, 7) + 1):
        x = chi(pb, k) - 1
        out.append(int(x) if x.denominator == 1 else x)
    return tuple(out)


def evaluate(q: int, basket: Basket, filters: frozenset[str]) -> FanoCandidate | None:
    """Run one basket through the filters in a fixed order."""
    if "index_set" in filters and q not in INDEX_SET:
        return None
    if any(gcd(p.r, q) != 1 for p in basket):
        # Riemann-Roch needs the local indices, so this is never optional
        return None
    pb = PolarizedBasket(q, basket)
    a3 = pb.a_cubed
    if "positive" in filters and a3 <= 0:
        return None
    if "integral" in filters:
        r = 1
        for p in basket:
            r = r * p.r // gcd(r, p.r)
        if (r * a3).denominator != 1:
            return None
    if "degree" in filters and q**3 * a3 > DEGREE_BOUND:
        return None
    if "vanishing" in filters and not check_vanishing(pb):
        return None
    if "suzuki" in filters and not suzuki_filter(pb):
        return None
    tf = _torsion_free(basket)
    if "torsion_free" in filters and not tf:
        return None
    return FanoCandidate(q, basket, a3, pb.kc2, _dims(pb), tf, frozenset(filters))


@lru_cache(maxsize=None)
def _classify_one(q: int, filters: frozenset[str], max_weight: Fraction) -> tuple[FanoCandidate, ...]:
    out = [
        c
        for bk in enumerate_baskets(max_weight, point_filter=lambda p: gcd(p.r, q) == 1)
        if (c := evaluate(q, bk, filters)) is not None
    ]
    return tuple(out)


def _classify_job(args) -> tuple[FanoCandidate, ...]:
    return _classify_one(*args)


def worker_count() -> int:
    raw = os.environ.get(WORKERS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def classify(
    q_min: int,
    q_max: int,
    filters=DEFAULT_FILTERS,
    *,
    max_weight: Fraction | int = 24,
    workers: int | None = None,
) -> list[FanoCandidate]:
    """All candidates with q_min <= q <= q_max, sorted by (q, basket).

    Each index is an independent job; with more than one worker (argument or
    the FANOINDEX_WORKERS variable) the jobs run in separate processes and
    are merged in canonical order, so the output does not depend on the
    worker count. Results are memoized per (q, filters, max_weight).
    """
    if not 3 <= q_min <= q_max <= 19:
        raise ValueError("need 3 <= q_min <= q_max <= 19")
    filters = frozenset(filters)
    unknown = filters - ALL_FILTERS
    if unknown:
        raise ValueError(f"unknown filters: {sorted(unknown)}")
    max_weight = Fraction(max_weight)
    qs = [q for q in range(q_min, q_max + 1) if "index_set" not in filters or q in INDEX_SET]
    jobs = [(q, filters, max_weight) for q in qs]
    workers = worker_count() if workers is None else workers
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_classify_job, jobs))
    else:
        chunks = [_classify_one(*j) for j in jobs]
    out = [c for chunk in chunks for c in chunk]
    out.sort(key=FanoCandidate.sort_key)
    return out


def run_preset(name: str, **kw) -> list[FanoCandidate]:
    p = PRESETS[name]
    return classify(p.q_min, p.q_max, p.filters, **kw)


@lru_cache(maxsize=None)
def candidates_for_index(q: int, filters: frozenset[str] = DEFAULT_FILTERS) -> tuple[FanoCandidate, ...]:
    return tuple(classify(q, q, filters))


def special_search(q_floor: int, dim_a_floor: int, q_max: int = 19) -> list[FanoCandidate]:
    """Candidates with q >= q_floor and dim|A| >= dim_a_floor."""
    return [
        c
        for c in classify(max(q_floor, 3), q_max)
        if c.dims and c.dims[0] >= dim_a_floor
    ]


def only_cyclic_points(indices) -> bool:
    """Whether the basket indices leave room only for cyclic quotient points.

    A non-cyclic terminal point of index r contributes several basket points
    of index r, or (for index 4) points of index 4 and 2 together, so
    distinct indices with no {2, 4} pair exclude it.
    """
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return False
    return not (2 in idx and 4 in idx)


def index_projection(cands) -> list[tuple[int, tuple[int, ...]]]:
    """(q, index multiset) rows, deduplicated, in order."""
    seen, out = set(), []
    for c in cands:
        key = (c.q, c.indices)
        if key not in seen:
            seen.add(key)
            out.append(key)
    return out


__all__ = [
    "FanoCandidate",
    "Preset",
    "PRESETS",
    "classify",
    "check_vanishing",
    "suzuki_filter",
    "special_search",
    "only_cyclic_points",
    "candidates_for_index",
    "run_preset",
    "index_projection",
    "dim_linear_system",
]
