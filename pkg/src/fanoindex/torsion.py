"""Torsion sieve.

A torsion Weil divisor Xi of order n gives an index-n cover whose Euler
characteristic is n times that of X. Orbifold Riemann-Roch turns this into

    sum_P  ov(b_P i_P) (r_P - ov(b_P i_P)) / (2 r_P)  =  2

over the points where Xi is not Cartier, with Xi ~ i_P K_X locally and
ov(.) the residue mod r_P. Every multiple k Xi (0 < k < n) is again a
nonzero torsion element, so the identity must hold for all of them at once.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement, product
from math import gcd

from .basket import Basket, BasketPoint, MAX_WEIGHT, candidate_points

SIEVE_ORDERS = (2, 3, 5, 7)


@dataclass(frozen=True)
class TorsionHypothesis:
    n: int
    support: tuple[BasketPoint, ...]
    assignment: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 2 or len(self.support) != len(self.assignment):
            raise ValueError("bad torsion hypothesis")
        for p, i in zip(self.support, self.assignment):
            if (self.n * i) % p.r or i % p.r == 0:
                raise ValueError(f"i={i} is not a nonzero n-torsion class at {p}")

    def multiple(self, k: int) -> "TorsionHypothesis":
        """Hypothesis for k*Xi, dropping points where it becomes Cartier."""
        pairs = [(p, (k * i) % p.r) for p, i in zip(self.support, self.assignment)]
        pairs = [(p, i) for p, i in pairs if i]
        return TorsionHypothesis(
            self.n, tuple(p for p, _ in pairs), tuple(i for _, i in pairs)
        )


def torsion_defect(h: TorsionHypothesis) -> Fraction:
    s = Fraction(0)
    for p, i in zip(h.support, h.assignment):
        x = (p.b * i) % p.r
        s += Fraction(x * (p.r - x), 2 * p.r)
    return s


def is_consistent(h: TorsionHypothesis) -> bool:
    return all(torsion_defect(h.multiple(k)) == 2 for k in range(1, h.n))


def _local_choices(p: BasketPoint, n: int) -> list[int]:
    g = gcd(n, p.r)
    step = p.r // g
    return [step * j for j in range(1, g)]


@dataclass
class TorsionReport:
    n: int
    feasible: bool
    witnesses: list[TorsionHypothesis] = field(default_factory=list)


def torsion_feasible(basket: Basket, n: int, *, all_witnesses: bool = False) -> TorsionReport:
    """Search for a consistent order-n torsion class supported on the basket.

    Each point either stays Cartier (left out of the support) or carries a
    nonzero n-torsion local class; repeated points are treated as a multiset.
    """
    groups = sorted(Counter(basket.points).items())
    per_group = []
    for p, mult in groups:
        opts = [0, *_local_choices(p, n)]
        per_group.append([(p, c) for c in combinations_with_replacement(opts, mult)])
    report = TorsionReport(n, False)
    for combo in product(*per_group):
        support, assignment = [], []
        for p, chosen in combo:
            for i in chosen:
                if i:
                    support.append(p)
                    assignment.append(i)
        if not support:
            continue
        h = TorsionHypothesis(n, tuple(support), tuple(assignment))
        if is_consistent(h):
            report.feasible = True
            report.witnesses.append(h)
            if not all_witnesses:
                break
    return report


def prime_route_feasible(basket: Basket, n: int) -> bool:
    """Independent check for prime n.

    With i_P = (r_P/n) j_P and xi_P = b_P j_P mod n, each local term equals
    r_P xi_P (n - xi_P) / (2 n^2). As b_P is a unit mod n, xi_P ranges over
    all nonzero residues, so the condition is a statement about the indices
    alone: some nonempty sub-multiset with n | r_P and residues xi_P satisfies
    sum r_P xi_{P,k} (n - xi_{P,k}) = 4 n^2 for every multiple xi_{P,k} = k xi_P.
    """
    if n < 2 or any(n % d == 0 for d in range(2, int(n**0.5) + 1)):
        raise ValueError("prime_route_feasible needs a prime order")
    rs = Counter(p.r for p in basket if p.r % n == 0)
    groups = sorted(rs.items())
    per_group = [
        [(r, c) for c in combinations_with_replacement(range(n), m)] for r, m in groups
    ]
    for combo in product(*per_group):
        terms = [(r, x) for r, chosen in combo for x in chosen if x]
        if not terms:
            continue
        if all(
            sum(r * ((k * x) % n) * (n - (k * x) % n) for r, x in terms) == 4 * n * n
            for k in range(1, n)
        ):
            return True
    return False


def torsion_free(basket: Basket, orders=SIEVE_ORDERS) -> bool:
    """True when no torsion of the given orders is arithmetically possible."""
    return not any(torsion_feasible(basket, n).feasible for n in orders)


def feasible_supports(n: int, max_weight: Fraction | int = MAX_WEIGHT) -> set[tuple[int, ...]]:
    """Index multisets of bases of weight <= max_weight that carry order-n torsion
    on all of their points.
    """
    max_weight = Fraction(max_weight)
    pts = [p for p in candidate_points(max_weight) if gcd(p.r, n) > 1]
    out: set[tuple[int, ...]] = set()

    def walk(start: int, room: Fraction, acc: list[BasketPoint]) -> None:
        if acc:
            rep = torsion_feasible(Basket(tuple(acc)), n, all_witnesses=True)
            if any(len(w.support) == len(acc) for w in rep.witnesses):
                out.add(tuple(p.r for p in acc))
        for j in range(start, len(pts)):
            if pts[j].weight > room:
                break
            acc.append(pts[j])
            walk(j, room - pts[j].weight, acc)
            acc.pop()

    walk(0, max_weight, [])
    return out
