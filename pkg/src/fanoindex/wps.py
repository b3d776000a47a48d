"""Weighted projective spaces as an independent check on Riemann-Roch.

On P(w0, w1, w2, w3) with pairwise coprime weights, h^0(O(k)) is the number
of monomials of weighted degree k, -K = O(q) with q = sum w_i, and
A^3 = 1/prod w_i. Comparing those counts with chi(kA) computed from the
basket exercises the local-index convention end to end.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, prod

from .basket import Basket, basket_to_json, format_fraction, make_point
from .riemann_roch import PolarizedBasket, chi

TORIC_FANO_WEIGHTS = ((1, 1, 1, 2), (1, 1, 2, 3), (1, 2, 3, 5), (1, 3, 4, 5), (2, 3, 5, 7), (3, 4, 5, 7), (1, 1, 1, 1))


class WPSError(ValueError):
    pass


class UnsupportedWeightsError(WPSError):
    pass


class NonTerminalError(WPSError):
    pass


def _check_weights(weights) -> tuple[int, ...]:
    w = tuple(int(x) for x in weights)
    if len(w) != 4 or min(w) < 1:
        raise UnsupportedWeightsError(f"need four positive weights, got {weights!r}")
    for a, b in combinations(w, 2):
        if gcd(a, b) != 1:
            raise UnsupportedWeightsError(f"weights {w} are not pairwise coprime")
    return w


def wps_basket(weights) -> Basket:
    """Basket of P(w): one point 1/r(others) per weight r > 1, normalized to
    1/r(1, -1, b). Raises NonTerminalError if some vertex is not terminal."""
    w = _check_weights(weights)
    pts = []
    for i, r in enumerate(w):
        if r == 1:
            continue
        others = [w[j] % r for j in range(4) if j != i]
        found = None
        for u in range(1, r):
            if gcd(u, r) != 1:
                continue
            t = [(u * a) % r for a in others]
            for j in range(3):
                rest = t[:j] + t[j + 1 :]
                if sorted(rest) == sorted([1, r - 1]):
                    found = t[j]
                    break
            if found is not None:
                break
        if found is None or gcd(found, r) != 1:
            raise NonTerminalError(f"vertex of weight {r} in P{w} is not terminal")
        pts.append(make_point(r, found))
    return Basket(tuple(pts))


def monomial_count(weights, k: int) -> int:
    """Number of monomials of weighted degree k (coin-change count)."""
    w = tuple(weights)
    if k < 0:
        return 0
    ways = [1] + [0] * k
    for a in w:
        for d in range(a, k + 1):
            ways[d] += ways[d - a]
    return ways[k]


def hilbert_identity_holds(weights, k_max: int) -> bool:
    """Check (sum_k count(k) s^k) * prod(1 - s^w) = 1 modulo s^(k_max+1)."""
    poly = [monomial_count(weights, k) for k in range(k_max + 1)]
    for a in weights:
        poly = [poly[d] - (poly[d - a] if d >= a else 0) for d in range(k_max + 1)]
    return poly == [1] + [0] * k_max


@dataclass
class OracleReport:
    weights: tuple[int, ...]
    q: int
    basket: Basket
    a_cubed: Fraction
    expected_a_cubed: Fraction
    rows: list[tuple[int, Fraction, int]] = field(default_factory=list)

    @property
    def mismatches(self) -> list[tuple[int, Fraction, int]]:
        return [row for row in self.rows if row[1] != row[2]]

    @property
    def ok(self) -> bool:
        return not self.mismatches and self.a_cubed == self.expected_a_cubed

    def to_dict(self) -> dict:
        return {
            "weights": list(self.weights),
            "q": self.q,
            "basket": basket_to_json(self.basket),
            "a_cubed": format_fraction(self.a_cubed),
            "expected_a_cubed": format_fraction(self.expected_a_cubed),
            "rows": [
                {"k": k, "chi": format_fraction(x), "monomials": m} for k, x, m in self.rows
            ],
            "mismatches": [k for k, _, _ in self.mismatches],
            "ok": self.ok,
        }


def oracle_compare(weights, k_max: int | None = None) -> OracleReport:
    w = _check_weights(weights)
    q = sum(w)
    if k_max is None:
        k_max = 2 * q
    pb = PolarizedBasket(q, wps_basket(w))
    rows = [(k, chi(pb, k), monomial_count(w, k)) for k in range(k_max + 1)]
    return OracleReport(w, q, pb.basket, pb.a_cubed, Fraction(1, prod(w)), rows)


def monomials(weights, k: int) -> list[tuple[int, ...]]:
    """Exponent vectors of all monomials of degree k."""
    w = tuple(weights)
    out: list[tuple[int, ...]] = []

    def rec(i: int, left: int, acc: list[int]) -> None:
        if i == len(w) - 1:
            if left % w[i] == 0:
                out.append((*acc, left // w[i]))
            return
        for e in range(left // w[i] + 1):
            rec(i + 1, left - e * w[i], [*acc, e])

    rec(0, k, [])
    return sorted(out)
