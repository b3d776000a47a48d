"""Orbifold Riemann-Roch for a Fano index q and a basket.

The Weil divisor tA is locally linearly equivalent to iK_X at a point of
index r, where i = -t * q^{-1} mod r (because -K_X = qA). All arithmetic
is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

from .basket import Basket, BasketPoint, kc2


class NotCoprimeError(ValueError):
    pass


class NonIntegralError(ValueError):
    pass


class UnsupportedIndexError(ValueError):
    pass


@dataclass(frozen=True)
class PolarizedBasket:
    q: int
    basket: Basket

    def __post_init__(self) -> None:
        if self.q < 1:
            raise ValueError("Fano index must be positive")
        for p in self.basket:
            if gcd(p.r, self.q) != 1:
                raise NotCoprimeError(f"gcd({p.r},{self.q}) != 1")

    @cached_property
    def kc2(self) -> Fraction:
        return kc2(self.basket)

    @cached_property
    def a_cubed(self) -> Fraction:
        return a_cubed(self)


def _index(pb: PolarizedBasket | int) -> int:
    return pb.q if isinstance(pb, PolarizedBasket) else int(pb)


def local_index(pb: PolarizedBasket | int, point: BasketPoint, t: int) -> int:
    """i in [0, r) with tA ~ iK_X near the point (``pb`` may be a bare index q)."""
    q = _index(pb)
    if gcd(q, point.r) != 1:
        raise NotCoprimeError(f"gcd({q},{point.r}) != 1")
    return (-t * pow(q, -1, point.r)) % point.r


@lru_cache(maxsize=None)
def _c(r: int, b: int, i: int) -> Fraction:
    s = Fraction(-i * (r * r - 1), 12 * r)
    for j in range(1, i):
        x = (b * j) % r
        s += Fraction(x * (r - x), 2 * r)
    return s


def c_contrib(pb: PolarizedBasket | int, point: BasketPoint, t: int) -> Fraction:
    """Local correction c_P(tA)."""
    return _c(point.r, point.b, local_index(pb, point, t))


def _local_sum(pb: PolarizedBasket, t: int) -> Fraction:
    return sum((c_contrib(pb.q, p, t) for p in pb.basket), Fraction(0))


def a_cubed(pb: PolarizedBasket) -> Fraction:
    """A^3 forced by chi(-A) = 0."""
    q = pb.q
    if q < 3:
        raise UnsupportedIndexError("A^3 is solved from chi(-A)=0 only for q >= 3")
    k = kc2(pb.basket)
    return Fraction(12, (q - 1) * (q - 2)) * (1 - k / (12 * q) + _local_sum(pb, -1))


def chi(pb: PolarizedBasket, t: int) -> Fraction:
    q = pb.q
    return (
        1
        + Fraction(t * (q + t) * (q + 2 * t), 12) * pb.a_cubed
        + t * pb.kc2 / (12 * q)
        + _local_sum(pb, t)
    )


def dim_linear_system(pb: PolarizedBasket, k: int) -> int:
    """dim|kA| = chi(kA) - 1, valid once higher cohomology vanishes (k > -q)."""
    if k <= -pb.q:
        raise ValueError("Kawamata-Viehweg vanishing needs k > -q")
    x = chi(pb, k)
    if x.denominator != 1:
        raise NonIntegralError(f"chi({k}A) = {x} is not an integer")
    return int(x) - 1


def triple_product(pb: PolarizedBasket, k1: int, k2: int, k3: int) -> Fraction:
    """(k1 A).(k2 A).(k3 A)."""
    return k1 * k2 * k3 * pb.a_cubed
