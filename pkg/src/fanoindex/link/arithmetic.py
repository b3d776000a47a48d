"""Numbers attached to the Kawamata blowup of a cyclic quotient point.

Near the blown-up point P of index r we have A ~ -l K_X with q l = 1 mod r.
The exceptional divisor E has discrepancy alpha = 1/r, and a member S_k of
|kA| pulls back as f^*S_k = S~_k + beta_k E with beta_k = k l / r + m_k.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Mapping

from ..basket import Basket


class LinkArithmeticError(ValueError):
    pass


class NoInverseError(LinkArithmeticError):
    pass


class CartierAtPointError(LinkArithmeticError):
    pass


class InconsistentRelationError(LinkArithmeticError):
    pass


def weil_multiplier(q: int, r: int) -> int:
    if r < 2 or gcd(q, r) != 1:
        raise NoInverseError(f"{q} has no inverse mod {r}")
    return pow(q, -1, r)


@dataclass(frozen=True)
class LinkContext:
    q: int
    basket: Basket
    r: int
    degrees: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.r not in self.basket.indices:
            raise LinkArithmeticError(f"no point of index {self.r} in {self.basket}")
        weil_multiplier(self.q, self.r)

    @property
    def alpha(self) -> Fraction:
        return kawamata_discrepancy(self.r)

    @property
    def l_r(self) -> int:
        return weil_multiplier(self.q, self.r)


def kawamata_discrepancy(r: int) -> Fraction:
    return Fraction(1, r)


def beta_fraction(ctx: LinkContext, k: int) -> Fraction:
    """Fractional part of beta_k."""
    return Fraction((k * ctx.l_r) % ctx.r, ctx.r)


def threshold_bound(ctx: LinkContext, system_degree: int) -> Fraction:
    """Upper bound 1/m for the canonical threshold of a general member of
    |system_degree * A|, where m = system_degree * l_r mod r."""
    m = (system_degree * ctx.l_r) % ctx.r
    if m == 0:
        raise CartierAtPointError(f"{system_degree}A is Cartier at the point of index {ctx.r}")
    return Fraction(1, m)


def canonical_threshold(alpha: Fraction, beta0: Fraction) -> Fraction:
    """c = alpha / beta_0 for the Kawamata blowup computing it."""
    return Fraction(alpha) / Fraction(beta0)


def a_coefficient(
    ctx: LinkContext, coeffs: Mapping[int, int], m_values: Mapping[int, int] | None = None
) -> int:
    """Integer a with sum_k c_k beta_k = a + alpha."""
    m_values = m_values or {}
    total = sum(
        (c * (beta_fraction(ctx, k) + m_values.get(k, 0)) for k, c in coeffs.items()),
        Fraction(0),
    )
    a = total - ctx.alpha
    if a.denominator != 1:
        raise InconsistentRelationError(f"sum c_k beta_k - alpha = {a} is not an integer")
    return int(a)


def cartier_multiple(basket: Basket, indices) -> int:
    """Smallest m with mA Cartier at the chosen points."""
    idx = set(indices)
    missing = idx - set(basket.indices)
    if missing:
        raise LinkArithmeticError(f"indices {sorted(missing)} not in basket")
    return reduce(lcm, idx, 1)


def contracted_class_degree(n: int, e: int) -> int:
    """d = n e for a contracted divisor F with F ~ dTheta and E ~ eTheta."""
    if n < 1 or e < 1:
        raise LinkArithmeticError("need n, e >= 1")
    return n * e


def cartier_pairing(pb, indices, k1: int, k2: int) -> Fraction:
    """(mA).(k1 A).(k2 A) with m = cartier_multiple; an integer whenever mA is
    Cartier along the curve cut out by the other two."""
    m = cartier_multiple(pb.basket, indices)
    return m * k1 * k2 * pb.a_cubed
