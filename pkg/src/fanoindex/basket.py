"""Baskets of terminal cyclic quotient points.

A point of type 1/r(1, -1, b) is stored as ``BasketPoint(r, b)`` with
``gcd(r, b) = 1`` and ``b`` reduced to ``min(b, r - b)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterator

MAX_WEIGHT = Fraction(24)


class InvalidPointError(ValueError):
    pass


class PointRangeError(InvalidPointError):
    pass


class MalformedBasketError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class BasketPoint:
    r: int
    b: int

    def __post_init__(self) -> None:
        if self.r < 2 or not 0 < self.b <= self.r // 2 or gcd(self.r, self.b) != 1:
            raise InvalidPointError(f"not a canonical point: ({self.r},{self.b})")

    @property
    def weight(self) -> Fraction:
        return Fraction(self.r * self.r - 1, self.r)

    def __str__(self) -> str:
        return f"{self.r}:{self.b}"


def make_point(r: int, b: int) -> BasketPoint:
    """Canonical point for 1/r(1, -1, b), identifying b with r - b."""
    if not isinstance(r, int) or not isinstance(b, int) or r < 2:
        raise PointRangeError(f"bad index: r={r!r}")
    if not 0 < b < r:
        raise PointRangeError(f"b={b} outside 1..{r - 1}")
    if gcd(r, b) != 1:
        raise InvalidPointError(f"gcd({r},{b}) != 1")
    return BasketPoint(r, min(b, r - b))


@dataclass(frozen=True)
class Basket:
    """Sorted multiset of points."""

    points: tuple[BasketPoint, ...] = ()

    def __post_init__(self) -> None:
        pts = tuple(sorted(self.points))
        object.__setattr__(self, "points", pts)

    @classmethod
    def of(cls, *pairs: tuple[int, int]) -> "Basket":
        return cls(tuple(make_point(r, b) for r, b in pairs))

    def __iter__(self) -> Iterator[BasketPoint]:
        return iter(self.points)

    def __len__(self) -> int:
        return len(self.points)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(p.r for p in self.points)

    @property
    def weight(self) -> Fraction:
        return sum((p.weight for p in self.points), Fraction(0))

    def __str__(self) -> str:
        return "+".join(str(p) for p in self.points) if self.points else "0"


def basket_weight(basket: Basket) -> Fraction:
    return basket.weight


def kc2(basket: Basket) -> Fraction:
    """-K.c2 determined by the basket: 24 minus the basket weight.

    Negative for baskets heavier than any Q-Fano threefold allows.
    """
    return MAX_WEIGHT - basket.weight


def gorenstein_index(basket: Basket) -> int:
    return reduce(lcm, basket.indices, 1)


def candidate_points(max_weight: Fraction | int = MAX_WEIGHT) -> list[BasketPoint]:
    """All canonical points of weight at most ``max_weight``, in order."""
    max_weight = Fraction(max_weight)
    out = []
    r = 2
    while Fraction(r * r - 1, r) <= max_weight:
        out.extend(BasketPoint(r, b) for b in range(1, r // 2 + 1) if gcd(r, b) == 1)
        r += 1
    return out


def partition_keys(max_weight: Fraction | int = MAX_WEIGHT) -> list[BasketPoint | None]:
    """Keys splitting the enumeration into disjoint streams.

    ``None`` stands for the stream holding only the empty basket; every other
    key is the smallest point of the baskets in its stream.
    """
    return [None, *candidate_points(max_weight)]


def enumerate_baskets(
    max_weight: Fraction | int = MAX_WEIGHT,
    *,
    first: BasketPoint | None | str = "all",
    point_filter=None,
) -> Iterator[Basket]:
    """Yield every basket of weight <= ``max_weight`` once, lexicographically.

    ``first`` restricts to one stream of :func:`partition_keys`.
    ``point_filter`` drops points before the search, which prunes whole
    subtrees (used to keep only points coprime to a Fano index).
    """
    max_weight = Fraction(max_weight)
    if max_weight < 0:
        raise MalformedBasketError("negative weight bound")
    pts = candidate_points(max_weight)
    if point_filter is not None:
        pts = [p for p in pts if point_filter(p)]
    weights = [p.weight for p in pts]

    def walk(start: int, room: Fraction, acc: list[BasketPoint]) -> Iterator[Basket]:
        yield Basket(tuple(acc))
        for j in range(start, len(pts)):
            if weights[j] > room:  # weights are nondecreasing along pts
                break
            acc.append(pts[j])
            yield from walk(j, room - weights[j], acc)
            acc.pop()

    if first == "all":
        yield from walk(0, max_weight, [])
        return
    if first is None:
        yield Basket()
        return
    if first not in pts:
        return
    j = pts.index(first)
    yield from walk(j, max_weight - weights[j], [first])


# text and JSON forms


def parse_basket(text: str) -> Basket:
    """Parse ``"3:1+4:1+5:2"``; ``""`` or ``"0"`` is the empty basket."""
    text = text.strip()
    if text in ("", "0", "[]"):
        return Basket()
    if text.startswith("["):
        try:
            return basket_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise MalformedBasketError(f"bad basket JSON: {exc}") from None
    pts = []
    for chunk in text.split("+"):
        try:
            r_s, b_s = chunk.split(":")
            pts.append(make_point(int(r_s), int(b_s)))
        except (ValueError, InvalidPointError) as exc:
            raise MalformedBasketError(f"bad point {chunk!r}: {exc}") from None
    return Basket(tuple(pts))


def basket_to_json(basket: Basket) -> list[dict[str, int]]:
    return [{"r": p.r, "b": p.b} for p in basket]


def basket_from_json(data) -> Basket:
    if not isinstance(data, list):
        raise MalformedBasketError("basket JSON must be a list")
    try:
        return Basket(tuple(make_point(int(d["r"]), int(d["b"])) for d in data))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedBasketError(f"bad basket JSON: {exc}") from None


def format_fraction(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedBasketError(f"bad fraction {text!r}") from exc
