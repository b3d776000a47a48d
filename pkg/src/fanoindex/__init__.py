"""Exact numerics for Q-Fano threefolds of large Fano index."""
from .basket import Basket, BasketPoint, enumerate_baskets, make_point, parse_basket
from .classify import FanoCandidate, classify, run_preset
from .riemann_roch import PolarizedBasket, a_cubed, chi, dim_linear_system

__all__ = [
    "Basket",
    "BasketPoint",
    "FanoCandidate",
    "PolarizedBasket",
    "a_cubed",
    "chi",
    "classify",
    "dim_linear_system",
    "enumerate_baskets",
    "make_point",
    "parse_basket",
    "run_preset",
]
