"""Declarative constraints over the unknowns of a link case.

Linear expressions are written as text, e.g. ``"qhat = 5u + 4e"`` or
``"v >= 1 + e"``. A coefficient may be glued to the variable (``5u``) or
joined with ``*``.
"""
from __future__ import annotations

import operator
import re
from dataclasses import dataclass, field
from typing import Callable, Protocol


class CaseFormatError(ValueError):
    pass


OPS: dict[str, Callable[[int, int], bool]] = {
    "==": operator.eq,
    "=": operator.eq,
    "!=": operator.ne,
    "<=": operator.le,
    ">=": operator.ge,
    "<": operator.lt,
    ">": operator.gt,
}

_TOKEN = re.compile(r"\s*(?:(\d+)\s*\*?\s*([a-z_][a-z0-9_]*)|(\d+)|([a-z_][a-z0-9_]*)|([+-]))", re.I)
_CMP = re.compile(r"(==|!=|<=|>=|=|<|>)")


@dataclass(frozen=True)
class LinearForm:
    coeffs: tuple[tuple[str, int], ...] = ()
    const: int = 0

    def value(self, env: dict[str, int]) -> int:
        return self.const + sum(c * env[v] for v, c in self.coeffs)

    def variables(self) -> frozenset[str]:
        return frozenset(v for v, _ in self.coeffs)

    def coefficient(self, var: str) -> int:
        return dict(self.coeffs).get(var, 0)

    def __sub__(self, other: "LinearForm") -> "LinearForm":
        d = dict(self.coeffs)
        for v, c in other.coeffs:
            d[v] = d.get(v, 0) - c
        return LinearForm(tuple(sorted((v, c) for v, c in d.items() if c)), self.const - other.const)


def parse_form(text: str | int) -> LinearForm:
    if isinstance(text, int):
        return LinearForm((), text)
    s = text.strip()
    if not s:
        raise CaseFormatError("empty expression")
    coeffs: dict[str, int] = {}
    const = 0
    sign = 1
    pos = 0
    expect_term = True
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise CaseFormatError(f"cannot parse {text!r} at {s[pos:]!r}")
        pos = m.end()
        num_var_c, num_var_v, num, var, sgn = m.groups()
        if sgn:
            if sgn == "-":
                sign = -sign
            expect_term = True
            continue
        if not expect_term:
            raise CaseFormatError(f"missing operator in {text!r}")
        if num_var_v:
            coeffs[num_var_v] = coeffs.get(num_var_v, 0) + sign * int(num_var_c)
        elif var:
            coeffs[var] = coeffs.get(var, 0) + sign
        else:
            const += sign * int(num)
        sign = 1
        expect_term = False
    if expect_term:
        raise CaseFormatError(f"dangling operator in {text!r}")
    return LinearForm(tuple(sorted((v, c) for v, c in coeffs.items() if c)), const)


def parse_comparison(text: str) -> tuple[LinearForm, str, LinearForm]:
    parts = _CMP.split(text)
    if len(parts) != 3:
        raise CaseFormatError(f"need exactly one comparison in {text!r}")
    lhs, op, rhs = parts
    return parse_form(lhs), op, parse_form(rhs)


class DimensionOracle(Protocol):
    target: str

    def theta_dims(self, qhat: int, k: int) -> list[int] | None: ...

    def x_dim(self, k: int) -> int: ...


class Constraint:
    kind: str = ""

    def variables(self) -> frozenset[str]:
        raise NotImplementedError

    def holds(self, env: dict[str, int], oracle: DimensionOracle | None) -> bool:
        raise NotImplementedError


@dataclass(frozen=True)
class Linear(Constraint):
    lhs: LinearForm
    op: str
    rhs: LinearForm
    kind = "linear"

    def variables(self):
        return self.lhs.variables() | self.rhs.variables()

    def holds(self, env, oracle):
        return OPS[self.op](self.lhs.value(env), self.rhs.value(env))


@dataclass(frozen=True)
class Parity(Constraint):
    form: LinearForm
    parity: str
    kind = "parity"

    def variables(self):
        return self.form.variables()

    def holds(self, env, oracle):
        return self.form.value(env) % 2 == (1 if self.parity == "odd" else 0)


@dataclass(frozen=True)
class Divisibility(Constraint):
    divisor: LinearForm
    dividend: LinearForm
    kind = "divisibility"

    def variables(self):
        return self.divisor.variables() | self.dividend.variables()

    def holds(self, env, oracle):
        d = self.divisor.value(env)
        return d != 0 and self.dividend.value(env) % d == 0


@dataclass(frozen=True)
class Membership(Constraint):
    var: str
    values: frozenset[int]
    negate: bool = False
    kind = "membership"

    def variables(self):
        return frozenset({self.var})

    def holds(self, env, oracle):
        return (env[self.var] in self.values) != self.negate


@dataclass(frozen=True)
class DimTheta(Constraint):
    """Some candidate of index qhat has dim|k Theta| op rhs.

    An oracle that cannot decide (returns None) never eliminates.
    """

    degree: LinearForm
    op: str
    rhs: int
    target: str = "qhat"
    kind = "dim_theta"

    def variables(self):
        return self.degree.variables() | {self.target}

    def holds(self, env, oracle):
        if oracle is None:
            return True
        dims = oracle.theta_dims(env[self.target], self.degree.value(env))
        if dims is None:
            return True
        return any(OPS[self.op](d, self.rhs) for d in dims)


@dataclass(frozen=True)
class DimX(Constraint):
    degree: LinearForm
    op: str
    rhs: int
    kind = "dim_x"

    def variables(self):
        return self.degree.variables()

    def holds(self, env, oracle):
        if oracle is None:
            return True
        return OPS[self.op](oracle.x_dim(self.degree.value(env)), self.rhs)


@dataclass(frozen=True)
class Implies(Constraint):
    premises: tuple[Constraint, ...]
    conclusions: tuple[Constraint, ...]
    kind = "implies"

    def variables(self):
        return frozenset().union(*(c.variables() for c in self.premises + self.conclusions))

    def holds(self, env, oracle):
        if all(c.holds(env, oracle) for c in self.premises):
            return all(c.holds(env, oracle) for c in self.conclusions)
        return True


@dataclass(frozen=True)
class AnyOf(Constraint):
    options: tuple[Constraint, ...]
    kind = "any"

    def variables(self):
        return frozenset().union(*(c.variables() for c in self.options))

    def holds(self, env, oracle):
        return any(c.holds(env, oracle) for c in self.options)


@dataclass(frozen=True)
class Never(Constraint):
    kind = "never"

    def variables(self):
        return frozenset()

    def holds(self, env, oracle):
        return False


def _degree(payload: dict) -> LinearForm:
    return parse_form(payload["degree"])


def constraint_from_json(d: dict, target: str = "qhat") -> Constraint:
    try:
        kind = d["kind"]
        p = d.get("payload", {})
        if kind == "linear":
            lhs, op, rhs = parse_comparison(p["expr"])
            return Linear(lhs, op, rhs)
        if kind == "parity":
            if p["parity"] not in ("odd", "even"):
                raise CaseFormatError(f"bad parity {p['parity']!r}")
            return Parity(parse_form(p["expr"]), p["parity"])
        if kind == "divisibility":
            return Divisibility(parse_form(p["divisor"]), parse_form(p["dividend"]))
        if kind == "membership":
            return Membership(p["var"], frozenset(int(x) for x in p["values"]), bool(p.get("negate", False)))
        if kind in ("dim_theta", "dim_x"):
            if p["op"] not in OPS:
                raise CaseFormatError(f"bad operator {p['op']!r}")
            if kind == "dim_theta":
                return DimTheta(_degree(p), p["op"], int(p["rhs"]), target)
            return DimX(_degree(p), p["op"], int(p["rhs"]))
        if kind == "implies":
            return Implies(
                tuple(constraint_from_json(c, target) for c in p["if"]),
                tuple(constraint_from_json(c, target) for c in p["then"]),
            )
        if kind == "any":
            return AnyOf(tuple(constraint_from_json(c, target) for c in p["of"]))
        if kind == "never":
            return Never()
    except (KeyError, TypeError) as exc:
        raise CaseFormatError(f"malformed constraint {d!r}: {exc}") from None
    raise CaseFormatError(f"unknown constraint kind {d.get('kind')!r}")


@dataclass(frozen=True)
class CaseConstraint:
    id: str
    constraint: Constraint
    citation: str
    imported: bool = False
    load_bearing: bool | None = None
    raw: dict = field(default_factory=dict, compare=False, hash=False)
