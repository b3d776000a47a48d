"""Link cases: linear Diophantine systems plus side constraints, and their solver."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from itertools import product
from pathlib import Path

from ..basket import parse_basket, MalformedBasketError
from ..classify import DEFAULT_FILTERS, OPTIONAL_FILTERS, candidates_for_index
from ..riemann_roch import PolarizedBasket, dim_linear_system
from .arithmetic import LinkContext
from .dsl import (
    CaseConstraint,
    CaseFormatError,
    LinearForm,
    Membership,
    constraint_from_json,
    parse_comparison,
)

Q_HAT_MAX = 19
THETA_MIN_INDEX = 5  # below this the classifier output is not used as a lookup


class UnboundedSystemError(ValueError):
    pass


@dataclass(frozen=True)
class Relation:
    lhs: LinearForm
    rhs: LinearForm
    text: str
    divisor: tuple[tuple[int, int], ...] = ()
    citation: str = ""

    def variables(self) -> frozenset[str]:
        return self.lhs.variables() | self.rhs.variables()

    def holds(self, env: dict[str, int]) -> bool:
        return self.lhs.value(env) == self.rhs.value(env)


@dataclass(frozen=True)
class Split:
    """var = s + e * m with s, m >= 0."""

    var: str
    degree: int

    @property
    def s(self) -> str:
        return f"s{self.degree}"

    @property
    def m(self) -> str:
        return f"m{self.degree}"


@dataclass(frozen=True)
class LinkCase:
    name: str
    context: LinkContext
    unknowns: tuple[str, ...]
    target: str
    lower: dict
    upper: dict
    splits: tuple[Split, ...]
    relations: tuple[Relation, ...]
    constraints: tuple[CaseConstraint, ...]
    description: str = ""
    search_order: tuple[str, ...] | None = None

    def with_constraints(self, constraints) -> "LinkCase":
        return replace(self, constraints=tuple(constraints))

    def with_search_order(self, order) -> "LinkCase":
        if sorted(order) != sorted(self.unknowns):
            raise ValueError("order must permute the unknowns")
        return replace(self, search_order=tuple(order))

    def order(self) -> list[str]:
        if self.search_order:
            return list(self.search_order)
        # the target and e occur in every relation, so fixing them first prunes early
        head = [v for v in (self.target, "e") if v in self.unknowns]
        return head + [v for v in self.unknowns if v not in head]


@dataclass(frozen=True)
class LinkSolution:
    values: tuple[tuple[str, int], ...]
    witnesses: tuple[tuple[tuple[str, int], ...], ...] = ()

    def __getitem__(self, name: str) -> int:
        return dict(self.values)[name]

    def as_tuple(self, names) -> tuple[int, ...]:
        d = dict(self.values)
        return tuple(d[n] for n in names)

    def to_dict(self) -> dict:
        return {"values": dict(self.values), "witnesses": [dict(w) for w in self.witnesses]}


@dataclass
class AuditEntry:
    values: dict[str, int]
    survives: bool
    killed_by: list[str] = field(default_factory=list)


class ClassifierOracle:
    """Dimension lookups for the link target (classifier output) and for X."""

    def __init__(self, x: PolarizedBasket, target: str = "qhat") -> None:
        self.x = x
        self.target = target

    def theta_dims(self, qhat: int, k: int) -> list[int] | None:
        if qhat < THETA_MIN_INDEX:
            return None
        filters = DEFAULT_FILTERS | OPTIONAL_FILTERS if qhat >= 9 else DEFAULT_FILTERS
        cands = candidates_for_index(qhat, frozenset(filters)) if 3 <= qhat <= 19 else ()
        return [_dim(c.polarized, k) for c in cands]

    def x_dim(self, k: int) -> int:
        return _dim(self.x, k)


def _dim(pb: PolarizedBasket, k: int) -> int:
    return -1 if k < 0 else dim_linear_system(pb, k)


# loading


def load_case_dict(data: dict, name: str = "") -> LinkCase:
    try:
        q = int(data["q"])
        r = int(data["r"])
        basket = parse_basket(data["basket"])
        unknowns = tuple(data["unknowns"])
        target = data.get("target", "qhat")
        split_map = data.get("splits", {})
        splits = tuple(Split(v, int(k)) for v, k in split_map.items())
        ctx = LinkContext(q, basket, r, tuple(sorted(int(k) for k in split_map.values())))
        relations = []
        for rel in data["relations"]:
            lhs, op, rhs = parse_comparison(rel["expr"])
            if op not in ("=", "=="):
                raise CaseFormatError(f"relation must be an equality: {rel['expr']!r}")
            div = tuple(sorted((int(k), int(c)) for k, c in rel.get("divisor", {}).items()))
            relations.append(Relation(lhs, rhs, rel["expr"], div, rel.get("citation", "")))
        constraints = []
        for i, c in enumerate(data["constraints"]):
            if "citation" not in c:
                raise CaseFormatError(f"constraint {i} has no citation")
            constraints.append(
                CaseConstraint(
                    c.get("id", f"c{i}"),
                    constraint_from_json(c, target),
                    c["citation"],
                    bool(c.get("imported", False)),
                    c.get("load_bearing"),
                    c,
                )
            )
        bounds = data.get("bounds", {})
        lower = {v: int(b[0]) for v, b in bounds.items() if b[0] is not None}
        upper = {v: int(b[1]) for v, b in bounds.items() if b[1] is not None}
    except (KeyError, TypeError, ValueError, MalformedBasketError) as exc:
        if isinstance(exc, CaseFormatError):
            raise
        raise CaseFormatError(f"malformed case {name!r}: {exc}") from None
    if target not in unknowns:
        raise CaseFormatError(f"target {target!r} is not an unknown")
    known = set(unknowns) | {x for s in splits for x in (s.s, s.m)}
    for rel in relations:
        if not rel.variables() <= set(unknowns):
            raise CaseFormatError(f"relation {rel.text!r} uses unknown variables")
    for cc in constraints:
        extra = cc.constraint.variables() - known
        if extra:
            raise CaseFormatError(f"constraint {cc.id} uses undeclared {sorted(extra)}")
    return LinkCase(
        name or data.get("name", ""), ctx, unknowns, target, lower, upper, splits,
        tuple(relations), tuple(constraints), data.get("description", ""),
    )


def load_case_file(path) -> LinkCase:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CaseFormatError(f"{path}: {exc}") from None
    return load_case_dict(data, path.stem)


def case_names() -> list[str]:
    root = resources.files("fanoindex.link") / "cases"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def load_case(name: str) -> LinkCase:
    root = resources.files("fanoindex.link") / "cases"
    f = root / f"{name}.json"
    if not f.is_file():
        raise CaseFormatError(f"no shipped case named {name!r}")
    return load_case_dict(json.loads(f.read_text()), name)


# solving


def _box(case: LinkCase) -> dict[str, tuple[int, int]]:
    has_cap = any(
        isinstance(cc.constraint, Membership) and cc.constraint.var == case.target and not cc.constraint.negate
        for cc in case.constraints
    ) or case.target in case.upper
    if not has_cap:
        raise UnboundedSystemError(f"{case.name}: no cap on {case.target}")
    box = {}
    for v in case.unknowns:
        lo = case.lower.get(v, 1 if v == "e" else 0)
        if v == case.target:
            hi = case.upper.get(v, Q_HAT_MAX)
        else:
            coeffs = [
                rel.rhs.coefficient(v)
                for rel in case.relations
                if rel.lhs.coefficient(case.target) == 1 and rel.rhs.coefficient(v) > 0
            ]
            caps = [Q_HAT_MAX // min(coeffs)] if coeffs else []
            if v in case.upper:
                caps.append(case.upper[v])
            if not caps:
                raise UnboundedSystemError(f"{case.name}: unknown {v!r} has no bound")
            hi = min(caps)
        box[v] = (lo, hi)
    return box


def _primary_constraints(case: LinkCase) -> tuple[list[CaseConstraint], list[CaseConstraint]]:
    prim = set(case.unknowns)
    early = [c for c in case.constraints if c.constraint.variables() <= prim]
    late = [c for c in case.constraints if not c.constraint.variables() <= prim]
    return early, late


def _decompositions(case: LinkCase, env: dict[str, int]):
    e = env["e"]
    ranges = []
    for sp in case.splits:
        total = env[sp.var]
        ranges.append([(sp, total - e * m, m) for m in range(total // e + 1)])
    for combo in product(*ranges):
        ext = {}
        for sp, s, m in combo:
            ext[sp.s] = s
            ext[sp.m] = m
        yield ext


def _relation_solutions(case: LinkCase) -> list[dict[str, int]]:
    box = _box(case)
    order = case.order()
    checks = [[] for _ in order]
    for rel in case.relations:
        depth = max(order.index(v) for v in rel.variables())
        checks[depth].append(rel)
    out: list[dict[str, int]] = []
    env: dict[str, int] = {}

    def rec(d: int) -> None:
        if d == len(order):
            out.append(dict(env))
            return
        v = order[d]
        lo, hi = box[v]
        for x in range(lo, hi + 1):
            env[v] = x
            if all(rel.holds(env) for rel in checks[d]):
                rec(d + 1)
        env.pop(v, None)

    rec(0)
    return out


def _canon(case: LinkCase, env: dict[str, int]) -> tuple[tuple[str, int], ...]:
    return tuple((v, env[v]) for v in sorted(case.unknowns))


def solve_link_case(case: LinkCase, *, relations_only: bool = False, oracle=None) -> list[LinkSolution]:
    """Every solution in the search box, sorted by the unknowns' names.

    An empty result means the case is eliminated.
    """
    if oracle is None:
        oracle = ClassifierOracle(PolarizedBasket(case.context.q, case.context.basket), case.target)
    sols = []
    early, late = _primary_constraints(case)
    for env in _relation_solutions(case):
        if relations_only:
            sols.append(LinkSolution(_canon(case, env)))
            continue
        if not all(c.constraint.holds(env, oracle) for c in early):
            continue
        wit = []
        for ext in _decompositions(case, env):
            full = {**env, **ext}
            if all(c.constraint.holds(full, oracle) for c in late):
                wit.append(tuple(sorted(ext.items())))
        if wit:
            sols.append(LinkSolution(_canon(case, env), tuple(sorted(wit))))
    sols.sort(key=lambda s: s.values)
    return sols


def audit_link_case(case: LinkCase, oracle=None) -> list[AuditEntry]:
    """For each relation-only solution, the constraints that eliminate it.

    A solution dies at the first failing constraint (file order) among those
    on the unknowns alone; otherwise every decomposition u = s + e m dies
    somewhere and all the responsible constraints are listed.
    """
    if oracle is None:
        oracle = ClassifierOracle(PolarizedBasket(case.context.q, case.context.basket), case.target)
    early, late = _primary_constraints(case)
    out = []
    for env in _relation_solutions(case):
        entry = AuditEntry(dict(sorted(env.items())), False)
        first = next((c for c in early if not c.constraint.holds(env, oracle)), None)
        if first is not None:
            entry.killed_by = [first.id]
            out.append(entry)
            continue
        killers: list[str] = []
        for ext in _decompositions(case, env):
            full = {**env, **ext}
            bad = next((c for c in late if not c.constraint.holds(full, oracle)), None)
            if bad is None:
                entry.survives = True
            elif bad.id not in killers:
                killers.append(bad.id)
        if not entry.survives:
            order = [c.id for c in case.constraints]
            entry.killed_by = sorted(killers, key=order.index)
        out.append(entry)
    out.sort(key=lambda a: sorted(a.values.items()))
    return out


def load_bearing_ids(case: LinkCase) -> list[str]:
    """Constraints whose removal changes the solution set."""
    base = solve_link_case(case)
    out = []
    for cc in case.constraints:
        rest = [c for c in case.constraints if c is not cc]
        try:
            sols = solve_link_case(case.with_constraints(rest))
        except UnboundedSystemError:
            out.append(cc.id)
            continue
        if [s.values for s in sols] != [s.values for s in base]:
            out.append(cc.id)
    return out
