"""Command-line front end.

Exit status: 0 on success, 1 when an oracle comparison finds mismatches,
2 when a snapshot comparison diverges, 64 on malformed input.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path

from .basket import (
    MAX_WEIGHT,
    MalformedBasketError,
    basket_to_json,
    enumerate_baskets,
    format_fraction,
    parse_basket,
    parse_fraction,
)
from .classify import DEFAULT_FILTERS, PRESETS, classify
from .link.arithmetic import LinkArithmeticError
from .link.cases import (
    CaseFormatError,
    UnboundedSystemError,
    audit_link_case,
    case_names,
    load_case,
    load_case_file,
    solve_link_case,
)
from .report import golden_path, render, snapshot_text, verify_text
from .torsion import SIEVE_ORDERS, feasible_supports, torsion_feasible
from .wps import WPSError, monomial_count, oracle_compare, wps_basket

EX_OK, EX_MISMATCH, EX_DIVERGED, EX_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit 2, which is reserved for snapshot drift
        self.print_usage(sys.stderr)
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    preset: str | None = None
    q_min: int | None = None
    q_max: int | None = None
    suzuki: bool = False
    torsion_free: bool = False
    max_weight: Fraction = MAX_WEIGHT
    fmt: str = "json"
    snapshot: str | None = None
    verify_snapshot: str | None = None
    options: dict = field(default_factory=dict)

    def filters(self) -> frozenset[str]:
        base = set(PRESETS[self.preset].filters) if self.preset else set(DEFAULT_FILTERS)
        if self.suzuki:
            base.add("suzuki")
        if self.torsion_free:
            base.add("torsion_free")
        return frozenset(base)

    def q_range(self) -> tuple[int, int]:
        lo, hi = (PRESETS[self.preset].q_min, PRESETS[self.preset].q_max) if self.preset else (8, 19)
        return (self.q_min if self.q_min is not None else lo, self.q_max if self.q_max is not None else hi)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fanoindex", description="Numerical checks for Q-Fano threefolds of large Fano index.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("enumerate", help="list baskets of bounded weight")
    e.add_argument("--max-weight", default="24")
    e.add_argument("--count", action="store_true")
    e.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")

    for name, default_fmt in (("classify", "json"), ("table", "markdown")):
        c = sub.add_parser(name, help="run the Riemann-Roch classifier")
        c.add_argument("--preset", choices=sorted(PRESETS))
        c.add_argument("--q-min", type=int)
        c.add_argument("--q-max", type=int)
        c.add_argument("--suzuki", action="store_true")
        c.add_argument("--torsion-free", action="store_true")
        c.add_argument("--max-weight", default="24")
        c.add_argument("--min-dim-a", type=int, help="keep candidates with dim|A| at least this")
        c.add_argument("--format", dest="fmt", choices=["json", "csv", "markdown"], default=default_fmt)
        c.add_argument("--snapshot", help="also write the report to this path")
        c.add_argument("--verify-snapshot", help="compare the report with this file")

    w = sub.add_parser("wps", help="weighted projective space oracle")
    w.add_argument("--weights", required=True)
    w.add_argument("--compare", action="store_true")
    w.add_argument("--kmax", type=int)

    t = sub.add_parser("torsion", help="torsion sieve")
    g = t.add_mutually_exclusive_group(required=True)
    g.add_argument("--basket")
    g.add_argument("--supports", action="store_true", help="list feasible support index multisets")
    t.add_argument("--n", type=int, action="append")

    lk = sub.add_parser("link", help="solve a link case")
    g = lk.add_mutually_exclusive_group(required=True)
    g.add_argument("--case")
    g.add_argument("--case-file")
    g.add_argument("--list", action="store_true")
    lk.add_argument("--audit", action="store_true")
    lk.add_argument("--relations-only", action="store_true")
    lk.add_argument("--format", dest="fmt", choices=["text", "json"], default="text")

    v = sub.add_parser("verify-snapshot", help="check stored golden tables")
    v.add_argument("--preset", choices=[*sorted(PRESETS), "all"], default="all")
    v.add_argument("--snapshot", help="file to compare against (single preset only)")
    return p


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    known = {"command", "preset", "q_min", "q_max", "suzuki", "torsion_free", "max_weight", "fmt", "snapshot", "verify_snapshot"}
    cfg = RunConfig(ns.command)
    for k in known - {"command"}:
        if hasattr(ns, k):
            val = getattr(ns, k)
            if k == "max_weight":
                val = parse_fraction(val)
            if val is not None:
                setattr(cfg, k, val)
    cfg.options = {k: v for k, v in vars(ns).items() if k not in known}
    return cfg


def _write(text: str, out) -> None:
    out.write(text)


def _cmd_enumerate(cfg: RunConfig, out) -> int:
    bks = list(enumerate_baskets(cfg.max_weight))
    if cfg.options.get("count"):
        _write(f"{len(bks)}\n", out)
    elif cfg.fmt == "json":
        _write(json.dumps([basket_to_json(b) for b in bks]) + "\n", out)
    else:
        _write("".join(f"{b}\n" for b in bks), out)
    return EX_OK


def _cmd_classify(cfg: RunConfig, out) -> int:
    q_min, q_max = cfg.q_range()
    try:
        cands = classify(q_min, q_max, cfg.filters(), max_weight=cfg.max_weight)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    floor = cfg.options.get("min_dim_a")
    if floor is not None:
        cands = [c for c in cands if c.dims[0] >= floor]
    text = render(cands, cfg.fmt)
    _write(text, out)
    if cfg.snapshot:
        Path(cfg.snapshot).write_text(text)
    if cfg.verify_snapshot:
        ok, diff = verify_text(text, cfg.verify_snapshot)
        if not ok:
            sys.stderr.write(diff)
            return EX_DIVERGED
    return EX_OK


def _weights(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(" ", "").split(","))
    except ValueError:
        raise UsageError(f"bad weights {text!r}") from None


def _cmd_wps(cfg: RunConfig, out) -> int:
    w = _weights(cfg.options["weights"])
    kmax = cfg.options.get("kmax")
    if cfg.options.get("compare"):
        rep = oracle_compare(w, kmax)
        _write(json.dumps(rep.to_dict(), indent=2, sort_keys=True) + "\n", out)
        return EX_OK if rep.ok else EX_MISMATCH
    q = sum(w)
    kmax = 2 * q if kmax is None else kmax
    doc = {
        "weights": list(w),
        "q": q,
        "basket": basket_to_json(wps_basket(w)),
        "hilbert": [monomial_count(w, k) for k in range(kmax + 1)],
    }
    _write(json.dumps(doc, indent=2, sort_keys=True) + "\n", out)
    return EX_OK


def _cmd_torsion(cfg: RunConfig, out) -> int:
    orders = cfg.options.get("n") or list(SIEVE_ORDERS)
    if any(n < 2 for n in orders):
        raise UsageError("torsion order must be at least 2")
    if cfg.options.get("supports"):
        doc = {str(n): [list(s) for s in sorted(feasible_supports(n))] for n in orders}
    else:
        bk = parse_basket(cfg.options["basket"])
        doc = {}
        for n in orders:
            rep = torsion_feasible(bk, n, all_witnesses=True)
            doc[str(n)] = {
                "feasible": rep.feasible,
                "witnesses": [
                    [{"r": p.r, "b": p.b, "i": i} for p, i in zip(h.support, h.assignment)]
                    for h in rep.witnesses
                ],
            }
    _write(json.dumps(doc, indent=2, sort_keys=True) + "\n", out)
    return EX_OK


def _cmd_link(cfg: RunConfig, out) -> int:
    o = cfg.options
    if o.get("list"):
        _write("".join(f"{n}\n" for n in case_names()), out)
        return EX_OK
    case = load_case_file(o["case_file"]) if o.get("case_file") else load_case(o["case"])
    sols = solve_link_case(case, relations_only=bool(o.get("relations_only")))
    audit = audit_link_case(case) if o.get("audit") else None
    if cfg.fmt == "json":
        doc = {"case": case.name, "solutions": [s.to_dict() for s in sols]}
        if audit is not None:
            doc["audit"] = [a.__dict__ for a in audit]
        _write(json.dumps(doc, indent=2, sort_keys=True) + "\n", out)
        return EX_OK
    lines = [f"{case.name}: {len(sols)} solution{'s' if len(sols) != 1 else ''}"]
    for s in sols:
        lines.append("  " + " ".join(f"{k}={v}" for k, v in s.values))
    if audit is not None:
        lines.append("audit:")
        for a in audit:
            vals = " ".join(f"{k}={v}" for k, v in a.values.items())
            verdict = "survives" if a.survives else "killed by " + ", ".join(a.killed_by)
            lines.append(f"  {vals}: {verdict}")
    _write("\n".join(lines) + "\n", out)
    return EX_OK


def _cmd_verify(cfg: RunConfig, out) -> int:
    preset = cfg.options.get("preset") or cfg.preset or "all"
    names = sorted(PRESETS) if preset == "all" else [preset]
    if cfg.snapshot and len(names) != 1:
        raise UsageError("--snapshot needs a single --preset")
    status = EX_OK
    for name in names:
        path = cfg.snapshot or golden_path(name)
        ok, diff = verify_text(snapshot_text(name), path)
        _write(f"{name}: {'ok' if ok else 'DIVERGED'}\n", out)
        if not ok:
            sys.stderr.write(diff)
            status = EX_DIVERGED
    return status


COMMANDS = {
    "enumerate": _cmd_enumerate,
    "classify": _cmd_classify,
    "table": _cmd_classify,
    "wps": _cmd_wps,
    "torsion": _cmd_torsion,
    "link": _cmd_link,
    "verify-snapshot": _cmd_verify,
}


def run(cfg: RunConfig, out=None) -> int:
    out = out or sys.stdout
    try:
        return COMMANDS[cfg.command](cfg, out)
    except (UsageError, MalformedBasketError, CaseFormatError, WPSError, UnboundedSystemError, LinkArithmeticError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EX_USAGE


def main(argv=None) -> int:
    try:
        ns = build_parser().parse_args(argv)
        cfg = config_from_args(ns)
    except (UsageError, MalformedBasketError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EX_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
