"""Rendering of classifier output and regression snapshots."""
from __future__ import annotations

import csv
import difflib
import io
import json
from importlib import resources
from pathlib import Path

from .basket import format_fraction
from .classify import PRESETS, FanoCandidate, run_preset

CSV_COLUMNS = ["q", "basket", "a_cubed", "kc2", *[f"dim_{k}" for k in range(1, 8)], "dim_minus_k", "torsion_free"]


def _dim_k(c: FanoCandidate, k: int) -> str:
    return format_fraction(c.dims[k - 1]) if k <= len(c.dims) else ""


def to_json(cands: list[FanoCandidate]) -> str:
    return json.dumps([c.to_dict() for c in cands], indent=2, sort_keys=True) + "\n"


def to_csv(cands: list[FanoCandidate]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for c in cands:
        w.writerow(
            [
                c.q,
                str(c.basket),
                format_fraction(c.a_cubed),
                format_fraction(c.kc2),
                *[_dim_k(c, k) for k in range(1, 8)],
                format_fraction(c.dim_minus_k),
                "true" if c.torsion_free else "false",
            ]
        )
    return buf.getvalue()


def index_label(c: FanoCandidate) -> str:
    return "(" + ", ".join(str(r) for r in c.indices) + ")"


def to_markdown(cands: list[FanoCandidate]) -> str:
    head = ["q", "B", "A^3", *[f"{k}A" if k > 1 else "A" for k in range(1, 8)], "-K"]
    lines = [
        "| " + " | ".join(head) + " |",
        "|" + "|".join("---" for _ in head) + "|",
    ]
    for c in cands:
        cells = [
            str(c.q),
            index_label(c),
            format_fraction(c.a_cubed),
            *[_dim_k(c, k) for k in range(1, 8)],
            format_fraction(c.dim_minus_k),
        ]
        lines.append("| " + " | ".join(cells) + " |")
    return "\n".join(lines) + "\n"


def render(cands: list[FanoCandidate], fmt: str) -> str:
    if fmt == "json":
        return to_json(cands)
    if fmt == "csv":
        return to_csv(cands)
    if fmt == "markdown":
        return to_markdown(cands)
    raise ValueError(f"unknown format {fmt!r}")


# snapshots


def snapshot_text(preset: str) -> str:
    p = PRESETS[preset]
    doc = {
        "preset": p.name,
        "q_min": p.q_min,
        "q_max": p.q_max,
        "filters": sorted(p.filters),
        "candidates": [c.to_dict() for c in run_preset(preset)],
    }
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def golden_path(preset: str):
    return resources.files("fanoindex") / "snapshots" / f"{preset}.json"


def diff_text(expected: str, actual: str, label: str) -> str:
    return "".join(
        difflib.unified_diff(
            expected.splitlines(True), actual.splitlines(True), f"{label} (stored)", f"{label} (computed)"
        )
    )


def verify_text(actual: str, path) -> tuple[bool, str]:
    """Compare freshly rendered text against a stored file byte for byte."""
    path = Path(str(path))
    if not path.is_file():
        return False, f"missing snapshot {path}\n"
    expected = path.read_text()
    if expected == actual:
        return True, ""
    return False, diff_text(expected, actual, path.name)
