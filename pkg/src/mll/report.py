"""Report assembly and rendering (JSON and text).

Reports are deterministic: scalar values are printed in their canonical
literal form, keys are sorted, and no timestamps are embedded, so two runs
on the same manifest produce byte-identical output.
"""

from __future__ import annotations

import json

from . import __version__
from .analysis import AnalysisResult
from .scalar import scalar_to_str


def _vec(v):
    return [scalar_to_str(x) for x in v]


def _basis(basis):
    return [_vec(v) for v in basis]


def _point(pt):
    return [str(x) for x in pt]


def build_report(result: AnalysisResult, command: str) -> dict:
    manifest = result.manifest
    calc = result.calc
    cls = result.classification
    report = {
        "tool": {"name": "mll", "version": __version__},
        "command": command,
        "manifest_hash": manifest.sha256,
        "metallic": {
            "p": manifest.params.p,
            "q": manifest.params.q,
            "disc": manifest.params.disc,
        },
        "ambient": {
            "dim": manifest.space.dim,
            "signature": list(manifest.space.metric.signature.entries),
        },
        "classification": {
            "kind": cls.kind,
            "structure_kind": cls.structure_kind,
            "r": cls.r,
            "m": cls.m,
            "n": cls.n,
        },
        "screen_source": result.screen_source,
        "invariance": result.invariance_flags,
    }
    if result.ssi_flags is not None:
        report["screen_semi_invariant"] = result.ssi_flags
    if result.split_dims is not None:
        report["screen_split"] = result.split_dims

    if command in ("analyze", "frames"):
        points = []
        for pdec in calc.pdecs:
            points.append(
                {
                    "point": _point(pdec.point),
                    "bases": {
                        "radical": _basis(pdec.rad_basis),
                        "screen": _basis(pdec.screen_basis),
                        "coscreen": _basis(pdec.coscreen_basis),
                        "ltr": _basis(pdec.ltr_basis),
                    },
                }
            )
        report["points"] = points

    checks = []
    for row in result.identity_rows:
        checks.append(
            {
                "id": row.id,
                "rule": row.rule,
                "status": row.status,
                "witnesses": dict(row.witnesses),
            }
        )
    for rep in result.theorem_reports:
        entry = {
            "id": rep.theorem_id,
            "rule": rep.rule,
            "status": rep.verdict,
            "witnesses": {},
        }
        if rep.rows:
            entry["samples"] = [
                {
                    "point": _point(r.point),
                    "lhs": r.lhs,
                    "rhs": r.rhs,
                    "witnesses": {k: str(v) for k, v in r.witnesses.items()},
                }
                for r in rep.rows
            ]
        if rep.notes:
            entry["notes"] = list(rep.notes)
        checks.append(entry)
    if checks:
        report["checks"] = checks
    if result.note_rows:
        report["notes"] = result.note_rows
    return report


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def render_text(report: dict) -> str:
    lines = []
    tool = report["tool"]
    lines.append(f"{tool['name']} {tool['version']}  command={report['command']}")
    lines.append(f"manifest sha256: {report['manifest_hash']}")
    met = report["metallic"]
    lines.append(
        f"field: p={met['p']} q={met['q']} disc={met['disc']}   "
        f"ambient: dim={report['ambient']['dim']} "
        f"signature={report['ambient']['signature']}"
    )
    cls = report["classification"]
    lines.append(
        f"classification: {cls['kind']} (r={cls['r']}, m={cls['m']}, n={cls['n']})  "
        f"structure: {cls['structure_kind']}  screen: {report['screen_source']}"
    )
    inv = report["invariance"]
    lines.append(
        "invariance flags: "
        + "  ".join(f"{k}={v}" for k, v in sorted(inv.items()))
    )
    if "screen_semi_invariant" in report:
        lines.append(
            "screen semi-invariant: "
            + "  ".join(f"{k}={v}" for k, v in sorted(report["screen_semi_invariant"].items()))
        )
    if "screen_split" in report:
        lines.append(
            "screen split: "
            + "  ".join(f"{k}={v}" for k, v in sorted(report["screen_split"].items()))
        )
    for pt in report.get("points", []):
        lines.append(f"point {tuple(pt['point'])}:")
        for name in ("radical", "screen", "coscreen", "ltr"):
            basis = pt["bases"][name]
            if not basis:
                lines.append(f"  {name}: {{0}}")
            else:
                for v in basis:
                    lines.append(f"  {name}: ({', '.join(v)})")
    for row in report.get("checks", []):
        lines.append(f"check {row['id']:<12} {row['status']:<14} {row['rule']}")
        wits = row.get("witnesses") or {}
        for k in sorted(wits):
            lines.append(f"    {k} = {wits[k]}")
        for note in row.get("notes", []):
            lines.append(f"    note: {note}")
    for note in report.get("notes", []):
        extra = ""
        if "in_radical" in note:
            extra = f" [frame {note['frame']} in radical: {note['in_radical']}]"
        lines.append(f"note [{note.get('id', 'note')}]: {note['text']}{extra}")
    return "\n".join(lines) + "\n"
