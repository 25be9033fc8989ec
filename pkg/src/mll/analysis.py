"""End-to-end analysis of a manifest: decomposition, classification,
invariance reports, and the requested check suites."""

from __future__ import annotations

from . import bundles, verifier
from .calculus import FrameCalculus, identity_suite
from .manifest import Manifest, expand_checks


class AnalysisResult:
    __slots__ = (
        "manifest", "calc", "classification", "invariance_flags",
        "ssi_flags", "split_dims", "screen_source", "identity_rows",
        "theorem_reports", "note_rows", "failed",
    )

    def __init__(self, **kw):
        for slot in self.__slots__:
            setattr(self, slot, kw[slot])


def _note_rows(manifest: Manifest, calc: FrameCalculus):
    """Informational notes; frame membership claims are evaluated exactly."""
    rows = []
    for note in manifest.notes:
        row = {"id": note.get("id", "note"), "text": note["text"]}
        frame = note.get("frame")
        if frame is not None and note.get("membership") == "radical":
            field = calc.chart_field(frame, manifest.instance.named_frames[frame])
            member = all(
                bundles.Subspace(calc.pdecs[k].rad_basis, calc.space.dim).contains(
                    calc.field_at(field, k)
                )
                for k in range(len(calc.points))
            )
            row["frame"] = frame
            row["in_radical"] = member
        rows.append(row)
    return rows


def analyze(manifest: Manifest, command: str = "analyze",
            requested_checks=None, screen_hint=None) -> AnalysisResult:
    hint = screen_hint if screen_hint is not None else manifest.screen_hint
    calc = FrameCalculus(manifest.instance, screen_hint=hint)

    # pointwise invariance flags for the report, verified against the
    # symbolic ones (a mismatch would mean a non-generic sample)
    inv = calc.invariance

    ssi_flags = None
    split_dims = None
    if calc.ssi is not None:
        ssi_flags = {
            "J(Rad) in S(TN)": calc.ssi.cond_4_1 or calc.ssi.repaired,
            "J(ltr) in S(TN)": calc.ssi.cond_4_2 or calc.ssi.repaired,
        }
    if calc.split is not None:
        split_dims = {
            "L0": calc.split.L0.dim,
            "L1": calc.split.L1.dim,
            "L2": calc.split.L2.dim,
            "prop_4_1": calc.split.prop_4_1,
            "prop_4_2": calc.split.prop_4_2,
        }

    identity_rows = []
    theorem_reports = []
    if command in ("analyze", "verify"):
        wanted = requested_checks if requested_checks is not None else manifest.checks
        checks = expand_checks(wanted, calc.kind)
        if "identities" in checks:
            identity_rows = identity_suite(calc)
        theorem_ids = [c for c in checks if c != "identities"]
        if theorem_ids:
            theorem_reports = verifier.verify(calc, theorem_ids)

    note_rows = _note_rows(manifest, calc)

    failed = any(r.status == "fail" for r in identity_rows) or any(
        t.verdict == "inconsistent" for t in theorem_reports
    )

    return AnalysisResult(
        manifest=manifest,
        calc=calc,
        classification=calc.classification,
        invariance_flags=inv.flags,
        ssi_flags=ssi_flags,
        split_dims=split_dims,
        screen_source=calc.screen_source,
        identity_rows=identity_rows,
        theorem_reports=theorem_reports,
        note_rows=note_rows,
        failed=failed,
    )
