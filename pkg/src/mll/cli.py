"""Command-line interface.

    mll analyze  <manifest> [--checks id,...] [--output json|text] [--screen-hint ...]
    mll classify <manifest> ...
    mll verify   <manifest> ...
    mll frames   <manifest> ...

Exit codes: 0 all checks pass, 1 some check failed, 2 invalid input,
3 unsupported structure (non-metallic operator or non-lightlike instance).
"""

from __future__ import annotations

import argparse
import json
import sys

from .analysis import analyze
from .errors import (
    ManifestError,
    MllError,
    NonGenericSample,
    NotLightlike,
    UnsupportedStructure,
)
from .manifest import KNOWN_CHECKS, load_manifest
from .report import build_report, render_json, render_text


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="mll",
        description="Exact analysis of lightlike submanifolds of metallic "
        "semi-Riemannian spaces.",
    )
    ap.add_argument(
        "command",
        choices=("analyze", "classify", "verify", "frames"),
        help="analyze: decomposition + classification + all reports; "
        "classify: classification only; verify: requested check suite; "
        "frames: constructed bases",
    )
    ap.add_argument("manifest", help="path to a JSON manifest")
    ap.add_argument(
        "--checks",
        default=None,
        help="comma-separated check ids (or 'all'); default: manifest checks",
    )
    ap.add_argument(
        "--output", choices=("json", "text"), default="text", help="report format"
    )
    ap.add_argument(
        "--screen-hint",
        default=None,
        help="JSON screen hint overriding the manifest "
        "(list of frame indices or chart-coefficient vectors)",
    )
    return ap


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        manifest = load_manifest(args.manifest)
        requested = None
        if args.checks is not None:
            requested = [c.strip() for c in args.checks.split(",") if c.strip()]
            for c in requested:
                if c != "all" and c not in KNOWN_CHECKS:
                    raise ManifestError(f"unknown check id {c!r}")
        hint = None
        if args.screen_hint is not None:
            try:
                doc = json.loads(args.screen_hint)
            except json.JSONDecodeError as exc:
                raise ManifestError(f"bad --screen-hint: {exc}") from exc
            from .manifest import _parse_screen_hint

            hint = _parse_screen_hint(
                doc, manifest.variables, manifest.constants,
                manifest.params, manifest.chart_dim,
            )
        command = args.command
        result = analyze(manifest, command=command, requested_checks=requested,
                         screen_hint=hint)
        report = build_report(result, command)
        text = render_json(report) if args.output == "json" else render_text(report)
        sys.stdout.write(text)
        return 1 if result.failed else 0
    except (NotLightlike, UnsupportedStructure) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 3
    except (ManifestError, NonGenericSample) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2
    except MllError as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
