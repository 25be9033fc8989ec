"""Manifest loading and validation.

A manifest is a JSON document describing one instance: field parameters,
ambient metric and metallic operator, exact constants, the polynomial
immersion, optional named frames and screen hint, sample points, and the
list of requested checks.  All scalars are literal expression strings so
exactness survives serialization.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from pathlib import Path

from .calculus import ImmersionInstance
from .errors import ManifestError, MllError
from .expr import parse_expression, parse_scalar
from .linalg import AmbientMetric, Signature
from .scalar import MetallicParams, make_params
from .structure import AmbientSpace, build_structure

KNOWN_CHECKS = (
    "identities",
    "3.1", "3.2", "3.3", "3.4", "3.5",
    "4.1", "4.2", "4.3", "4.4", "4.5", "4.6",
    "lemma3.1", "prop4.3",
)

BUNDLED_FIXTURES = ("example1", "example2", "cone", "totally_lightlike")


def bundled_fixture(name: str) -> str:
    """Path of a bundled fixture manifest (without the .json suffix)."""
    if name not in BUNDLED_FIXTURES:
        raise ManifestError(f"unknown bundled fixture {name!r}")
    return str(Path(__file__).with_name("fixtures") / f"{name}.json")


class Manifest:
    """Validated manifest contents plus the constructed core objects."""

    __slots__ = (
        "path", "raw", "sha256", "params", "space", "constants",
        "chart_dim", "variables", "instance", "screen_hint", "checks",
        "notes",
    )

    def __init__(self, **kw):
        for slot in self.__slots__:
            setattr(self, slot, kw[slot])


def _need(doc: dict, key: str, where: str):
    if key not in doc:
        raise ManifestError(f"missing field {key!r} in {where}")
    return doc[key]


def _rational(text, where: str) -> Fraction:
    try:
        if isinstance(text, int):
            return Fraction(text)
        if isinstance(text, str):
            return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ManifestError(f"bad rational {text!r} in {where}: {exc}") from exc
    raise ManifestError(f"bad rational {text!r} in {where}")


def load_manifest(path: str) -> Manifest:
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise ManifestError(f"cannot read manifest {path!r}: {exc}") from exc
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise ManifestError(f"manifest is not valid JSON: {exc}") from exc
    return build_manifest(doc, path=path, raw=raw)


def build_manifest(doc: dict, path: str = "<memory>", raw: bytes = None) -> Manifest:
    if raw is None:
        raw = json.dumps(doc, sort_keys=True).encode("utf-8")
    if not isinstance(doc, dict):
        raise ManifestError("manifest root must be an object")

    metallic = _need(doc, "metallic", "manifest")
    params = _make_params(metallic)

    ambient = _need(doc, "ambient", "manifest")
    dim = _need(ambient, "dim", "ambient")
    sig_entries = _need(ambient, "signature", "ambient")
    if not isinstance(dim, int) or dim < 1:
        raise ManifestError("ambient.dim must be a positive integer")
    if len(sig_entries) != dim:
        raise ManifestError(
            f"signature has {len(sig_entries)} entries for dimension {dim}"
        )
    try:
        metric = AmbientMetric(Signature(sig_entries))
    except ValueError as exc:
        raise ManifestError(str(exc)) from exc

    constants = _parse_constants(doc, params)
    _check_pythagorean(doc, constants)

    structure_doc = _need(doc, "structure", "manifest")
    space = _make_space(structure_doc, params, metric, dim, constants)

    sub = _need(doc, "submanifold", "manifest")
    chart_dim = _need(sub, "chart_dim", "submanifold")
    if not isinstance(chart_dim, int) or not 1 <= chart_dim < dim:
        raise ManifestError("submanifold.chart_dim must be in [1, dim)")
    var_names = sub.get("variables") or [f"u{i + 1}" for i in range(chart_dim)]
    if len(var_names) != chart_dim:
        raise ManifestError("submanifold.variables length must equal chart_dim")
    variables = {name: i for i, name in enumerate(var_names)}
    components = _need(sub, "components", "submanifold")
    if len(components) != dim:
        raise ManifestError(
            f"submanifold has {len(components)} components for dimension {dim}"
        )
    phi = [
        _expr(c, variables, constants, params, f"submanifold.components[{i}]")
        for i, c in enumerate(components)
    ]

    frames = {}
    for name, vec in (doc.get("frames") or {}).items():
        if len(vec) != chart_dim:
            raise ManifestError(
                f"frame {name!r} must have {chart_dim} chart coefficients"
            )
        frames[name] = tuple(
            _expr(c, variables, constants, params, f"frames.{name}[{i}]")
            for i, c in enumerate(vec)
        )

    screen_hint = _parse_screen_hint(doc.get("screen_hint"), variables, constants,
                                     params, chart_dim)

    points_doc = _need(doc, "sample_points", "manifest")
    if not points_doc:
        raise ManifestError("at least one sample point is required")
    sample_points = []
    for i, pt in enumerate(points_doc):
        if len(pt) != chart_dim:
            raise ManifestError(f"sample_points[{i}] has wrong arity")
        sample_points.append(
            tuple(_rational(x, f"sample_points[{i}]") for x in pt)
        )

    checks = doc.get("checks") or ["all"]
    for c in checks:
        if c != "all" and c not in KNOWN_CHECKS:
            raise ManifestError(f"unknown check id {c!r}")

    notes = doc.get("notes") or []
    for i, note in enumerate(notes):
        if not isinstance(note, dict) or "text" not in note:
            raise ManifestError(f"notes[{i}] must be an object with a 'text' field")
        if "frame" in note and note["frame"] not in frames:
            raise ManifestError(f"notes[{i}] references unknown frame {note['frame']!r}")

    try:
        instance = ImmersionInstance(
            space, chart_dim, phi, named_frames=frames, sample_points=sample_points
        )
    except MllError as exc:
        raise ManifestError(str(exc)) from exc

    return Manifest(
        path=path,
        raw=raw,
        sha256=hashlib.sha256(raw).hexdigest(),
        params=params,
        space=space,
        constants=constants,
        chart_dim=chart_dim,
        variables=variables,
        instance=instance,
        screen_hint=screen_hint,
        checks=checks,
        notes=notes,
    )


def _make_params(metallic) -> MetallicParams:
    p = _need(metallic, "p", "metallic")
    q = _need(metallic, "q", "metallic")
    try:
        return make_params(p, q)
    except MllError:
        raise
    except Exception as exc:  # pragma: no cover - defensive
        raise ManifestError(f"bad metallic parameters: {exc}") from exc


def _parse_constants(doc, params):
    constants = {}
    for name, text in (doc.get("constants") or {}).items():
        if name == "sigma" or not isinstance(name, str):
            raise ManifestError(f"illegal constant name {name!r}")
        constants[name] = parse_scalar(str(text), constants, params)
    return constants


def _check_pythagorean(doc, constants):
    for pair in doc.get("pythagorean") or []:
        if len(pair) != 2:
            raise ManifestError("pythagorean entries must be name pairs")
        c, s = pair
        if c not in constants or s not in constants:
            raise ManifestError(f"pythagorean pair ({c}, {s}) uses undeclared names")
        if constants[c] * constants[c] + constants[s] * constants[s] != 1:
            raise ManifestError(
                f"constants {c}, {s} do not satisfy {c}^2 + {s}^2 = 1"
            )


def _make_space(structure_doc, params, metric, dim, constants) -> AmbientSpace:
    if "J" in structure_doc:
        spec = structure_doc["J"]
    elif "J_matrix" in structure_doc:
        rows = []
        for row in structure_doc["J_matrix"]:
            rows.append([
                parse_scalar(str(x), constants, params) for x in row
            ])
        spec = rows
    else:
        raise ManifestError("structure needs 'J' (diagonal tags) or 'J_matrix'")
    structure = build_structure(params, spec, metric)
    return AmbientSpace(dim, metric, structure)


def _expr(text, variables, constants, params, where: str):
    if not isinstance(text, str):
        text = str(text)
    try:
        return parse_expression(text, variables, constants, params)
    except ManifestError as exc:
        raise ManifestError(f"{where}: {exc}") from exc


def _parse_screen_hint(hint_doc, variables, constants, params, chart_dim):
    if hint_doc is None:
        return None
    if isinstance(hint_doc, dict) and "indices" in hint_doc:
        idx = hint_doc["indices"]
        if not all(isinstance(i, int) for i in idx):
            raise ManifestError("screen_hint.indices must be integers")
        return list(idx)
    if isinstance(hint_doc, dict) and "vectors" in hint_doc:
        vecs = hint_doc["vectors"]
    elif isinstance(hint_doc, list):
        vecs = hint_doc
    else:
        raise ManifestError("screen_hint must carry 'indices' or 'vectors'")
    out = []
    for i, vec in enumerate(vecs):
        if len(vec) != chart_dim:
            raise ManifestError(
                f"screen_hint vector {i} must have {chart_dim} chart coefficients"
            )
        out.append(tuple(
            _expr(c, variables, constants, params, f"screen_hint[{i}][{j}]")
            for j, c in enumerate(vec)
        ))
    return out


def expand_checks(requested, structure_kind: str):
    """Expand 'all' into every id applicable to the structure kind."""
    if "all" not in requested:
        return list(dict.fromkeys(requested))
    out = ["identities"]
    if structure_kind == "invariant":
        out += ["lemma3.1", "3.1", "3.2", "3.3", "3.4", "3.5"]
    elif structure_kind == "screen-semi-invariant":
        out += ["prop4.3", "4.1", "4.2", "4.3", "4.4", "4.5", "4.6"]
    for c in requested:
        if c != "all" and c not in out:
            out.append(c)
    return out
