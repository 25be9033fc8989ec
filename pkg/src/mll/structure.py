"""The metallic operator J: axioms, eigenprojectors, images, splittings.

J is restricted to constant matrices, which makes it parallel for the flat
ambient connection used throughout.  Non-constant input is rejected.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import (
    DimensionMismatch,
    NotSelfAdjoint,
    NotTangent,
    PolynomialViolation,
    UnsupportedStructure,
    WrongMode,
)
from .linalg import AmbientMetric, Subspace
from .scalar import MetallicParams, MetallicScalar, sigma


class MetallicStructure:
    """A validated constant (1,1)-tensor with J^2 = p J + q I."""

    __slots__ = ("params", "matrix")

    def __init__(self, params: MetallicParams, matrix):
        self.params = params
        self.matrix = tuple(tuple(row) for row in matrix)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def apply(self, v):
        """J v for an ambient vector (scalar or symbolic entries)."""
        if len(v) != self.dim:
            raise DimensionMismatch("vector length does not match the operator")
        return tuple(
            linalg.sum_entries([self.matrix[i][k] * v[k] for k in range(self.dim)])
            for i in range(self.dim)
        )

    def __repr__(self):
        return f"MetallicStructure(dim={self.dim}, p={self.params.p}, q={self.params.q})"


def build_structure(params: MetallicParams, spec, metric: AmbientMetric) -> MetallicStructure:
    """Validate a diagonal tag pattern or explicit matrix against the axioms.

    Tags are 'sigma' or 'p-sigma'; an explicit matrix must consist of
    MetallicScalar entries (or ints/Fractions, which are promoted).
    """
    dim = metric.dim
    s = sigma(params)
    s_conj = s.conjugate()  # p - sigma
    if spec and all(isinstance(t, str) for t in spec):
        if len(spec) != dim:
            raise DimensionMismatch(
                f"pattern of length {len(spec)} for ambient dimension {dim}"
            )
        diag = []
        for tag in spec:
            if tag == "sigma":
                diag.append(s)
            elif tag == "p-sigma":
                diag.append(s_conj)
            else:
                raise UnsupportedStructure(f"unknown diagonal tag {tag!r}")
        zero = s.zero()
        matrix = [[diag[i] if i == j else zero for j in range(dim)] for i in range(dim)]
    else:
        matrix = []
        for row in spec:
            out = []
            for x in row:
                if isinstance(x, (int, Fraction)):
                    x = MetallicScalar(x, 0, params)
                if not isinstance(x, MetallicScalar):
                    raise UnsupportedStructure(
                        "matrix entries must be exact scalars; non-constant "
                        "operators are not supported"
                    )
                out.append(x)
            matrix.append(out)
        if len(matrix) != dim or any(len(r) != dim for r in matrix):
            raise DimensionMismatch("operator matrix shape does not match dimension")

    one = s.one()
    zero = s.zero()
    jj = linalg.mat_mul(matrix, matrix)
    for i in range(dim):
        for j in range(dim):
            expected = matrix[i][j] * params.p + (one * params.q if i == j else zero)
            if jj[i][j] != expected:
                raise PolynomialViolation(
                    f"J^2 != p J + q I at entry ({i}, {j})"
                )
    eps = metric.signature.entries
    for i in range(dim):
        for j in range(dim):
            # (J^T G)_ij = J_ji eps_j ; (G J)_ij = eps_i J_ij
            if matrix[j][i] * eps[j] != matrix[i][j] * eps[i]:
                raise NotSelfAdjoint(
                    f"J is not self-adjoint for the metric at entry ({i}, {j})"
                )
    return MetallicStructure(params, matrix)


class AmbientSpace:
    """A flat semi-Euclidean space with a compatible metallic operator."""

    __slots__ = ("dim", "metric", "structure")

    def __init__(self, dim: int, metric: AmbientMetric, structure: MetallicStructure):
        if metric.dim != dim or structure.dim != dim:
            raise DimensionMismatch("metric/operator dimensions disagree")
        self.dim = dim
        self.metric = metric
        self.structure = structure

    @property
    def params(self) -> MetallicParams:
        return self.structure.params

    def pairing(self, u, v):
        return self.metric.pairing(u, v)

    def apply(self, v):
        return self.structure.apply(v)

    def __repr__(self):
        return f"AmbientSpace(dim={self.dim}, signature={list(self.metric.signature.entries)})"


def check_compat_identity(space: AmbientSpace, u, v) -> bool:
    """g(Ju, Jv) = p g(u, Jv) + q g(u, v), checked exactly."""
    p, q = space.params.p, space.params.q
    ju, jv = space.apply(u), space.apply(v)
    lhs = space.pairing(ju, jv)
    rhs = space.pairing(u, jv) * p + space.pairing(u, v) * q
    return lhs == rhs


def eigenprojectors(structure: MetallicStructure):
    """(P_sigma, P_conj) with J = sigma P_sigma + (p - sigma) P_conj.

    P_sigma = (J - (p - sigma) I) / (2 sigma - p); the denominator is the
    square root of the discriminant inside Q(sigma), never zero.
    """
    params = structure.params
    s = sigma(params)
    s_conj = s.conjugate()
    denom_inv = (s - s_conj).inverse()  # 2 sigma - p
    dim = structure.dim
    one = s.one()
    ident = linalg.identity_matrix(dim, one)
    p_sigma = [
        [
            (structure.matrix[i][j] - s_conj * ident[i][j]) * denom_inv
            for j in range(dim)
        ]
        for i in range(dim)
    ]
    p_conj = [
        [ident[i][j] - p_sigma[i][j] for j in range(dim)]
        for i in range(dim)
    ]
    return p_sigma, p_conj


def image_of(structure: MetallicStructure, S: Subspace) -> Subspace:
    """Span of J applied to a basis; J is invertible, so dimension is kept."""
    return Subspace(tuple(structure.apply(v) for v in S.basis), S.ambient_dim)


class SplitReport:
    """Components of a tangent vector under the mode's projections.

    parts: named ambient vectors; memberships: the containment claims that
    were verified for each part.
    """

    __slots__ = ("mode", "parts", "memberships")

    def __init__(self, mode: str, parts: dict, memberships: dict):
        self.mode = mode
        self.parts = parts
        self.memberships = memberships


def _resolve_in(blocks, u, ambient_dim):
    """Coefficients of u over the concatenated block bases; None if not in span."""
    basis = [v for block in blocks for v in block]
    if not basis:
        return None if not linalg.vec_is_zero(u) else []
    cols = [list(col) for col in zip(*basis)]  # ambient_dim x nbasis
    try:
        coeffs = linalg.solve(cols, list(u))
    except linalg.NoSolution:
        return None
    return list(coeffs)


def _combine(block, coeffs, ambient_dim, zero):
    out = tuple(zero for _ in range(ambient_dim))
    for c, v in zip(coeffs, block):
        out = linalg.vadd(out, linalg.vscale(c, v))
    return out


def tangent_splittings(space, decomp, u, mode: str, split=None) -> SplitReport:
    """Project a tangent vector through the mode's decomposition.

    mode 'invariant': u = TU + QU over screen/radical, Ju = SU + LU with
    SU = J TU and LU = J QU.  mode 'screen-semi-invariant': u = BU + RU over
    the invariant part and J(ltr), Ju = S1U + R1U with S1U = J BU and
    R1U = J RU; R1U lands in J(ltr) + ltr, and its membership in ltr alone
    is reported, not required.
    """
    zero = space.structure.matrix[0][0].zero()
    dim = space.dim

    if mode == "invariant":
        blocks = [list(decomp.screen_basis), list(decomp.rad_basis)]
        coeffs = _resolve_in(blocks, u, dim)
        if coeffs is None:
            raise NotTangent("vector is not tangent at the point")
        k = len(decomp.screen_basis)
        tu = _combine(blocks[0], coeffs[:k], dim, zero)
        qu = _combine(blocks[1], coeffs[k:], dim, zero)
        su, lu = space.apply(tu), space.apply(qu)
        screen = Subspace(decomp.screen_basis, dim)
        rad = Subspace(decomp.rad_basis, dim)
        memberships = {
            "TU": screen.contains(tu),
            "QU": rad.contains(qu),
            "SU": screen.contains(su),
            "LU": rad.contains(lu),
        }
        if not all(memberships.values()):
            raise WrongMode(
                "invariant splitting requested but J does not preserve the "
                "screen/radical pair at this point"
            )
        if linalg.vadd(tu, qu) != tuple(u):
            raise AssertionError("splitting does not re-sum to the input")
        return SplitReport("invariant", {"TU": tu, "QU": qu, "SU": su, "LU": lu}, memberships)

    if mode == "screen-semi-invariant":
        if split is None:
            raise WrongMode("screen-semi-invariant splitting needs a ScreenSplit")
        blocks = [list(split.L.basis), list(split.L2.basis)]
        coeffs = _resolve_in(blocks, u, dim)
        if coeffs is None:
            raise NotTangent("vector is not tangent at the point")
        k = len(split.L.basis)
        bu = _combine(blocks[0], coeffs[:k], dim, zero)
        ru = _combine(blocks[1], coeffs[k:], dim, zero)
        s1u, r1u = space.apply(bu), space.apply(ru)
        ltr = Subspace(decomp.ltr_basis, dim)
        l2_plus_ltr = Subspace.span(list(split.L2.basis) + list(decomp.ltr_basis), dim)
        memberships = {
            "BU": split.L.contains(bu),
            "RU": split.L2.contains(ru),
            "S1U": split.L.contains(s1u),
            "R1U": l2_plus_ltr.contains(r1u),
            "R1U_in_ltr": ltr.contains(r1u),
        }
        required = ("BU", "RU", "S1U", "R1U")
        if not all(memberships[k_] for k_ in required):
            raise WrongMode(
                "screen-semi-invariant splitting inconsistent at this point"
            )
        if linalg.vadd(bu, ru) != tuple(u):
            raise AssertionError("splitting does not re-sum to the input")
        return SplitReport(
            "screen-semi-invariant",
            {"BU": bu, "RU": ru, "S1U": s1u, "R1U": r1u},
            memberships,
        )

    raise WrongMode(f"unknown splitting mode {mode!r}")
