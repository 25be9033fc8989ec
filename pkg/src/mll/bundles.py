"""Pointwise lightlike decomposition: radical, screen, co-screen, transversal.

The construction is generic over the entry field, so it runs both on exact
scalars (one chart point) and on rational functions of the chart variables
(a whole coordinate patch at once).

Transversal construction: inside V = screen-perp meet coscreen-perp (which
has dimension exactly 2r and contains the radical), solve g(xi_i, W_j) =
delta_ij and set N_i = W_i - (1/2) sum_j g(W_i, W_j) xi_j.  The duality,
nullity and orthogonality relations then hold identically.
"""

from __future__ import annotations

from fractions import Fraction

from . import linalg
from .errors import (
    DegenerateScreenHint,
    MllError,
    NotLightlike,
)
from .linalg import Subspace, subspace_rel
from .structure import AmbientSpace, image_of


class BundleDecomposition:
    """Bases of Rad(TN), S(TN), S(TN-perp) and ltr(TN) at one point."""

    __slots__ = (
        "point",
        "tangent_frame",
        "rad_basis",
        "screen_basis",
        "coscreen_basis",
        "ltr_basis",
        "r",
        "m",
        "n",
    )

    def __init__(self, point, tangent_frame, rad_basis, screen_basis,
                 coscreen_basis, ltr_basis):
        self.point = point
        self.tangent_frame = tuple(tuple(v) for v in tangent_frame)
        self.rad_basis = tuple(tuple(v) for v in rad_basis)
        self.screen_basis = tuple(tuple(v) for v in screen_basis)
        self.coscreen_basis = tuple(tuple(v) for v in coscreen_basis)
        self.ltr_basis = tuple(tuple(v) for v in ltr_basis)
        self.r = len(self.rad_basis)
        self.m = len(self.tangent_frame)
        ambient = len(self.tangent_frame[0])
        self.n = ambient - self.m

    @property
    def ambient_dim(self) -> int:
        return self.m + self.n

    def tangent_space(self) -> Subspace:
        return Subspace(self.tangent_frame, self.ambient_dim)

    def radical(self) -> Subspace:
        return Subspace(self.rad_basis, self.ambient_dim)

    def screen(self) -> Subspace:
        return Subspace(self.screen_basis, self.ambient_dim)

    def coscreen(self) -> Subspace:
        return Subspace(self.coscreen_basis, self.ambient_dim)

    def ltr(self) -> Subspace:
        return Subspace(self.ltr_basis, self.ambient_dim)

    def validate(self, space: AmbientSpace) -> None:
        """Check every structural relation exactly; raises on any failure."""
        g = space.metric.pairing
        r = self.r
        if len(self.screen_basis) != self.m - r:
            raise MllError("screen dimension is not m - r")
        if len(self.coscreen_basis) != self.n - r:
            raise MllError("co-screen dimension is not n - r")
        if len(self.ltr_basis) != r:
            raise MllError("transversal rank is not r")
        for i, xi in enumerate(self.rad_basis):
            for v in self.tangent_frame:
                if g(xi, v) != 0:
                    raise MllError("radical vector is not ambient-orthogonal to TN")
        for i, xi in enumerate(self.rad_basis):
            for j, nj in enumerate(self.ltr_basis):
                want = 1 if i == j else 0
                if g(xi, nj) != want:
                    raise MllError("duality pairing g(xi_i, N_j) != delta_ij")
        for i, ni in enumerate(self.ltr_basis):
            for j, nj in enumerate(self.ltr_basis):
                if g(ni, nj) != 0:
                    raise MllError("transversal frame is not totally null")
            for s in self.screen_basis:
                if g(ni, s) != 0:
                    raise MllError("transversal frame is not orthogonal to the screen")
            for w in self.coscreen_basis:
                if g(ni, w) != 0:
                    raise MllError("transversal frame is not orthogonal to the co-screen")
        for w in self.coscreen_basis:
            for v in self.tangent_frame:
                if g(w, v) != 0:
                    raise MllError("co-screen vector is not normal to TN")
        union = (
            list(self.screen_basis)
            + list(self.rad_basis)
            + list(self.ltr_basis)
            + list(self.coscreen_basis)
        )
        if linalg.rank(union) != self.ambient_dim:
            raise MllError("bundle bases do not reconstruct the ambient space")
        metric = space.metric
        if not linalg.is_nondegenerate(self.screen(), metric):
            raise MllError("screen is degenerate")
        if not linalg.is_nondegenerate(self.coscreen(), metric):
            raise MllError("co-screen is degenerate")


class Classification:
    """Case classification by (r, m, n), plus the structure kind if known."""

    __slots__ = ("kind", "structure_kind", "r", "m", "n")

    def __init__(self, kind: str, r: int, m: int, n: int, structure_kind=None):
        self.kind = kind
        self.structure_kind = structure_kind
        self.r = r
        self.m = m
        self.n = n

    def __repr__(self):
        return (
            f"Classification({self.kind!r}, r={self.r}, m={self.m}, n={self.n},"
            f" structure_kind={self.structure_kind!r})"
        )


def classify(decomp: BundleDecomposition) -> Classification:
    r, m, n = decomp.r, decomp.m, decomp.n
    if r < m and r < n:
        kind = f"{r}-lightlike"
    elif r == n and r < m:
        kind = "co-isotropic"
    elif r == m and r < n:
        kind = "isotropic"
    else:
        kind = "totally-lightlike"
    return Classification(kind, r, m, n)


# -- construction ---------------------------------------------------------------


def _greedy_complement(seed, candidates, base):
    """Extend `seed` with candidates until span(base + picked) stops growing.

    Every accepted vector increases the rank over base; vectors in `seed`
    must all be accepted, otherwise None is returned for the failing index.
    """
    picked = []
    stacked = [list(v) for v in base]
    cur = linalg.rank(stacked) if stacked else 0
    for v in seed:
        stacked.append(list(v))
        nr = linalg.rank(stacked)
        if nr <= cur:
            return None, len(picked)
        cur = nr
        picked.append(tuple(v))
    for v in candidates:
        stacked.append(list(v))
        nr = linalg.rank(stacked)
        if nr > cur:
            cur = nr
            picked.append(tuple(v))
        else:
            stacked.pop()
    return picked, None


def _nullspace_of_pairing(space, rows, ambient_dim):
    """Basis of {v : g(row_i, v) = 0}, the whole space if rows is empty."""
    one = space.structure.matrix[0][0].one()
    if not rows:
        return list(linalg.full_space(ambient_dim, one).basis)
    eps = space.metric.signature.entries
    matrix = [[row[k] * eps[k] for k in range(ambient_dim)] for row in rows]
    return linalg.nullspace(matrix)


def build_decomposition(space: AmbientSpace, tangent_frame, screen_hint=None,
                        point=None) -> BundleDecomposition:
    """Construct the full decomposition at a point (or symbolically).

    screen_hint is either a list of frame indices or a list of tangent
    ambient vectors; it may be shorter than the screen and is completed
    greedily in frame order.
    """
    frame = [tuple(v) for v in tangent_frame]
    m = len(frame)
    dim = space.dim
    if linalg.rank([list(v) for v in frame]) != m:
        raise MllError("tangent frame is linearly dependent")

    g = space.metric.pairing
    gram = linalg.gram(space.metric, frame)
    rad_coeffs = linalg.nullspace(gram)
    r = len(rad_coeffs)
    if r == 0:
        raise NotLightlike(
            "induced metric is non-degenerate; this tool handles lightlike "
            "submanifolds only"
        )
    zero = frame[0][0].zero()
    zvec = tuple(zero for _ in range(dim))
    rad_basis = []
    for c in rad_coeffs:
        acc = zvec
        for coeff, z in zip(c, frame):
            acc = linalg.vadd(acc, linalg.vscale(coeff, z))
        rad_basis.append(acc)

    # screen: any complement of the radical inside TN is automatically
    # non-degenerate (the induced form descends to TN/Rad non-degenerately)
    seed = []
    if screen_hint is not None:
        tangent = Subspace(tuple(frame), dim)
        for item in screen_hint:
            if isinstance(item, int):
                if not 0 <= item < m:
                    raise DegenerateScreenHint(f"frame index {item} out of range")
                seed.append(frame[item])
            else:
                v = tuple(item)
                if not tangent.contains(v):
                    raise DegenerateScreenHint("hinted screen vector is not tangent")
                seed.append(v)
    screen_basis, bad = _greedy_complement(seed, frame, rad_basis)
    if screen_basis is None:
        raise DegenerateScreenHint(
            f"hinted screen vector #{bad} is dependent modulo the radical"
        )
    if len(screen_basis) != m - r:
        raise MllError("screen completion failed")  # unreachable

    # normal bundle TN-perp and its complement of the radical
    normal_basis = _nullspace_of_pairing(space, frame, dim)
    coscreen_basis, _ = _greedy_complement([], normal_basis, rad_basis)

    # V = screen-perp meet coscreen-perp, dimension 2r, contains the radical
    v_basis = _nullspace_of_pairing(space, list(screen_basis) + list(coscreen_basis), dim)
    if len(v_basis) != 2 * r:
        raise MllError("transversal ambient block has wrong dimension")

    # solve g(xi_i, w) = delta_ij for w in V-coordinates
    pairing = [[g(xi, v) for v in v_basis] for xi in rad_basis]
    w_vectors = []
    for j in range(r):
        rhs = [frame[0][0].one() if i == j else zero for i in range(r)]
        coeffs = linalg.solve(pairing, rhs)
        acc = zvec
        for c, v in zip(coeffs, v_basis):
            acc = linalg.vadd(acc, linalg.vscale(c, v))
        w_vectors.append(acc)

    half = Fraction(1, 2)
    ltr_basis = []
    for i in range(r):
        acc = w_vectors[i]
        for j in range(r):
            gij = g(w_vectors[i], w_vectors[j])
            acc = linalg.vsub(acc, linalg.vscale(gij * half, rad_basis[j]))
        ltr_basis.append(acc)

    decomp = BundleDecomposition(
        point, frame, rad_basis, screen_basis, coscreen_basis, ltr_basis
    )
    decomp.validate(space)
    return decomp


# -- resolution -------------------------------------------------------------------


class Components:
    """Ambient vector split along screen + radical + ltr + co-screen."""

    __slots__ = ("screen", "radical", "ltr", "coscreen")

    def __init__(self, screen, radical, ltr, coscreen):
        self.screen = screen
        self.radical = radical
        self.ltr = ltr
        self.coscreen = coscreen

    def tangent(self):
        return linalg.vadd(self.screen, self.radical)

    def total(self):
        return linalg.vadd(self.tangent(), linalg.vadd(self.ltr, self.coscreen))


class Resolver:
    """Pre-inverted change of basis for repeated resolutions at one point."""

    __slots__ = ("decomp", "blocks", "basis", "inv", "zvec")

    def __init__(self, decomp: BundleDecomposition):
        self.decomp = decomp
        self.blocks = [
            list(decomp.screen_basis),
            list(decomp.rad_basis),
            list(decomp.ltr_basis),
            list(decomp.coscreen_basis),
        ]
        self.basis = [vec for block in self.blocks for vec in block]
        dim = decomp.ambient_dim
        one = self.basis[0][0].one()
        zero = one.zero()
        aug = [
            [self.basis[j][i] for j in range(dim)]
            + [one if i == j else zero for j in range(dim)]
            for i in range(dim)
        ]
        red, pivots = linalg.rref(aug)
        if pivots != list(range(dim)):
            raise MllError("bundle basis matrix is singular")
        self.inv = [row[dim:] for row in red]
        self.zvec = tuple(zero for _ in range(dim))
        # one-time exactness proof: inv really is the inverse, so every
        # later resolution re-sums to its input identically
        matrix = [[self.basis[j][i] for j in range(dim)] for i in range(dim)]
        prod = linalg.mat_mul(matrix, self.inv)
        for i in range(dim):
            for j in range(dim):
                if prod[i][j] != (1 if i == j else 0):
                    raise MllError("bundle basis inversion failed")

    def coefficients(self, v):
        return linalg.mat_vec(self.inv, list(v))

    def resolve(self, v) -> Components:
        coeffs = self.coefficients(v)
        parts = []
        k = 0
        for block in self.blocks:
            acc = self.zvec
            for vec in block:
                if coeffs[k] != 0:
                    acc = linalg.vadd(acc, linalg.vscale(coeffs[k], vec))
                k += 1
            parts.append(acc)
        return Components(*parts)


def resolve(decomp: BundleDecomposition, v) -> Components:
    """Split an ambient vector along the four bundle blocks, exactly."""
    out = Resolver(decomp).resolve(v)
    if out.total() != tuple(v):
        raise AssertionError("resolution does not re-sum to the input")
    return out


# -- invariance and screen semi-invariance reports ---------------------------------


class InvarianceReport:
    """J-invariance flags of the four bundles, and the resulting kind."""

    __slots__ = ("flags", "structure_kind")

    def __init__(self, flags: dict, structure_kind: str):
        self.flags = flags
        self.structure_kind = structure_kind


def invariance_report(space: AmbientSpace, decomp: BundleDecomposition) -> InvarianceReport:
    dim = decomp.ambient_dim
    J = space.structure

    def inv(basis):
        sub = Subspace(basis, dim)
        return subspace_rel(image_of(J, sub), sub).kind == "equal"

    flags = {
        "screen": inv(decomp.screen_basis),
        "radical": inv(decomp.rad_basis),
        "ltr": inv(decomp.ltr_basis),
        "coscreen": inv(decomp.coscreen_basis),
    }
    kind = "invariant" if flags["screen"] and flags["radical"] else "generic"
    if kind == "invariant" and not (flags["ltr"] and flags["coscreen"]):
        # consequence of invariance of the tangent pair; failure means the
        # construction itself is broken
        raise MllError("invariant instance with non-invariant transversal bundles")
    return InvarianceReport(flags, kind)


class ScreenSplit:
    """The refinement S(TN) = L0 perp (L1 + L2), L = L0 perp Rad perp L1."""

    __slots__ = ("L0", "L1", "L2", "L", "prop_4_1", "prop_4_2")

    def __init__(self, L0, L1, L2, L, prop_4_1: bool, prop_4_2: bool):
        self.L0 = L0
        self.L1 = L1
        self.L2 = L2
        self.L = L
        self.prop_4_1 = prop_4_1
        self.prop_4_2 = prop_4_2

    @property
    def dims(self):
        return (self.L0.dim, self.L1.dim, self.L2.dim)


def ssi_conditions(space: AmbientSpace, decomp: BundleDecomposition):
    """The two defining containments: J(Rad) <= S(TN) and J(ltr) <= S(TN)."""
    dim = decomp.ambient_dim
    screen = decomp.screen()
    J = space.structure
    c1 = subspace_rel(image_of(J, decomp.radical()), screen).kind in ("contained", "equal")
    c2 = subspace_rel(image_of(J, decomp.ltr()), screen).kind in ("contained", "equal")
    return c1, c2


def build_screen_split(space: AmbientSpace, decomp: BundleDecomposition) -> ScreenSplit:
    dim = decomp.ambient_dim
    J = space.structure
    L1 = image_of(J, decomp.radical())
    L2 = image_of(J, decomp.ltr())
    screen = decomp.screen()
    l1l2 = Subspace.span(list(L1.basis) + list(L2.basis), dim)
    if l1l2.dim != 2 * decomp.r:
        raise MllError("J(Rad) and J(ltr) overlap; split is not direct")
    L0 = linalg.ortho_complement(l1l2, space.metric, screen)
    if L0.dim != screen.dim - 2 * decomp.r:
        raise MllError("screen refinement has wrong dimensions")
    if not linalg.is_nondegenerate(L0, space.metric):
        raise MllError("L0 is degenerate")
    L = Subspace.span(
        list(L0.basis) + list(decomp.rad_basis) + list(L1.basis), dim
    )
    if L.dim != L0.dim + 2 * decomp.r:
        raise MllError("invariant part L has wrong dimension")
    # TN = L (+) L2
    tn = Subspace.span(list(L.basis) + list(L2.basis), dim)
    if tn.dim != decomp.m or subspace_rel(tn, decomp.tangent_space()).kind != "equal":
        raise MllError("L (+) L2 does not reconstruct TN")
    prop41 = subspace_rel(image_of(J, L0), L0).kind == "equal" if L0.dim else True
    prop42 = (
        subspace_rel(image_of(J, decomp.coscreen()), decomp.coscreen()).kind == "equal"
        if decomp.coscreen_basis
        else True
    )
    if not (prop41 and prop42):
        raise MllError("screen split invariance properties fail; construction bug")
    return ScreenSplit(L0, L1, L2, L, prop41, prop42)


class SSIReport:
    """Screen semi-invariance report, optionally after the canonical repair."""

    __slots__ = ("cond_4_1", "cond_4_2", "holds", "split", "decomp", "repaired")

    def __init__(self, cond_4_1, cond_4_2, holds, split, decomp, repaired):
        self.cond_4_1 = cond_4_1
        self.cond_4_2 = cond_4_2
        self.holds = holds
        self.split = split
        self.decomp = decomp
        self.repaired = repaired


def repair_to_screen_semi_invariant(space: AmbientSpace, decomp: BundleDecomposition):
    """Rebuild screen and transversal so that both map into the screen under J.

    The new transversal frame is found constructively: solve the linear
    dual/orthogonality constraints for each N_j, then correct the quadratic
    conditions g(N_j, N_j) = 0 and g(J N_i, N_j) = 0 by shifts along xi_i and
    J xi_i, whose effects on those quantities are exactly linear.  The screen
    is the orthogonal complement of the new frame inside TN; it contains
    J(Rad) and J(ltr) by construction.  Returns None when the necessary
    linear conditions already fail (no screen can work).
    """
    g = space.metric.pairing
    J = space.structure
    dim = decomp.ambient_dim
    r = decomp.r
    tangent = decomp.tangent_space()
    rad = list(decomp.rad_basis)
    jxi = [J.apply(xi) for xi in rad]

    # necessary conditions for any screen semi-invariant choice
    for v in jxi:
        if not tangent.contains(v):
            return None
    for xi in rad:
        for w in jxi:
            if g(xi, w) != 0:
                return None
    if linalg.rank([list(v) for v in rad + jxi]) != 2 * r:
        return None
    if decomp.m - r < 2 * r:
        return None

    cos = list(decomp.coscreen_basis)
    jcos = [J.apply(w) for w in cos]
    one = rad[0][0].one()
    zero = one.zero()
    q = space.params.q
    half = Fraction(1, 2)

    # linear constraints shared by every N_j
    rows = rad + jxi + cos + jcos
    eps = space.metric.signature.entries
    matrix = [[row[k] * eps[k] for k in range(dim)] for row in rows]

    new_ltr = []
    for j in range(r):
        rhs = [one if i == j else zero for i in range(r)]
        rhs += [zero] * (len(rows) - r)
        try:
            nj = list(linalg.solve(matrix, rhs))
        except linalg.NoSolution:
            return None
        # cross conditions against already-fixed partners, then own conditions;
        # each shift leaves every previously fixed quantity unchanged
        for i, ni in enumerate(new_ltr):
            delta = -(g(J.apply(ni), tuple(nj)) / q)
            nj = list(linalg.vadd(tuple(nj), linalg.vscale(delta, jxi[i])))
            gamma = -g(ni, tuple(nj))
            nj = list(linalg.vadd(tuple(nj), linalg.vscale(gamma, rad[i])))
        mu = -(g(tuple(nj), J.apply(tuple(nj))) / (2 * q))
        nj = list(linalg.vadd(tuple(nj), linalg.vscale(mu, jxi[j])))
        lam = -(g(tuple(nj), tuple(nj)) * half)
        nj = list(linalg.vadd(tuple(nj), linalg.vscale(lam, rad[j])))
        new_ltr.append(tuple(nj))

    # screen = orthogonal complement of the new transversal frame inside TN
    pairing = [[g(nj, z) for z in decomp.tangent_frame] for nj in new_ltr]
    coeffs = linalg.nullspace(pairing)
    zvec = tuple(zero for _ in range(dim))
    new_screen = []
    for c in coeffs:
        acc = zvec
        for coeff, z in zip(c, decomp.tangent_frame):
            acc = linalg.vadd(acc, linalg.vscale(coeff, z))
        new_screen.append(acc)

    repaired = BundleDecomposition(
        decomp.point,
        decomp.tangent_frame,
        decomp.rad_basis,
        new_screen,
        decomp.coscreen_basis,
        new_ltr,
    )
    repaired.validate(space)
    c1, c2 = ssi_conditions(space, repaired)
    if not (c1 and c2):
        return None
    return repaired


def screen_semi_invariant_report(space: AmbientSpace, decomp: BundleDecomposition,
                                 allow_repair: bool = True) -> SSIReport:
    c1, c2 = ssi_conditions(space, decomp)
    if c1 and c2:
        return SSIReport(c1, c2, True, build_screen_split(space, decomp), decomp, False)
    if allow_repair:
        repaired = repair_to_screen_semi_invariant(space, decomp)
        if repaired is not None:
            return SSIReport(
                True, True, True, build_screen_split(space, repaired), repaired, True
            )
    return SSIReport(c1, c2, False, None, decomp, False)
