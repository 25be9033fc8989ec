from __future__ import annotations

import random
from fractions import Fraction

import pytest

from mll import bundles
from mll.errors import NotSelfAdjoint, NotTangent, PolynomialViolation, WrongMode
from mll.linalg import AmbientMetric, Signature, Subspace, mat_mul, subspace_rel
from mll.scalar import MetallicScalar, make_params, sigma
from mll.structure import (
    AmbientSpace,
    build_structure,
    check_compat_identity,
    eigenprojectors,
    image_of,
    tangent_splittings,
)

from conftest import example1_frame, sc, space_r5_1, vec

R51 = AmbientMetric(Signature([-1, 1, 1, 1, 1]))


def rand_vec(rng, params, dim):
    return tuple(
        MetallicScalar(
            Fraction(rng.randint(-5, 5)), Fraction(rng.randint(-5, 5)), params
        )
        for _ in range(dim)
    )


def nondiagonal_structure(params):
    """A symmetric non-diagonal operator with the right spectrum, built from
    an exact rotation (3/5, 4/5) in the first two coordinates."""
    s = sigma(params)
    t = s.conjugate()
    c2, cs, s2 = Fraction(9, 25), Fraction(12, 25), Fraction(16, 25)
    a = s * c2 + t * s2
    b = (s - t) * cs
    d = s * s2 + t * c2
    z, o = s.zero(), s.one()
    matrix = [
        [a, b, z],
        [b, d, z],
        [z, z, s],
    ]
    metric = AmbientMetric(Signature([1, 1, 1]))
    return build_structure(params, matrix, metric), metric


class TestBuildStructure:
    def test_example1_pattern_valid(self, golden):
        space = space_r5_1(golden)
        assert space.structure.dim == 5

    def test_sigma_identity_valid(self, golden):
        metric = AmbientMetric(Signature([-1, 1, 1]))
        J = build_structure(golden, ["sigma", "sigma", "sigma"], metric)
        s = sigma(golden)
        assert J.matrix[0][0] == s

    def test_identity_matrix_rejected(self, golden):
        metric = AmbientMetric(Signature([1, 1]))
        ident = [[sc(golden, 1), sc(golden, 0)], [sc(golden, 0), sc(golden, 1)]]
        with pytest.raises(PolynomialViolation):
            build_structure(golden, ident, metric)

    def test_not_self_adjoint_rejected(self, golden):
        # right spectrum, wrong symmetry for the definite metric
        s = sigma(golden)
        t = s.conjugate()
        z = s.zero()
        m = [[s, (s - t), z], [z, t, z], [z, z, s]]
        metric = AmbientMetric(Signature([1, 1, 1]))
        with pytest.raises(NotSelfAdjoint):
            build_structure(golden, m, metric)

    def test_nondiagonal_valid(self, golden):
        J, metric = nondiagonal_structure(golden)
        p, q = golden.p, golden.q
        jj = mat_mul(J.matrix, J.matrix)
        for i in range(3):
            for j in range(3):
                expect = J.matrix[i][j] * p + (q if i == j else 0)
                assert jj[i][j] == expect


class TestCompatIdentity:
    def test_random_vectors(self, golden):
        space = space_r5_1(golden)
        rng = random.Random(2)
        for _ in range(40):
            u = rand_vec(rng, golden, 5)
            v = rand_vec(rng, golden, 5)
            assert check_compat_identity(space, u, v)

    def test_zero_vector(self, golden):
        space = space_r5_1(golden)
        z = vec(golden, 0, 0, 0, 0, 0)
        assert check_compat_identity(space, z, vec(golden, 1, 2, 3, 4, 5))

    def test_example2_structure_first_axis(self, golden):
        metric = AmbientMetric(Signature([-1, 1, -1, 1, 1]))
        J = build_structure(
            golden, ["p-sigma", "sigma", "sigma", "sigma", "p-sigma"], metric
        )
        space = AmbientSpace(5, metric, J)
        e1 = vec(golden, 1, 0, 0, 0, 0)
        assert check_compat_identity(space, e1, e1)


class TestEigenprojectors:
    def test_example1_pattern(self, golden):
        space = space_r5_1(golden)
        p_sig, p_conj = eigenprojectors(space.structure)
        for i in range(5):
            for j in range(5):
                expect = 1 if (i == j and i < 3) else 0
                assert p_sig[i][j] == expect

    def test_sigma_identity(self, golden):
        metric = AmbientMetric(Signature([1, 1]))
        J = build_structure(golden, ["sigma", "sigma"], metric)
        p_sig, p_conj = eigenprojectors(J)
        assert p_sig[0][0] == 1 and p_sig[1][1] == 1
        assert all(p_conj[i][j] == 0 for i in range(2) for j in range(2))

    @pytest.mark.parametrize("pq", [(1, 1), (2, 1), (3, 1)])
    def test_projector_identities(self, pq):
        params = make_params(*pq)
        J, metric = nondiagonal_structure(params)
        p_sig, p_conj = eigenprojectors(J)
        s = sigma(params)
        t = s.conjugate()
        n = 3
        assert mat_mul(p_sig, p_sig) == p_sig
        assert mat_mul(p_conj, p_conj) == p_conj
        for i in range(n):
            for j in range(n):
                assert p_sig[i][j] + p_conj[i][j] == (1 if i == j else 0)
                assert p_sig[i][j] * s + p_conj[i][j] * t == J.matrix[i][j]

    def test_eigenspaces_orthogonal(self, golden):
        J, metric = nondiagonal_structure(golden)
        p_sig, p_conj = eigenprojectors(J)
        rng = random.Random(9)
        from mll.linalg import mat_vec

        for _ in range(20):
            u = rand_vec(rng, golden, 3)
            v = rand_vec(rng, golden, 3)
            pu = mat_vec(p_sig, u)
            qv = mat_vec(p_conj, v)
            assert metric.pairing(pu, qv) == 0


class TestImageOf:
    def test_radical_invariant(self, golden):
        space = space_r5_1(golden)
        frame = example1_frame(golden)
        rad = Subspace([frame[2]], 5)
        img = image_of(space.structure, rad)
        assert subspace_rel(img, rad).kind == "equal"

    def test_zero_space(self, golden):
        space = space_r5_1(golden)
        img = image_of(space.structure, Subspace([], 5))
        assert img.dim == 0

    def test_example2_radical_image(self, golden):
        metric = AmbientMetric(Signature([-1, 1, -1, 1, 1]))
        J = build_structure(
            golden, ["p-sigma", "sigma", "sigma", "sigma", "p-sigma"], metric
        )
        s = sigma(golden)
        xi = (sc(golden, 1), -s, s, sc(golden, 0), sc(golden, 1))
        img = image_of(J, Subspace([xi], 5))
        t = s.conjugate()
        expect = (t, -(s * s), s * s, sc(golden, 0), t)
        assert subspace_rel(img, Subspace([expect], 5)).kind == "equal"
        # tangency of the image: v5 = v1 + sigma v2 + sigma v3
        v = img.basis[0]
        assert v[4] == v[0] + s * v[1] + s * v[2]

    def test_dimension_preserved_random(self, golden):
        space = space_r5_1(golden)
        rng = random.Random(31)
        for _ in range(20):
            vecs = [rand_vec(rng, golden, 5) for _ in range(rng.randint(1, 4))]
            sub = Subspace.span(vecs, 5)
            assert image_of(space.structure, sub).dim == sub.dim


class TestTangentSplittings:
    def test_example1_split(self, golden):
        space = space_r5_1(golden)
        frame = example1_frame(golden)
        dec = bundles.build_decomposition(space, frame)
        z1, z3 = frame[0], frame[2]
        u = tuple(a + b for a, b in zip(z1, z3))
        rep = tangent_splittings(space, dec, u, "invariant")
        s = sigma(golden)
        assert rep.parts["TU"] == z1
        assert rep.parts["QU"] == z3
        assert rep.parts["SU"] == tuple(s * x for x in z1)
        assert rep.parts["LU"] == tuple(s * x for x in z3)
        assert all(rep.memberships.values())

    def test_zero_vector(self, golden):
        space = space_r5_1(golden)
        dec = bundles.build_decomposition(space, example1_frame(golden))
        z = vec(golden, 0, 0, 0, 0, 0)
        rep = tangent_splittings(space, dec, z, "invariant")
        assert all(all(x == 0 for x in part) for part in rep.parts.values())

    def test_not_tangent(self, golden):
        space = space_r5_1(golden)
        dec = bundles.build_decomposition(space, example1_frame(golden))
        with pytest.raises(NotTangent):
            tangent_splittings(space, dec, vec(golden, 0, 0, 0, 0, 1), "invariant")

    def test_screen_mode_radical_vector(self, golden):
        metric = AmbientMetric(Signature([-1, 1, -1, 1, 1]))
        J = build_structure(
            golden, ["p-sigma", "sigma", "sigma", "sigma", "p-sigma"], metric
        )
        space = AmbientSpace(5, metric, J)
        s = sigma(golden)
        z, o = s.zero(), s.one()
        frame = [(o, z, z, z, o), (z, o, z, z, s), (z, z, o, z, s), (z, z, z, o, z)]
        dec = bundles.build_decomposition(space, frame)
        rep_ssi = bundles.screen_semi_invariant_report(space, dec)
        assert rep_ssi.holds and rep_ssi.repaired
        xi = rep_ssi.decomp.rad_basis[0]
        out = tangent_splittings(
            space, rep_ssi.decomp, xi, "screen-semi-invariant", split=rep_ssi.split
        )
        assert out.parts["BU"] == xi
        assert all(x == 0 for x in out.parts["RU"])
        assert out.memberships["R1U"]
        # the radical direction has no J(ltr) part, so R1U vanishes
        assert all(x == 0 for x in out.parts["R1U"])

    def test_screen_mode_reports_ltr_membership(self, golden):
        metric = AmbientMetric(Signature([-1, 1, -1, 1, 1]))
        J = build_structure(
            golden, ["p-sigma", "sigma", "sigma", "sigma", "p-sigma"], metric
        )
        space = AmbientSpace(5, metric, J)
        s = sigma(golden)
        z, o = s.zero(), s.one()
        frame = [(o, z, z, z, o), (z, o, z, z, s), (z, z, o, z, s), (z, z, z, o, z)]
        dec = bundles.build_decomposition(space, frame)
        rep_ssi = bundles.screen_semi_invariant_report(space, dec)
        u = rep_ssi.split.L2.basis[0]
        out = tangent_splittings(
            space, rep_ssi.decomp, u, "screen-semi-invariant", split=rep_ssi.split
        )
        # the image of a J(ltr) direction mixes J(ltr) and ltr parts
        assert out.memberships["R1U"]
        assert not out.memberships["R1U_in_ltr"]

    def test_wrong_mode(self, golden):
        metric = AmbientMetric(Signature([-1, 1, -1, 1, 1]))
        J = build_structure(
            golden, ["p-sigma", "sigma", "sigma", "sigma", "p-sigma"], metric
        )
        space = AmbientSpace(5, metric, J)
        s = sigma(golden)
        z, o = s.zero(), s.one()
        frame = [(o, z, z, z, o), (z, o, z, z, s), (z, z, o, z, s), (z, z, z, o, z)]
        dec = bundles.build_decomposition(space, frame)
        # J U2 is not even tangent, so the invariant splitting cannot hold
        with pytest.raises(WrongMode):
            tangent_splittings(space, dec, frame[1], "invariant")
        with pytest.raises(WrongMode):
            tangent_splittings(space, dec, frame[0], "screen-semi-invariant")
