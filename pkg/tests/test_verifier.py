from __future__ import annotations

import pytest

from mll import verifier
from mll.calculus import FrameCalculus, ImmersionInstance
from mll.linalg import AmbientMetric, Signature
from mll.manifest import bundled_fixture, load_manifest
from mll.poly import Poly
from mll.scalar import make_params
from mll.structure import AmbientSpace, build_structure


def calc_for(name, screen_hint="manifest"):
    m = load_manifest(bundled_fixture(name))
    hint = m.screen_hint if screen_hint == "manifest" else screen_hint
    return FrameCalculus(m.instance, screen_hint=hint)


@pytest.fixture(scope="module")
def calc_e1():
    return calc_for("example1")


@pytest.fixture(scope="module")
def calc_e2():
    return calc_for("example2")


@pytest.fixture(scope="module")
def calc_e2_repaired():
    return calc_for("example2", screen_hint=None)


@pytest.fixture(scope="module")
def calc_cone():
    return calc_for("cone")


@pytest.fixture(scope="module")
def calc_tl():
    return calc_for("totally_lightlike")


def flat_chart_instance(points=(("0", "0", "0"), ("1", "2", "-1"))):
    """A 3-chart lightlike instance used for bracket fixtures: the image is a
    degenerate linear subspace, so arbitrary chart fields are available."""
    params = make_params(1, 1)
    metric = AmbientMetric(Signature([-1, 1, 1, 1]))
    J = build_structure(params, ["sigma", "sigma", "sigma", "sigma"], metric)
    space = AmbientSpace(4, metric, J)
    u1 = Poly.variable(0, 3, params)
    phi = (u1, u1, Poly.variable(1, 3, params), Poly.variable(2, 3, params))
    return ImmersionInstance(space, 3, phi, sample_points=points), params


class TestIntegrableAt:
    def test_coordinate_fields(self):
        inst, params = flat_chart_instance()
        calc = FrameCalculus(inst)
        fields = [calc.coordinate_field(i) for i in range(3)]
        rows = verifier.integrable_at(calc, fields)
        assert all(r["ok"] for r in rows)

    def test_closed_pair(self):
        # the pair spans a genuine plane only where u1 != 0
        inst, params = flat_chart_instance(points=(("1", "0", "0"), ("2", "1", "-1")))
        calc = FrameCalculus(inst)
        one = Poly.constant(1, 3, params)
        zero = Poly.constant(0, 3, params)
        u1 = Poly.variable(0, 3, params)
        f1 = calc.coordinate_field(0)
        f2 = calc.chart_field("u1 d/du2", (zero, u1, zero))
        rows = verifier.integrable_at(calc, [f1, f2])
        assert all(r["ok"] for r in rows)

    def test_contact_pair_not_closed(self):
        inst, params = flat_chart_instance()
        calc = FrameCalculus(inst)
        one = Poly.constant(1, 3, params)
        zero = Poly.constant(0, 3, params)
        u2 = Poly.variable(1, 3, params)
        # d/du1 + u2 d/du3 and d/du2: bracket is -d/du3, outside the span
        f1 = calc.chart_field("contact", (one, zero, u2))
        f2 = calc.coordinate_field(1)
        rows = verifier.integrable_at(calc, [f1, f2])
        assert all(not r["ok"] for r in rows)


class TestStructureLemmas:
    def test_example1_lemma_holds(self, calc_e1):
        rep = verifier.verify_structure_lemmas(calc_e1)
        by_id = {r.theorem_id: r for r in rep}
        assert by_id["lemma3.1"].verdict == "consistent"
        assert all(r.rhs for r in by_id["lemma3.1"].rows)
        assert by_id["prop4.3"].verdict == "not-applicable"

    def test_cone_lemma_holds(self, calc_cone):
        rep = verifier.verify_structure_lemmas(calc_cone)
        by_id = {r.theorem_id: r for r in rep}
        assert by_id["lemma3.1"].verdict == "consistent"
        assert all(r.rhs for r in by_id["lemma3.1"].rows)

    def test_example2_prop_holds(self, calc_e2):
        rep = verifier.verify_structure_lemmas(calc_e2)
        by_id = {r.theorem_id: r for r in rep}
        assert by_id["prop4.3"].verdict == "consistent"
        assert all(r.rhs for r in by_id["prop4.3"].rows)
        assert by_id["lemma3.1"].verdict == "not-applicable"

    def test_example2_repaired_prop_holds(self, calc_e2_repaired):
        assert calc_e2_repaired.screen_source == "repaired"
        rep = verifier.verify_structure_lemmas(calc_e2_repaired)
        by_id = {r.theorem_id: r for r in rep}
        assert by_id["prop4.3"].verdict == "consistent"


class TestTheoremConsistency:
    @pytest.mark.parametrize("tid", ["3.1", "3.2", "3.3", "3.4", "3.5"])
    def test_example1(self, calc_e1, tid):
        (rep,) = verifier.verify(calc_e1, [tid])
        assert rep.verdict == "consistent"
        # linear instance: every operator side holds with zero values
        assert all(r.lhs and r.rhs for r in rep.rows)

    @pytest.mark.parametrize("tid", ["3.1", "3.2", "3.3", "3.4", "3.5"])
    def test_cone(self, calc_cone, tid):
        (rep,) = verifier.verify(calc_cone, [tid])
        assert rep.verdict == "consistent"

    def test_cone_3_3_both_sides_false(self, calc_cone):
        (rep,) = verifier.verify(calc_cone, ["3.3"])
        # the bent instance has a genuinely non-metric induced connection
        assert all(not r.lhs and not r.rhs for r in rep.rows)

    @pytest.mark.parametrize("tid", ["4.1", "4.2", "4.3", "4.4", "4.5", "4.6"])
    def test_example2(self, calc_e2, tid):
        (rep,) = verifier.verify(calc_e2, [tid])
        assert rep.verdict == "consistent"
        assert all(r.lhs and r.rhs for r in rep.rows)

    @pytest.mark.parametrize("tid", ["4.1", "4.4"])
    def test_example2_repaired(self, calc_e2_repaired, tid):
        (rep,) = verifier.verify(calc_e2_repaired, [tid])
        assert rep.verdict == "consistent"

    @pytest.mark.parametrize("tid", ["3.1", "3.2", "3.3", "3.4", "3.5"])
    def test_totally_lightlike(self, calc_tl, tid):
        (rep,) = verifier.verify(calc_tl, [tid])
        assert rep.verdict == "consistent"

    def test_not_applicable_cross_kinds(self, calc_e1, calc_e2):
        (rep,) = verifier.verify(calc_e1, ["4.1"])
        assert rep.verdict == "not-applicable"
        (rep,) = verifier.verify(calc_e2, ["3.1"])
        assert rep.verdict == "not-applicable"

    def test_unknown_id_rejected(self, calc_e1):
        with pytest.raises(Exception):
            verifier.verify(calc_e1, ["9.9"])


class TestGroupedEntryPoints:
    def test_integrability_group(self, calc_e1):
        reports = verifier.verify_integrability_theorems(calc_e1)
        ids = {r.theorem_id for r in reports}
        assert ids == {"3.1", "3.2", "4.1", "4.2", "4.3"}
        assert all(
            r.verdict == ("consistent" if r.theorem_id.startswith("3") else "not-applicable")
            for r in reports
        )

    def test_metric_connection_group(self, calc_cone):
        reports = verifier.verify_metric_connection_theorems(calc_cone)
        by_id = {r.theorem_id: r.verdict for r in reports}
        assert by_id == {"3.3": "consistent", "4.4": "not-applicable"}

    def test_foliation_group(self, calc_e2):
        reports = verifier.verify_foliation_theorems(calc_e2)
        by_id = {r.theorem_id: r.verdict for r in reports}
        assert by_id == {
            "3.4": "not-applicable", "3.5": "not-applicable",
            "4.5": "consistent", "4.6": "consistent",
        }

    def test_id_filtering(self, calc_e1):
        reports = verifier.verify_integrability_theorems(calc_e1, ids=("3.1", "4.4"))
        assert [r.theorem_id for r in reports] == ["3.1"]
