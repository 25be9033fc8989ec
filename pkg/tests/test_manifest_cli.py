from __future__ import annotations

import json
from pathlib import Path

import pytest

from mll.analysis import analyze
from mll.cli import main
from mll.errors import ManifestError
from mll.manifest import bundled_fixture, expand_checks, load_manifest
from mll.report import build_report, render_json, render_text

DATA = Path(__file__).parent / "data"


class TestLoadManifest:
    def test_example1_loads(self):
        m = load_manifest(bundled_fixture("example1"))
        assert m.space.dim == 5
        assert list(m.space.metric.signature.entries) == [-1, 1, 1, 1, 1]
        assert m.params.p == 1 and m.params.q == 1
        assert m.chart_dim == 3
        assert set(m.instance.named_frames) == {"Z1", "Z2", "Z3"}

    def test_signature_length_mismatch(self):
        with pytest.raises(ManifestError):
            load_manifest(str(DATA / "bad_signature.json"))

    def test_pythagorean_violation(self):
        with pytest.raises(ManifestError):
            load_manifest(str(DATA / "bad_pythagorean.json"))

    def test_bad_expression_reported_with_location(self):
        with pytest.raises(ManifestError) as err:
            load_manifest(str(DATA / "bad_expression.json"))
        assert "components[0]" in str(err.value)

    def test_missing_file(self):
        with pytest.raises(ManifestError):
            load_manifest(str(DATA / "no_such_file.json"))

    def test_unknown_check_id(self, tmp_path):
        doc = json.loads(Path(bundled_fixture("example1")).read_text())
        doc["checks"] = ["5.1"]
        bad = tmp_path / "m.json"
        bad.write_text(json.dumps(doc))
        with pytest.raises(ManifestError):
            load_manifest(str(bad))


class TestExpandChecks:
    def test_invariant_expansion(self):
        out = expand_checks(["all"], "invariant")
        assert "identities" in out and "3.1" in out and "lemma3.1" in out
        assert "4.1" not in out

    def test_ssi_expansion(self):
        out = expand_checks(["all"], "screen-semi-invariant")
        assert "prop4.3" in out and "4.6" in out and "3.1" not in out

    def test_explicit_ids_pass_through(self):
        assert expand_checks(["3.1", "3.1", "4.4"], "invariant") == ["3.1", "4.4"]


class TestCli:
    def test_analyze_example1_exit_0(self, capsys):
        code = main(["analyze", bundled_fixture("example1"), "--output", "json"])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert out["classification"]["kind"] == "1-lightlike"
        assert out["classification"]["structure_kind"] == "invariant"
        assert all(v for v in out["invariance"].values())

    def test_verify_example2_check_44(self, capsys):
        code = main([
            "verify", bundled_fixture("example2"), "--checks", "4.4",
            "--output", "json",
        ])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        rows = {c["id"]: c["status"] for c in out["checks"]}
        assert rows == {"4.4": "consistent"}

    def test_classify_nondegenerate_exit_3(self, capsys):
        code = main(["classify", str(DATA / "nondegenerate.json")])
        assert code == 3

    def test_bad_manifest_exit_2(self):
        assert main(["analyze", str(DATA / "bad_signature.json")]) == 2

    def test_bad_structure_exit_3(self):
        assert main(["analyze", str(DATA / "bad_structure.json")]) == 3

    def test_unknown_check_flag_exit_2(self):
        assert main(["verify", bundled_fixture("example1"), "--checks", "bogus"]) == 2

    def test_frames_text_output(self, capsys):
        code = main(["frames", bundled_fixture("example1")])
        assert code == 0
        out = capsys.readouterr().out
        assert "radical" in out and "ltr" in out

    def test_screen_hint_flag(self, capsys):
        code = main([
            "classify", bundled_fixture("example1"),
            "--screen-hint", "{\"indices\": [1, 0]}", "--output", "json",
        ])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert out["screen_source"] == "hint"

    def test_inapplicable_requested_id_yields_not_applicable(self, capsys):
        code = main([
            "verify", bundled_fixture("example1"), "--checks", "4.1",
            "--output", "json",
        ])
        assert code == 0
        out = json.loads(capsys.readouterr().out)
        assert out["checks"][0]["status"] == "not-applicable"

    def test_failed_check_exits_1(self, capsys, monkeypatch):
        import mll.cli as cli_mod

        real_analyze = cli_mod.analyze

        def broken(manifest, **kw):
            result = real_analyze(manifest, **kw)
            if result.identity_rows:
                result.identity_rows[0].status = "fail"
                result.failed = True
            return result

        monkeypatch.setattr(cli_mod, "analyze", broken)
        code = main(["analyze", bundled_fixture("example1"), "--output", "json"])
        assert code == 1


class TestGenericKind:
    def test_unrepairable_instance_reports_generic(self, tmp_path):
        # the radical image under J leaves the tangent space, so neither
        # structure kind applies; identities still run and pass
        doc = {
            "metallic": {"p": 1, "q": 1},
            "ambient": {"dim": 5, "signature": [-1, 1, -1, 1, 1]},
            "structure": {"J": ["p-sigma", "sigma", "sigma", "sigma", "p-sigma"]},
            "submanifold": {"chart_dim": 2, "components": ["u1", "u1", "u2", "0", "0"]},
            "sample_points": [["0", "0"], ["1", "-2"]],
            "checks": ["all", "3.1", "4.1"],
        }
        path = tmp_path / "generic.json"
        path.write_text(json.dumps(doc))
        m = load_manifest(str(path))
        result = analyze(m)
        assert result.classification.structure_kind == "generic"
        statuses = {}
        for row in result.identity_rows:
            statuses[row.id] = row.status
        assert all(v == "pass" for v in statuses.values())
        verdicts = {r.theorem_id: r.verdict for r in result.theorem_reports}
        assert verdicts == {"3.1": "not-applicable", "4.1": "not-applicable"}
        assert not result.failed


class TestReports:
    def test_determinism(self):
        m = load_manifest(bundled_fixture("example1"))
        r1 = render_json(build_report(analyze(m), "analyze"))
        m2 = load_manifest(bundled_fixture("example1"))
        r2 = render_json(build_report(analyze(m2), "analyze"))
        assert r1 == r2

    def test_text_and_json_share_scalar_strings(self):
        m = load_manifest(bundled_fixture("example1"))
        report = build_report(analyze(m), "analyze")
        text = render_text(report)
        for point in report["points"]:
            for basis in point["bases"].values():
                for v in basis:
                    assert ", ".join(v) in text

    def test_manifest_hash_tracks_bytes(self, tmp_path):
        doc = json.loads(Path(bundled_fixture("example1")).read_text())
        m1 = load_manifest(bundled_fixture("example1"))
        doc["sample_points"] = [["0", "0", "0"]]
        other = tmp_path / "m.json"
        other.write_text(json.dumps(doc))
        m2 = load_manifest(str(other))
        assert m1.sha256 != m2.sha256

    def test_example2_report_carries_discrepancy_note(self):
        m = load_manifest(bundled_fixture("example2"))
        report = build_report(analyze(m), "analyze")
        notes = {n["id"]: n for n in report["notes"]}
        assert "radical-mismatch" in notes
        assert notes["radical-mismatch"]["in_radical"] is False
