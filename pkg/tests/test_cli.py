"""End-to-end checks of the command line tool and its JSON codecs."""

import json
import subprocess
import sys

import pytest

from zgrass.cli import main
from zgrass.errors import ParseError
from zgrass.io import frac_str, mono_str, parse_frac, series_from_json
from zgrass.symfun import tvar

CUSP = {"kind": "point", "gens": [{"0": "1"}], "tail": 1, "window": [-8, 8]}
PENCIL = {"kind": "point", "gens": [{"-1": "1", "0": "1"}], "tail": 1,
          "window": [-8, 8]}
CURVE = {"kind": "curve", "ring_gens": [{"-2": "1"}, {"-3": "1"}],
         "label": "cusp semigroup", "window": [-8, 8]}
ALT = {"kind": "matrix", "entries": [
    ["0", "2", "-1", "3"], ["-2", "0", "4", "1"],
    ["1", "-4", "0", "5"], ["-3", "-1", "-5", "0"]]}
FAMILY = {"kind": "family", "flows": {"1": "a", "3": "a"}, "floor": -10}


def run(tmp_path, obj, *argv, capsys=None):
    path = tmp_path / "input.json"
    path.write_text(json.dumps(obj))
    code = main([argv[0], str(path), *argv[1:]])
    out = capsys.readouterr().out
    return code, json.loads(out)


def names(report, status):
    return [c["name"] for c in report["checks"] if c["status"] == status]


class TestFractions:
    def test_parse_forms(self):
        assert parse_frac("2/3") * 3 == 2
        assert parse_frac("-5") == -5
        assert parse_frac(7) == 7

    def test_rejects_floats_bools_and_poles(self):
        for bad in (1.5, True, "1/0", None, "x"):
            with pytest.raises(ParseError):
                parse_frac(bad)

    def test_decimal_strings_are_exact(self):
        assert parse_frac("0.5") * 2 == 1

    def test_always_keeps_denominator(self):
        assert frac_str(parse_frac("4/2")) == "2/1"

    def test_series_roundtrip(self):
        f = series_from_json({"-2": "1", "0": "3/2"})
        assert f.coeff(-2) == 1 and f.coeff(0) * 2 == 3

    def test_monomial_labels(self):
        m = (tvar(1) * tvar(1) * tvar(3, "s")).terms
        assert mono_str(next(iter(m))) == "s3 t1^2"


class TestCheck:
    def test_cusp_point(self, tmp_path, capsys):
        code, rep = run(tmp_path, CUSP, "check", capsys=capsys)
        assert code == 0 and rep["ok"]
        assert rep["report"]["isotropic"] and rep["report"]["parity"] == 1
        assert names(rep, "pass") == ["dual-charge", "biduality"]

    def test_pencil_not_invariant(self, tmp_path, capsys):
        code, rep = run(tmp_path, PENCIL, "check", capsys=capsys)
        assert code == 0
        assert rep["report"]["sigma_invariant"] is False
        assert rep["report"]["parity"] == 0

    def test_curve_closure(self, tmp_path, capsys):
        code, rep = run(tmp_path, CURVE, "check", capsys=capsys)
        assert code == 0
        assert rep["report"]["ring"] and rep["report"]["prym"]["member"]
        assert "ring-closed" in names(rep, "pass")

    def test_wrong_kind_is_an_error(self, tmp_path, capsys):
        code, rep = run(tmp_path, CURVE, "tau", capsys=capsys)
        assert code == 2 and "expects point" in rep["error"]

    def test_bad_rational_is_an_error(self, tmp_path, capsys):
        bad = {"kind": "point", "gens": [{"0": "1/0"}], "tail": 1}
        code, rep = run(tmp_path, bad, "check", capsys=capsys)
        assert code == 2 and "ParseError" in rep["error"]

    def test_mangled_json_is_an_error(self, tmp_path, capsys):
        path = tmp_path / "mangled.json"
        path.write_text("not json")
        assert main(["check", str(path)]) == 2
        assert "error" in json.loads(capsys.readouterr().out)


class TestReports:
    def test_tau_cusp(self, tmp_path, capsys):
        code, rep = run(tmp_path, CUSP, "tau", "--weight", "4", capsys=capsys)
        assert code == 0
        assert rep["report"]["tau"]["terms"] == {"t1": "1/1"}
        assert "flow-consistency" in names(rep, "pass")

    def test_deterministic_output(self, tmp_path, capsys):
        _, first = run(tmp_path, CUSP, "tau", capsys=capsys)
        _, second = run(tmp_path, CUSP, "tau", capsys=capsys)
        assert first == second

    def test_baker_blocks(self, tmp_path, capsys):
        code, rep = run(tmp_path, CUSP, "baker", "--weight", "3",
                        capsys=capsys)
        assert code == 0 and len(rep["report"]["blocks"]) == 3
        assert "duality-residues" in names(rep, "pass")

    def test_bilinear_tracks_invariance(self, tmp_path, capsys):
        code, rep = run(tmp_path, PENCIL, "bilinear", "--weight", "4",
                        capsys=capsys)
        assert code == 0
        assert rep["report"]["sigma_invariant"] is False
        assert rep["report"]["second_residual"]["terms"]
        assert "sign-residues-match-invariance" in names(rep, "pass")

    def test_out_file(self, tmp_path, capsys):
        src = tmp_path / "point.json"
        src.write_text(json.dumps(CUSP))
        dst = tmp_path / "report.json"
        code = main(["check", str(src), "--out", str(dst)])
        assert code == 0 and capsys.readouterr().out == ""
        assert json.loads(dst.read_text())["ok"]


class TestHierarchyCommand:
    def test_cusp_passes(self, tmp_path, capsys):
        code, rep = run(tmp_path, CUSP, "hierarchy", "--maxsize", "2",
                        capsys=capsys)
        assert code == 0
        verdicts = rep["report"]["verdicts"]
        assert {v["verdict"] for v in verdicts.values()} == {"pass"}

    def test_pencil_fails(self, tmp_path, capsys):
        code, rep = run(tmp_path, PENCIL, "hierarchy", "--maxsize", "2",
                        capsys=capsys)
        assert code == 1 and not rep["ok"]
        assert rep["report"]["verdicts"]["GR0"]["verdict"] == "fail"
        assert rep["report"]["verdicts"]["GR0"]["failures"]


class TestOrbitCommand:
    def test_curve_input(self, tmp_path, capsys):
        code, rep = run(tmp_path, CURVE, "orbit", "--nmax", "8",
                        capsys=capsys)
        assert code == 0
        assert rep["report"]["verdict"] == "stable"
        assert rep["report"]["value"] == 1

    def test_inconclusive_skips_then_strict_fails(self, tmp_path, capsys):
        point = {"kind": "point", "gens": [{"0": "1"}, {"-2": "1"}],
                 "tail": 3, "window": [-8, 8]}
        code, rep = run(tmp_path, point, "orbit", "--nmax", "2",
                        capsys=capsys)
        assert code == 0 and names(rep, "skipped") == ["profile-stabilized"]
        code, _ = run(tmp_path, point, "orbit", "--nmax", "2", "--strict",
                      capsys=capsys)
        assert code == 1


class TestPfaffianCommand:
    def test_alternating(self, tmp_path, capsys):
        code, rep = run(tmp_path, ALT, "pfaffian", capsys=capsys)
        assert code == 0
        assert rep["report"]["pfaffian"] == "23/1"
        assert rep["report"]["determinant"] == "529/1"

    def test_not_alternating_is_an_error(self, tmp_path, capsys):
        bad = {"kind": "matrix", "entries": [["1", "2"], ["-2", "0"]]}
        code, rep = run(tmp_path, bad, "pfaffian", capsys=capsys)
        assert code == 2 and "NotAlternating" in rep["error"]


class TestFamilySquare:
    def test_base_orbit_is_trivial_square(self, tmp_path, capsys):
        code, rep = run(tmp_path, FAMILY, "family-square", "--weight", "6",
                        capsys=capsys)
        assert code == 0
        assert rep["report"]["section"] == "1/1"
        assert set(names(rep, "pass")) == {
            "prym-flow", "square-section", "square-root-roundtrip"}

    def test_moved_base_has_series_square(self, tmp_path, capsys):
        fam = dict(FAMILY, base={"gens": [{"-1": "1", "0": "1"}], "tail": 1})
        code, rep = run(tmp_path, fam, "family-square", "--weight", "6",
                        capsys=capsys)
        assert code == 0
        assert rep["report"]["section"]["terms"] == {"1": "1/1", "a1": "1/1"}
        assert "square-root-roundtrip" in names(rep, "pass")
        assert "square-section" in names(rep, "skipped")

    def test_odd_parity_base_is_diagnostic(self, tmp_path, capsys):
        fam = dict(FAMILY, base={"gens": [{"0": "1"}], "tail": 1})
        code, rep = run(tmp_path, fam, "family-square", "--weight", "4",
                        capsys=capsys)
        assert code == 0
        assert "odd parity" in rep["report"]["diagnostic"]
        assert "square-root-roundtrip" in names(rep, "skipped")
        code, _ = run(tmp_path, fam, "family-square", "--weight", "4",
                      "--strict", capsys=capsys)
        assert code == 1

    def test_numeric_flows(self, tmp_path, capsys):
        fam = {"kind": "family", "flows": {"1": "1/2", "3": "-2"},
               "floor": -8}
        code, rep = run(tmp_path, fam, "family-square", "--weight", "4",
                        capsys=capsys)
        assert code == 0 and rep["report"]["section"] == "1/1"

    def test_even_flow_fails_prym_check(self, tmp_path, capsys):
        fam = {"kind": "family", "flows": {"2": "1"}, "floor": -8}
        code, rep = run(tmp_path, fam, "family-square", capsys=capsys)
        assert code == 1 and "prym-flow" in names(rep, "fail")


def test_console_entry():
    proc = subprocess.run(
        [sys.executable, "-m", "zgrass.cli", "--version"],
        capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.strip() == "zgrass 0.1.0"
