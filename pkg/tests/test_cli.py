"""命令行：退出码、报告格式与见证复核"""

import json

import pytest

from src.cli import IntRange, Report, RunParams, cmd_verify
from src.core.exceptions import ParseError
from src.main import main
from src.permutations.permutation import parse_cycles
from src.permutations.uni1 import uni1_predicates
from src.permutations.witness import FactorizationWitness


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def error_of(err):
    return json.loads(err.strip().splitlines()[-1])


def write_cover(path, window, *sets, bound=None):
    body = {"window": window}
    if len(sets) == 1:
        body["sets"] = sets[0]
    else:
        body["covers"] = list(sets)
    if bound:
        body["bound"] = bound
    path.write_text(json.dumps(body), encoding="utf-8")
    return str(path)


class TestRanges:
    @pytest.mark.parametrize("text, values", [("3", [3]), ("3..5", [3, 4, 5]), (" 2 .. 2 ", [2])])
    def test_parse(self, text, values):
        assert IntRange.parse(text).values() == values

    @pytest.mark.parametrize("text", ["5..3", "a", "1..", "-1"])
    def test_malformed(self, text):
        with pytest.raises(ParseError):
            IntRange.parse(text)

    def test_single_value_required(self):
        params = RunParams(m=IntRange.parse("3..4"))
        with pytest.raises(ParseError):
            params.single("m")
        with pytest.raises(ParseError):
            params.single("n")


class TestFactorize:
    def test_uni1(self, capsys):
        code, out, _ = run(capsys, "factorize", "uni1", "(1 2)(5 6)", "--m", "5")
        assert code == 0
        report = json.loads(out)
        assert report["summary"] == {"total": 1, "passed": 1, "failed": 0}
        assert report["command"]["lemma"] == "uni1"

    def test_witness_revalidates_from_report(self, capsys):
        _, out, _ = run(capsys, "factorize", "uni1", "(1 2)(5 6)", "--m", "5")
        data = json.loads(out)["cases"][0]["witness"]
        witness = FactorizationWitness.from_json(data, lambda text: parse_cycles(text, 6))
        witness.validate(uni1_predicates(5))
        assert len(witness) == 5

    def test_brenner(self, capsys):
        code, out, _ = run(capsys, "factorize", "brenner", "(1 2 3)", "--n", "2")
        assert code == 0
        assert json.loads(out)["cases"][0]["value"]["length"] == 4

    def test_sp_word(self, capsys):
        code, out, _ = run(capsys, "factorize", "sp-word", "5^1:2", "--d", "2", "--q", "5")
        assert code == 0
        assert json.loads(out)["cases"][0]["value"]["length"] == 6

    def test_even_weight(self, capsys):
        code, out, _ = run(capsys, "factorize", "even-weight", "110110")
        assert code == 0
        assert json.loads(out)["cases"][0]["valid"] is True

    def test_malformed_target(self, capsys):
        code, out, err = run(capsys, "factorize", "uni1", "(1 2 3", "--m", "5")
        assert code == 2
        assert out == ""
        assert error_of(err)["error"] == "PARSE_ERROR"

    def test_missing_target(self, capsys):
        code, _, _ = run(capsys, "factorize", "uni1", "--m", "5")
        assert code == 2

    def test_odd_permutation_is_a_domain_error(self, capsys):
        code, _, err = run(capsys, "factorize", "uni1", "(1 2)", "--m", "5")
        assert code == 1
        assert error_of(err)["error"] == "NOT_EVEN"

    def test_unknown_lemma(self, capsys):
        code, _, err = run(capsys, "factorize", "uni3", "()")
        assert code == 2
        assert error_of(err)["error"] == "LEMMA_UNKNOWN"

    def test_writes_report_file(self, capsys, tmp_path):
        out_path = tmp_path / "reports" / "r.json"
        code, out, _ = run(capsys, "factorize", "uni1", "(1 2 3)", "--m", "3", "--out", str(out_path))
        assert code == 0
        assert out == ""
        assert json.loads(out_path.read_text(encoding="utf-8"))["summary"]["passed"] == 1


class TestVerify:
    def test_uni1_range(self, capsys):
        code, out, _ = run(capsys, "verify", "uni1", "--m", "3..5")
        assert code == 0
        report = json.loads(out)
        assert [c["target"] for c in report["cases"]] == ["uni1 m=3", "uni1 m=4", "uni1 m=5"]
        assert report["cases"][0]["value"]["checked"] == 12

    def test_defaults_fill_missing_parameters(self):
        report = cmd_verify("even-weight", RunParams())
        assert report.ok
        assert report.command["d"] == "2..10"

    def test_sp_word(self, capsys):
        code, out, _ = run(capsys, "verify", "sp-word", "--d", "2", "--q", "5")
        assert code == 0
        assert json.loads(out)["summary"]["total"] == 1

    def test_symmetric_plane_characteristic_two(self, capsys):
        code, out, _ = run(capsys, "verify", "symmetric", "--d", "2", "--q", "2..4")
        assert code == 0
        cases = json.loads(out)["cases"]
        assert [c["value"]["checked"] for c in cases] == [8, 27, 64]
        assert all(c["value"]["failed"] == 0 for c in cases)

    def test_covering_radius(self, capsys):
        code, out, _ = run(capsys, "verify", "saxl", "--q", "2", "--n", "1")
        assert code == 0
        assert json.loads(out)["cases"][0]["valid"] is True

    def test_cap_exceeded(self, capsys):
        code, out, err = run(capsys, "verify", "uni1", "--m", "3..9")
        assert code == 3
        assert out == ""
        assert error_of(err)["details"]["cap"] == 7

    def test_cap_depends_on_profile(self, capsys):
        code, _, _ = run(capsys, "verify", "su3", "--q", "7", "--profile", "quick")
        assert code == 3

    def test_bad_range(self, capsys):
        code, _, _ = run(capsys, "verify", "uni1", "--m", "5..3")
        assert code == 2

    def test_unknown_profile_is_a_usage_error(self):
        with pytest.raises(SystemExit) as info:
            main(["verify", "uni1", "--profile", "huge"])
        assert info.value.code == 2

    def test_report_is_byte_stable(self, capsys):
        _, first, _ = run(capsys, "verify", "brenner", "--n", "2", "--seed", "11")
        _, second, _ = run(capsys, "verify", "brenner", "--n", "2", "--seed", "11")
        assert first == second
        assert "elapsed_ms" not in first


class TestCoverCommands:
    WINDOW = ["Alt(4)"]
    C = [["()", "(1 2 3)", "(1 3 2)"]]
    D = [["()", "(1 2)(3 4)"]]

    def test_star(self, capsys, tmp_path):
        a = write_cover(tmp_path / "a.json", self.WINDOW, self.C)
        b = write_cover(tmp_path / "b.json", self.WINDOW, self.D)
        code, out, _ = run(capsys, "cover", "star", a, b)
        assert code == 0
        case = json.loads(out)["cases"][0]
        assert case["value"]["sizes"] == [8]
        assert case["value"]["size_bound"] == [12]

    def test_star_needs_two_covers(self, capsys, tmp_path):
        a = write_cover(tmp_path / "a.json", self.WINDOW, self.C)
        code, _, _ = run(capsys, "cover", "star", a)
        assert code == 2

    def test_closure(self, capsys, tmp_path):
        a = write_cover(tmp_path / "a.json", self.WINDOW, self.C, self.D)
        code, out, _ = run(capsys, "cover", "closure", a, "--depth", "1")
        assert code == 0
        value = json.loads(out)["cases"][0]["value"]
        assert value["base"] == 2
        assert value["count"] >= 3

    def test_check_reports_oversized_cover(self, capsys, tmp_path):
        a = write_cover(tmp_path / "a.json", self.WINDOW, self.C, bound={"base": 2, "offset": 0})
        code, out, _ = run(capsys, "cover", "check", a)
        assert code == 1
        assert json.loads(out)["summary"]["failed"] == 1

    def test_escape(self, capsys, tmp_path):
        a = write_cover(tmp_path / "a.json", self.WINDOW, self.C)
        code, out, _ = run(capsys, "cover", "escape", a, "--depth", "1")
        assert code == 0
        value = json.loads(out)["cases"][0]["value"]
        assert value["escaped"] is True
        assert value["g"][0] not in self.C[0]

    def test_escape_hypothesis_violated(self, capsys, tmp_path):
        a = write_cover(tmp_path / "a.json", ["Z(2)"], [["0"]])
        code, _, err = run(capsys, "cover", "escape", a, "--depth", "1")
        assert code == 3
        assert error_of(err)["details"]["index"] == 0

    def test_mixed_windows(self, capsys, tmp_path):
        a = write_cover(tmp_path / "a.json", self.WINDOW, self.C)
        b = write_cover(tmp_path / "b.json", ["Sym(4)"], [["()"]])
        code, _, _ = run(capsys, "cover", "star", a, b)
        assert code == 2


class TestLemmas:
    def test_lists_registry(self, capsys):
        code, out, _ = run(capsys, "lemmas")
        assert code == 0
        report = Report.model_validate(json.loads(out))
        assert "uni1" in [c.target for c in report.cases]
        assert all(c.value["actions"] for c in report.cases)
