"""
CLI Tests
Exit codes, report payloads and determinism of the jpn command line
"""

import json

import pytest

from jpn_cli import EXIT_FAIL, EXIT_PASS, EXIT_USAGE, build_parser, main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


class TestParser:
    def test_defaults(self):
        args = build_parser().parse_args(["check", "--n", "3"])
        assert args.target == "jpn" and args.format == "json" and not args.all

    def test_usage_errors(self, capsys):
        assert main(["wpt-solve", "--n", "3"]) == EXIT_USAGE
        assert main(["check", "adjoint"]) == EXIT_USAGE
        assert main(["--help"]) == EXIT_PASS
        capsys.readouterr()


class TestBuild:
    def test_build_jpn(self, capsys):
        code, payload = run_json(capsys, "build", "--n", "3")
        assert code == EXIT_PASS
        assert payload["passed"] is True
        assert payload["result"]["dim"] == 18
        assert len(payload["result"]["basis"]) == 18
        assert payload["result"]["basis"][0] == {"name": "u_1", "parity": 0}

    def test_build_pn(self, capsys):
        code, payload = run_json(capsys, "build", "--target", "pn", "--n", "4")
        assert code == EXIT_PASS
        assert len(payload["result"]["basis"]) == 32
        assert payload["result"]["action"]

    def test_build_extension(self, capsys):
        code, payload = run_json(capsys, "build", "--target", "extension", "--case", "regop", "--n", "3")
        assert code == EXIT_PASS
        assert payload["parameters"]["case"] == "regop"
        assert payload["result"]["radical"] == list(range(18, 36))

    def test_invalid_size(self, capsys):
        code, out = run(capsys, "build", "--target", "pn", "--n", "1")
        assert code == EXIT_USAGE
        assert out == ""

    def test_output_file(self, capsys, tmp_path):
        path = tmp_path / "jp2.json"
        assert main(["build", "--n", "2", "--output", str(path)]) == EXIT_PASS
        assert capsys.readouterr().out == ""
        assert json.loads(path.read_text())["result"]["dim"] == 8

    def test_deterministic_output(self, capsys):
        _, first = run(capsys, "build", "--target", "extension", "--case", "pn", "--n", "3")
        _, second = run(capsys, "build", "--target", "extension", "--case", "pn", "--n", "3")
        assert first == second


class TestCheck:
    def test_jp3_passes_everything(self, capsys):
        code, payload = run_json(capsys, "check", "jpn", "--n", "3", "--all")
        assert code == EXIT_PASS
        assert payload["verdicts"] == {"supercomm": True, "jordan": True, "peirce": True}
        assert payload["result"]["peirce"]

    def test_extension_supercommutativity(self, capsys):
        code, payload = run_json(capsys, "check", "extension", "reg", "--n", "3", "--supercomm")
        assert code == EXIT_PASS
        assert payload["verdicts"] == {"supercomm": True}
        assert payload["parameters"]["case"] == "reg"

    def test_case_needs_the_extension_target(self, capsys):
        code, _ = run(capsys, "check", "jpn", "reg", "--n", "3")
        assert code == EXIT_USAGE

    def test_corrupted_input_fails(self, capsys, tmp_path):
        _, built = run_json(capsys, "build", "--n", "3")
        constants = built["result"]
        names = [b["name"] for b in constants["basis"]]
        u1, h1 = names.index("u_1"), names.index("h_1")
        for prod in constants["products"]:
            if {prod["i"], prod["j"]} == {u1, h1}:
                prod["terms"] = [{"k": h1, "coef": {"num": "2", "den": "1"}}]
        path = tmp_path / "corrupted.json"
        path.write_text(json.dumps(constants))

        code, payload = run_json(capsys, "check", "--input", str(path), "--jordan")
        assert code == EXIT_FAIL
        assert payload["verdicts"] == {"jordan": False}
        assert payload["counterexamples"]["jordan"][0]["residual"] != "0"

    def test_unreadable_input(self, capsys, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code, _ = run(capsys, "check", "--input", str(path))
        assert code == EXIT_USAGE


class TestComplements:
    def test_linear_solver(self, capsys):
        code, payload = run_json(capsys, "wpt-solve", "--case", "reg", "--n", "3", "--seed", "7")
        assert code == EXIT_PASS
        assert payload["verdicts"]["complement"] is True
        assert payload["result"]["corrections"]
        assert payload["result"]["instance"]["radical_dim"] == 18

    def test_seed_zero(self, capsys):
        code, payload = run_json(capsys, "wpt-solve", "--case", "pnop", "--n", "3", "--seed", "0")
        assert code == EXIT_PASS
        assert payload["result"]["corrections"] == {}

    def test_closed_form(self, capsys):
        code, payload = run_json(capsys, "wpt-solve", "--case", "reg", "--n", "3", "--seed", "5",
                                 "--closed-form", "--theta1", "1/2")
        assert code == EXIT_PASS
        assert payload["verdicts"]["agreement"] is True
        assert payload["result"]["theta"][0] == "1/2"

    def test_closed_form_is_regular_only(self, capsys):
        code, _ = run(capsys, "wpt-solve", "--case", "pn", "--n", "3", "--mode", "closed-form")
        assert code == EXIT_USAGE

    def test_lemma_derive_curated(self, capsys):
        code, payload = run_json(capsys, "lemma-derive", "--case", "reg", "--n", "3", "--curated")
        assert code == EXIT_PASS
        assert payload["result"]["system"]["consistent"] is True
        assert payload["parameters"]["mode"] == "curated"

    def test_text_format(self, capsys):
        code, out = run(capsys, "lemma-derive", "--case", "pnop", "--n", "3", "--curated", "--format", "text")
        assert code == EXIT_PASS
        assert "verdict: PASS" in out
        assert "free unknowns" in out

    @pytest.mark.parametrize("argv", [["tables", "--n", "2"], ["peirce", "--n", "3"]])
    def test_timing_is_opt_in(self, capsys, argv):
        _, plain = run_json(capsys, *argv)
        _, timed = run_json(capsys, *argv, "--timing")
        assert "wall_time" not in plain
        assert timed["wall_time"] >= 0
