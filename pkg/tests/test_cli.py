import json

import pytest

from necsurf import cli
from necsurf.pipeline import PipelineAssertionError

GENUS2_DOC = {
    "gamma": 1,
    "periods": [2, 2, 2],
    "n": 2,
    "rho": {"d": [1], "x": [2, 2, 2]},
}

REQUIRED_KEYS = {
    "input",
    "genus",
    "k_signature",
    "delta_hat_signature",
    "signature_match",
    "lemma1",
    "theta_extension",
    "conclusion",
}


def write_doc(tmp_path, doc, name="input.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


class TestRealizeCommand:
    def test_genus2_text(self, tmp_path, capsys):
        path = write_doc(tmp_path, GENUS2_DOC)
        code = cli.main(["realize", path])
        out = capsys.readouterr().out
        assert code == 0
        assert (
            "Δ̂ signature (1;−;[2,2,2]) matches"
            " (γ;−;[n₁..n_r]): PASS" in out
        )
        assert "conclusion: REALIZED" in out

    def test_genus2_json_schema(self, tmp_path, capsys):
        path = write_doc(tmp_path, GENUS2_DOC)
        code = cli.main(["--format", "json", "realize", path])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert REQUIRED_KEYS <= set(doc)
        assert doc["conclusion"] is True
        assert doc["genus"] == 2
        assert doc["delta_hat_signature"]["display"] == "(1;−;[2,2,2])"
        assert doc["theta_extension"]["kernel_index"] == 8

    def test_input_echo_round_trips(self, tmp_path, capsys):
        path = write_doc(tmp_path, GENUS2_DOC)
        cli.main(["--format", "json", "realize", path])
        doc = json.loads(capsys.readouterr().out)
        assert doc["input"] == GENUS2_DOC

    def test_search_mode(self, tmp_path, capsys):
        doc = dict(GENUS2_DOC, rho="search")
        path = write_doc(tmp_path, doc)
        code = cli.main(["--format", "json", "realize", path])
        payload = json.loads(capsys.readouterr().out)
        assert code == 0
        assert payload["input"]["rho"] == "search"
        assert payload["rho_resolved"] == {"d": [1], "x": [2, 2, 2]}

    def test_deterministic_output(self, tmp_path, capsys):
        path = write_doc(tmp_path, GENUS2_DOC)
        cli.main(["--format", "json", "realize", path])
        first = capsys.readouterr().out
        cli.main(["--format", "json", "realize", path])
        second = capsys.readouterr().out
        assert first == second

    def test_out_file(self, tmp_path, capsys):
        path = write_doc(tmp_path, GENUS2_DOC)
        out_path = tmp_path / "cert.json"
        code = cli.main(["--format", "json", "--out", str(out_path), "realize", path])
        assert code == 0
        assert capsys.readouterr().out == ""
        assert json.loads(out_path.read_text())["conclusion"] is True

    def test_odd_n_exits_one_citing_evenness(self, tmp_path, capsys):
        doc = dict(GENUS2_DOC, n=3)
        path = write_doc(tmp_path, doc)
        code = cli.main(["realize", path])
        captured = capsys.readouterr()
        assert code == 1
        assert "even" in captured.out

    def test_validation_failure_lists_reasons(self, tmp_path, capsys):
        doc = dict(GENUS2_DOC, periods=[2, 4])
        doc["rho"] = {"d": [1], "x": [2, 2]}
        path = write_doc(tmp_path, doc)
        code = cli.main(["--format", "json", "realize", path])
        payload = json.loads(capsys.readouterr().out)
        assert code == 1
        assert payload["errors"]
        assert "conclusion" not in payload

    def test_search_with_no_epimorphism_exits_one(self, tmp_path, capsys):
        doc = {"gamma": 3, "periods": [], "n": 2, "rho": "search"}
        path = write_doc(tmp_path, doc)
        code = cli.main(["realize", path])
        err = capsys.readouterr().err
        assert code == 1
        assert "no surface-kernel epimorphism" in err

    def test_out_of_range_residue_warns_and_reduces(self, tmp_path, capsys):
        doc = dict(GENUS2_DOC, rho={"d": [5], "x": [2, 2, 2]})
        path = write_doc(tmp_path, doc)
        code = cli.main(["realize", path])
        captured = capsys.readouterr()
        assert code == 0
        assert "reduced mod 4" in captured.err

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text("{not json")
        code = cli.main(["realize", str(path)])
        assert code == 1
        assert "cannot parse" in capsys.readouterr().err

    def test_missing_field_named(self, tmp_path, capsys):
        path = write_doc(tmp_path, {"gamma": 1, "periods": [2, 2, 2]})
        code = cli.main(["realize", path])
        err = capsys.readouterr().err
        assert code == 1
        assert "'n'" in err

    def test_wrong_rho_length_named(self, tmp_path, capsys):
        doc = dict(GENUS2_DOC, rho={"d": [1, 1], "x": [2, 2, 2]})
        path = write_doc(tmp_path, doc)
        code = cli.main(["realize", path])
        err = capsys.readouterr().err
        assert code == 1
        assert "rho.d" in err

    def test_internal_assertion_exits_two(self, tmp_path, capsys, monkeypatch):
        def boom(datum):
            raise PipelineAssertionError("synthetic failure")

        monkeypatch.setattr(cli, "realize", boom)
        path = write_doc(tmp_path, GENUS2_DOC)
        code = cli.main(["realize", path])
        assert code == 2
        assert "internal assertion" in capsys.readouterr().err


class TestEnumerateCommand:
    def test_count_zero_still_succeeds(self, capsys):
        code = cli.main(["enumerate", "--gamma", "3", "--periods", "", "--order", "4"])
        out = capsys.readouterr().out
        assert code == 0
        assert out.startswith("count: 0")

    def test_lists_tuples(self, capsys):
        code = cli.main(
            ["enumerate", "--gamma", "1", "--periods", "2,2,2", "--order", "4"]
        )
        out = capsys.readouterr().out
        assert code == 0
        assert "count: 2" in out
        assert "d=[1] x=[2, 2, 2]" in out

    def test_json_format(self, capsys):
        code = cli.main(
            ["--format", "json", "enumerate", "--gamma", "4", "--periods", "", "--order", "4"]
        )
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert doc["count"] == 16
        assert len(doc["epimorphisms"]) == 16

    def test_bad_order_exits_one(self, capsys):
        code = cli.main(["enumerate", "--gamma", "1", "--periods", "2", "--order", "6"])
        assert code == 1
        assert "even" in capsys.readouterr().err


class TestCheckLemmaCommand:
    def test_genus2_lemma_only(self, tmp_path, capsys):
        path = write_doc(tmp_path, GENUS2_DOC)
        code = cli.main(["--format", "json", "check-lemma", path])
        doc = json.loads(capsys.readouterr().out)
        assert code == 0
        assert set(doc) == {"input", "lemma1"}
        assert all(
            entry["inverted"] for entry in doc["lemma1"]["conjugation_inversion"]
        )

    def test_text_output(self, tmp_path, capsys):
        path = write_doc(tmp_path, GENUS2_DOC)
        code = cli.main(["check-lemma", path])
        out = capsys.readouterr().out
        assert code == 0
        assert "conjugation inversion: PASS" in out
