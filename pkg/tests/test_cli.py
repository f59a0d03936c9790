"""Command-line surface: argument handling, exit codes, output determinism."""

import json

import pytest

from bringform import RescueExhausted
from bringform.cli import (EXIT_DEGENERATE, EXIT_OK, EXIT_USAGE, EXIT_VERIFY,
                           main)

QUINTIC = ["1", "-1", "4", "1", "-2", "3"]


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_reduce_json_happy_path(capsys):
    code, out, err = run(capsys, "reduce", "--coeffs", *QUINTIC)
    assert code == EXIT_OK and err == ""
    doc = json.loads(out)
    assert doc["verify"]["matched"] is True
    kinds = [s["kind"] for s in doc["trace"]["steps"]]
    assert kinds == ["depress", "principal", "bring-jerrard"]


def test_reduce_text_mode(capsys):
    code, out, _ = run(capsys, "reduce", "--coeffs", *QUINTIC, "--output", "text")
    assert code == EXIT_OK
    assert "verified: yes" in out
    assert "P = " in out and "Q = " in out


def test_reduce_already_trinomial_gives_empty_steps(capsys):
    code, out, _ = run(capsys, "reduce", "--coeffs", "1", "0", "0", "0", "2", "3")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["trace"]["steps"] == []
    assert doc["trace"]["bring_p"] == [2, 1]
    assert doc["trace"]["bring_q"] == [3, 1]


def test_reduce_output_is_deterministic(capsys, tmp_path):
    f1, f2 = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["reduce", "--coeffs"] + QUINTIC + ["--out", str(f1)]) == EXIT_OK
    assert main(["reduce", "--coeffs"] + QUINTIC + ["--out", str(f2)]) == EXIT_OK
    capsys.readouterr()
    assert f1.read_bytes() == f2.read_bytes()


def test_reduce_accepts_rational_and_decimal_tokens(capsys):
    # fractional negatives would parse as options, so the list may be quoted
    code, out, _ = run(capsys, "reduce", "--coeffs", "1 -1/2 0.25 1 0 3")
    assert code == EXIT_OK
    assert json.loads(out)["verify"]["matched"] is True


def test_solve_json_and_text(capsys):
    code, out, _ = run(capsys, "solve", "--coeffs", "1", "0", "-7", "6")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert len(doc["roots"]) == 3
    code, out, _ = run(capsys, "solve", "--coeffs", "1", "-5", "6", "--output", "text")
    assert code == EXIT_OK and "method: quadratic" in out


def test_solve_normalizes_non_monic_input(capsys):
    code, out, _ = run(capsys, "solve", "--coeffs", "2", "-10", "12")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert sorted(doc["roots"]) == [[2, 1], [3, 1]]


def test_solve_refuses_quintic_with_pointer_to_reduce(capsys):
    code, _, err = run(capsys, "solve", "--coeffs", "1", "0", "0", "0", "2", "3")
    assert code == EXIT_USAGE
    assert "reduce" in err


def test_obstruction_reports(capsys):
    code, out, _ = run(capsys, "obstruction", "--coeffs", "1", "0", "0", "1", "1")
    assert code == EXIT_OK
    doc = json.loads(out)
    assert doc["degree"] == 6 and doc["degenerate"] is False
    code, out, _ = run(capsys, "obstruction", "--coeffs", "1", "0", "0", "0", "1")
    assert json.loads(out)["degenerate"] is True


def test_obstruction_rejects_wrong_shape(capsys):
    code, _, err = run(capsys, "obstruction", "--coeffs", "1", "2", "0", "1", "1")
    assert code == EXIT_USAGE and "trinomial" in err


def test_verify_roundtrip_and_tamper_detection(capsys, tmp_path):
    trace = tmp_path / "trace.json"
    assert main(["reduce", "--coeffs"] + QUINTIC + ["--out", str(trace)]) == EXIT_OK
    capsys.readouterr()
    code, out, _ = run(capsys, "verify", "--in", str(trace))
    assert code == EXIT_OK and json.loads(out)["matched"] is True

    doc = json.loads(trace.read_text())
    doc["trace"]["steps"][-1]["output"]["coeffs"][0][0] = "1.0"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(doc))
    code, out, _ = run(capsys, "verify", "--in", str(bad))
    assert code == EXIT_VERIFY and json.loads(out)["matched"] is False


def test_verify_missing_file_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--in", "/nonexistent/trace.json")
    assert code == EXIT_USAGE and "cannot read" in err


def test_verify_garbage_json_is_usage_error(capsys, tmp_path):
    f = tmp_path / "junk.json"
    f.write_text("{not json")
    code, _, err = run(capsys, "verify", "--in", str(f))
    assert code == EXIT_USAGE


def test_usage_errors(capsys):
    assert run(capsys, "reduce", "--coeffs", "1", "2", "3")[0] == EXIT_USAGE
    assert run(capsys, "reduce", "--coeffs", "2", "0", "0", "0", "0", "1")[0] == EXIT_USAGE
    assert run(capsys, "reduce", "--coeffs", *QUINTIC, "--precision-bits", "16")[0] == EXIT_USAGE
    assert run(capsys, "reduce", "--coeffs", *QUINTIC, "--tol", "bogus")[0] == EXIT_USAGE
    assert run(capsys, "reduce", "--coeffs", *QUINTIC, "--tol", "-1e-5")[0] == EXIT_USAGE
    assert run(capsys, "solve", "--coeffs", "1", "2", "--mode", "rational",
               "--coeffs", "1", "0.5j")[0] == EXIT_USAGE
    assert run(capsys)[0] == EXIT_USAGE


def test_degenerate_surfaces_as_exit_two(capsys, monkeypatch):
    import bringform.cli as cli

    def boom(poly, prec=None, tol=None):
        raise RescueExhausted("bring-jerrard", [(2, "coupling vanished")])

    monkeypatch.setattr(cli, "reduce_general_quintic", boom)
    code, _, err = run(capsys, "reduce", "--coeffs", *QUINTIC)
    assert code == EXIT_DEGENERATE and "degenerate" in err
