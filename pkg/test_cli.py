# test_cli.py
import json
import logging

from src.charpoly.charpoly_assembler import assemble, parse_json
from src.cli import commands
from src.cli.commands import run
from src.utils.errors import ConsistencyError


def test_compute_canonical_text(capsys):
    assert run(["compute", "--r", "3", "--l", "3", "--canonical", "--format", "text"]) == 0
    out = capsys.readouterr().out
    assert out == "λ^57 · (λ^3 − 4)^9 · (λ^3 − 1)^36\n"


def test_compute_latex(capsys):
    assert run(["compute", "--r", "3", "--l", "3", "--canonical", "--format", "latex"]) == 0
    assert capsys.readouterr().out.strip() == r"\lambda^{57}(\lambda^3-4)^{9}(\lambda^3-1)^{36}"


def test_compute_rejects_small_r(capsys):
    assert run(["compute", "--r", "2", "--l", "3"]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_missing_subcommand(capsys):
    assert run([]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_compute_json_and_out_file(capsys, tmp_path):
    target = tmp_path / "c45.json"
    assert run(["compute", "--r", "4", "--l", "5", "--format", "json", "--out", str(target)]) == 0
    out = capsys.readouterr().out
    assert target.read_text(encoding="utf-8") == out
    f = parse_json(out)
    assert f == assemble(4, 5)
    payload = json.loads(out)
    assert isinstance(payload["degree"], str)


def test_compute_is_deterministic(capsys):
    run(["compute", "--r", "5", "--l", "4", "--canonical"])
    first = capsys.readouterr().out
    run(["compute", "--r", "5", "--l", "4", "--canonical"])
    assert capsys.readouterr().out == first


def test_compute_expand(capsys):
    assert run(["compute", "--r", "3", "--l", "3", "--canonical", "--expand"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 2
    assert lines[1].startswith("λ^192 - 72*λ^189")


def test_compute_expand_over_cap(capsys):
    assert run(["compute", "--r", "3", "--l", "3", "--expand", "--max-expand-degree", "100"]) == 3
    assert capsys.readouterr().err.startswith("error:")


def test_trace_formula_only(capsys):
    assert run(["trace", "--r", "3", "--l", "3", "--d", "2"]) == 0
    assert capsys.readouterr().out == "formula=540\n"
    assert run(["trace", "--r", "3", "--l", "3", "--order", "4"]) == 0
    assert capsys.readouterr().out == "formula=0\n"


def test_trace_brute(capsys):
    assert run(["trace", "--r", "3", "--l", "3", "--d", "1", "--brute"]) == 0
    assert capsys.readouterr().out == "formula=216 brute=216 OK\n"


def test_trace_brute_budget(capsys):
    assert run(["trace", "--r", "3", "--l", "3", "--d", "3", "--brute", "--budget", "10"]) == 3
    assert capsys.readouterr().err.startswith("error:")


def test_trace_unsupported_order(capsys):
    assert run(["trace", "--r", "3", "--l", "3", "--d", "4"]) == 2


def test_verify_corollaries(capsys):
    assert run(["verify", "--suite", "corollaries"]) == 0
    out = capsys.readouterr().out
    assert "❌" not in out
    assert out.count("✅ PASS") == 20


def test_verify_identities_single_length(capsys):
    assert run(["verify", "--suite", "identities", "--l", "4"]) == 0
    assert "corollaries" not in capsys.readouterr().out


def test_verify_lemma_minors(capsys):
    assert run(["verify", "--suite", "lemma-minors", "--draws", "10", "--seed", "5"]) == 0
    assert capsys.readouterr().out.count("✅ PASS") == 3


def test_verify_oracle_small(capsys):
    assert run(["verify", "--suite", "oracle", "--r", "4", "--l", "3", "--budget", "2000"]) == 3


def test_spectrum_text(capsys):
    assert run(["spectrum", "--r", "3", "--l", "3"]) == 0
    out = capsys.readouterr().out
    assert out.strip().endswith("check: OK")
    assert "multiplicity=57" in out


def test_spectrum_json(capsys):
    assert run(["spectrum", "--r", "4", "--l", "4", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True
    assert all(isinstance(item["multiplicity"], str) for item in payload["roots"])


def test_verify_corollaries_rejects_other_lengths(capsys):
    assert run(["verify", "--suite", "corollaries", "--l", "4"]) == 2
    assert capsys.readouterr().err.startswith("error:")
    assert run(["verify", "--suite", "corollaries", "--l", "5"]) == 0
    assert capsys.readouterr().out.count("✅ PASS") == 10


def test_verify_tol_does_not_reach_s_inverse(capsys):
    assert run(["verify", "--suite", "s-inverse", "--l", "3", "--tol", "1e-300"]) == 0
    assert "❌" not in capsys.readouterr().out


def test_internal_error_starts_with_prefix(capsys, monkeypatch):
    def broken(args):
        raise ConsistencyError("сломанный инвариант")

    monkeypatch.setitem(commands.COMMANDS, "compute", broken)
    try:
        assert run(["--log-level", "DEBUG", "compute", "--r", "3", "--l", "3"]) == 1
        err = capsys.readouterr().err
        assert err.startswith("error: сломанный инвариант")
        assert "Traceback" in err
    finally:
        logging.getLogger().handlers.clear()
        logging.getLogger().setLevel(logging.WARNING)
