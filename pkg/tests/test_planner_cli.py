"""Planner strategy selection, certificates, and the command-line surface."""

import json

from ccma.bilinear import BilinearAlgorithm, verify
from ccma.cli import main
from ccma.planner import Planner, shipped_instances, spec_for_q


def test_synth_2_4_composition_beats_genus0():
    planner = Planner(spec_for_q(2))
    cert = planner.synth(4)
    assert cert["rank"] == 9
    assert cert["strategy"]["kind"] == "tower"
    g0_only = Planner(spec_for_q(2), strategies=("g0",))
    assert g0_only.synth(4)["rank"] == 10


def test_synth_5_3_equality_regime():
    cert = Planner(spec_for_q(5)).synth(3)
    assert cert["rank"] == 5


def test_synth_4_4_curve_instance_reaches_8():
    planner = Planner(spec_for_q(4), strategies=("curve",))
    cert = planner.synth(4)
    assert cert["rank"] == 8
    assert cert["strategy"]["kind"] == "curve"
    alg = BilinearAlgorithm.from_json(cert["algorithm"])
    assert verify(alg) and alg.symmetric


def test_strategy_monotonicity():
    ranks = []
    for strategies in (("g0",), ("g0", "tower"), ("g0", "tower", "curve")):
        cert = Planner(spec_for_q(2), strategies=strategies).synth(4)
        ranks.append(cert["rank"])
    assert ranks[0] >= ranks[1] >= ranks[2]


def test_certificate_roundtrip(tmp_path):
    cert = Planner(spec_for_q(3)).synth(2)
    path = tmp_path / "alg.json"
    path.write_text(json.dumps(cert))
    data = json.loads(path.read_text())
    alg = BilinearAlgorithm.from_json(data["algorithm"])
    assert verify(alg)
    assert alg.to_json() == cert["algorithm"]


def test_shipped_instances_present():
    names = {inst["name"] for inst in shipped_instances()}
    assert {"fermat_f4", "hyperelliptic_f16", "cenk_ozbudak_f3"} <= names


def test_cli_synth_verify_roundtrip(tmp_path, capsys):
    out = tmp_path / "cert.json"
    assert main(["synth", "--q", "2", "--n", "3", "--out", str(out)]) == 0
    capsys.readouterr()
    assert main(["verify", str(out)]) == 0
    captured = capsys.readouterr()
    assert "VERIFIED rank 6" in captured.out
    assert "lower bound 5" in captured.out


def test_cli_verify_corrupted_exits_2(tmp_path, capsys):
    out = tmp_path / "cert.json"
    main(["synth", "--q", "2", "--n", "2", "--out", str(out)])
    data = json.loads(out.read_text())
    data["algorithm"]["W"][0][0][0] ^= 1
    out.write_text(json.dumps(data))
    capsys.readouterr()
    assert main(["verify", str(out)]) == 2
    assert "FAILED at basis pair" in capsys.readouterr().out


def test_cli_bounds_tables_exit_zero(capsys):
    for table in ("table1", "table3", "msym", "m", "csym"):
        assert main(["bounds", "--table", table]) == 0, table
        capsys.readouterr()
    assert main(["bounds", "--table", "msym", "--csv"]) == 0
    csv_text = capsys.readouterr().out
    assert "matches_paper" in csv_text


def test_cli_codes_and_search(tmp_path, capsys):
    out = tmp_path / "cert.json"
    main(["synth", "--q", "2", "--n", "2", "--out", str(out)])
    capsys.readouterr()
    assert main(["codes", "--from", str(out)]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["N"] == 3 and payload["n"] == 2 and payload["min_distance"] == 2
    assert main(["codes", "--from", str(out), "--supercode"]) == 0
    sc = json.loads(capsys.readouterr().out)
    assert sc["n"] == 2 and sc["N"] == 3
    assert main(["search", "--q", "2", "--n", "2", "--max-rank", "3"]) == 0
    assert "minimum rank 3" in capsys.readouterr().out


def test_cli_guard_exit_code(monkeypatch, capsys):
    monkeypatch.setenv("CCMA_GUARD_LIMIT", "4")
    assert main(["search", "--q", "2", "--n", "3", "--max-rank", "6"]) == 3
    assert "resource guard" in capsys.readouterr().err


def test_cli_usage_error_missing_file(capsys):
    assert main(["verify", "/nonexistent/path.json"]) == 1


def test_cli_bounds_table2_achieved(capsys):
    code = main(["bounds", "--table", "table2", "--achieved", "--n-max", "4"])
    rows = json.loads(capsys.readouterr().out)
    by_cell = {(r["q"], r["n"]): r for r in rows}
    assert by_cell[(2, 4)]["achieved"] == 9
    assert by_cell[(2, 4)]["status"] == "achieved"
    assert all(r["status"] == "achieved" for r in rows)
    assert code == 0


def test_cli_verify_truncated_target(tmp_path, capsys):
    from ccma.bilinear import truncated_order2, truncated_target
    from ccma.gf import FieldSpec

    alg = truncated_order2(truncated_target(FieldSpec.get(2), 1, 2))
    path = tmp_path / "trunc.json"
    path.write_text(json.dumps(alg.to_json()))
    assert main(["verify", str(path)]) == 0
    out = capsys.readouterr().out
    assert "VERIFIED rank 3" in out
