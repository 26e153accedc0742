"""CLI surface: dispatch, JSON shapes, error exits, determinism."""
import hashlib
import json
import math

import pytest

from connected_cm.cli import ExperimentSpec, build_parser, main, run

P14_JSON = '{"weights":{"1":0.5,"4":0.5}}'
T_PATH_JSON = '{"counts":{"1":2,"2":1}}'


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def test_oracle_subcommand(capsys):
    code, out = _run(capsys, ["oracle", "--type", T_PATH_JSON])
    assert code == 0
    data = json.loads(out)
    assert data["connected"] == 2
    assert data["total"] == 3
    assert data["graphs"] == 1


def test_rate_subcommand(capsys):
    code, out = _run(capsys, ["rate", "--p", P14_JSON])
    assert code == 0
    data = json.loads(out)
    assert data["beta"] == pytest.approx(2 - math.sqrt(3), abs=1e-9)
    assert data["K"] == pytest.approx(0.06544, abs=1e-4)
    assert data["residuals"]["survival"] < 1e-9
    assert set(data["q"]) == {"1", "4"}


def test_build_nbig_subcommand(capsys):
    code, out = _run(capsys, ["build-nbig", "--p", P14_JSON, "--eps", "0.05", "--n", "1000"])
    assert code == 0
    data = json.loads(out)
    assert data["n_target"] == 1000
    assert data["ell"] % 2 == 0
    assert data["N_total"] == pytest.approx(1000 * data["gamma"] * data["rho"], rel=5e-3)


def test_sample_cm_and_census_round_trip(tmp_path, capsys):
    edges = tmp_path / "g.txt"
    code, out = _run(
        capsys,
        ["sample-cm", "--type", '{"counts":{"2":4}}', "--seed", "3", "--emit", str(edges)],
    )
    assert code == 0
    meta = json.loads(out)
    assert meta["rng"] == "splitmix64"
    assert meta["ell"] == 8
    lines = edges.read_text().strip().splitlines()
    assert len(lines) == 4

    if meta["simple"]:
        code, out = _run(capsys, ["census", "--edges", str(edges), "--r", "1"])
        assert code == 0
        hist = json.loads(out)
        assert hist["total"] == 4


def test_sample_connected_subcommand(tmp_path, capsys):
    edges = tmp_path / "conn.txt"
    code, out = _run(
        capsys,
        [
            "sample-connected", "--type", T_PATH_JSON,
            "--seed", "5", "--budget", "1000", "--emit", str(edges),
        ],
    )
    assert code == 0
    assert len(edges.read_text().strip().splitlines()) == 2


def test_sample_connected_budget_exhausted(capsys):
    code, out = _run(
        capsys,
        ["sample-connected", "--type", '{"counts":{"1":4}}', "--seed", "1", "--budget", "200"],
    )
    assert code == 1
    err = json.loads(out)["error"]
    assert err["type"] == "BudgetExhausted"
    assert err["attempts"] == 200


def test_sample_giant_subcommand(capsys):
    code, out = _run(
        capsys,
        ["sample-giant", "--p", P14_JSON, "--n", "30", "--seed", "21", "--budget", "500000"],
    )
    assert code == 0
    meta = json.loads(out)
    assert meta["target"] == {"1": 14, "4": 15}
    assert meta["n"] == 29


def test_sample_giant_budget_zero_reports(capsys):
    code, out = _run(
        capsys,
        ["sample-giant", "--p", P14_JSON, "--n", "2000", "--seed", "1", "--budget", "0"],
    )
    assert code == 1
    err = json.loads(out)["error"]
    assert err["type"] == "BudgetExhausted"
    assert err["attempts"] == 0
    assert err["report"]["target"] == {"1": 1000, "4": 1000}


def test_mu_subcommand(capsys):
    code, out = _run(capsys, ["mu", "--p", P14_JSON, "--r", "2", "--min-prob", "0.0001"])
    assert code == 0
    data = json.loads(out)
    assert data["mu_total"] == pytest.approx(1.0, abs=1e-6)
    codes = {t["code"]: t["mu"] for t in data["trees"]}
    assert codes["((()()()))"] == pytest.approx(0.5, abs=1e-9)


def test_decomp_check_subcommand(capsys):
    code, out = _run(capsys, ["decomp-check", "--type", T_PATH_JSON])
    assert code == 0
    data = json.loads(out)
    assert data["ok"] is True
    assert data["families_checked"] == 5  # nonempty m <= {1:2, 2:1}


def test_missing_file_exits_2(capsys):
    code, out = _run(capsys, ["rate", "--p", "/nonexistent/p.json"])
    assert code == 2
    assert json.loads(out)["error"]["type"] == "FileNotFoundError"


def test_module_error_exits_1(capsys):
    code, out = _run(capsys, ["rate", "--p", '{"weights":{"2":1.0}}'])
    assert code == 1
    assert json.loads(out)["error"]["type"] == "SubcriticalDistribution"


def test_estimate_K_csv_deterministic(tmp_path, capsys):
    digests = []
    for rep in range(2):
        out_path = tmp_path / f"curve{rep}.csv"
        spec = ExperimentSpec(
            command="estimate-K",
            args={
                "p": P14_JSON,
                "n_list": "40,60",
                "replicates": 4000,
                "seed": 7,
                "threads": 2,
                "method": "embedding",
                "eps": 0.05,
                "out": str(out_path),
            },
        )
        assert run(spec) == 0
        digests.append(hashlib.sha256(out_path.read_bytes()).hexdigest())
    assert digests[0] == digests[1]
    header, *rows = (tmp_path / "curve0.csv").read_text().strip().splitlines()
    assert header == "n,minus_log_pconn_over_n,method,hits,replicates"
    assert len(rows) == 2
    assert all(r.split(",")[2] == "embedding" for r in rows)


def test_estimate_K_threads_do_not_change_results(tmp_path):
    outs = []
    for threads in (1, 3):
        out_path = tmp_path / f"t{threads}.csv"
        spec = ExperimentSpec(
            command="estimate-K",
            args={
                "p": P14_JSON,
                "n_list": "40",
                "replicates": 6000,
                "seed": 11,
                "threads": threads,
                "method": "direct",
                "out": str(out_path),
            },
        )
        assert run(spec) == 0
        outs.append(out_path.read_text())
    assert outs[0] == outs[1]


def test_experiment_spec_serializable():
    spec = ExperimentSpec(command="oracle", args={"type": T_PATH_JSON})
    parsed = json.loads(spec.to_json())
    assert parsed["command"] == "oracle"
    assert ExperimentSpec(**parsed).to_argv() == spec.to_argv()


def test_parser_covers_spec_subcommands():
    parser = build_parser()
    sub = next(
        a for a in parser._actions if isinstance(a, type(parser._subparsers._group_actions[0]))
    )
    names = set(sub.choices)
    assert {
        "rate", "build-nbig", "sample-cm", "sample-connected",
        "oracle", "census", "mu", "estimate-K", "decomp-check",
    } <= names
