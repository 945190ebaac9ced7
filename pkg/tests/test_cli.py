"""Command line interface: subcommands, exit codes, deterministic
reports."""

import json
import pathlib
import shutil

import pytest

import bcopt.cli as cli_mod
from bcopt.cli import main

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"
FIG1 = str(FIXTURES / "fig1.json")
FIG2 = str(FIXTURES / "fig2_shape.json")


def run(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_solve_star_pair(capsys):
    code, out, _ = run(capsys, ["solve", FIG1, "--epsilon", "1/2"])
    assert code == 0
    report = json.loads(out)
    assert report["epsilon"] == "1/2"
    assert report["core_epsilon"] == "1/16"
    assert report["guarantee"] == "1/2"
    assert report["alpha"] == "11"
    assert report["solution"] == {
        "ids": [0, 2],
        "profit": "11",
        "cost": "2",
        "feasible": True,
    }
    assert report["repset_size"] == 4
    assert report["enumerated"] == 7
    assert report["fallbacks"] == 0


def test_solve_report_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code, out, _ = run(
        capsys, ["solve", FIG1, "--epsilon", "1/2", "--report", str(target)]
    )
    assert code == 0
    assert target.read_text() == out


def test_solve_rerun_identical(capsys):
    _, first, _ = run(capsys, ["solve", FIG1, "--epsilon", "1/3"])
    _, second, _ = run(capsys, ["solve", FIG1, "--epsilon", "1/3"])
    assert first == second


def test_solve_epsilon_validation(capsys):
    for eps in ("0", "1", "3/2", "abc"):
        code, _, err = run(capsys, ["solve", FIG1, "--epsilon", eps])
        assert code == 2
        assert "input error" in err


def test_missing_instance_file(capsys):
    code, _, err = run(capsys, ["solve", "no_such_file.json", "--epsilon", "1/2"])
    assert code == 2
    assert "input error" in err


def test_exact(capsys):
    code, out, _ = run(capsys, ["exact", FIG1])
    assert code == 0
    report = json.loads(out)
    assert report["solution"]["profit"] == "11"
    assert report["solution"]["ids"] == [0, 2]


def test_exact_capacity_exit_code(capsys):
    code, _, err = run(capsys, ["exact", FIG1, "--max-exhaustive", "2"])
    assert code == 3
    assert "capacity error" in err


def test_nps_contract_fields(capsys):
    code, out, _ = run(capsys, ["nps", FIG1])
    assert code == 0
    report = json.loads(out)
    assert report["slack_bound"] == "20"
    assert report["opt"] == "11"
    assert report["solution"]["profit"] == "11"
    assert report["slack"] == "0"
    assert report["contract_ok"] is True


def test_repset_summary(capsys):
    code, out, _ = run(capsys, ["repset", FIG1, "--epsilon", "1/2"])
    assert code == 0
    report = json.loads(out)
    assert report["alpha"] == "11"
    assert report["params"] == {
        "epsilon": "1/2",
        "q": 4,
        "q_eff": 4,
        "k_eff": 24,
        "n_cap": 3,
        "class_count": 3,
    }
    assert report["class_sizes"] == {"2": 2}
    assert report["exchange_set_sizes"] == {"2": 2}
    assert report["size"] == 2
    assert report["ids"] == [0, 1]
    assert report["bound"] == 3456
    assert report["bound_ok"] is True


def test_exset(capsys):
    code, out, _ = run(capsys, ["exset", FIG1, "--epsilon", "1/2"])
    assert code == 0
    report = json.loads(out)
    assert report["classes"] == {
        "2": {"members": [0, 1], "exchange_set": [0, 1]}
    }


def test_verify_axioms(capsys):
    code, out, _ = run(capsys, ["verify", FIG2, "--check", "axioms"])
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is True
    assert len(report["matroids"]) == 2
    # matching instances have no matroid pair to check
    code, _, err = run(capsys, ["verify", FIG1, "--check", "axioms"])
    assert code == 2
    assert "input error" in err


def test_verify_exchange_set(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"r": 2, "alpha": "11", "ids": [0, 1]}))
    code, out, _ = run(
        capsys,
        ["verify", FIG1, "--check", "exchange-set", "--epsilon", "1/2",
         "--candidate", str(good)],
    )
    assert code == 0
    assert json.loads(out)["ok"] is True

    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"r": 2, "alpha": "11", "ids": [0]}))
    code, out, _ = run(
        capsys,
        ["verify", FIG1, "--check", "exchange-set", "--epsilon", "1/2",
         "--candidate", str(bad)],
    )
    # a failed check is still a successful verification run
    assert code == 0
    report = json.loads(out)
    assert report["ok"] is False
    assert report["witness"] == {"delta": [1, 3], "a": 1}


def test_verify_candidate_validation(tmp_path, capsys):
    code, _, err = run(
        capsys, ["verify", FIG1, "--check", "exchange-set", "--epsilon", "1/2"]
    )
    assert code == 2 and "candidate" in err

    no_eps = tmp_path / "c.json"
    no_eps.write_text(json.dumps({"r": 2, "alpha": "11", "ids": [0, 1]}))
    code, _, err = run(
        capsys,
        ["verify", FIG1, "--check", "exchange-set", "--candidate", str(no_eps)],
    )
    assert code == 2 and "epsilon" in err

    missing_r = tmp_path / "no_r.json"
    missing_r.write_text(json.dumps({"alpha": "11", "ids": [0, 1]}))
    code, _, _ = run(
        capsys,
        ["verify", FIG1, "--check", "exchange-set", "--epsilon", "1/2",
         "--candidate", str(missing_r)],
    )
    assert code == 2

    bad_ids = tmp_path / "bad_ids.json"
    bad_ids.write_text(json.dumps({"ids": [0, "x"]}))
    code, _, _ = run(
        capsys,
        ["verify", FIG1, "--check", "representative", "--epsilon", "1/2",
         "--candidate", str(bad_ids)],
    )
    assert code == 2


def test_verify_representative(tmp_path, capsys):
    cand = tmp_path / "rep.json"
    cand.write_text(json.dumps({"ids": [0, 1]}))
    code, out, _ = run(
        capsys,
        ["verify", FIG1, "--check", "representative", "--epsilon", "1/2",
         "--candidate", str(cand)],
    )
    assert code == 0
    assert json.loads(out)["ok"] is True

    wrong = tmp_path / "wrong.json"
    wrong.write_text(json.dumps({"ids": [2, 3]}))
    code, out, _ = run(
        capsys,
        ["verify", FIG1, "--check", "representative", "--epsilon", "1/8",
         "--candidate", str(wrong)],
    )
    assert code == 0
    assert json.loads(out)["ok"] is False


def test_gen_corpus_matches_fixture(capsys):
    code, out, _ = run(capsys, ["gen", "--corpus", "bm:0"])
    assert code == 0
    assert out.encode() == (FIXTURES / "corpus" / "bm_000.json").read_bytes()


def test_gen_validation(capsys):
    assert run(capsys, ["gen"])[0] == 2
    assert run(capsys, ["gen", "--corpus", "bm:x"])[0] == 2
    assert run(capsys, ["gen", "--corpus", "zz:1"])[0] == 2
    assert run(capsys, ["gen", "--family", "bm"])[0] == 2
    assert run(capsys, ["gen", "--family", "bi", "--seed", "1",
                        "--kinds", "uniform"])[0] == 2


def test_gen_to_solve(tmp_path, capsys):
    out_file = tmp_path / "inst.json"
    code, out, _ = run(
        capsys,
        ["gen", "--family", "bm", "--seed", "5", "--vertices", "5",
         "--out", str(out_file)],
    )
    assert code == 0
    assert out_file.read_text() == out
    code, out, _ = run(capsys, ["solve", str(out_file), "--epsilon", "1/2"])
    assert code == 0
    assert json.loads(out)["solution"]["feasible"] is True


def test_bench_star_pair(capsys):
    code, out, _ = run(capsys, ["bench", FIG1, "--epsilons", "1/2"])
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "instance,epsilon,profit,opt,ratio,repset_size,repset_bound,wall_ms"
    assert lines[1] == f"{FIG1},1/2,11,11,1,4,3456,"
    assert len(lines) == 2


def test_bench_timings_column(capsys):
    _, out, _ = run(capsys, ["bench", FIG1, "--epsilons", "1/2", "--timings"])
    row = out.splitlines()[1].split(",")
    assert row[-1] != ""


def test_bench_directory_and_jobs(tmp_path, capsys):
    for i in range(3):
        name = f"bm_{i:03d}.json"
        shutil.copy(FIXTURES / "corpus" / name, tmp_path / name)
    argv = ["bench", str(tmp_path), "--epsilons", "1/2,1/3"]
    code, sequential, _ = run(capsys, argv)
    assert code == 0
    lines = sequential.splitlines()
    assert len(lines) == 1 + 3 * 2
    code, parallel, _ = run(capsys, argv + ["--jobs", "2"])
    assert code == 0
    assert parallel == sequential


def test_bench_epsilon_validation(capsys):
    assert run(capsys, ["bench", FIG1, "--epsilons", ","])[0] == 2
    assert run(capsys, ["bench", FIG1, "--epsilons", "0"])[0] == 2


def test_argparse_exit_codes(capsys):
    assert main([]) == 2
    capsys.readouterr()
    assert main(["busted"]) == 2
    capsys.readouterr()
    assert main(["--help"]) == 0
    capsys.readouterr()
    assert main(["solve", FIG1]) == 2   # missing required --epsilon
    capsys.readouterr()


def test_invariant_violation_exit_code(monkeypatch, capsys):
    def boom(*args, **kwargs):
        raise AssertionError("forced")

    monkeypatch.setattr(cli_mod, "brute_force_opt", boom)
    code, _, err = run(capsys, ["exact", FIG1])
    assert code == 4
    assert "invariant violation" in err
