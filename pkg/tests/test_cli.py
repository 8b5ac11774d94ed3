import json

import pytest

from electoral_trade.cli import main
from electoral_trade.records import from_csv


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_smd(capsys, write):
    f = write("smd.txt", "polity = smd\nt_m = 2\nt_f = 0\n")
    code, out, _ = run(capsys, "solve", f)
    assert code == 0
    (row,) = from_csv(out)
    assert row["polity"] == "smd" and row["t_star"] == 1 and row["m_star"] == 2


def test_solve_pr_with_oracle(capsys, write):
    f = write("pr.txt", "polity = pr\nt_m = 2\nt_f = 0\nt_L = 3\nt_S = 1\nalpha = 0.6\n")
    code, out, _ = run(capsys, "solve", f, "--oracle", "--format", "json")
    assert code == 0
    (row,) = json.loads(out)
    assert row["t_star"] == pytest.approx(1.1, abs=1e-12)
    assert abs(row["oracle_dt"]) <= 1e-6 and abs(row["oracle_dm"]) <= 1e-6
    assert row["oracle_ok"] is True


def test_solve_both(capsys, write):
    f = write("pr.txt", "polity = smd\nt_m = 2\nt_f = 0\nt_L = 3\nt_S = 1\nalpha = 0.6\n")
    code, out, _ = run(capsys, "solve", f, "--both")
    rows = from_csv(out)
    assert code == 0 and [r["polity"] for r in rows] == ["smd", "pr"]
    assert all(r["holds"] is True for r in rows)
    assert rows[0]["tariff_gap"] == pytest.approx(0.1)


def test_solve_both_needs_coalition(capsys, write):
    f = write("smd.txt", "polity = smd\nt_m = 2\nt_f = 0\n")
    assert run(capsys, "solve", f, "--both")[0] == 2


def test_solve_constraint_violation(capsys, write):
    f = write("bad.txt", "polity = smd\nt_m = 2\nt_f = 3\n")
    code, _, err = run(capsys, "solve", f)
    assert code == 1 and "0 < t_f < t_m" in err


def test_solve_parse_error(capsys, write):
    f = write("bad.txt", "polity = smd\nt_m = 2\nt_f = 0\nfoo = 1\n")
    code, _, err = run(capsys, "solve", f)
    assert code == 2 and "line 4" in err and "foo" in err


def test_solve_missing_file(capsys, tmp_path):
    assert run(capsys, "solve", str(tmp_path / "nope.txt"))[0] == 2


def test_verify(capsys):
    code, out, err = run(capsys, "verify", "--seed", "42", "--n", "1000")
    assert code == 0
    assert err.startswith("1000/1000 hold")
    rows = from_csv(out)
    assert len(rows) == 1000 and all(r["holds"] for r in rows)


def test_verify_single(capsys):
    code, out, _ = run(capsys, "verify", "--seed", "7", "--n", "1")
    assert code == 0 and len(from_csv(out)) == 1


def test_verify_usage(capsys):
    assert run(capsys, "verify", "--n", "0")[0] == 2
    with pytest.raises(SystemExit) as info:
        main(["verify"])
    assert info.value.code == 2


def test_verify_unsatisfiable(capsys):
    code, _, err = run(capsys, "verify", "--n", "3", "--bound", "t_f=6:8",
                       "--bound", "t_m=1:5", "--max-draws", "5000")
    assert code == 1 and "0 < t_f < t_m" in err


SWEEP = ["sweep", "--axis", "alpha=0.55:0.95:0.1", "--set", "t_m=2", "--set", "t_f=0",
         "--set", "t_L=3", "--set", "t_S=1"]


def test_sweep_rows(capsys, tmp_path):
    out = tmp_path / "s.csv"
    assert run(capsys, *SWEEP, "--output", str(out))[0] == 0
    rows = from_csv(out.read_text())
    assert [r["alpha"] for r in rows] == [0.55, 0.65, 0.75, 0.85]
    assert rows[0]["pr_gov_ideal"] == pytest.approx(2.1)
    assert all(r["status"] == "ok" for r in rows)


def test_sweep_flags_skipped(capsys):
    code, out, _ = run(capsys, "sweep", "--axis", "alpha=0.3:0.7:0.1", "--set", "t_m=2",
                       "--set", "t_f=0", "--set", "t_L=3", "--set", "t_S=1")
    rows = from_csv(out)
    assert code == 0
    assert [r["status"] for r in rows] == ["skipped: ideal<=t_m"] * 3 + ["ok"]
    assert rows[0]["t_star_pr"] is None


def test_sweep_refuses_overwrite(capsys, tmp_path):
    out = tmp_path / "s.csv"
    out.write_text("keep me")
    code, _, err = run(capsys, *SWEEP, "--output", str(out))
    assert code == 2 and "--force" in err and out.read_text() == "keep me"
    assert run(capsys, *SWEEP, "--output", str(out), "--force")[0] == 0
    assert out.read_text().startswith("status,")


def test_sweep_unwritable(capsys, tmp_path):
    assert run(capsys, *SWEEP, "--output", str(tmp_path / "no" / "dir.csv"))[0] == 2


@pytest.mark.parametrize("extra", [["--axis", "alpha=0.5:0.5:0.1"], ["--axis", "alpha=1:2"],
                                   ["--axis", "gamma=0:1:0.5"], ["--set", "t_m"]])
def test_sweep_malformed(capsys, extra):
    args = ["sweep", "--set", "t_f=0", "--set", "t_L=3", "--set", "t_S=1"]
    if extra[0] == "--set":
        args += ["--axis", "alpha=0.5:0.9:0.1"]
    else:
        args += ["--set", "t_m=2"]
    assert run(capsys, *args, *extra)[0] == 2


def test_population(capsys, write):
    text = "peaks = 1, 2, 3, 4, 5\nlabels = S, S, L, L, L\nt_f = 0.5\nalpha = {}\n"
    code, _, err = run(capsys, "population", write("p6.txt", text.format(0.6)))
    assert code == 1 and "ideal=3" in err and "t_m=3" in err

    code, out, _ = run(capsys, "population", write("p7.txt", text.format(0.7)), "--solve")
    (row,) = from_csv(out)
    assert code == 0
    assert (row["t_m"], row["t_L"], row["t_S"], row["ideal"]) == (3, 4, 1.5, 3.25)
    assert row["t_star"] == 1.875 and row["median_is_condorcet"] is True


def test_population_empty_peaks(capsys, write):
    assert run(capsys, "population", write("e.txt", "peaks =\nt_f = 0.5\n"))[0] == 2
    assert run(capsys, "population", write("e2.txt", "t_m = 2\nt_f = 0.5\n"))[0] == 2


def test_oracle_compare(capsys):
    code, out, err = run(capsys, "oracle-compare", "--seed", "3", "--n", "5", "--grid", "201")
    rows = from_csv(out)
    assert code == 0 and len(rows) == 10 and err.startswith("10/10 within")


def test_determinism(capsys, tmp_path):
    for name in ("a", "b"):
        run(capsys, *SWEEP, "--output", str(tmp_path / f"sweep_{name}.csv"))
        run(capsys, "verify", "--seed", "9", "--n", "200", "--output",
            str(tmp_path / f"verify_{name}.csv"))
    assert (tmp_path / "sweep_a.csv").read_bytes() == (tmp_path / "sweep_b.csv").read_bytes()
    assert (tmp_path / "verify_a.csv").read_bytes() == (tmp_path / "verify_b.csv").read_bytes()
