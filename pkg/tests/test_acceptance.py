"""Exit criteria for the package, one test per criterion.

Run ``pytest tests/test_acceptance.py`` to get one PASS/FAIL line each.
"""

import numpy as np
import pytest

from electoral_trade.actors import PrCoalition, gov_utility_smd, lobby_utility
from electoral_trade.bargaining import (
    disagreement,
    nash_oracle,
    pareto_check,
    pareto_check_bruteforce,
    solve_pr,
    solve_smd,
)
from electoral_trade.cli import main
from electoral_trade.preference import condorcet_winner, median_peak
from electoral_trade.theorem import random_scenarios, verify_theorem

EQ_TOL = 1e-9
ORACLE_TOL = 1e-6
ORACLE_GRID = 201
PARETO_GRID = 2001
SEED = 20240601


@pytest.fixture(scope="module")
def scenarios():
    return random_scenarios(SEED, 1000)


@pytest.fixture(scope="module")
def outcomes(scenarios):
    out = []
    for s in scenarios:
        out.append(solve_smd(s.t_m, s.t_f))
        out.append(solve_pr(s.coalition, s.t_m, s.t_f))
    return out


def test_ac01_smd_closed_form(criterion):
    a, b = solve_smd(2, 0), solve_smd(3, 1)
    ok = (a.t_star, a.m_star, b.t_star, b.m_star) == (1, 2, 2, 2)
    criterion("AC1 smd closed form", ok,
              f"(2,0)->({a.t_star}, {a.m_star}); (3,1)->({b.t_star}, {b.m_star})")


def test_ac02_pr_closed_form(criterion):
    out = solve_pr(PrCoalition(3, 1, 0.6), 2, 0)
    ok = abs(out.t_star - 1.1) <= EQ_TOL and abs(out.m_star - 2.42) <= EQ_TOL
    criterion("AC2 pr closed form", ok, f"t*={out.t_star!r}, M*={out.m_star!r}")


def test_ac03_oracle_equivalence(criterion, outcomes):
    worst_t = worst_m = 0.0
    failures = 0
    for out in outcomes:
        t, m = nash_oracle(out.gov_ideal, out.t_f, grid=ORACLE_GRID)
        dt, dm = abs(t - out.t_star), abs(m - out.m_star)
        worst_t, worst_m = max(worst_t, dt), max(worst_m, dm)
        failures += dt > ORACLE_TOL or dm > ORACLE_TOL
    criterion("AC3 oracle equivalence", failures == 0,
              f"{len(outcomes)} solves, {failures} failures, max |dt|={worst_t:.2e}, "
              f"max |dM|={worst_m:.2e}")


def test_ac04_theorem_universality(criterion, capsys):
    code = main(["verify", "--seed", "42", "--n", "1000"])
    out, err = capsys.readouterr()
    from electoral_trade.records import from_csv
    rows = from_csv(out)
    gaps_ok = all(r["tariff_gap"] > 0 and r["transfer_gap"] > 0 for r in rows)
    summary = err.strip().splitlines()[-1]
    ok = code == 0 and summary.startswith("1000/1000 hold") and len(rows) == 1000 and gaps_ok
    criterion("AC4 theorem universality", ok, summary)


def test_ac05_transfer_identity(criterion, outcomes):
    worst = max(abs(o.m_star - (o.gov_ideal - o.t_f) ** 2 / 2) for o in outcomes)
    criterion("AC5 m* = (ideal - t_f)^2 / 2", worst <= EQ_TOL, f"max error {worst:.2e}")


def test_ac06_surplus_symmetry(criterion, outcomes):
    worst = max(abs((o.m_star - o.m_min) - (o.m_max - o.m_star)) for o in outcomes)
    criterion("AC6 equal surplus split", worst <= EQ_TOL, f"max asymmetry {worst:.2e}")


def test_ac07_pareto_and_ir(criterion, outcomes):
    not_pareto = ir_fail = 0
    for o in outcomes:
        not_pareto += not pareto_check(o, o.gov_ideal, o.t_f, grid=PARETO_GRID)
        d = disagreement(o.gov_ideal, o.t_f)
        ir_fail += not (gov_utility_smd(o.t_star, o.m_star, o.gov_ideal) >= d.gov_payoff
                        and lobby_utility(o.t_star, o.m_star, o.t_f) >= d.lobby_payoff)
    # the row-interval scan must agree with a full lattice scan
    mismatch = sum(pareto_check(o, grid=PARETO_GRID) != pareto_check_bruteforce(o, PARETO_GRID)
                   for o in outcomes[::400])
    criterion("AC7 pareto optimal and individually rational",
              not_pareto == 0 and ir_fail == 0 and mismatch == 0,
              f"{len(outcomes)} outcomes on a {PARETO_GRID}^2 grid, "
              f"{not_pareto} dominated, {ir_fail} IR failures, "
              f"{mismatch} full-scan mismatches")


def test_ac08_invariance(criterion, scenarios):
    rng = np.random.default_rng(SEED + 8)
    worst = 0.0
    for s in scenarios[:100]:
        c = s.coalition
        base = (solve_smd(s.t_m, s.t_f), solve_pr(c, s.t_m, s.t_f))
        for _ in range(5):
            shift = float(rng.uniform(0.01, 5))
            lam = float(rng.uniform(0.1, 3))
            moved = (solve_smd(s.t_m + shift, s.t_f + shift),
                     solve_pr(PrCoalition(c.t_L + shift, c.t_S + shift, c.alpha),
                              s.t_m + shift, s.t_f + shift))
            scaled = (solve_smd(lam * s.t_m, lam * s.t_f),
                      solve_pr(PrCoalition(lam * c.t_L, lam * c.t_S, c.alpha),
                               lam * s.t_m, lam * s.t_f))
            for b, mv, sc in zip(base, moved, scaled):
                errs = [abs(mv.t_star - (b.t_star + shift)),
                        abs(sc.t_star - lam * b.t_star),
                        abs(sc.m_star - lam**2 * b.m_star)]
                errs += [abs(getattr(mv, k) - getattr(b, k)) for k in ("m_min", "m_max", "m_star")]
                worst = max(worst, *errs)
    criterion("AC8 translation and scale invariance", worst <= EQ_TOL,
              f"100 scenarios x 5 shifts/scales, max error {worst:.2e}")


def test_ac09_condorcet_median(criterion):
    rng = np.random.default_rng(SEED + 9)
    misses = 0
    for _ in range(200):
        n = 2 * int(rng.integers(0, 25)) + 1
        peaks = rng.uniform(0, 10, size=n).tolist()
        m = median_peak(peaks)
        grid = np.append(np.linspace(0, 10, 100), m)
        misses += condorcet_winner(peaks, grid) != m
    criterion("AC9 median is the condorcet winner", misses == 0,
              f"200 odd populations, 101-point grids, {misses} misses")


def test_ac10_determinism(criterion, tmp_path, capsys):
    sweep = ["sweep", "--axis", "alpha=0.05:0.95:0.05", "--axis", "t_f=0:1.5:0.25",
             "--set", "t_m=2", "--set", "t_L=3", "--set", "t_S=1"]
    verify = ["verify", "--seed", "42", "--n", "1000"]
    for run in ("a", "b"):
        assert main(sweep + ["--output", str(tmp_path / f"sweep_{run}.csv")]) == 0
        assert main(verify + ["--output", str(tmp_path / f"verify_{run}.csv")]) == 0
        assert main(verify + ["--format", "json", "--output",
                              str(tmp_path / f"verify_{run}.json")]) == 0
    capsys.readouterr()
    same = all((tmp_path / f"{name}_a.{ext}").read_bytes() == (tmp_path / f"{name}_b.{ext}").read_bytes()
               for name, ext in (("sweep", "csv"), ("verify", "csv"), ("verify", "json")))
    criterion("AC10 byte-identical reruns", same, "sweep csv, verify csv and json")
