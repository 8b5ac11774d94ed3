"""Nash bargaining between a government and the foreign lobby.

The government and lobby bargain over a tariff ``t`` and a transfer ``M``.
The disagreement point is the government setting its own ideal tariff with
no transfer.  :func:`solve_smd` and :func:`solve_pr` give the closed-form
symmetric solution; :func:`nash_oracle` finds the same point numerically by
maximizing the Nash product, without using the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .actors import (
    PrCoalition,
    gov_utility_smd,
    lobby_utility,
    member_utility_large,
    member_utility_small,
)
from .errors import ConstraintError, OracleError

DEFAULT_GRID = 2001
MIN_GRID = 100
PARETO_TOL = 1e-9
INV_PHI = (math.sqrt(5) - 1) / 2


@dataclass(frozen=True)
class DisagreementPoint:
    gov_payoff: float
    lobby_payoff: float


@dataclass(frozen=True)
class BargainOutcome:
    """Equilibrium of one bargaining problem.

    ``m_min`` is the smallest transfer the government accepts at ``t_star``
    and ``m_max`` the largest the lobby pays; ``m_star`` splits the surplus
    evenly.  For coalition governments ``member_payoffs`` holds the large and
    small partners' payoffs at the equilibrium (informational only).
    """

    polity: str
    gov_ideal: float
    t_f: float
    t_star: float
    m_min: float
    m_max: float
    m_star: float
    gov_surplus: float
    lobby_surplus: float
    member_payoffs: tuple[float, float] | None = None


def check_order(gov_ideal: float, t_f: float, ideal_name: str = "t_m") -> None:
    # t_f = 0 is admitted as the boundary case used by the worked examples
    violations = []
    if not t_f >= 0:
        violations.append(("t_f<0", f"t_f={t_f:g} violates 0 < t_f < {ideal_name}"))
    if not t_f < gov_ideal:
        violations.append(("t_f>=" + ideal_name,
                           f"t_f={t_f:g}, {ideal_name}={gov_ideal:g} violates 0 < t_f < {ideal_name}"))
    if violations:
        raise ConstraintError(violations)


def disagreement(gov_ideal: float, t_f: float) -> DisagreementPoint:
    """Status-quo payoffs: government at its ideal tariff, no transfer."""
    check_order(gov_ideal, t_f, "gov_ideal")
    return DisagreementPoint(
        gov_payoff=gov_utility_smd(gov_ideal, 0.0, gov_ideal),
        lobby_payoff=lobby_utility(gov_ideal, 0.0, t_f),
    )


def _solve(polity: str, gov_ideal: float, t_f: float) -> BargainOutcome:
    gov_ideal, t_f = float(gov_ideal), float(t_f)
    t_star = (gov_ideal + t_f) / 2
    m_max = (gov_ideal - t_f) ** 2 - (t_star - t_f) ** 2
    m_min = (gov_ideal - t_star) ** 2
    m_star = (m_max + m_min) / 2
    d = disagreement(gov_ideal, t_f)
    gov_surplus = gov_utility_smd(t_star, m_star, gov_ideal) - d.gov_payoff
    lobby_surplus = lobby_utility(t_star, m_star, t_f) - d.lobby_payoff
    return BargainOutcome(polity, gov_ideal, t_f, t_star, m_min, m_max, m_star,
                          gov_surplus, lobby_surplus)


def solve_smd(t_m: float, t_f: float) -> BargainOutcome:
    """Symmetric Nash bargain with a single-party government at ``t_m``."""
    check_order(t_m, t_f)
    return _solve("smd", t_m, t_f)


def solve_pr(coalition: PrCoalition, t_m: float, t_f: float) -> BargainOutcome:
    """Bargain with a coalition acting as one agent at its weighted ideal."""
    violations = []
    for check in (lambda: check_order(t_m, t_f), lambda: coalition.check_against(t_m)):
        try:
            check()
        except ConstraintError as exc:
            violations.extend(exc.violations)
    if violations:
        raise ConstraintError(violations)
    out = _solve("pr", coalition.ideal, t_f)
    members = (member_utility_large(out.t_star, out.m_star, coalition),
               member_utility_small(out.t_star, out.m_star, coalition))
    return BargainOutcome(**{**out.__dict__, "member_payoffs": members})


# --- numerical oracle ---------------------------------------------------------

def nash_product(t, M, gov_ideal: float, t_f: float):
    """(G - G_d)(F - F_d), or -inf where either gain is negative."""
    d = disagreement(gov_ideal, t_f)
    gain_g = gov_utility_smd(t, M, gov_ideal) - d.gov_payoff
    gain_f = lobby_utility(t, M, t_f) - d.lobby_payoff
    prod = np.where((gain_g >= 0) & (gain_f >= 0), gain_g * gain_f, -np.inf)
    return float(prod) if np.ndim(prod) == 0 else prod


def _golden_max(f, a: float, b: float, tol: float) -> tuple[float, float]:
    """Maximize a unimodal ``f`` on [a, b]; returns (x, f(x))."""
    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = f(c), f(d)
    while b - a > tol:
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = f(d)
    x = (a + b) / 2
    return x, f(x)


def _grid_argmax(gov_ideal: float, t_f: float, n: int):
    ts = np.linspace(t_f, gov_ideal, n)
    ms = np.linspace(0.0, (gov_ideal - t_f) ** 2, n)
    best, best_i, best_j = -np.inf, -1, -1
    rows = max(1, 2_000_000 // n)
    for start in range(0, n, rows):
        block = nash_product(ts[start:start + rows, None], ms[None, :], gov_ideal, t_f)
        k = int(np.argmax(block))
        i, j = divmod(k, n)
        if block[i, j] > best:
            best, best_i, best_j = block[i, j], start + i, j
    if not np.isfinite(best):
        raise OracleError("no feasible grid point; feasible set unexpectedly empty")
    return ts, ms, best_i, best_j


def nash_oracle(gov_ideal: float, t_f: float, grid: int = DEFAULT_GRID,
                tol: float = 1e-6) -> tuple[float, float]:
    """Numerically maximize the Nash product over the feasible set.

    Stage one scans a ``grid`` x ``grid`` lattice over t in [t_f, gov_ideal]
    and M in [0, (gov_ideal - t_f)^2].  Stage two refines with nested
    golden-section searches: over t in a bracket around the best lattice
    row, and for each t over the individually rational range of M.

    The refinement evaluates the change in the Nash product relative to the
    lattice optimum from expanded payoff differences, so the comparisons stay
    accurate well below ``tol`` even though the product itself is flat at
    its maximum.
    """
    check_order(gov_ideal, t_f, "gov_ideal")
    if grid < MIN_GRID:
        raise ValueError(f"grid must have at least {MIN_GRID} points per axis")
    ts, ms, i, j = _grid_argmax(gov_ideal, t_f, grid)
    t0, m0 = float(ts[i]), float(ms[j])
    d = disagreement(gov_ideal, t_f)
    u0 = gov_utility_smd(t0, m0, gov_ideal) - d.gov_payoff
    v0 = lobby_utility(t0, m0, t_f) - d.lobby_payoff
    m_cap = (gov_ideal - t_f) ** 2
    g_lin = 2 * (gov_ideal - t0)
    f_lin = 2 * (t0 - t_f)

    def deltas(a: float, b: float) -> tuple[float, float]:
        # exact payoff changes when moving from (t0, m0) to (t0 + a, m0 + b)
        return b + a * (g_lin - a), -b - a * (f_lin + a)

    def gain(a: float, b: float) -> float:
        du, dv = deltas(a, b)
        if u0 + du < 0 or v0 + dv < 0:
            return -math.inf
        return du * v0 + u0 * dv + du * dv

    # scale-aware stopping widths; tol bounds the final error from above
    t_tol = min(tol, 1e-3 * (gov_ideal - t_f)) * 1e-4
    m_tol = min(tol, 1e-3 * m_cap) * 1e-4

    def best_m(a: float) -> tuple[float, float]:
        # individually rational M for this t: u >= 0 and v >= 0
        lo = max(-m0, -u0 - a * (g_lin - a))
        hi = min(m_cap - m0, v0 - a * (f_lin + a))
        if hi < lo:
            return 0.0, -math.inf
        return _golden_max(lambda b: gain(a, b), lo, hi, m_tol)

    h = float(ts[1] - ts[0])
    a_lo = max(float(ts[0]), t0 - 4 * h) - t0
    a_hi = min(float(ts[-1]), t0 + 4 * h) - t0
    a_star, _ = _golden_max(lambda a: best_m(a)[1], a_lo, a_hi, t_tol)
    b_star, value = best_m(a_star)
    if not math.isfinite(value):
        raise OracleError("refinement left the feasible set")
    return t0 + a_star, m0 + b_star


def _lobby_payoff_rows(ts: np.ndarray, t_f: float) -> np.ndarray:
    return lobby_utility(ts, 0.0, t_f)


def pareto_check(outcome: BargainOutcome, gov_ideal: float | None = None,
                 t_f: float | None = None, grid: int = DEFAULT_GRID,
                 tol: float = PARETO_TOL) -> bool:
    """True iff no lattice point makes both parties strictly better off.

    The lattice is ``grid`` x ``grid`` over t in [t_f, gov_ideal] and
    M in [0, (gov_ideal - t_f)^2].  Payoffs are additive in M, so each
    lattice row is checked by locating the open interval of M values that
    would improve both parties; this visits exactly the same points as a
    full scan.
    """
    g = outcome.gov_ideal if gov_ideal is None else gov_ideal
    tf = outcome.t_f if t_f is None else t_f
    check_order(g, tf, "gov_ideal")
    g0 = gov_utility_smd(outcome.t_star, outcome.m_star, g)
    f0 = lobby_utility(outcome.t_star, outcome.m_star, tf)
    ts = np.linspace(tf, g, grid)
    ms = np.linspace(0.0, (g - tf) ** 2, grid)
    # G > g0 + tol  <=>  M > lo ;  F > f0 + tol  <=>  M < hi
    lo = g0 + tol - gov_utility_smd(ts, 0.0, g)
    hi = _lobby_payoff_rows(ts, tf) - (f0 + tol)
    first_above = np.searchsorted(ms, lo, side="right")
    inside = first_above < grid
    candidate = ms[np.minimum(first_above, grid - 1)]
    dominated = inside & (candidate < hi)
    return not bool(dominated.any())


def pareto_check_bruteforce(outcome: BargainOutcome, grid: int,
                            tol: float = PARETO_TOL) -> bool:
    """Full lattice scan; reference for :func:`pareto_check` on small grids."""
    g, tf = outcome.gov_ideal, outcome.t_f
    g0 = gov_utility_smd(outcome.t_star, outcome.m_star, g)
    f0 = lobby_utility(outcome.t_star, outcome.m_star, tf)
    ts = np.linspace(tf, g, grid)[:, None]
    ms = np.linspace(0.0, (g - tf) ** 2, grid)[None, :]
    better = (gov_utility_smd(ts, ms, g) > g0 + tol) & (lobby_utility(ts, ms, tf) > f0 + tol)
    return not bool(better.any())
