"""Scenario generation, the SMD-vs-PR comparison, and parameter sweeps."""

from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .actors import STRICT_RTOL, PrCoalition, strictly_greater
from .bargaining import BargainOutcome, check_order, solve_pr, solve_smd
from .errors import ConstraintError

log = logging.getLogger(__name__)

PARAMS = ("t_m", "t_f", "t_L", "t_S", "alpha")
COALITION_PARAMS = ("t_L", "t_S", "alpha")


@dataclass(frozen=True)
class Scenario:
    t_m: float
    t_f: float
    coalition: PrCoalition | None = None
    tag: str = ""

    def __post_init__(self):
        violations = []
        try:
            check_order(self.t_m, self.t_f)
        except ConstraintError as exc:
            violations.extend(exc.violations)
        if self.coalition is not None:
            try:
                self.coalition.check_against(self.t_m)
            except ConstraintError as exc:
                violations.extend(exc.violations)
        if violations:
            raise ConstraintError(violations)

    @classmethod
    def from_params(cls, params: dict, tag: str = "") -> "Scenario":
        present = [k for k in COALITION_PARAMS if params.get(k) is not None]
        if present and len(present) != len(COALITION_PARAMS):
            missing = sorted(set(COALITION_PARAMS) - set(present))
            raise ValueError(f"coalition needs t_L, t_S and alpha; missing {missing}")
        coalition = None
        if present:
            coalition = PrCoalition(params["t_L"], params["t_S"], params["alpha"])
        return cls(params["t_m"], params["t_f"], coalition, tag)

    def params(self) -> dict:
        out = {"t_m": self.t_m, "t_f": self.t_f}
        c = self.coalition
        out.update(t_L=c.t_L if c else None, t_S=c.t_S if c else None,
                   alpha=c.alpha if c else None)
        return out


@dataclass(frozen=True)
class TheoremReport:
    t_star_smd: float
    t_star_pr: float
    m_star_smd: float
    m_star_pr: float
    tariff_gap: float
    transfer_gap: float
    holds: bool


def compare(smd: BargainOutcome, pr: BargainOutcome) -> TheoremReport:
    holds = (strictly_greater(pr.t_star, smd.t_star)
             and strictly_greater(pr.m_star, smd.m_star))
    return TheoremReport(smd.t_star, pr.t_star, smd.m_star, pr.m_star,
                         pr.t_star - smd.t_star, pr.m_star - smd.m_star, holds)


def verify_theorem(s: Scenario) -> TheoremReport:
    """Coalition government sets the higher tariff and collects the larger transfer."""
    if s.coalition is None:
        raise ValueError("verify_theorem needs a scenario with a coalition")
    return compare(solve_smd(s.t_m, s.t_f), solve_pr(s.coalition, s.t_m, s.t_f))


# --- random scenarios -----------------------------------------------------------

DEFAULT_BOUNDS = {
    "t_f": (0.0, 5.0),
    "t_m": (0.0, 10.0),
    "t_S": (0.0, 10.0),
    "t_L": (0.0, 20.0),
    "alpha": (0.0, 1.0),
}
DEFAULT_MAX_DRAWS = 10**6
_BATCH = 1024


@dataclass(frozen=True)
class RejectionStats:
    draws: int
    accepted: int

    @property
    def acceptance_rate(self) -> float:
        return self.accepted / self.draws if self.draws else 0.0


def _accept_mask(x: np.ndarray) -> np.ndarray:
    t_f, t_m, t_S, t_L, alpha = x.T
    ideal = alpha * t_L + (1 - alpha) * t_S
    return ((t_f > 0) & (t_f < t_m) & (t_S > 0) & (t_S < t_m) & (t_L > t_m)
            & (alpha > 0) & (alpha < 1)
            & (ideal - t_m > STRICT_RTOL * np.maximum(np.abs(ideal), np.abs(t_m))))


def sample_scenarios(seed: int, n: int, bounds: dict | None = None,
                     max_draws: int = DEFAULT_MAX_DRAWS) -> tuple[list[Scenario], RejectionStats]:
    """Rejection-sample ``n`` valid scenarios from independent uniform boxes.

    ``bounds`` maps each of t_f, t_m, t_S, t_L, alpha to a (low, high) box;
    missing entries take the defaults.  Candidates are drawn in fixed-size
    batches from ``numpy.random.default_rng(seed)`` so the output depends
    only on the seed, the bounds and ``n``.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    box = dict(DEFAULT_BOUNDS)
    for k, v in (bounds or {}).items():
        if k not in box:
            raise ValueError(f"unknown bound {k!r}; expected one of {sorted(box)}")
        box[k] = v
    order = ("t_f", "t_m", "t_S", "t_L", "alpha")
    lo = np.array([float(box[k][0]) for k in order])
    hi = np.array([float(box[k][1]) for k in order])
    if np.any(hi <= lo):
        raise ValueError("every bound needs low < high")

    rng = np.random.default_rng(seed)
    rows: list[np.ndarray] = []
    draws = 0
    while len(rows) < n:
        if draws >= max_draws:
            raise ConstraintError([(
                "unsatisfiable",
                f"only {len(rows)} of {n} valid scenarios after {draws} draws; "
                "bounds cannot satisfy 0 < t_f < t_m, t_L > t_m > t_S > 0 and "
                "alpha*t_L + (1-alpha)*t_S > t_m")])
        size = min(_BATCH, max_draws - draws)
        batch = rng.uniform(lo, hi, size=(size, len(order)))
        ok = np.flatnonzero(_accept_mask(batch))
        need = n - len(rows)
        if ok.size >= need:
            take = ok[:need]
            draws += int(take[-1]) + 1
        else:
            take = ok
            draws += size
        rows.extend(batch[take])

    scenarios = [
        Scenario(t_m, t_f, PrCoalition(t_L, t_S, alpha), tag=f"seed={seed}#{k}")
        for k, (t_f, t_m, t_S, t_L, alpha) in enumerate(r.tolist() for r in rows)
    ]
    stats = RejectionStats(draws, n)
    log.info("sampled %d scenarios in %d draws (acceptance %.3f)",
             n, draws, stats.acceptance_rate)
    return scenarios, stats


def random_scenarios(seed: int, n: int, bounds: dict | None = None,
                     max_draws: int = DEFAULT_MAX_DRAWS) -> list[Scenario]:
    return sample_scenarios(seed, n, bounds, max_draws)[0]


# --- sweeps ----------------------------------------------------------------------

@dataclass(frozen=True)
class SweepAxis:
    """Evenly spaced values of one parameter.

    ``inclusive`` controls whether ``stop`` itself is a grid point (when it
    lands on the lattice).  Values are rounded to 12 decimals so that e.g.
    0.5 + 2*0.1 is recorded as 0.7.
    """

    name: str
    start: float
    stop: float
    step: float
    inclusive: bool = True

    def values(self) -> list[float]:
        if self.name not in PARAMS:
            raise ValueError(f"unknown sweep parameter {self.name!r}; expected one of {PARAMS}")
        if not all(math.isfinite(v) for v in (self.start, self.stop, self.step)):
            raise ValueError(f"sweep range for {self.name} must be finite")
        if not self.step > 0:
            raise ValueError(f"sweep step for {self.name} must be positive")
        if not self.stop > self.start:
            raise ValueError(f"empty sweep range for {self.name}: {self.start} .. {self.stop}")
        span = (self.stop - self.start) / self.step
        count = math.floor(span + 1e-9) + 1
        if not self.inclusive and abs(span - round(span)) < 1e-9:
            count -= 1
        return [round(self.start + k * self.step, 12) for k in range(count)]


@dataclass(frozen=True)
class SweepSpec:
    axes: tuple[SweepAxis, ...]
    fixed: dict = field(default_factory=dict)

    def __post_init__(self):
        names = [a.name for a in self.axes]
        if not names:
            raise ValueError("sweep needs at least one axis")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate sweep axes: {names}")
        for k in self.fixed:
            if k not in PARAMS:
                raise ValueError(f"unknown fixed parameter {k!r}")
            if k in names:
                raise ValueError(f"{k} is both swept and fixed")
        given = set(names) | set(self.fixed)
        for k in ("t_m", "t_f"):
            if k not in given:
                raise ValueError(f"sweep needs a value or axis for {k}")
        coal = given & set(COALITION_PARAMS)
        if coal and coal != set(COALITION_PARAMS):
            raise ValueError("coalition sweeps need all of t_L, t_S, alpha")


@dataclass(frozen=True)
class SweepRecord:
    inputs: dict
    status: str
    smd: BargainOutcome | None = None
    pr: BargainOutcome | None = None
    report: TheoremReport | None = None


@dataclass(frozen=True)
class SweepTable:
    spec: SweepSpec
    records: tuple[SweepRecord, ...]


def _evaluate(params: dict) -> SweepRecord:
    try:
        s = Scenario.from_params(params)
    except ConstraintError as exc:
        codes = ",".join(code for code, _ in exc.violations)
        return SweepRecord(dict(params), f"skipped: {codes}")
    smd = solve_smd(s.t_m, s.t_f)
    if s.coalition is None:
        return SweepRecord(dict(params), "ok", smd)
    pr = solve_pr(s.coalition, s.t_m, s.t_f)
    return SweepRecord(dict(params), "ok", smd, pr, compare(smd, pr))


def sweep(spec: SweepSpec) -> SweepTable:
    """Evaluate both polities on the Cartesian grid of the sweep axes.

    Grid points violating a model constraint are kept as records whose
    status names the violation, e.g. ``"skipped: ideal<=t_m"``.
    """
    grids = [axis.values() for axis in spec.axes]
    names = [axis.name for axis in spec.axes]
    records = []
    for combo in itertools.product(*grids):
        params = {k: None for k in PARAMS}
        params.update(spec.fixed)
        params.update(zip(names, combo))
        records.append(_evaluate(params))
    return SweepTable(spec, tuple(records))
