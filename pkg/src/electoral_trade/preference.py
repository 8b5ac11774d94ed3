"""Voter populations with single-peaked tariff preferences.

Voters are represented only by their ideal tariff (their peak).  Where a
cardinal comparison between two alternatives is needed, a voter prefers the
alternative closer to the peak, which is what quadratic loss gives.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ConstraintError

LARGE_LABELS = {"large", "l"}
SMALL_LABELS = {"small", "s"}


@dataclass(frozen=True)
class VoterPopulation:
    """Finite electorate, one nonnegative peak per voter."""

    peaks: tuple[float, ...]

    def __init__(self, peaks: Sequence[float]):
        values = tuple(float(p) for p in peaks)
        if not values:
            raise ValueError("voter population must be nonempty")
        bad = [p for p in values if not np.isfinite(p) or p < 0]
        if bad:
            raise ValueError(f"voter peaks must be finite and >= 0, got {bad[:3]}")
        object.__setattr__(self, "peaks", values)

    def __len__(self) -> int:
        return len(self.peaks)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.peaks, dtype=float)


@dataclass(frozen=True)
class PartyPartition:
    large_peaks: tuple[float, ...]
    small_peaks: tuple[float, ...]
    t_L: float
    t_m: float
    t_S: float


def _check_nonneg(**values: float) -> None:
    for name, v in values.items():
        if v < 0:
            raise ValueError(f"{name} must be >= 0, got {v}")


def prefers(peak: float, x: float, y: float) -> bool:
    """True when a voter with this peak strictly prefers y to x.

    Only the ordinal single-peaked condition is used: y beats x when both
    lie on the same side of the peak and y is the nearer one.
    """
    _check_nonneg(peak=peak, x=x, y=y)
    return (x < y <= peak) or (x > y >= peak)


def _median(values: np.ndarray) -> float:
    s = np.sort(values)
    n = len(s)
    mid = n // 2
    if n % 2:
        return float(s[mid])
    return float((s[mid - 1] + s[mid]) / 2)


def median_peak(pop: VoterPopulation | Sequence[float]) -> float:
    """Median ideal tariff; even counts use the midpoint of the middle pair."""
    if not isinstance(pop, VoterPopulation):
        pop = VoterPopulation(pop)
    return _median(pop.as_array())


def pairwise_tally(pop: VoterPopulation, a: float, b: float) -> tuple[int, int]:
    """Votes for ``a`` and for ``b`` in a head-to-head majority vote.

    Each voter backs the candidate nearer their peak; equidistant voters
    abstain.
    """
    peaks = pop.as_array()
    da = np.abs(peaks - a)
    db = np.abs(peaks - b)
    return int(np.count_nonzero(da < db)), int(np.count_nonzero(db < da))


def condorcet_winner(pop: VoterPopulation | Sequence[float],
                     candidates: Sequence[float]) -> float | None:
    """Candidate that strictly beats every other in pairwise majority votes.

    Returns None when no candidate does (ties count as not beating).
    """
    if not isinstance(pop, VoterPopulation):
        pop = VoterPopulation(pop)
    cands = np.unique(np.asarray(candidates, dtype=float))
    if cands.size == 0:
        raise ValueError("candidate list must be nonempty")
    if np.any(cands < 0) or not np.all(np.isfinite(cands)):
        raise ValueError("candidates must be finite and >= 0")
    if cands.size == 1:
        return float(cands[0])

    dist = np.abs(pop.as_array()[:, None] - cands[None, :])
    # wins[i, j]: voters strictly preferring candidate i over candidate j
    closer = dist[:, :, None] < dist[:, None, :]
    wins = closer.sum(axis=0)
    beats = wins > wins.T
    np.fill_diagonal(beats, True)
    winners = np.flatnonzero(beats.all(axis=1))
    if winners.size == 0:
        return None
    return float(cands[winners[0]])


def partition_parties(pop: VoterPopulation | Sequence[float],
                      assignment: Sequence[str]) -> PartyPartition:
    """Split voters into large- and small-party supporters and take medians.

    ``assignment`` holds one label per voter: ``"large"``/``"L"`` or
    ``"small"``/``"S"`` (case-insensitive).  The resulting medians must
    satisfy t_L > t_m > t_S > 0.
    """
    if not isinstance(pop, VoterPopulation):
        pop = VoterPopulation(pop)
    if len(assignment) != len(pop):
        raise ValueError(
            f"need one party label per voter: {len(pop)} voters, {len(assignment)} labels")
    large, small = [], []
    for i, (peak, label) in enumerate(zip(pop.peaks, assignment)):
        key = str(label).strip().lower()
        if key in LARGE_LABELS:
            large.append(peak)
        elif key in SMALL_LABELS:
            small.append(peak)
        else:
            raise ValueError(f"voter {i}: unknown party label {label!r}")
    if not large or not small:
        raise ValueError("both parties need at least one supporter")

    t_L = _median(np.asarray(large))
    t_S = _median(np.asarray(small))
    t_m = median_peak(pop)
    violations = []
    if not t_L > t_m:
        violations.append(("t_L<=t_m", f"t_L={t_L:g} must exceed t_m={t_m:g} (t_L > t_m > t_S > 0)"))
    if not t_m > t_S:
        violations.append(("t_S>=t_m", f"t_S={t_S:g} must be below t_m={t_m:g} (t_L > t_m > t_S > 0)"))
    if not t_S > 0:
        violations.append(("t_S<=0", f"t_S={t_S:g} must be positive (t_L > t_m > t_S > 0)"))
    if violations:
        raise ConstraintError(violations)
    return PartyPartition(tuple(large), tuple(small), t_L, t_m, t_S)
