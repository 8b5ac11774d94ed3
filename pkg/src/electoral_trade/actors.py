"""Payoffs of the governments and the foreign lobby.

All payoff functions accept scalars or numpy arrays for ``t`` and ``M``;
scalar inputs give a Python float back.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConstraintError

STRICT_RTOL = 1e-12


def strictly_greater(a: float, b: float, rtol: float = STRICT_RTOL) -> bool:
    """a > b by more than float noise relative to their size."""
    return a - b > rtol * max(abs(a), abs(b))


def _as_out(x):
    return float(x) if np.ndim(x) == 0 else x


def _check_domain(t, M) -> None:
    if np.any(np.asarray(t) < 0):
        raise ValueError("tariff t must be >= 0")
    if np.any(np.asarray(M) < 0):
        raise ValueError("transfer M must be >= 0")


@dataclass(frozen=True)
class SmdGovernment:
    t_m: float

    def __post_init__(self):
        if not self.t_m > 0:
            raise ConstraintError([("t_m<=0", f"t_m={self.t_m:g} must be positive")])


@dataclass(frozen=True)
class Lobby:
    t_f: float


@dataclass(frozen=True)
class PrCoalition:
    """Two-party coalition: large party peak, small party peak, large-party weight."""

    t_L: float
    t_S: float
    alpha: float

    def __post_init__(self):
        violations = []
        if not 0 < self.alpha < 1:
            violations.append(("alpha", f"alpha={self.alpha:g} must satisfy 0 < alpha < 1"))
        if not self.t_S > 0:
            violations.append(("t_S<=0", f"t_S={self.t_S:g} must be positive (t_L > t_S > 0)"))
        if not self.t_L > self.t_S:
            violations.append(("t_L<=t_S", f"t_L={self.t_L:g} must exceed t_S={self.t_S:g} (t_L > t_S > 0)"))
        if violations:
            raise ConstraintError(violations)

    @property
    def ideal(self) -> float:
        return self.alpha * self.t_L + (1 - self.alpha) * self.t_S

    def check_against(self, t_m: float) -> None:
        """Raise unless t_L > t_m > t_S and the weighted ideal exceeds t_m."""
        violations = []
        if not self.t_L > t_m:
            violations.append(("t_L<=t_m", f"t_L={self.t_L:g} must exceed t_m={t_m:g} (t_L > t_m > t_S > 0)"))
        if not t_m > self.t_S:
            violations.append(("t_S>=t_m", f"t_S={self.t_S:g} must be below t_m={t_m:g} (t_L > t_m > t_S > 0)"))
        ideal = self.ideal
        if not strictly_greater(ideal, t_m):
            violations.append((
                "ideal<=t_m",
                f"ideal={ideal:.12g} must exceed t_m={t_m:.12g} "
                "(alpha*t_L + (1-alpha)*t_S > t_m)"))
        if violations:
            raise ConstraintError(violations)


def gov_utility_smd(t, M, t_m: float):
    """Single-party government: -(t_m - t)^2 + M."""
    _check_domain(t, M)
    return _as_out(-(t_m - np.asarray(t, dtype=float)) ** 2 + M)


def member_utility_large(t, M, coalition: PrCoalition):
    """Large coalition partner: -(t_L - t)^2 + alpha*M."""
    _check_domain(t, M)
    t = np.asarray(t, dtype=float)
    return _as_out(-(coalition.t_L - t) ** 2 + coalition.alpha * np.asarray(M, dtype=float))


def member_utility_small(t, M, coalition: PrCoalition):
    """Small coalition partner: -(t_S - t)^2 + (1 - alpha)*M."""
    _check_domain(t, M)
    t = np.asarray(t, dtype=float)
    return _as_out(-(coalition.t_S - t) ** 2 + (1 - coalition.alpha) * np.asarray(M, dtype=float))


def coalition_ideal(coalition: PrCoalition, t_m: float | None = None) -> float:
    """alpha*t_L + (1-alpha)*t_S; checked against ``t_m`` when one is given."""
    if not 0 < coalition.alpha < 1:
        raise ConstraintError([("alpha", f"alpha={coalition.alpha:g} must satisfy 0 < alpha < 1")])
    if t_m is not None:
        coalition.check_against(t_m)
    return coalition.ideal


def lobby_utility(t, M, t_f: float):
    """Foreign lobby: -(t - t_f)^2 - M above its ideal, -M at or below it."""
    _check_domain(t, M)
    t = np.asarray(t, dtype=float)
    loss = np.where(t > t_f, (t - t_f) ** 2, 0.0)
    return _as_out(-loss - M)
