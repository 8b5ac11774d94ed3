"""Exception types shared across the package."""

from __future__ import annotations


class ConstraintError(ValueError):
    """A model parameter violates one of the ordering assumptions.

    ``code`` is a short machine-readable tag (e.g. ``"ideal<=t_m"``) used when
    a sweep records a skipped grid point; the message names the inequality.
    ``violations`` lists every (code, message) pair found, when several
    constraints fail at once.
    """

    def __init__(self, violations: list[tuple[str, str]]):
        if not violations:
            raise ValueError("ConstraintError needs at least one violation")
        self.violations = list(violations)
        self.code = violations[0][0]
        super().__init__("; ".join(msg for _, msg in violations))


class OracleError(RuntimeError):
    """The numerical bargaining oracle could not produce an answer."""
