"""Electoral systems and tariff bargaining with a foreign lobby.

A single-party (majoritarian) government or a two-party (proportional
representation) coalition bargains with a foreign lobby over a tariff and a
monetary transfer.  The package computes the Nash bargaining equilibria in
closed form, checks them against a numerical Nash-product maximizer, and
compares the two electoral systems.
"""

from .actors import (
    Lobby,
    PrCoalition,
    SmdGovernment,
    coalition_ideal,
    gov_utility_smd,
    lobby_utility,
    member_utility_large,
    member_utility_small,
)
from .bargaining import (
    BargainOutcome,
    DisagreementPoint,
    disagreement,
    nash_oracle,
    nash_product,
    pareto_check,
    solve_pr,
    solve_smd,
)
from .errors import ConstraintError, OracleError
from .preference import (
    PartyPartition,
    VoterPopulation,
    condorcet_winner,
    median_peak,
    partition_parties,
    prefers,
)
from .theorem import (
    Scenario,
    SweepAxis,
    SweepSpec,
    SweepTable,
    TheoremReport,
    random_scenarios,
    sample_scenarios,
    sweep,
    verify_theorem,
)

__version__ = "0.1.0"
