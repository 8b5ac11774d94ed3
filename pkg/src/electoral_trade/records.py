"""Scenario files and flat result records (CSV / JSON).

Scenario file format: one ``key = value`` per line, ``#`` starts a comment,
blank lines are ignored.  Lists are comma separated, optionally wrapped in
brackets.  Keys::

    polity  = smd | pr                      (required)
    t_m     = <number>   or  peaks = <list of numbers>
    t_f     = <number>                      (required)
    t_L     = <number>   t_S = <number>     or  labels = <list of L/S>
    alpha   = <number>                      (required for pr)

``labels`` needs ``peaks``; t_m, t_L and t_S are then the group medians.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass

from .bargaining import BargainOutcome
from .preference import VoterPopulation, median_peak, partition_parties
from .theorem import Scenario, TheoremReport

NUMBER_KEYS = ("t_m", "t_f", "t_L", "t_S", "alpha")
LIST_KEYS = ("peaks", "labels")
KNOWN_KEYS = ("polity",) + NUMBER_KEYS + LIST_KEYS
CSV_FORMAT = ".12g"


class ScenarioParseError(ValueError):
    def __init__(self, message: str, line: int | None = None, key: str | None = None):
        self.line = line
        self.key = key
        where = []
        if line is not None:
            where.append(f"line {line}")
        if key is not None:
            where.append(f"key {key!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)


@dataclass
class ScenarioFile:
    polity: str
    t_f: float
    t_m: float | None = None
    peaks: list[float] | None = None
    t_L: float | None = None
    t_S: float | None = None
    labels: list[str] | None = None
    alpha: float | None = None

    def population(self) -> VoterPopulation | None:
        return VoterPopulation(self.peaks) if self.peaks is not None else None

    def derived(self) -> dict:
        """t_m, t_L, t_S, alpha after resolving peaks/labels into medians."""
        out = {"t_m": self.t_m, "t_f": self.t_f, "t_L": self.t_L,
               "t_S": self.t_S, "alpha": self.alpha}
        if self.peaks is not None:
            pop = self.population()
            out["t_m"] = median_peak(pop)
            if self.labels is not None:
                part = partition_parties(pop, self.labels)
                out["t_L"], out["t_S"] = part.t_L, part.t_S
        return out

    def scenario(self, with_coalition: bool | None = None) -> Scenario:
        params = self.derived()
        if with_coalition is None:
            with_coalition = self.polity == "pr"
        if not with_coalition:
            params.update(t_L=None, t_S=None, alpha=None)
        return Scenario.from_params(params)


def _parse_number(raw: str, line: int, key: str) -> float:
    try:
        value = float(raw)
    except ValueError:
        raise ScenarioParseError(f"expected a number, got {raw!r}", line, key) from None
    if not math.isfinite(value):
        raise ScenarioParseError(f"value must be finite, got {raw!r}", line, key)
    return value


def _split_list(raw: str) -> list[str]:
    raw = raw.strip()
    if raw.startswith("[") and raw.endswith("]"):
        raw = raw[1:-1]
    return [item.strip() for item in raw.split(",") if item.strip()]


def parse_scenario_text(text: str, require_polity: bool = True) -> ScenarioFile:
    values: dict = {}
    lines: dict = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ScenarioParseError(f"expected 'key = value', got {content!r}", lineno)
        key, raw = (part.strip() for part in content.split("=", 1))
        if key not in KNOWN_KEYS:
            raise ScenarioParseError(f"unknown key; expected one of {', '.join(KNOWN_KEYS)}",
                                     lineno, key)
        if key in values:
            raise ScenarioParseError(f"duplicate key (first set on line {lines[key]})", lineno, key)
        if not raw:
            raise ScenarioParseError("missing value", lineno, key)
        if key == "polity":
            value = raw.lower()
            if value not in ("smd", "pr"):
                raise ScenarioParseError(f"polity must be 'smd' or 'pr', got {raw!r}", lineno, key)
        elif key == "peaks":
            items = _split_list(raw)
            if not items:
                raise ScenarioParseError("peaks list is empty", lineno, key)
            value = [_parse_number(item, lineno, key) for item in items]
            if any(p < 0 for p in value):
                raise ScenarioParseError("peaks must be >= 0", lineno, key)
        elif key == "labels":
            value = _split_list(raw)
            if not value:
                raise ScenarioParseError("labels list is empty", lineno, key)
        else:
            value = _parse_number(raw, lineno, key)
        values[key] = value
        lines[key] = lineno

    if "polity" not in values:
        if require_polity:
            raise ScenarioParseError("missing required key", key="polity")
        values["polity"] = "pr" if "alpha" in values else "smd"
    if "t_f" not in values:
        raise ScenarioParseError("missing required key", key="t_f")
    if ("t_m" in values) == ("peaks" in values):
        raise ScenarioParseError("give exactly one of t_m or peaks", key="t_m")
    if "labels" in values:
        if "peaks" not in values:
            raise ScenarioParseError("labels need a peaks list", lines["labels"], "labels")
        if len(values["labels"]) != len(values["peaks"]):
            raise ScenarioParseError(
                f"{len(values['labels'])} labels for {len(values['peaks'])} peaks",
                lines["labels"], "labels")
        for k in ("t_L", "t_S"):
            if k in values:
                raise ScenarioParseError("give either t_L/t_S or labels, not both", lines[k], k)
    elif ("t_L" in values) != ("t_S" in values):
        missing = "t_S" if "t_L" in values else "t_L"
        raise ScenarioParseError("t_L and t_S must be given together", key=missing)
    if values["polity"] == "pr":
        if "alpha" not in values:
            raise ScenarioParseError("polity 'pr' needs alpha", key="alpha")
        if "labels" not in values and "t_L" not in values:
            raise ScenarioParseError("polity 'pr' needs t_L/t_S or labels", key="t_L")
    return ScenarioFile(**values)


def load_scenario_file(path, require_polity: bool = True) -> ScenarioFile:
    with open(path, encoding="utf-8") as fh:
        return parse_scenario_text(fh.read(), require_polity)


# --- result records ------------------------------------------------------------

OUTCOME_FIELDS = ("gov_ideal", "t_star", "m_min", "m_max", "m_star",
                  "gov_surplus", "lobby_surplus")
REPORT_FIELDS = ("t_star_smd", "t_star_pr", "m_star_smd", "m_star_pr",
                 "tariff_gap", "transfer_gap", "holds")


def scenario_fields(params: dict) -> dict:
    return {k: params.get(k) for k in NUMBER_KEYS}


def outcome_fields(outcome: BargainOutcome | None, prefix: str = "") -> dict:
    out = {prefix + k: (getattr(outcome, k) if outcome else None) for k in OUTCOME_FIELDS}
    members = outcome.member_payoffs if outcome else None
    out[prefix + "member_large"] = members[0] if members else None
    out[prefix + "member_small"] = members[1] if members else None
    return out


def report_fields(report: TheoremReport | None) -> dict:
    return {k: (getattr(report, k) if report else None) for k in REPORT_FIELDS}


def _fmt_csv(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return format(value, CSV_FORMAT)
    return str(value)


def _parse_csv(cell: str):
    if cell == "":
        return None
    if cell in ("true", "false"):
        return cell == "true"
    try:
        return float(cell)
    except ValueError:
        return cell


def to_csv(records: list[dict]) -> str:
    """Header row plus one line per record; floats at 12 significant digits."""
    if not records:
        return ""
    header = list(records[0])
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for rec in records:
        if list(rec) != header:
            raise ValueError("all records in one table must share the same fields")
        writer.writerow([_fmt_csv(rec[k]) for k in header])
    return buf.getvalue()


def from_csv(text: str) -> list[dict]:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        return []
    header, body = rows[0], rows[1:]
    return [{k: _parse_csv(v) for k, v in zip(header, row)} for row in body]


def to_json(records: list[dict]) -> str:
    """JSON array; floats keep full round-trip precision."""
    return json.dumps(records, indent=2, allow_nan=False) + "\n"


def from_json(text: str) -> list[dict]:
    return json.loads(text)


def emit(records: list[dict], fmt: str) -> str:
    if fmt == "csv":
        return to_csv(records)
    if fmt == "json":
        return to_json(records)
    raise ValueError(f"unknown format {fmt!r}")
