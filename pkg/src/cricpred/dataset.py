"""Domain types, team registry and CSV ingestion for match and player data."""

from __future__ import annotations

import csv
import datetime as dt
import re
from dataclasses import dataclass, field

from .errors import (
    DuplicatePlayer,
    InvalidRow,
    MissingColumn,
    NegativeStat,
    NoResult,
    UnknownTeam,
)

NO_RESULT = ""

MATCH_COLUMNS = [
    "match_id", "season", "date", "home_team", "away_team",
    "venue", "toss_winner", "toss_decision", "winner",
]

PLAYER_COLUMNS = [
    "season", "team", "player", "appearances", "wickets", "dot_balls",
    "fours", "sixes", "catches", "stumpings", "official_points",
]

STAT_FIELDS = ["wickets", "dot_balls", "fours", "sixes", "catches", "stumpings"]


@dataclass(frozen=True)
class TeamId:
    acronym: str
    full_name: str
    active: bool = True

    def __post_init__(self):
        if not self.acronym or len(self.acronym) > 5 or self.acronym != self.acronym.upper():
            raise ValueError(f"bad team acronym: {self.acronym!r}")


class TeamRegistry:
    """Lookup table of known teams keyed by acronym."""

    def __init__(self, teams):
        self._teams = {}
        for team in teams:
            if team.acronym in self._teams:
                raise ValueError(f"duplicate acronym {team.acronym}")
            self._teams[team.acronym] = team

    def __contains__(self, acronym):
        return acronym in self._teams

    def __iter__(self):
        return iter(self._teams.values())

    def __len__(self):
        return len(self._teams)

    def __eq__(self, other):
        return isinstance(other, TeamRegistry) and self._teams == other._teams

    def get(self, acronym: str) -> TeamId:
        try:
            return self._teams[acronym]
        except KeyError:
            raise UnknownTeam(f"unknown team acronym {acronym!r}") from None


def default_registry() -> TeamRegistry:
    """The 13 historical league teams; five are inactive as of 2018."""
    active = [
        ("CSK", "Chennai Super Kings"),
        ("DD", "Delhi Daredevils"),
        ("KXIP", "Kings XI Punjab"),
        ("KKR", "Kolkata Knight Riders"),
        ("MI", "Mumbai Indians"),
        ("RR", "Rajasthan Royals"),
        ("RCB", "Royal Challenger Bangalore"),
        ("SRH", "Sunrisers Hyderabad"),
    ]
    inactive = [
        ("RPS", "Rising Pune Supergiant"),
        ("DC", "Deccan Chargers"),
        ("PWI", "Pune Warriors India"),
        ("GL", "Gujrat Lions"),
        ("KTK", "Kochi Tuskers Kerala"),
    ]
    teams = [TeamId(a, n, True) for a, n in active]
    teams += [TeamId(a, n, False) for a, n in inactive]
    return TeamRegistry(teams)


def normalize_venue(venue: str) -> str:
    return re.sub(r"\s+", " ", venue.strip())


@dataclass(frozen=True)
class MatchRecord:
    match_id: str
    season: int
    date: dt.date
    home_team: str
    away_team: str
    venue: str
    toss_winner: str
    toss_decision: str  # "bat" or "field"
    winner: str  # acronym, or NO_RESULT

    @property
    def has_result(self) -> bool:
        return self.winner != NO_RESULT


@dataclass(frozen=True)
class PlayerPerformance:
    season: int
    team: str
    player: str
    appearances: int
    wickets: int
    dot_balls: int
    fours: int
    sixes: int
    catches: int
    stumpings: int
    official_points: float | None = None

    def stats(self):
        return (self.wickets, self.dot_balls, self.fours, self.sixes,
                self.catches, self.stumpings)


@dataclass(frozen=True)
class MatchDataset:
    matches: tuple[MatchRecord, ...]
    registry: TeamRegistry
    venues: tuple[str, ...] = field(default=())

    def decisive(self):
        return [m for m in self.matches if m.has_result]

    def seasons(self):
        return sorted({m.season for m in self.matches})


def label_of(match: MatchRecord) -> int:
    """1 when the home team won, 0 when the away team won.

    The 0/1 convention is fixed here and recorded in model metadata.
    """
    if not match.has_result:
        raise NoResult(f"match {match.match_id} has no decisive winner")
    return 1 if match.winner == match.home_team else 0


def _require_columns(header, required, path):
    missing = [c for c in required if c not in header]
    if missing:
        raise MissingColumn(f"{path}: header lacks column(s) {', '.join(missing)}")


def _parse_int(value, column, rownum, path, minimum=None):
    try:
        parsed = int(value)
    except ValueError:
        raise InvalidRow(f"{path} row {rownum}: {column}={value!r} is not an integer") from None
    if minimum is not None and parsed < minimum:
        raise NegativeStat(f"{path} row {rownum}: {column}={parsed} below {minimum}")
    return parsed


def load_matches(path, registry: TeamRegistry | None = None) -> MatchDataset:
    """Load and validate a matches CSV, returning a date-sorted dataset.

    Rows with an empty ``winner`` are retained and flagged via
    ``MatchRecord.has_result``. Unknown columns are ignored.
    """
    if registry is None:
        registry = default_registry()
    matches = []
    seen_ids = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise MissingColumn(f"{path}: empty file, no header")
        _require_columns(reader.fieldnames, MATCH_COLUMNS, path)
        for rownum, row in enumerate(reader, start=2):
            match_id = row["match_id"].strip()
            if match_id in seen_ids:
                raise InvalidRow(
                    f"{path} row {rownum}: duplicate match_id {match_id!r} "
                    f"(first seen at row {seen_ids[match_id]})")
            seen_ids[match_id] = rownum
            season = _parse_int(row["season"], "season", rownum, path)
            try:
                date = dt.date.fromisoformat(row["date"].strip())
            except ValueError:
                raise InvalidRow(f"{path} row {rownum}: bad date {row['date']!r}") from None
            home = row["home_team"].strip()
            away = row["away_team"].strip()
            toss_winner = row["toss_winner"].strip()
            winner = row["winner"].strip()
            for acr in (home, away, toss_winner) + ((winner,) if winner else ()):
                if acr not in registry:
                    raise UnknownTeam(f"{path} row {rownum}: unknown team acronym {acr!r}")
            if home == away:
                raise InvalidRow(f"{path} row {rownum}: home_team equals away_team ({home})")
            if toss_winner not in (home, away):
                raise InvalidRow(
                    f"{path} row {rownum}: toss_winner {toss_winner} is not a participant")
            if winner and winner not in (home, away):
                raise InvalidRow(
                    f"{path} row {rownum}: winner {winner} is not a participant")
            toss_decision = row["toss_decision"].strip()
            if toss_decision not in ("bat", "field"):
                raise InvalidRow(
                    f"{path} row {rownum}: toss_decision must be bat or field, "
                    f"got {toss_decision!r}")
            if date.year not in (season, season + 1):
                raise InvalidRow(
                    f"{path} row {rownum}: date {date} inconsistent with season {season}")
            matches.append(MatchRecord(
                match_id=match_id, season=season, date=date,
                home_team=home, away_team=away,
                venue=normalize_venue(row["venue"]),
                toss_winner=toss_winner, toss_decision=toss_decision,
                winner=winner))
    matches.sort(key=lambda m: (m.date, m.match_id))
    venues = tuple(sorted({m.venue for m in matches}))
    return MatchDataset(matches=tuple(matches), registry=registry, venues=venues)


def load_player_performances(path, registry: TeamRegistry | None = None):
    """Load per-season player statistics, validating counts and uniqueness."""
    if registry is None:
        registry = default_registry()
    rows = []
    seen = {}
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise MissingColumn(f"{path}: empty file, no header")
        _require_columns(reader.fieldnames, PLAYER_COLUMNS, path)
        for rownum, row in enumerate(reader, start=2):
            season = _parse_int(row["season"], "season", rownum, path)
            team = row["team"].strip()
            if team not in registry:
                raise UnknownTeam(f"{path} row {rownum}: unknown team acronym {team!r}")
            player = row["player"].strip()
            key = (season, team, player)
            if key in seen:
                raise DuplicatePlayer(
                    f"{path} row {rownum}: duplicate player {player!r} for "
                    f"{team} {season} (first seen at row {seen[key]})")
            seen[key] = rownum
            appearances = _parse_int(row["appearances"], "appearances", rownum, path, minimum=0)
            stats = {f: _parse_int(row[f], f, rownum, path, minimum=0) for f in STAT_FIELDS}
            if appearances == 0 and any(stats.values()):
                raise InvalidRow(
                    f"{path} row {rownum}: nonzero statistics with zero appearances")
            points_raw = (row.get("official_points") or "").strip()
            official = None
            if points_raw:
                try:
                    official = float(points_raw)
                except ValueError:
                    raise InvalidRow(
                        f"{path} row {rownum}: bad official_points {points_raw!r}") from None
                if official < 0:
                    raise NegativeStat(
                        f"{path} row {rownum}: official_points={official} is negative")
            rows.append(PlayerPerformance(
                season=season, team=team, player=player,
                appearances=appearances, official_points=official, **stats))
    return rows
