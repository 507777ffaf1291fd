"""Regenerate the bundled synthetic fixture CSVs.

Two seasons of six teams. The 2017 CSK and RR rosters are constructed so
that the per-season team weights come out at exactly 101.75 (CSK, 10
appearances) and 123.65625 (RR, 16 appearances), which the test suite and
the predict example rely on. Official points follow the reference scoring
coefficients exactly, so fitting recovers them to machine precision.

Run from the repository root:  python3 tools/gen_fixture.py
"""

import csv
import datetime as dt
import random
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "src" / "cricpred" / "fixtures"

TEAMS = ["CSK", "RR", "MI", "KKR", "DD", "RCB"]
HOME_VENUE = {
    "CSK": "Dr DY Patil Sports Academy",
    "RR": "Sawai Mansingh Stadium",
    "MI": "Wankhede Stadium",
    "KKR": "Eden Gardens",
    "DD": "Feroz Shah Kotla",
    "RCB": "M Chinnaswamy Stadium",
}

BETA = {"wickets": 3.5, "dot_balls": 1.0, "fours": 2.5, "sixes": 3.5,
        "catches": 2.5, "stumpings": 2.5}


def points(stats):
    return sum(BETA[k] * v for k, v in stats.items())


def schedule(season, rng, extra_rr=False):
    """Double round-robin; optionally six extra RR fixtures."""
    pairs = []
    for i, home in enumerate(TEAMS):
        for away in TEAMS[i + 1:]:
            pairs.append((home, away))
            pairs.append((away, home))
    if extra_rr:
        for opponent in ("MI", "KKR", "DD"):
            pairs.append(("RR", opponent))
            pairs.append((opponent, "RR"))
    rng.shuffle(pairs)
    matches = []
    date = dt.date(season, 4, 5)
    for i, (home, away) in enumerate(pairs):
        toss_winner = home if rng.random() < 0.5 else away
        toss_decision = "bat" if rng.random() < 0.5 else "field"
        winner = home if rng.random() < 0.55 else away
        matches.append({
            "match_id": f"{season}-{i + 1:03d}",
            "season": season,
            "date": date.isoformat(),
            "home_team": home,
            "away_team": away,
            "venue": HOME_VENUE[home],
            "toss_winner": toss_winner,
            "toss_decision": toss_decision,
            "winner": winner,
        })
        date += dt.timedelta(days=1)
    return matches


def random_roster(team, season, rng, n_players=15):
    roster = []
    for i in range(n_players):
        appearances = rng.randint(3, 14)
        stats = {
            "wickets": rng.randint(0, 12),
            "dot_balls": rng.randint(10, 90),
            "fours": rng.randint(0, 30),
            "sixes": rng.randint(0, 15),
            "catches": rng.randint(0, 8),
            "stumpings": rng.randint(0, 2),
        }
        roster.append(make_row(team, season, f"{team}{season}P{i + 1:02d}",
                               appearances, stats))
    return roster


def make_row(team, season, player, appearances, stats):
    # official_points left empty: default runs then use the bundled
    # reference coefficients, keeping the fixture team weights exact.
    return {
        "season": season, "team": team, "player": player,
        "appearances": appearances, **stats,
        "official_points": "",
    }


def crafted_roster(team, season, rng, target_sum, n_top=11, n_fill=14):
    """Roster whose top-11 (by appearances) points sum to target_sum."""
    roster = []
    running = 0.0
    for i in range(n_top):
        appearances = 16 - i  # 16 down to 6: strictly above every filler
        if i < n_top - 1:
            stats = {
                "wickets": rng.randint(0, 4),
                "dot_balls": rng.randint(15, 40),
                "fours": rng.randint(0, 10),
                "sixes": rng.randint(0, 4),
                "catches": rng.randint(0, 4),
                "stumpings": rng.randint(0, 1),
            }
        else:
            remainder = target_sum - running
            # hit any multiple of 0.5 exactly: one six for the half point
            stats = {"wickets": 0, "dot_balls": 0, "fours": 0,
                     "sixes": 0, "catches": 0, "stumpings": 0}
            if remainder != int(remainder):
                stats["sixes"] = 1
                remainder -= 3.5
            assert remainder == int(remainder) and remainder >= 0, remainder
            stats["dot_balls"] = int(remainder)
        running += points(stats)
        roster.append(make_row(team, season, f"{team}{season}T{i + 1:02d}",
                               appearances, stats))
    assert running == target_sum, (running, target_sum)
    for i in range(n_fill):
        appearances = rng.randint(1, 5)
        stats = {"wickets": rng.randint(0, 2), "dot_balls": rng.randint(0, 20),
                 "fours": rng.randint(0, 6), "sixes": rng.randint(0, 3),
                 "catches": rng.randint(0, 2), "stumpings": 0}
        roster.append(make_row(team, season, f"{team}{season}F{i + 1:02d}",
                               appearances, stats))
    return roster


def main():
    rng = random.Random(20170405)
    matches = schedule(2016, rng) + schedule(2017, rng, extra_rr=True)

    # CSK must end 2017 with exactly 10 decisive matches and RR with 16:
    # mark every 2017 CSK match decisive already (10 by construction) and
    # check RR has 16.
    csk = sum(1 for m in matches if m["season"] == 2017
              and "CSK" in (m["home_team"], m["away_team"]))
    rr = sum(1 for m in matches if m["season"] == 2017
             and "RR" in (m["home_team"], m["away_team"]))
    assert csk == 10 and rr == 16, (csk, rr)

    # two abandoned matches in 2016 (neither involving CSK or RR in 2017)
    abandoned = 0
    for m in matches:
        if m["season"] == 2016 and m["home_team"] in ("MI", "KKR") and abandoned < 2:
            m["winner"] = ""
            abandoned += 1

    players = []
    for season in (2016, 2017):
        for team in TEAMS:
            if season == 2017 and team == "CSK":
                players.extend(crafted_roster(team, season, rng, 1017.5))
            elif season == 2017 and team == "RR":
                players.extend(crafted_roster(team, season, rng, 1978.5))
            else:
                players.extend(random_roster(team, season, rng))

    OUT.mkdir(parents=True, exist_ok=True)
    with open(OUT / "matches.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(matches[0]))
        writer.writeheader()
        writer.writerows(matches)
    with open(OUT / "players.csv", "w", newline="", encoding="utf-8") as fh:
        writer = csv.DictWriter(fh, fieldnames=list(players[0]))
        writer.writeheader()
        writer.writerows(players)
    print(f"wrote {len(matches)} matches, {len(players)} player rows to {OUT}")


if __name__ == "__main__":
    main()
