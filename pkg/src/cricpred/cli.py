"""Command-line entry point: ingest, fit-points, team-weights,
select-features, train, cv, predict, report.

Exit codes: 0 success, 2 ingestion/validation errors, 3 training/model
errors, 4 prediction-input errors.
"""

from __future__ import annotations

import argparse
import csv
import sys
from dataclasses import dataclass
from pathlib import Path

from . import errors
from .dataset import load_matches, load_player_performances
from .evaluation import cross_validate, evaluate_holdout
from .features import build_schema, encode, encode_values, rfe_select
from .models import base as model_base
from .scoring import REFERENCE_POINTS_MODEL, fit_points_model
from .strength import PER_MATCH, PER_SEASON, build_ledger

EXIT_VALIDATION = 2
EXIT_TRAINING = 3
EXIT_PREDICTION = 4

DEFAULT_SEED = 0


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


@dataclass
class RunConfig:
    matches: str | None = None
    players: str | None = None
    model: str | None = None
    out_dir: str = "."
    mode: str = PER_SEASON
    kind: str = "mlp"
    k: int = 10
    seed: int = DEFAULT_SEED
    holdout_season: int | None = None
    target_count: int | None = None
    resamples: int = 5


_INT_KEYS = {"k", "seed", "holdout_season", "target_count", "resamples"}


def _read_config_file(path):
    values = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if "=" not in line:
                raise CliError(f"{path} line {lineno}: expected key = value",
                               EXIT_VALIDATION)
            key, _, value = line.partition("=")
            values[key.strip()] = value.strip()
    return values


def _build_config(args) -> RunConfig:
    config = RunConfig()
    if getattr(args, "config", None):
        for key, value in _read_config_file(args.config).items():
            if not hasattr(config, key):
                raise CliError(f"unknown config key {key!r}", EXIT_VALIDATION)
            setattr(config, key, int(value) if key in _INT_KEYS else value)
    for key in vars(config):
        flag = getattr(args, key, None)
        if flag is not None:
            setattr(config, key, flag)
    Path(config.out_dir).mkdir(parents=True, exist_ok=True)
    return config


def _load_inputs(config, need_players=True):
    if not config.matches:
        raise CliError("a matches CSV is required (--matches)", EXIT_VALIDATION)
    try:
        dataset = load_matches(config.matches)
        players = []
        if need_players:
            if not config.players:
                raise CliError("a players CSV is required (--players)",
                               EXIT_VALIDATION)
            players = load_player_performances(config.players)
    except errors.IngestionError as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from None
    return dataset, players


def _points_model(players):
    """Fit when official points are available, else the bundled reference."""
    usable = sum(1 for p in players if p.official_points is not None)
    if usable >= 7:
        try:
            return fit_points_model(players), "fitted"
        except errors.RankDeficient:
            return REFERENCE_POINTS_MODEL, "reference (fit was rank deficient)"
    return REFERENCE_POINTS_MODEL, "reference"


def _write_csv(path, header, rows):
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        writer.writerows(rows)


# --- subcommands -----------------------------------------------------------

def cmd_ingest(config):
    dataset, players = _load_inputs(config)
    excluded = sum(1 for m in dataset.matches if not m.has_result)
    print(f"{len(dataset.matches)} matches loaded, {excluded} excluded (no result)")
    print(f"{len(players)} player-season rows loaded")
    print(f"{len(dataset.venues)} venues, seasons {dataset.seasons()}")
    if not players:
        raise CliError(
            "InsufficientData: players file has no rows; downstream fitting "
            "and team weights will fail", EXIT_VALIDATION)
    return 0


def cmd_fit_points(config):
    _, players = _load_inputs(config)
    try:
        model = fit_points_model(players)
    except (errors.InsufficientData, errors.RankDeficient) as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from None
    for key, value in model.to_dict().items():
        print(f"{key} = {value:.10g}")
    out = Path(config.out_dir) / "points_model.json"
    model_base.save_document(
        {"format_version": model_base.FORMAT_VERSION, "points_model": model.to_dict()},
        out)
    print(f"wrote {out}")
    return 0


def cmd_team_weights(config):
    dataset, players = _load_inputs(config)
    points, origin = _points_model(players)
    try:
        ledger = build_ledger(points, players, dataset, mode=config.mode)
    except errors.CricpredError as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from None
    rows = [(t, s, a, repr(w)) for t, s, a, w in ledger.rows()]
    out = Path(config.out_dir) / "team_weights.csv"
    _write_csv(out, ["team", "season", "as_of", "weight"], rows)
    for row in rows:
        print(",".join(str(v) for v in row))
    print(f"points model: {origin}; wrote {out}", file=sys.stderr)
    return 0


def _encoded_dataset(config, dataset, players, seasons=None):
    points, origin = _points_model(players)
    if seasons is not None:
        from .dataset import MatchDataset
        kept = tuple(m for m in dataset.matches if m.season in seasons)
        filtered = MatchDataset(matches=kept, registry=dataset.registry,
                                venues=tuple(sorted({m.venue for m in kept})))
    else:
        filtered = dataset
    try:
        ledger = build_ledger(points, players, filtered, mode=config.mode)
        schema = build_schema(filtered)
        encoded = encode(filtered, ledger, schema)
    except errors.CricpredError as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from None
    return encoded, points, ledger, origin


def cmd_select_features(config):
    dataset, players = _load_inputs(config)
    encoded, *_ = _encoded_dataset(config, dataset, players)
    target = config.target_count or len(encoded.schema.feature_names())
    try:
        result = rfe_select(encoded, target, resamples=config.resamples,
                            seed=config.seed)
    except errors.CricpredError as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from None
    scores = dict((size, acc) for size, acc in result.per_subset_scores)
    print(f"{'rank':>4}  {'feature':<18}  {'cv_acc_at_subset':>16}")
    rows = []
    for rank, name in enumerate(result.ranking, start=1):
        subset_size = len(result.ranking) - rank + 1
        acc = scores[subset_size]
        marker = "*" if name in result.selected else " "
        print(f"{rank:>4}{marker} {name:<18}  {acc:>16.4f}")
        rows.append((rank, name, int(name in result.selected), repr(acc)))
    print(f"selected: {', '.join(result.selected)}")
    print(f"stability: {result.stability_agreement:.0%} agreement over "
          f"{result.stability_runs} resamples")
    out = Path(config.out_dir) / "feature_ranking.csv"
    _write_csv(out, ["rank", "feature", "selected", "cv_accuracy"], rows)
    print(f"wrote {out}", file=sys.stderr)
    return 0


def _training_seasons(dataset, holdout_season):
    seasons = dataset.seasons()
    if holdout_season is None:
        return set(seasons)
    training = {s for s in seasons if s < holdout_season}
    if not training:
        raise CliError(
            f"holdout season {holdout_season} overlaps the entire training "
            f"range (seasons {seasons})", EXIT_TRAINING)
    return training


def cmd_train(config):
    dataset, players = _load_inputs(config)
    training = _training_seasons(dataset, config.holdout_season)
    encoded, points, ledger, origin = _encoded_dataset(
        config, dataset, players, seasons=training)
    if config.target_count:
        result = rfe_select(encoded, config.target_count,
                            resamples=config.resamples, seed=config.seed)
        encoded = encoded.subset(result.selected)
        print(f"RFE selected: {', '.join(result.selected)}")
    kinds = model_base.KINDS if config.kind == "all" else [config.kind]
    written = []
    for kind in kinds:
        spec = model_base.make_spec(kind, seed=config.seed)
        try:
            model = model_base.train(spec, encoded)
        except errors.CricpredError as exc:
            raise CliError(f"training {kind} failed: {exc}", EXIT_TRAINING) from None
        doc = model_base.serialize(model, points_model=points, ledger=ledger)
        path = Path(config.out_dir) / f"model_{kind}.json"
        model_base.save_document(doc, path)
        written.append(path)
        print(f"wrote {path} ({model.training_rows} training rows, "
              f"points model: {origin})")
    return 0


def cmd_cv(config):
    dataset, players = _load_inputs(config)
    encoded, *_ = _encoded_dataset(config, dataset, players)
    spec = model_base.make_spec(config.kind, seed=config.seed)
    try:
        report = cross_validate(spec, encoded, config.k, config.seed)
    except errors.CricpredError as exc:
        raise CliError(str(exc), EXIT_TRAINING) from None
    _print_report(report, f"{config.k}-fold stratified CV, {config.kind}")
    out = Path(config.out_dir) / f"cv_report_{config.kind}.csv"
    _write_report_csv(report, out)
    print(f"wrote {out}", file=sys.stderr)
    return 0


def _latest_weight(ledger, team):
    candidates = [(s, a, w) for t, s, a, w in ledger.rows() if t == team]
    if not candidates:
        raise CliError(f"team {team} is absent from the model's weight ledger "
                       "and no cold-start data exists", EXIT_PREDICTION)
    return candidates[-1][2]


def cmd_predict(config, home, away, venue, toss_winner, toss_decision):
    if not config.model:
        raise CliError("a model document is required (--model)", EXIT_PREDICTION)
    try:
        document = model_base.load_document(config.model)
    except errors.CricpredError as exc:
        raise CliError(str(exc), EXIT_TRAINING) from None
    if home == away:
        raise CliError("home and away teams must differ", EXIT_PREDICTION)
    if toss_winner not in (home, away):
        raise CliError(f"toss_winner {toss_winner} is not one of the two teams",
                       EXIT_PREDICTION)
    if document.ledger is None:
        raise CliError("model document carries no team weights", EXIT_PREDICTION)
    w1 = _latest_weight(document.ledger, home)
    w2 = _latest_weight(document.ledger, away)
    row = encode_values(
        document.model.schema,
        {"home_team": home, "away_team": away, "toss_winner": toss_winner,
         "toss_decision": toss_decision, "venue": venue},
        {"home_team_weight": w1, "away_team_weight": w2})
    p_home = document.model.predict_proba(row)
    winner = home if p_home >= 0.5 else away
    print(f"predicted winner: {winner}")
    print(f"home win probability: {p_home:.4f}")
    print(f"team weights: w1={w1!r} (home {home}), w2={w2!r} (away {away})")
    return 0


def cmd_report(config):
    if not config.model:
        raise CliError("a model document is required (--model)", EXIT_VALIDATION)
    if config.holdout_season is None:
        raise CliError("--holdout-season is required for report", EXIT_VALIDATION)
    try:
        document = model_base.load_document(config.model)
    except errors.CricpredError as exc:
        raise CliError(str(exc), EXIT_TRAINING) from None
    dataset, players = _load_inputs(config)
    points = document.points_model or REFERENCE_POINTS_MODEL
    mode = document.ledger.mode if document.ledger else config.mode
    try:
        ledger = build_ledger(points, players, dataset, mode=mode)
    except errors.CricpredError as exc:
        raise CliError(str(exc), EXIT_VALIDATION) from None
    from .dataset import MatchDataset
    kept = tuple(m for m in dataset.matches if m.season == config.holdout_season)
    if not kept:
        raise CliError(f"no matches in holdout season {config.holdout_season}",
                       EXIT_VALIDATION)
    holdout = MatchDataset(matches=kept, registry=dataset.registry,
                           venues=tuple(sorted({m.venue for m in kept})))
    encoded = encode(holdout, ledger, document.model.schema)
    try:
        report, rows = evaluate_holdout(document.model, encoded)
    except errors.SchemaMismatch as exc:
        raise CliError(str(exc), EXIT_TRAINING) from None
    _print_report(report, f"holdout season {config.holdout_season}, "
                          f"{document.model.spec.kind}")
    out_dir = Path(config.out_dir)
    _write_report_csv(report, out_dir / "holdout_report.csv")
    _write_csv(out_dir / "holdout_predictions.csv",
               ["match_id", "probability", "predicted", "actual"],
               [(mid, repr(p), pred, actual) for mid, p, pred, actual in rows])
    print(f"wrote {out_dir / 'holdout_report.csv'} and "
          f"{out_dir / 'holdout_predictions.csv'}", file=sys.stderr)
    return 0


def _print_report(report, title):
    print(title)
    print(f"evaluated: {report.n_evaluated}, correct: {report.correct}, "
          f"accuracy: {report.accuracy:.4f}")
    print(f"{'class':>12}  {'precision':>9}  {'recall':>9}  {'f1':>9}  {'support':>7}")
    for cls in (0, 1):
        m = report.per_class[cls]
        print(f"{cls:>12}  {m.precision:>9.4f}  {m.recall:>9.4f}  "
              f"{m.f1:>9.4f}  {m.support:>7}")
    w = report.weighted_avg
    print(f"{'weighted_avg':>12}  {w.precision:>9.4f}  {w.recall:>9.4f}  "
          f"{w.f1:>9.4f}  {w.support:>7}")
    print(f"confusion (rows=actual 0/1, cols=predicted 0/1): {report.confusion}")
    if report.per_fold:
        folds = ", ".join(f"{a:.4f}" for a in report.per_fold)
        print(f"per-fold accuracy: {folds}")
    for flag in report.zero_division_flags:
        print(f"note: {flag}")


def _write_report_csv(report, path):
    rows = [("accuracy", repr(report.accuracy)),
            ("n_evaluated", report.n_evaluated),
            ("correct", report.correct)]
    for cls in (0, 1):
        m = report.per_class[cls]
        rows += [(f"precision_{cls}", repr(m.precision)),
                 (f"recall_{cls}", repr(m.recall)),
                 (f"f1_{cls}", repr(m.f1)),
                 (f"support_{cls}", m.support)]
    w = report.weighted_avg
    rows += [("weighted_precision", repr(w.precision)),
             ("weighted_recall", repr(w.recall)),
             ("weighted_f1", repr(w.f1))]
    for i, acc in enumerate(report.per_fold):
        rows.append((f"fold_{i}_accuracy", repr(acc)))
    _write_csv(path, ["metric", "value"], rows)


def _add_common(parser):
    parser.add_argument("--config", help="key = value config file")
    parser.add_argument("--seed", type=int, default=None)
    parser.add_argument("--out-dir", dest="out_dir", default=None)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="cricpred",
        description="Twenty20 league match-outcome prediction pipeline")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kwargs):
        p = sub.add_parser(name, **kwargs)
        _add_common(p)
        return p

    p = add("ingest", help="validate the matches and players CSVs")
    p.add_argument("--matches")
    p.add_argument("--players")

    p = add("fit-points", help="fit the player-points regression")
    p.add_argument("--matches")
    p.add_argument("--players")

    p = add("team-weights", help="emit per-team strength weights as CSV")
    p.add_argument("--matches")
    p.add_argument("--players")
    p.add_argument("--mode", choices=[PER_SEASON, PER_MATCH], default=None)

    p = add("select-features", help="rank features by recursive elimination")
    p.add_argument("--matches")
    p.add_argument("--players")
    p.add_argument("--mode", choices=[PER_SEASON, PER_MATCH], default=None)
    p.add_argument("--target-count", dest="target_count", type=int, default=None)
    p.add_argument("--resamples", type=int, default=None)

    p = add("train", help="train classifier(s) and write model documents")
    p.add_argument("--matches")
    p.add_argument("--players")
    p.add_argument("--mode", choices=[PER_SEASON, PER_MATCH], default=None)
    p.add_argument("--kind", choices=model_base.KINDS + ["all"], default=None)
    p.add_argument("--holdout-season", dest="holdout_season", type=int, default=None)
    p.add_argument("--target-count", dest="target_count", type=int, default=None,
                   help="run RFE first and train on the selected features")
    p.add_argument("--resamples", type=int, default=None)

    p = add("cv", help="stratified k-fold cross-validation")
    p.add_argument("--matches")
    p.add_argument("--players")
    p.add_argument("--mode", choices=[PER_SEASON, PER_MATCH], default=None)
    p.add_argument("--kind", choices=model_base.KINDS, default=None)
    p.add_argument("--k", type=int, default=None)

    p = add("predict", help="predict one match from post-toss inputs")
    p.add_argument("--model")
    p.add_argument("--home", required=True)
    p.add_argument("--away", required=True)
    p.add_argument("--venue", required=True)
    p.add_argument("--toss-winner", dest="toss_winner", required=True)
    p.add_argument("--toss-decision", dest="toss_decision", required=True,
                   choices=["bat", "field"])

    p = add("report", help="evaluate a model on a holdout season")
    p.add_argument("--model")
    p.add_argument("--matches")
    p.add_argument("--players")
    p.add_argument("--holdout-season", dest="holdout_season", type=int, default=None)

    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        config = _build_config(args)
        if args.command == "ingest":
            return cmd_ingest(config)
        if args.command == "fit-points":
            return cmd_fit_points(config)
        if args.command == "team-weights":
            return cmd_team_weights(config)
        if args.command == "select-features":
            return cmd_select_features(config)
        if args.command == "train":
            return cmd_train(config)
        if args.command == "cv":
            return cmd_cv(config)
        if args.command == "predict":
            return cmd_predict(config, args.home, args.away, args.venue,
                               args.toss_winner, args.toss_decision)
        if args.command == "report":
            return cmd_report(config)
        raise AssertionError(args.command)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
