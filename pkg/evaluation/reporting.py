import json
from pathlib import Path
from typing import Iterable, List, Union

import pandas as pd
from tabulate import tabulate

from models.experiment import MetricReport
from models.reports import BOUND_CSV_FIELDS, BoundReport

METRIC_CSV_FIELDS = ["trial", "k", "policy", "users", "skipped", "accuracy", "sequence_score", "relevance_distance"]


def write_metric_csv(report: MetricReport, path: Union[str, Path]):
    # object dtype keeps ints as ints and writes a missing relevance distance as an empty cell
    frame = pd.DataFrame([row.model_dump() for row in report.rows], columns=METRIC_CSV_FIELDS, dtype=object)
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")


def summary_json(report: MetricReport) -> str:
    payload = {
        "task": report.task,
        "summary": [s.model_dump() for s in report.summary()],
    }
    return json.dumps(payload, indent=2, sort_keys=True) + "\n"


def write_summary_json(report: MetricReport, path: Union[str, Path]):
    Path(path).write_text(summary_json(report), encoding="utf-8", newline="\n")


def summary_table(report: MetricReport) -> str:
    headers = ["k", "policy", "trials", "accuracy", "± se", "sequence", "± se"]
    if report.task == "navigation":
        headers += ["relevance", "± se"]
    rows: List[list] = []
    for s in report.summary():
        row = [s.k, s.policy, s.trials, s.accuracy_mean, s.accuracy_se, s.sequence_score_mean, s.sequence_score_se]
        if report.task == "navigation":
            row += [s.relevance_distance_mean, s.relevance_distance_se]
        rows.append(row)
    return tabulate(rows, headers=headers, floatfmt=".4f")


def write_bound_csv(reports: Iterable[BoundReport], path: Union[str, Path]):
    frame = pd.DataFrame([report.csv_row() for report in reports], columns=BOUND_CSV_FIELDS, dtype=object)
    frame.to_csv(path, index=False, lineterminator="\n", encoding="utf-8")


def bound_table(reports: List[BoundReport]) -> str:
    held = sum(r.holds for r in reports)
    worst = min(reports, key=lambda r: r.ratio - r.bound, default=None)
    rows = [["instances", len(reports)], ["bound holds", held], ["violations", len(reports) - held]]
    if worst is not None:
        rows += [["tightest seed", worst.seed], ["tightest ratio", worst.ratio], ["its bound", worst.bound]]
    return tabulate(rows, tablefmt="plain")
