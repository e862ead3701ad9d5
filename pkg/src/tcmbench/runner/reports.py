"""Report emission: per-pair JSON, per-item JSONL, leaderboard CSVs.

Everything under ``<output>/reports`` is a pure function of the inputs
(no timestamps), so reruns of identical runs are byte-identical.
"""

from __future__ import annotations

import csv
import io
import json
import re
from pathlib import Path
from typing import Mapping

from ..errors import BenchError
from ..scenarios import MetricReport, ScenarioKind, metric_suite_for
from .leaderboard import leaderboard
from .manifest import COMPLETE, Pair, RunManifest

REPORTS_DIR = "reports"

_SAFE = re.compile(r"[^A-Za-z0-9._-]+")


def safe_name(name: str) -> str:
    return _SAFE.sub("_", name) or "model"


def pair_report_path(output_dir: str | Path, model_id: str, kind: ScenarioKind) -> Path:
    return Path(output_dir) / REPORTS_DIR / kind.value / f"{safe_name(model_id)}.json"


def pair_items_path(output_dir: str | Path, model_id: str, kind: ScenarioKind) -> Path:
    return Path(output_dir) / REPORTS_DIR / kind.value / f"{safe_name(model_id)}.items.jsonl"


def write_pair_report(
    output_dir: str | Path, model_id: str, report: MetricReport
) -> tuple[Path, Path]:
    """Write one (model, scenario) report plus its per-item score lines."""
    report_path = pair_report_path(output_dir, model_id, report.kind)
    items_path = pair_items_path(output_dir, model_id, report.kind)
    payload = {
        "model": model_id,
        "scenario": report.kind.value,
        "n_items": report.n_items,
        "metrics": report.metrics,
        "parse_failure_rate": report.parse_failure_rate,
    }
    lines = [
        json.dumps(
            {"id": row.id, "parsed": row.parsed, "rule": row.rule, "scores": row.scores},
            ensure_ascii=False,
            sort_keys=True,
        )
        for row in report.per_item
    ]
    try:
        report_path.parent.mkdir(parents=True, exist_ok=True)
        report_path.write_text(
            json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n",
            encoding="utf-8",
        )
        items_path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    except OSError as exc:
        raise BenchError(f"cannot write report {report_path}: {exc}") from exc
    return report_path, items_path


def read_pair_report(path: Path) -> dict:
    return json.loads(path.read_text(encoding="utf-8"))


def emit_reports(
    reports: Mapping[Pair, MetricReport],
    manifest: RunManifest,
    output_dir: str | Path,
) -> list[Path]:
    """Write pair reports, per-scenario leaderboards, and the run summary."""
    output_dir = Path(output_dir)
    written: list[Path] = []
    metrics_by_pair: dict[Pair, dict[str, float]] = {}
    for (model_id, kind), report in sorted(reports.items()):
        report_path, items_path = write_pair_report(output_dir, model_id, report)
        written.extend([report_path, items_path])
        metrics_by_pair[(model_id, kind)] = dict(report.metrics)
    written.extend(write_derived_reports(metrics_by_pair, manifest, output_dir))
    return written


def collect_pair_metrics(
    output_dir: str | Path, manifest: RunManifest
) -> dict[Pair, dict[str, float]]:
    """Reload the aggregate metrics of every completed pair from disk."""
    metrics: dict[Pair, dict[str, float]] = {}
    for pair, entry in manifest.entries.items():
        if entry.status != COMPLETE:
            continue
        model_id, kind = pair
        path = pair_report_path(output_dir, model_id, kind)
        if not path.exists():
            continue
        payload = read_pair_report(path)
        metrics[pair] = {k: float(v) for k, v in payload["metrics"].items()}
    return metrics


def write_derived_reports(
    metrics_by_pair: Mapping[Pair, dict[str, float]],
    manifest: RunManifest,
    output_dir: str | Path,
) -> list[Path]:
    """Leaderboard CSVs per scenario plus the deterministic run summary."""
    output_dir = Path(output_dir)
    written: list[Path] = []
    by_kind: dict[ScenarioKind, dict[str, dict[str, float | None]]] = {}
    for (model_id, kind), metrics in metrics_by_pair.items():
        by_kind.setdefault(kind, {})[model_id] = dict(metrics)
    for kind, model_scores in sorted(by_kind.items()):
        written.append(write_leaderboard_csv(output_dir, kind, model_scores))

    summary = {
        "config_digest": manifest.config_digest,
        "decode": manifest.decode,
        "complete": [f"{m}::{k.value}" for m, k in manifest.pairs_with_status(COMPLETE)],
        "failed": [f"{m}::{k.value}" for m, k in manifest.pairs_with_status("failed")],
    }
    summary_path = output_dir / REPORTS_DIR / "summary.json"
    summary_path.parent.mkdir(parents=True, exist_ok=True)
    summary_path.write_text(
        json.dumps(summary, ensure_ascii=False, sort_keys=True, indent=2) + "\n", encoding="utf-8"
    )
    written.append(summary_path)
    return written


def write_leaderboard_csv(
    output_dir: str | Path,
    kind: ScenarioKind,
    model_scores: dict[str, dict[str, float | None]],
) -> Path:
    suite = metric_suite_for(kind)
    rows = leaderboard(model_scores, suite)
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    header = ["model"]
    for metric in suite:
        header.extend([metric, f"{metric}_rank", f"{metric}_top3"])
    writer.writerow(header)
    for row in rows:
        record: list[object] = [row.model_id]
        for metric in suite:
            value = row.values[metric]
            record.extend(
                ["" if value is None else f"{value:.6f}", row.ranks[metric], int(row.top3[metric])]
            )
        writer.writerow(record)
    path = Path(output_dir) / REPORTS_DIR / kind.value / "leaderboard.csv"
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(buffer.getvalue(), encoding="utf-8")
    return path
