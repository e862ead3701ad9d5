"""Planning and executing benchmark runs over models x scenarios.

Every (model, scenario) pair is independent: completed pairs are skipped
on resume, a failing pair is recorded without aborting its siblings, and
all model traffic flows through the shared response cache.
"""

from __future__ import annotations

import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ..datasets import DatasetFile, load_dataset
from ..embeddings import provider_from_address
from ..errors import ValidationError
from ..modelclient import ChatClient, ModelEndpoint, batch_dispatch, render_prompt
from ..scenarios import (
    MetricReport,
    ModelResponse,
    ScenarioKind,
    evaluate_scenario,
    requires_embedder,
)
from .config import RunConfig, config_digest
from .manifest import COMPLETE, FAILED, PENDING, Pair, PairStatus, RunManifest
from .reports import (
    collect_pair_metrics,
    pair_report_path,
    write_derived_reports,
    write_pair_report,
)

log = logging.getLogger(__name__)


@dataclass
class RunResult:
    manifest: RunManifest
    executed: dict[Pair, MetricReport] = field(default_factory=dict)

    @property
    def failed_pairs(self) -> list[Pair]:
        return [pair for pair, entry in sorted(self.manifest.entries.items()) if entry.status == FAILED]


def plan_runs(config: RunConfig) -> tuple[RunManifest, dict[ScenarioKind, DatasetFile]]:
    """Load and pin every dataset, then enumerate all pairs as pending.

    Dataset problems surface here, before any network traffic.
    """
    datasets = {kind: load_dataset(path) for kind, path in config.scenario_paths.items()}
    digests = {kind: ds.manifest.sha256 for kind, ds in datasets.items()}
    manifest = RunManifest(
        config_digest=config_digest(config, digests),
        decode={"temperature": config.decode.temperature, "max_tokens": config.decode.max_tokens},
    )
    for endpoint in config.endpoints:
        for kind in config.scenario_paths:
            manifest.entries[(endpoint.model_id, kind)] = PairStatus()
    return manifest, datasets


def execute_runs(
    config: RunConfig,
    manifest: RunManifest | None = None,
    *,
    only_models: set[str] | None = None,
    only_scenarios: set[ScenarioKind] | None = None,
    client: ChatClient | None = None,
) -> RunResult:
    """Run every non-complete pair and write the report tree.

    A pair already marked complete whose report file still exists is
    skipped, so crash/resume cycles only redo missing work.
    """
    planned, datasets = plan_runs(config)
    if manifest is None:
        manifest = _reconcile(planned, config)
    if client is None:
        client = ChatClient(retry=config.retry)

    embedder = provider_from_address(config.embedding_provider)
    endpoints = {e.model_id: e for e in config.endpoints}
    result = RunResult(manifest=manifest)
    manifest_lock = threading.Lock()

    def runnable(pair: Pair) -> bool:
        model_id, kind = pair
        if only_models and model_id not in only_models:
            return False
        if only_scenarios and kind not in only_scenarios:
            return False
        entry = manifest.entries[pair]
        if entry.status == COMPLETE and pair_report_path(config.output_dir, model_id, kind).exists():
            return False
        return True

    todo = [pair for pair in sorted(manifest.entries) if runnable(pair)]

    def run_pair(pair: Pair) -> None:
        model_id, kind = pair
        endpoint = endpoints[model_id]
        with manifest_lock:
            manifest.mark(pair, PENDING)  # stamps the start time
        try:
            report = _execute_pair(config, endpoint, kind, datasets[kind], embedder, client)
        except Exception as exc:
            log.warning("pair %s/%s failed: %s", model_id, kind.value, exc)
            with manifest_lock:
                manifest.mark(pair, FAILED, error=str(exc))
                manifest.save(config.output_dir)
            return
        write_pair_report(config.output_dir, model_id, report)
        with manifest_lock:
            result.executed[pair] = report
            manifest.mark(pair, COMPLETE)
            manifest.save(config.output_dir)

    config.output_dir.mkdir(parents=True, exist_ok=True)
    manifest.save(config.output_dir)
    if todo:
        workers = min(config.concurrency, len(todo))
        if workers == 1:
            for pair in todo:
                run_pair(pair)
        else:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                list(pool.map(run_pair, todo))

    _emit_all(config, manifest)
    return result


def _execute_pair(
    config: RunConfig,
    endpoint: ModelEndpoint,
    kind: ScenarioKind,
    dataset: DatasetFile,
    embedder,
    client: ChatClient | None,
) -> MetricReport:
    templates = config.all_templates()
    requests = [
        render_prompt(
            example,
            templates,
            temperature=config.decode.temperature,
            max_tokens=config.decode.max_tokens,
        )
        for example in dataset.records
    ]
    outcomes = batch_dispatch(endpoint, requests, cache_dir=config.cache_dir, client=client)
    failures = [exc for exc in outcomes if isinstance(exc, Exception)]
    if failures:
        raise ValidationError(
            f"{len(failures)} of {len(outcomes)} requests failed (first: {failures[0]})"
        )
    items = [
        (example, ModelResponse(text=outcome.text))
        for example, outcome in zip(dataset.records, outcomes)
    ]
    return evaluate_scenario(kind, items, embedder if requires_embedder(kind) else None)


def _reconcile(planned: RunManifest, config: RunConfig) -> RunManifest:
    """Adopt the on-disk manifest when it matches the planned config."""
    try:
        existing = RunManifest.load(config.output_dir)
    except ValidationError:
        return planned
    if existing.config_digest != planned.config_digest:
        log.warning("config changed (digest mismatch); starting a fresh manifest")
        return planned
    for pair in planned.entries:
        if pair not in existing.entries:
            existing.entries[pair] = PairStatus()
    return existing


def _emit_all(config: RunConfig, manifest: RunManifest) -> None:
    """Regenerate leaderboards and the summary from all pair reports on disk."""
    write_derived_reports(collect_pair_metrics(config.output_dir, manifest), manifest, config.output_dir)
