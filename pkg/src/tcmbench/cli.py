"""Command-line surface.

Exit codes: 0 success, 1 validation/configuration error, 2 run finished
with partial failures.
"""

from __future__ import annotations

import json
import logging
import sys
from pathlib import Path

import click

from .corpus import (
    DropRecord,
    corpus_manifest,
    dedup_exact,
    filter_blocklist,
    linguisticise_records,
    load_blocklist,
    make_documents,
    manifest_as_dict,
    near_dup_scan,
    refine_records,
    structured_records,
    InstructionStrategy,
    QATemplate,
)
from .datasets import SplitSpec, dataset_stats, load_dataset, save_dataset, split_sample
from .errors import BenchError
from .runner import (
    RunManifest,
    TrainSettings,
    ablation_grid,
    collect_pair_metrics,
    execute_runs,
    load_run_config,
    plan_as_dict,
    plan_runs,
    write_derived_reports,
)
from .scenarios import ScenarioKind

log = logging.getLogger("tcmbench")

VALIDATION_EXIT = 1
PARTIAL_EXIT = 2


@click.group()
@click.option("--verbose", is_flag=True, help="Log debug detail to stderr.")
def main(verbose: bool) -> None:
    """Benchmark harness for TCM-domain chat models."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


@main.group(name="eval")
def eval_group() -> None:
    """Benchmark runs and reports."""


@eval_group.command(name="run")
@click.option("--config", "config_path", required=True, type=click.Path(exists=True))
@click.option("--model", "models", multiple=True, help="Restrict to these model ids.")
@click.option("--scenario", "scenarios", multiple=True, help="Restrict to these scenario kinds.")
@click.option("--resume", is_flag=True, help="Reuse the existing manifest and reports.")
def eval_run(config_path: str, models: tuple[str, ...], scenarios: tuple[str, ...], resume: bool) -> None:
    """Execute the configured models x scenarios benchmark."""
    try:
        config = load_run_config(config_path)
        only_scenarios = {ScenarioKind.parse(s) for s in scenarios} or None
        manifest = None
        if not resume:
            manifest, _ = plan_runs(config)
        result = execute_runs(
            config,
            manifest,
            only_models=set(models) or None,
            only_scenarios=only_scenarios,
        )
    except BenchError as exc:
        raise click.ClickException(str(exc)) from exc
    failed = result.failed_pairs
    click.echo(f"run {result.manifest.run_id}: {len(result.executed)} pair(s) executed")
    if failed:
        for model_id, kind in failed:
            click.echo(f"FAILED {model_id}::{kind.value}", err=True)
        sys.exit(PARTIAL_EXIT)


@eval_group.command(name="report")
@click.option("--run", "run_dir", required=True, type=click.Path(exists=True, file_okay=False))
def eval_report(run_dir: str) -> None:
    """Rebuild leaderboards and print the summary for a finished run."""
    try:
        manifest = RunManifest.load(run_dir)
        metrics = collect_pair_metrics(run_dir, manifest)
        write_derived_reports(metrics, manifest, run_dir)
    except BenchError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"run {manifest.run_id}")
    for (model_id, kind), values in sorted(metrics.items()):
        rendered = ", ".join(f"{name}={value:.4f}" for name, value in values.items())
        click.echo(f"{model_id}::{kind.value}  {rendered}")
    failed = manifest.pairs_with_status("failed")
    for model_id, kind in failed:
        click.echo(f"FAILED {model_id}::{kind.value}", err=True)
    if failed:
        sys.exit(PARTIAL_EXIT)


@main.group(name="dataset")
def dataset_group() -> None:
    """Benchmark dataset files."""


@dataset_group.command(name="validate")
@click.argument("file", type=click.Path(exists=True))
def dataset_validate(file: str) -> None:
    """Schema-validate a dataset file and print its stats."""
    try:
        dataset = load_dataset(file)
        stats = dataset_stats(dataset)
    except BenchError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(
        f"{file}: OK kind={dataset.kind.value} records={stats.count} "
        f"characters={stats.total_characters}"
    )


@dataset_group.command(name="split")
@click.argument("file", type=click.Path(exists=True))
@click.option("--seed", type=int, required=True)
@click.option("--test-count", type=int, required=True)
def dataset_split(file: str, seed: int, test_count: int) -> None:
    """Deterministically split a dataset into train/test files."""
    try:
        dataset = load_dataset(file)
        train, test = split_sample(dataset, SplitSpec(seed=seed, test_count=test_count))
        base = Path(file)
        train_path = base.with_suffix(".train.jsonl")
        test_path = base.with_suffix(".test.jsonl")
        if train:
            save_dataset(train, train_path)
        if test:
            save_dataset(test, test_path)
    except BenchError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"train={len(train)} -> {train_path if train else '(empty, not written)'}")
    click.echo(f"test={len(test)} -> {test_path if test else '(empty, not written)'}")


@main.group(name="corpus")
def corpus_group() -> None:
    """Corpus construction pipeline."""


@corpus_group.command(name="dedup")
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
@click.option("--output", type=click.Path(), default=None, help="Defaults to <dir>.dedup/")
@click.option("--threshold", type=float, default=0.9, show_default=True)
@click.option("--blocklist", type=click.Path(exists=True), default=None,
              help="Also drop documents dense in these terms.")
@click.option("--max-hits-per-1000", type=float, default=1.0, show_default=True)
def corpus_dedup(
    directory: str,
    output: str | None,
    threshold: float,
    blocklist: str | None,
    max_hits_per_1000: float,
) -> None:
    """Normalize, exact-dedup, near-dup scan, and optionally filter a corpus."""
    try:
        documents = make_documents(_read_corpus_dir(Path(directory)))
        kept, dropped = dedup_exact(documents)
        near = near_dup_scan(kept, threshold=threshold)
        blocked = []
        if blocklist:
            kept, blocked = filter_blocklist(kept, load_blocklist(blocklist), max_hits_per_1000)
        out_dir = Path(output) if output else Path(str(directory).rstrip("/") + ".dedup")
        out_dir.mkdir(parents=True, exist_ok=True)
        _write_jsonl(
            out_dir / "kept.jsonl",
            ({"id": d.doc_id, "source": d.source, "text": d.text} for d in kept),
        )
        _write_jsonl(
            out_dir / "dropped.jsonl",
            (
                {"id": d.doc_id, "reason": d.reason, "duplicate_of": d.duplicate_of}
                if isinstance(d, DropRecord)
                else {"id": d.doc_id, "reason": "blocklist", "terms": d.matched_terms}
                for d in [*dropped, *blocked]
            ),
        )
        _write_jsonl(
            out_dir / "near_duplicates.jsonl",
            ({"a": a, "b": b, "jaccard": score} for a, b, score in near),
        )
        manifest = corpus_manifest(kept)
        (out_dir / "manifest.json").write_text(
            json.dumps(manifest_as_dict(manifest), ensure_ascii=False, indent=2) + "\n",
            encoding="utf-8",
        )
    except BenchError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(
        f"kept={len(kept)} dropped={len(dropped) + len(blocked)} near_pairs={len(near)} -> {out_dir}"
    )


@corpus_group.command(name="build-sft")
@click.argument("directory", type=click.Path(exists=True, file_okay=False))
@click.option("--strategy", required=True, help="A-linguisticise, B-structured, or C-refine.")
@click.option("--output", type=click.Path(), default=None, help="Defaults to <dir>/instructions.jsonl")
@click.option("--templates", "templates_path", type=click.Path(exists=True), default=None,
              help="JSON list of QA templates (strategy B).")
@click.option("--rewrite-config", type=click.Path(exists=True), default=None,
              help="Run-config JSON whose first endpoint rewrites snippets (strategy A).")
def corpus_build_sft(
    directory: str,
    strategy: str,
    output: str | None,
    templates_path: str | None,
    rewrite_config: str | None,
) -> None:
    """Build instruction records from a directory of line-delimited records."""
    try:
        strat = InstructionStrategy.parse(strategy)
        rows = list(_read_record_dir(Path(directory)))
        if strat is InstructionStrategy.STRUCTURED:
            if not templates_path:
                raise click.ClickException("strategy B needs --templates")
            templates = [
                QATemplate(
                    instruction=str(t["instruction"]),
                    output=str(t["output"]),
                    input=str(t.get("input", "")),
                )
                for t in json.loads(Path(templates_path).read_text(encoding="utf-8"))
            ]
            records = structured_records(
                ((row_id, {k: str(v) for k, v in row.items()}) for row_id, row in rows), templates
            )
        elif strat is InstructionStrategy.REFINE:
            records, dropped = refine_records(rows)
            log.info("dropped %d duplicate/empty rows", dropped)
        else:
            if not rewrite_config:
                raise click.ClickException("strategy A needs --rewrite-config")
            config = load_run_config(rewrite_config)
            endpoint = config.endpoints[0]
            from .modelclient import chat_complete, chat_request

            def rewrite(prompt: str) -> str:
                return chat_complete(endpoint, chat_request(None, prompt)).text

            snippets = ((row_id, str(row.get("text", ""))) for row_id, row in rows)
            records, skipped = linguisticise_records(
                (pair for pair in snippets if pair[1].strip()), rewrite
            )
            log.info("skipped %d snippets with failed rewrites", len(skipped))
        out_path = Path(output) if output else Path(directory) / "instructions.jsonl"
        _write_jsonl(
            out_path,
            (
                {
                    "instruction": r.instruction,
                    "input": r.input,
                    "output": r.output,
                    "strategy": r.strategy.value,
                    "provenance": r.provenance,
                }
                for r in records
            ),
        )
        by_strategy: dict[str, int] = {}
        for record in records:
            by_strategy[record.strategy.value] = by_strategy.get(record.strategy.value, 0) + 1
        Path(str(out_path) + ".manifest.json").write_text(
            json.dumps(
                {"qa_count": len(records), "by_strategy": by_strategy, "source_rows": len(rows)},
                ensure_ascii=False,
                indent=2,
                sort_keys=True,
            )
            + "\n",
            encoding="utf-8",
        )
    except BenchError as exc:
        raise click.ClickException(str(exc)) from exc
    click.echo(f"{len(records)} instruction records -> {out_path}")


@main.group(name="ablation")
def ablation_group() -> None:
    """Hyper-parameter ablation planning."""


@ablation_group.command(name="plan")
@click.option("--baseline", "baseline_path", required=True, type=click.Path(exists=True),
              help="JSON with lora_rank, lora_alpha, epoch, dropout, max_length.")
@click.option("--output", type=click.Path(), default=None, help="Write the plan here instead of stdout.")
def ablation_plan(baseline_path: str, output: str | None) -> None:
    """Emit the one-axis-at-a-time grid around a baseline configuration."""
    try:
        payload = json.loads(Path(baseline_path).read_text(encoding="utf-8"))
        baseline = TrainSettings(
            lora_rank=int(payload["lora_rank"]),
            lora_alpha=int(payload["lora_alpha"]),
            epoch=int(payload["epoch"]),
            dropout=float(payload["dropout"]),
            max_length=int(payload["max_length"]),
        )
        plan = ablation_grid(baseline)
    except (KeyError, ValueError, json.JSONDecodeError) as exc:
        raise click.ClickException(f"bad baseline file: {exc}") from exc
    except BenchError as exc:
        raise click.ClickException(str(exc)) from exc
    rendered = json.dumps(plan_as_dict(plan), ensure_ascii=False, indent=2) + "\n"
    if output:
        Path(output).write_text(rendered, encoding="utf-8")
        click.echo(f"{len(plan.configs)} configs -> {output}")
    else:
        click.echo(rendered, nl=False)


def _read_corpus_dir(directory: Path):
    """Yield (doc_id, source, raw_text) from .txt files and JSONL records."""
    for path in sorted(directory.iterdir()):
        if path.suffix == ".txt":
            yield path.stem, directory.name, path.read_text(encoding="utf-8")
        elif path.suffix == ".jsonl":
            for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
                if not line.strip():
                    continue
                row = json.loads(line)
                yield (
                    str(row.get("id", f"{path.stem}:{lineno}")),
                    str(row.get("source", path.stem)),
                    str(row.get("text", "")),
                )


def _read_record_dir(directory: Path):
    for path in sorted(directory.glob("*.jsonl")):
        for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
            if line.strip():
                yield f"{path.stem}:{lineno}", json.loads(line)


def _write_jsonl(path: Path, rows) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(json.dumps(row, ensure_ascii=False, sort_keys=True) + "\n")


if __name__ == "__main__":
    main()
