import hashlib
from pathlib import Path

import pytest

from tcmbench.demo import build_answer_script, build_demo_datasets, write_demo_config
from tcmbench.errors import ValidationError
from tcmbench.mock_endpoint import ScriptedChatServer
from tcmbench.modelclient import ChatClient, RetryPolicy
from tcmbench.runner import (
    DROPOUT_AXIS,
    EPOCH_AXIS,
    MAX_LENGTH_AXIS,
    MODEL_ROSTER,
    RANK_ALPHA_AXIS,
    TrainSettings,
    ablation_grid,
    execute_runs,
    leaderboard,
    load_run_config,
    pair_report_path,
    plan_runs,
)
from tcmbench.scenarios import ScenarioKind

FAST_CLIENT_KWARGS = dict(retry=RetryPolicy(attempts=2, base_delay=0.0001), sleep=lambda _: None)


@pytest.fixture(scope="module")
def demo(tmp_path_factory):
    tmp = tmp_path_factory.mktemp("demo")
    datasets = build_demo_datasets(tmp / "data", items_per_kind=3, seed=11)
    script = build_answer_script(datasets)
    return tmp, datasets, script


def _config(tmp, datasets, base_url, tag):
    path = write_demo_config(
        tmp / f"config-{tag}.json",
        datasets,
        base_url=base_url,
        cache_dir=tmp / "cache",
        output_dir=tmp / f"out-{tag}",
    )
    return load_run_config(path)


class TestRunConfigValidation:
    def test_empty_scenarios_rejected(self, demo, tmp_path):
        from tcmbench.modelclient import ModelEndpoint
        from tcmbench.runner import RunConfig

        endpoint = ModelEndpoint("m", "local-http", "http://x.test")
        with pytest.raises(ValidationError, match="scenario"):
            RunConfig(
                endpoints=[endpoint],
                scenario_paths={},
                cache_dir=tmp_path / "cache",
                output_dir=tmp_path / "out",
            )

    def test_output_must_differ_from_cache(self, demo, tmp_path):
        from tcmbench.modelclient import ModelEndpoint
        from tcmbench.runner import RunConfig

        tmp, datasets, _ = demo
        endpoint = ModelEndpoint("m", "local-http", "http://x.test")
        with pytest.raises(ValidationError, match="differ"):
            RunConfig(
                endpoints=[endpoint],
                scenario_paths={ScenarioKind.APQ: datasets[ScenarioKind.APQ]},
                cache_dir=tmp_path / "same",
                output_dir=tmp_path / "same",
            )

    def test_no_endpoints_rejected(self, demo, tmp_path):
        from tcmbench.runner import RunConfig

        tmp, datasets, _ = demo
        with pytest.raises(ValidationError, match="endpoint"):
            RunConfig(
                endpoints=[],
                scenario_paths={ScenarioKind.APQ: datasets[ScenarioKind.APQ]},
                cache_dir=tmp_path / "cache",
                output_dir=tmp_path / "out",
            )


class TestPlanRuns:
    def test_pairs_enumerated_pending(self, demo):
        tmp, datasets, _ = demo
        two = {k: datasets[k] for k in (ScenarioKind.APQ, ScenarioKind.TCMCD)}
        config = _config(tmp, two, "http://placeholder.test", "plan")
        manifest, loaded = plan_runs(config)
        assert len(manifest.entries) == 2  # 1 model x 2 scenarios
        assert manifest.pairs_with_status("pending") == sorted(manifest.entries)
        assert set(loaded) == set(two)

    def test_unloadable_dataset_fails_before_network(self, demo, tmp_path):
        tmp, datasets, _ = demo
        broken = dict(datasets)
        missing = tmp_path / "missing.jsonl"
        broken[ScenarioKind.APQ] = missing
        config = _config(tmp_path, broken, "http://placeholder.test", "broken")
        with pytest.raises(ValidationError, match="not found"):
            plan_runs(config)

    def test_identical_config_identical_digest(self, demo):
        tmp, datasets, _ = demo
        config = _config(tmp, datasets, "http://placeholder.test", "digest")
        first, _ = plan_runs(config)
        second, _ = plan_runs(config)
        assert first.config_digest == second.config_digest


class TestExecuteRuns:
    def test_full_run_then_resume_and_failure_paths(self, demo, tmp_path):
        tmp, datasets, script = demo
        client = ChatClient(**FAST_CLIENT_KWARGS)
        with ScriptedChatServer(script) as server:
            config = _config(tmp_path, datasets, server.base_url, "full")
            config.cache_dir = tmp / "cache-full"

            result = execute_runs(config, client=client)
            assert len(result.executed) == 12
            assert not result.failed_pairs
            calls_after_first = server.request_count
            assert calls_after_first == 12 * 3

            # Rerun: everything complete, nothing dispatched.
            again = execute_runs(config, client=client)
            assert not again.executed
            assert server.request_count == calls_after_first

            # Delete one pair's report: only that pair re-runs, from cache.
            victim = pair_report_path(config.output_dir, "mock-model", ScenarioKind.HFR)
            victim.unlink()
            resumed = execute_runs(config, client=client)
            assert sorted(resumed.executed) == [("mock-model", ScenarioKind.HFR)]
            assert server.request_count == calls_after_first
            assert victim.exists()

    def test_permanent_failure_marks_pair_without_aborting_others(self, demo, tmp_path):
        tmp, datasets, script = demo
        client = ChatClient(**FAST_CLIENT_KWARGS)
        two = {k: datasets[k] for k in (ScenarioKind.APQ, ScenarioKind.TCMCD)}
        with ScriptedChatServer(script, fail_substring="病例") as server:
            config = _config(tmp_path, two, server.base_url, "fail")
            result = execute_runs(config, client=client)
        assert result.failed_pairs == [("mock-model", ScenarioKind.TCMCD)]
        assert ("mock-model", ScenarioKind.APQ) in result.executed
        entry = result.manifest.entries[("mock-model", ScenarioKind.TCMCD)]
        assert entry.status == "failed"
        assert "failed" in (entry.error or "")

    def test_report_tree_byte_identical_across_runs(self, demo, tmp_path):
        tmp, datasets, script = demo
        client = ChatClient(**FAST_CLIENT_KWARGS)
        with ScriptedChatServer(script) as server:
            config_a = _config(tmp_path, datasets, server.base_url, "a")
            config_b = _config(tmp_path, datasets, server.base_url, "b")
            config_a.cache_dir = config_b.cache_dir = tmp_path / "shared-cache"
            execute_runs(config_a, client=client)
            execute_runs(config_b, client=client)
        assert _tree_digest(config_a.output_dir / "reports") == _tree_digest(
            config_b.output_dir / "reports"
        )

    def test_no_credential_in_any_artifact(self, demo, tmp_path, monkeypatch):
        tmp, datasets, script = demo
        secret = "sk-应当绝不落盘的秘密"
        monkeypatch.setenv("DEMO_SECRET_KEY", secret)
        client = ChatClient(**FAST_CLIENT_KWARGS)
        one = {ScenarioKind.APQ: datasets[ScenarioKind.APQ]}
        with ScriptedChatServer(script) as server:
            config = _config(tmp_path, one, server.base_url, "secret")
            config.endpoints[0] = type(config.endpoints[0])(
                model_id="mock-model",
                kind="remote-api",
                base_url=server.base_url,
                credential_env="DEMO_SECRET_KEY",
            )
            execute_runs(config, client=client)
        for path in [*config.output_dir.rglob("*"), *config.cache_dir.rglob("*")]:
            if path.is_file():
                assert secret not in path.read_text(encoding="utf-8"), path


class TestMultiModelRuns:
    def test_three_endpoints_share_one_leaderboard(self, demo, tmp_path):
        tmp, datasets, script = demo
        client = ChatClient(**FAST_CLIENT_KWARGS)
        two = {k: datasets[k] for k in (ScenarioKind.APQ, ScenarioKind.TCMEE)}
        with ScriptedChatServer(script) as server:
            config = _config(tmp_path, two, server.base_url, "multi")
            first = config.endpoints[0]
            config.endpoints = [
                type(first)(model_id=name, kind="local-http", base_url=server.base_url)
                for name in ("model-a", "model-b", "model-c")
            ]
            result = execute_runs(config, client=client)
        assert len(result.executed) == 6  # 3 models x 2 scenarios
        csv_path = config.output_dir / "reports" / "APQ" / "leaderboard.csv"
        rows = csv_path.read_text(encoding="utf-8").splitlines()
        assert len(rows) == 4  # header + one row per model
        models = {row.split(",")[0] for row in rows[1:]}
        assert models == {"model-a", "model-b", "model-c"}
        # Same scripted answers for every model: a three-way tie at rank 1.
        assert [row.split(",")[2] for row in rows[1:]] == ["1", "1", "1"]


class TestEmitReports:
    def test_writes_full_tree_deterministically(self, tmp_path):
        from tcmbench.runner import RunManifest, PairStatus, emit_reports
        from tcmbench.scenarios import ItemScore, MetricReport

        def fresh_reports():
            return {
                ("m1", ScenarioKind.APQ): MetricReport(
                    kind=ScenarioKind.APQ,
                    n_items=2,
                    metrics={"accuracy": 0.5},
                    parse_failure_rate=0.0,
                    per_item=[
                        ItemScore("q1", True, "cue-phrase", {"accuracy": 1.0}),
                        ItemScore("q2", True, "cue-phrase", {"accuracy": 0.0}),
                    ],
                ),
                ("m2", ScenarioKind.APQ): MetricReport(
                    kind=ScenarioKind.APQ,
                    n_items=2,
                    metrics={"accuracy": 1.0},
                    parse_failure_rate=0.0,
                    per_item=[
                        ItemScore("q1", True, "cue-phrase", {"accuracy": 1.0}),
                        ItemScore("q2", True, "cue-phrase", {"accuracy": 1.0}),
                    ],
                ),
            }

        manifest = RunManifest(config_digest="d" * 64, decode={"temperature": 0.0})
        for pair in fresh_reports():
            manifest.entries[pair] = PairStatus(status="complete")

        out_a, out_b = tmp_path / "a", tmp_path / "b"
        paths = emit_reports(fresh_reports(), manifest, out_a)
        emit_reports(fresh_reports(), manifest, out_b)
        assert all(path.exists() for path in paths)
        assert (out_a / "reports" / "APQ" / "m1.items.jsonl").exists()
        assert (out_a / "reports" / "APQ" / "leaderboard.csv").exists()
        assert (out_a / "reports" / "summary.json").exists()
        assert _tree_digest(out_a) == _tree_digest(out_b)

    def test_manifest_round_trips_through_disk(self, tmp_path):
        from tcmbench.runner import RunManifest, PairStatus

        manifest = RunManifest(config_digest="e" * 64, decode={"max_tokens": 64})
        manifest.entries[("m", ScenarioKind.APQ)] = PairStatus(status="complete")
        manifest.entries[("m", ScenarioKind.HFR)] = PairStatus(status="failed", error="boom")
        manifest.save(tmp_path)
        loaded = RunManifest.load(tmp_path)
        assert loaded.config_digest == manifest.config_digest
        assert loaded.entries[("m", ScenarioKind.APQ)].status == "complete"
        assert loaded.entries[("m", ScenarioKind.HFR)].error == "boom"


class TestAblationGrid:
    def test_published_baseline_yields_twelve_configs(self):
        plan = ablation_grid(TrainSettings())
        assert len(plan.configs) == 12
        labels = plan.labels()
        assert labels[0] == "baseline"
        assert len(set(labels)) == 12

    def test_every_config_differs_in_exactly_one_axis(self):
        plan = ablation_grid(TrainSettings())
        baseline = plan.configs[0].settings
        for config in plan.configs[1:]:
            s = config.settings
            differs = {
                "rank_alpha": (s.lora_rank, s.lora_alpha) != (baseline.lora_rank, baseline.lora_alpha),
                "epoch": s.epoch != baseline.epoch,
                "dropout": s.dropout != baseline.dropout,
                "max_length": s.max_length != baseline.max_length,
            }
            assert sum(differs.values()) == 1
            assert differs[config.varied_axis]

    def test_rank_alpha_ratio_two_coupling(self):
        plan = ablation_grid(TrainSettings())
        for config in plan.configs:
            assert config.settings.lora_alpha == 2 * config.settings.lora_rank

    def test_axis_counts(self):
        plan = ablation_grid(TrainSettings())
        by_axis = {}
        for config in plan.configs:
            by_axis[config.varied_axis] = by_axis.get(config.varied_axis, 0) + 1
        assert by_axis == {"baseline": 1, "rank_alpha": 4, "epoch": 2, "dropout": 2, "max_length": 3}

    def test_single_value_axes_collapse_to_baseline(self):
        plan = ablation_grid(
            TrainSettings(),
            rank_alpha_axis=((128, 256),),
            epoch_axis=(4,),
            dropout_axis=(0.2,),
            max_length_axis=(2048,),
        )
        assert plan.labels() == ["baseline"]

    def test_other_baseline_on_default_axes_still_yields_twelve(self):
        plan = ablation_grid(
            TrainSettings(lora_rank=8, lora_alpha=16, epoch=2, dropout=0.0, max_length=256)
        )
        assert len(plan.configs) == 12

    def test_off_axis_baseline_rejected(self):
        with pytest.raises(ValidationError):
            ablation_grid(TrainSettings(lora_rank=12, lora_alpha=24))
        with pytest.raises(ValidationError):
            ablation_grid(TrainSettings(epoch=3))

    def test_axes_match_published_grid(self):
        assert RANK_ALPHA_AXIS == ((8, 16), (16, 32), (32, 64), (64, 128), (128, 256))
        assert EPOCH_AXIS == (2, 4, 6)
        assert DROPOUT_AXIS == (0.0, 0.2, 0.4)
        assert MAX_LENGTH_AXIS == (256, 512, 1024, 2048)


class TestLeaderboard:
    def test_single_model(self):
        rows = leaderboard({"only": {"accuracy": 0.5}}, ["accuracy"])
        assert rows[0].ranks["accuracy"] == 1
        assert rows[0].top3["accuracy"]

    def test_dense_tie_ranking(self):
        rows = leaderboard(
            {"a": {"m": 0.9}, "b": {"m": 0.9}, "c": {"m": 0.8}},
            ["m"],
        )
        ranks = {row.model_id: row.ranks["m"] for row in rows}
        assert ranks == {"a": 1, "b": 1, "c": 2}

    def test_missing_metric_ranks_last(self):
        rows = leaderboard(
            {"a": {"m": 0.9}, "b": {"m": None}, "c": {"m": 0.7}},
            ["m"],
        )
        ranks = {row.model_id: row.ranks["m"] for row in rows}
        assert ranks == {"a": 1, "c": 2, "b": 3}
        values = {row.model_id: row.values["m"] for row in rows}
        assert values["b"] is None

    def test_row_order_best_first_ties_by_model_id(self):
        rows = leaderboard(
            {"zeta": {"m": 0.9}, "alpha": {"m": 0.9}, "mid": {"m": 0.5}},
            ["m"],
        )
        assert [row.model_id for row in rows] == ["alpha", "zeta", "mid"]

    def test_empty_rejected(self):
        with pytest.raises(ValidationError):
            leaderboard({}, ["m"])

    def test_roster_has_27_models_with_deployment_split(self):
        assert len(MODEL_ROSTER) == 27
        api_models = {entry.model for entry in MODEL_ROSTER if entry.deployment == "API"}
        assert api_models == {"Deepseek-R1", "Deepseek-V3", "GPT-3.5-turbo", "GPT-4o"}


def _tree_digest(root: Path) -> str:
    digest = hashlib.sha256()
    for path in sorted(root.rglob("*")):
        if path.is_file():
            digest.update(str(path.relative_to(root)).encode())
            digest.update(path.read_bytes())
    return digest.hexdigest()
