#!/usr/bin/env python3
"""End-to-end demo: synthetic datasets, a scripted mock endpoint, a full
benchmark run, and the resulting leaderboards, all in one process.

Usage: python scripts/run_demo_benchmark.py [--workdir demo-run/] [--items 10]
"""

import argparse
import tempfile
from pathlib import Path

from tcmbench.demo import build_answer_script, build_demo_datasets, write_demo_config
from tcmbench.mock_endpoint import ScriptedChatServer
from tcmbench.runner import execute_runs, load_run_config
from tcmbench.scenarios import metric_suite_for


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--workdir", type=Path, default=None)
    parser.add_argument("--items", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    workdir = args.workdir or Path(tempfile.mkdtemp(prefix="tcmbench-demo-"))
    datasets = build_demo_datasets(workdir / "data", items_per_kind=args.items, seed=args.seed)
    script = build_answer_script(datasets)

    with ScriptedChatServer(script) as server:
        config = load_run_config(
            write_demo_config(
                workdir / "config.json",
                datasets,
                base_url=server.base_url,
                cache_dir=workdir / "cache",
                output_dir=workdir / "run",
            )
        )
        result = execute_runs(config)
        print(f"mock endpoint served {server.request_count} completion calls")

    print(f"executed {len(result.executed)} scenario suites; output under {workdir / 'run'}\n")
    for (model_id, kind), report in sorted(result.executed.items()):
        suite = metric_suite_for(kind)
        rendered = "  ".join(f"{name}={report.metrics[name]:.3f}" for name in suite)
        print(f"{kind.value:7s} {model_id}: {rendered}  (parse failures {report.parse_failure_rate:.0%})")
    if result.failed_pairs:
        print("failed pairs:", result.failed_pairs)


if __name__ == "__main__":
    main()
