#!/usr/bin/env python3
"""Write a small synthetic benchmark (all twelve scenarios) plus the
scripted answer table and a ready-to-run config.

Usage: python scripts/make_demo_data.py --out demo/ [--items 10] [--seed 0]
"""

import argparse
import json
from pathlib import Path

from tcmbench.demo import build_answer_script, build_demo_datasets, write_demo_config


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=Path, required=True)
    parser.add_argument("--items", type=int, default=10)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--base-url", default="http://127.0.0.1:8800",
                        help="where the mock endpoint will listen")
    args = parser.parse_args()

    datasets = build_demo_datasets(args.out / "data", items_per_kind=args.items, seed=args.seed)
    script = build_answer_script(datasets)
    (args.out / "answers.json").write_text(
        json.dumps(script, ensure_ascii=False, indent=1) + "\n", encoding="utf-8"
    )
    config_path = write_demo_config(
        args.out / "config.json",
        datasets,
        base_url=args.base_url,
        cache_dir=args.out / "cache",
        output_dir=args.out / "run",
    )
    print(f"{len(datasets)} datasets under {args.out / 'data'}")
    print(f"answer script: {args.out / 'answers.json'}")
    print(f"run config:    {config_path}")


if __name__ == "__main__":
    main()
