"""Service launcher; flags fall back to EMBEDDER_* environment variables."""

from __future__ import annotations

import argparse
import os

import uvicorn

from .app import DEFAULT_MAX_BATCH, create_app
from .backbones import build_backbone


def main() -> None:
    parser = argparse.ArgumentParser(description="Token-aligned embedding service")
    parser.add_argument("--host", default=os.environ.get("EMBEDDER_HOST", "127.0.0.1"))
    parser.add_argument("--port", type=int, default=int(os.environ.get("EMBEDDER_PORT", "8900")))
    parser.add_argument(
        "--model",
        default=os.environ.get("EMBEDDER_MODEL", "hash-v1"),
        help="hash-v1 or transformers:<model-id>",
    )
    parser.add_argument("--dim", type=int, default=int(os.environ.get("EMBEDDER_DIM", "64")),
                        help="vector width for the hash backbone")
    parser.add_argument("--max-batch", type=int,
                        default=int(os.environ.get("EMBEDDER_MAX_BATCH", str(DEFAULT_MAX_BATCH))))
    args = parser.parse_args()

    backbone = build_backbone(args.model, dim=args.dim)
    app = create_app(backbone, max_batch=args.max_batch)
    uvicorn.run(app, host=args.host, port=args.port)


if __name__ == "__main__":
    main()
