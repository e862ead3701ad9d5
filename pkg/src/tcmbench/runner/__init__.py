"""Run orchestration, ablation planning, leaderboards, and report files."""

from .ablation import (
    DROPOUT_AXIS,
    EPOCH_AXIS,
    MAX_LENGTH_AXIS,
    RANK_ALPHA_AXIS,
    AblationConfig,
    AblationPlan,
    TrainSettings,
    ablation_grid,
    plan_as_dict,
)
from .config import DecodeParams, RunConfig, config_digest, load_run_config
from .execute import RunResult, execute_runs, plan_runs
from .leaderboard import LeaderboardRow, leaderboard
from .manifest import COMPLETE, FAILED, PENDING, Pair, PairStatus, RunManifest
from .reports import (
    collect_pair_metrics,
    emit_reports,
    pair_items_path,
    pair_report_path,
    read_pair_report,
    write_derived_reports,
    write_leaderboard_csv,
    write_pair_report,
)
from .roster import MODEL_ROSTER, RosterEntry

__all__ = [
    "DROPOUT_AXIS",
    "EPOCH_AXIS",
    "MAX_LENGTH_AXIS",
    "RANK_ALPHA_AXIS",
    "AblationConfig",
    "AblationPlan",
    "TrainSettings",
    "ablation_grid",
    "plan_as_dict",
    "DecodeParams",
    "RunConfig",
    "config_digest",
    "load_run_config",
    "RunResult",
    "execute_runs",
    "plan_runs",
    "LeaderboardRow",
    "leaderboard",
    "COMPLETE",
    "FAILED",
    "PENDING",
    "Pair",
    "PairStatus",
    "RunManifest",
    "collect_pair_metrics",
    "emit_reports",
    "pair_items_path",
    "pair_report_path",
    "read_pair_report",
    "write_derived_reports",
    "write_leaderboard_csv",
    "write_pair_report",
    "MODEL_ROSTER",
    "RosterEntry",
]
