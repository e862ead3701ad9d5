"""One-axis-at-a-time ablation planning over the training hyper-grid.

The harness never launches training; it emits labeled run descriptors
for an external trainer and scoring buckets for finished checkpoints.
LoRA rank and alpha move together at the fixed alpha/rank ratio of 2, so
they count as a single coupled axis.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

from ..errors import ValidationError

RANK_ALPHA_AXIS: tuple[tuple[int, int], ...] = ((8, 16), (16, 32), (32, 64), (64, 128), (128, 256))
EPOCH_AXIS: tuple[int, ...] = (2, 4, 6)
DROPOUT_AXIS: tuple[float, ...] = (0.0, 0.2, 0.4)
MAX_LENGTH_AXIS: tuple[int, ...] = (256, 512, 1024, 2048)


@dataclass(frozen=True)
class TrainSettings:
    lora_rank: int = 128
    lora_alpha: int = 256
    epoch: int = 4
    dropout: float = 0.2
    max_length: int = 2048

    def as_dict(self) -> dict[str, object]:
        return asdict(self)


@dataclass(frozen=True)
class AblationConfig:
    label: str
    settings: TrainSettings
    varied_axis: str  # "baseline" for the unmodified run


@dataclass
class AblationPlan:
    baseline_label: str
    configs: list[AblationConfig]

    def labels(self) -> list[str]:
        return [config.label for config in self.configs]


def ablation_grid(
    baseline: TrainSettings | None = None,
    *,
    rank_alpha_axis: tuple[tuple[int, int], ...] = RANK_ALPHA_AXIS,
    epoch_axis: tuple[int, ...] = EPOCH_AXIS,
    dropout_axis: tuple[float, ...] = DROPOUT_AXIS,
    max_length_axis: tuple[int, ...] = MAX_LENGTH_AXIS,
) -> AblationPlan:
    """Baseline plus one config per non-baseline axis value.

    Every generated config differs from the baseline in exactly one axis
    (rank/alpha being one coupled axis); the default grid yields twelve
    configurations.
    """
    baseline = baseline or TrainSettings()
    if (baseline.lora_rank, baseline.lora_alpha) not in rank_alpha_axis:
        raise ValidationError(
            f"baseline rank/alpha ({baseline.lora_rank}, {baseline.lora_alpha}) "
            f"is not on the coupled axis {rank_alpha_axis}"
        )
    if baseline.epoch not in epoch_axis:
        raise ValidationError(f"baseline epoch {baseline.epoch} is not on the axis {epoch_axis}")
    if baseline.dropout not in dropout_axis:
        raise ValidationError(f"baseline dropout {baseline.dropout} is not on the axis {dropout_axis}")
    if baseline.max_length not in max_length_axis:
        raise ValidationError(
            f"baseline max_length {baseline.max_length} is not on the axis {max_length_axis}"
        )

    configs = [AblationConfig("baseline", baseline, "baseline")]
    for rank, alpha in rank_alpha_axis:
        if (rank, alpha) == (baseline.lora_rank, baseline.lora_alpha):
            continue
        settings = TrainSettings(rank, alpha, baseline.epoch, baseline.dropout, baseline.max_length)
        configs.append(AblationConfig(f"lora_rank={rank},lora_alpha={alpha}", settings, "rank_alpha"))
    for epoch in epoch_axis:
        if epoch == baseline.epoch:
            continue
        settings = TrainSettings(
            baseline.lora_rank, baseline.lora_alpha, epoch, baseline.dropout, baseline.max_length
        )
        configs.append(AblationConfig(f"epoch={epoch}", settings, "epoch"))
    for dropout in dropout_axis:
        if dropout == baseline.dropout:
            continue
        settings = TrainSettings(
            baseline.lora_rank, baseline.lora_alpha, baseline.epoch, dropout, baseline.max_length
        )
        configs.append(AblationConfig(f"dropout={dropout:g}", settings, "dropout"))
    for max_length in max_length_axis:
        if max_length == baseline.max_length:
            continue
        settings = TrainSettings(
            baseline.lora_rank, baseline.lora_alpha, baseline.epoch, baseline.dropout, max_length
        )
        configs.append(AblationConfig(f"max_length={max_length}", settings, "max_length"))
    return AblationPlan(baseline_label="baseline", configs=configs)


def plan_as_dict(plan: AblationPlan) -> dict[str, object]:
    return {
        "baseline": plan.baseline_label,
        "configs": [
            {"label": c.label, "varied_axis": c.varied_axis, **c.settings.as_dict()}
            for c in plan.configs
        ],
    }
