"""Rejection-sampling filter and SFT corpus assembly."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .errors import ContractViolationError
from .instances import (
    GenerationConfig,
    ProblemInstance,
    TaskKind,
    generate_batch,
)
from .verify import OutcomeKind, VerificationOutcome, verify_response

SFT_MASTER_SEED = 43
SFT_TSP_GED_SIZES = range(4, 10)
SFT_TSP_GED_COUNT = 500
SFT_MCP_SIZES = range(4, 16)
SFT_MCP_COUNT = 250


@dataclass
class DatasetRecord:
    instance: ProblemInstance
    prompt: str
    response: str | None = None
    outcome: VerificationOutcome | None = None
    split: str = "SFT"


@dataclass
class RejectionLog:
    total: int = 0
    retained: int = 0
    reasons: dict[str, int] = field(
        default_factory=lambda: {"parse_failure": 0, "infeasible": 0, "suboptimal": 0}
    )
    details: list[dict] = field(default_factory=list)

    @property
    def rejected(self) -> int:
        return self.total - self.retained

    def to_dict(self) -> dict:
        return {
            "total": self.total,
            "retained": self.retained,
            "rejected": self.rejected,
            "reasons": dict(self.reasons),
            "details": list(self.details),
        }


def rejection_filter(
    records: Iterable[DatasetRecord],
    oracle_values: Mapping[str, int],
) -> tuple[list[DatasetRecord], RejectionLog]:
    """Keep exactly the records whose response verifies as Optimal.

    Order-preserving; every rejection is counted by reason, and infeasible
    rejections keep their violation string so rewards can be categorized
    later without re-verification.
    """
    retained: list[DatasetRecord] = []
    log = RejectionLog()
    for record in records:
        if record.response is None:
            raise ContractViolationError(
                f"record {record.instance.id} carries no response"
            )
        oracle_value = oracle_values[record.instance.id]
        outcome = verify_response(record.instance, record.response, oracle_value)
        record.outcome = outcome
        log.total += 1
        if outcome.kind is OutcomeKind.OPTIMAL:
            log.retained += 1
            retained.append(record)
        else:
            log.reasons[outcome.kind.value] += 1
            detail = {"instance_id": record.instance.id, "kind": outcome.kind.value}
            if outcome.violation is not None:
                detail["violation"] = outcome.violation
            log.details.append(detail)
    return retained, log


def assemble_sft_corpus(master_seed: int = SFT_MASTER_SEED) -> list[ProblemInstance]:
    """The 9000-instance SFT recipe: TSP/GED 500 per size 4-9, MCP 250 per size 4-15."""
    instances: list[ProblemInstance] = []
    for task in (TaskKind.TSP, TaskKind.GED):
        config = GenerationConfig(
            task=task,
            per_size_counts={n: SFT_TSP_GED_COUNT for n in SFT_TSP_GED_SIZES},
            master_seed=master_seed,
        )
        instances.extend(generate_batch(config))
    config = GenerationConfig(
        task=TaskKind.MCP,
        per_size_counts={n: SFT_MCP_COUNT for n in SFT_MCP_SIZES},
        master_seed=master_seed,
    )
    instances.extend(generate_batch(config))
    return instances
