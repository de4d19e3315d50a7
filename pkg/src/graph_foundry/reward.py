"""Fine-grained reward: format, solution quality, and repetition penalty.

Quality uses the task-specific suboptimality ratios (squared for TSP, whose
objective spans a much wider range); optimal answers earn 2.0 and
hallucinated ones -1.0. Repetition subtracts a flat 1.0 from the total.
Composition is additive with no clamping.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .errors import ContractViolationError
from .instances import ProblemInstance, TaskKind
from .repetition import (
    DEFAULT_MIN_LENGTH,
    DEFAULT_MIN_REPEATS,
    RepetitionReport,
    detect_repetition,
)
from .verify import OutcomeKind, VerificationOutcome, verify_response

OPTIMAL_QUALITY = 2.0
HALLUCINATED_QUALITY = -1.0
SUBOPTIMAL_SCALE = 0.5
FORMAT_BONUS = 1.0
REPETITION_PENALTY = -1.0

THINK_TAG = "<think>"


@dataclass
class RewardBreakdown:
    format: float
    quality: float
    repetition_penalty: float
    total: float


@dataclass
class ScoredResponse:
    outcome: VerificationOutcome
    repetition: RepetitionReport
    breakdown: RewardBreakdown


def quality_reward(outcome: VerificationOutcome, task: TaskKind) -> float:
    if outcome.kind is OutcomeKind.OPTIMAL:
        return OPTIMAL_QUALITY
    if outcome.kind in (OutcomeKind.PARSE_FAILURE, OutcomeKind.INFEASIBLE):
        return HALLUCINATED_QUALITY
    achieved, optimal = outcome.achieved, outcome.optimal
    if achieved is None or optimal is None:
        raise ContractViolationError("suboptimal outcome must carry both values")
    if task is TaskKind.MCP:
        if achieved >= optimal:
            raise ContractViolationError(
                f"suboptimal MCP requires achieved < optimal, got {achieved} >= {optimal}"
            )
        return achieved / optimal * SUBOPTIMAL_SCALE
    if achieved <= optimal:
        raise ContractViolationError(
            f"suboptimal {task.value} requires achieved > optimal, "
            f"got {achieved} <= {optimal}"
        )
    ratio = optimal / achieved
    if task is TaskKind.TSP:
        return ratio * ratio * SUBOPTIMAL_SCALE
    return ratio * SUBOPTIMAL_SCALE


def format_reward(response: str, strict: bool = False) -> float:
    """1.0 iff the response starts with "<think>"; leading whitespace is
    tolerated unless strict."""
    text = response if strict else response.lstrip()
    return FORMAT_BONUS if text.startswith(THINK_TAG) else 0.0


def score_response(
    instance: ProblemInstance,
    response: str,
    oracle_value: int,
    *,
    l_min: int = DEFAULT_MIN_LENGTH,
    r_min: int = DEFAULT_MIN_REPEATS,
    strict_format: bool = False,
) -> ScoredResponse:
    """Verify and score one response; the one composition every entry point uses."""
    outcome = verify_response(instance, response, oracle_value)
    repetition = detect_repetition(response, l_min, r_min)
    fmt = format_reward(response, strict=strict_format)
    quality = quality_reward(outcome, instance.task)
    penalty = REPETITION_PENALTY if repetition.detected else 0.0
    breakdown = RewardBreakdown(
        format=fmt,
        quality=quality,
        repetition_penalty=penalty,
        total=fmt + quality + penalty,
    )
    return ScoredResponse(outcome=outcome, repetition=repetition, breakdown=breakdown)


def total_reward(
    instance: ProblemInstance,
    response: str,
    oracle_value: int,
    **kwargs,
) -> RewardBreakdown:
    return score_response(instance, response, oracle_value, **kwargs).breakdown


def _whitespace_tokens(text: str) -> int:
    return len(text.split())


def _characters(text: str) -> int:
    return len(text)


# Response lengths are reported, never enforced here; budget enforcement
# belongs to the training loop.
LENGTH_COUNTERS: dict[str, Callable[[str], int]] = {
    "whitespace": _whitespace_tokens,
    "chars": _characters,
}


def count_length(text: str, counter: str = "whitespace") -> int:
    try:
        return LENGTH_COUNTERS[counter](text)
    except KeyError:
        raise ValueError(f"unknown length counter {counter!r}") from None
