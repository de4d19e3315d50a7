"""Accuracy / feasibility / avg@k / pass@k aggregation over evaluation runs."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .verify import OutcomeKind, VerificationOutcome


@dataclass
class AttemptRecord:
    problem_id: str
    task: str
    outcome: VerificationOutcome
    length: int | None = None


@dataclass
class Metrics:
    problems: int
    accuracy: float
    feasibility: float
    avg_at_k: float
    pass_at_k: float
    mean_length: float | None

    def to_dict(self) -> dict:
        return {
            "problems": self.problems,
            "accuracy": self.accuracy,
            "feasibility": self.feasibility,
            "avg_at_k": self.avg_at_k,
            "pass_at_k": self.pass_at_k,
            "mean_length": self.mean_length,
        }


@dataclass
class EvalReport:
    k: int
    length_counter: str
    overall: Metrics
    per_task: dict[str, Metrics] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "length_counter": self.length_counter,
            "overall": self.overall.to_dict(),
            "per_task": {task: m.to_dict() for task, m in self.per_task.items()},
        }


def _metrics(problems: dict[str, list[AttemptRecord]], k: int) -> Metrics:
    n = len(problems)
    optimal_first = 0
    feasible_first = 0
    pass_hits = 0
    avg_sum = 0.0
    lengths: list[int] = []
    for attempts in problems.values():
        first = attempts[0].outcome
        optimal_first += first.kind is OutcomeKind.OPTIMAL
        feasible_first += first.feasible
        window = attempts[:k]
        optimal_count = sum(a.outcome.kind is OutcomeKind.OPTIMAL for a in window)
        pass_hits += optimal_count > 0
        avg_sum += optimal_count / k
        lengths.extend(a.length for a in window if a.length is not None)
    return Metrics(
        problems=n,
        accuracy=optimal_first / n,
        feasibility=feasible_first / n,
        avg_at_k=avg_sum / n,
        pass_at_k=pass_hits / n,
        mean_length=sum(lengths) / len(lengths) if lengths else None,
    )


def score_run(
    attempts: Iterable[AttemptRecord],
    k: int = 1,
    length_counter: str = "whitespace",
) -> EvalReport:
    """Aggregate per-problem attempt outcomes into one report.

    Accuracy and feasibility are single-test (attempt 1); pass@k and avg@k
    use the first k attempts of every problem. Every problem must carry at
    least k attempts.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    problems: dict[str, list[AttemptRecord]] = {}
    for attempt in attempts:
        problems.setdefault(attempt.problem_id, []).append(attempt)
    if not problems:
        raise ValueError("no attempts provided")
    for pid, recs in problems.items():
        if len(recs) < k:
            raise ValueError(f"problem {pid} has {len(recs)} attempts, needs >= {k}")
    overall = _metrics(problems, k)
    per_task: dict[str, Metrics] = {}
    for task in sorted({recs[0].task for recs in problems.values()}):
        subset = {pid: recs for pid, recs in problems.items() if recs[0].task == task}
        per_task[task] = _metrics(subset, k)
    return EvalReport(
        k=k, length_counter=length_counter, overall=overall, per_task=per_task
    )
