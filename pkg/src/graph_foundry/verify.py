"""Feasibility and correctness checks over structured solutions.

The three stages (parse, feasibility, correctness) short-circuit in that
order, so no optimality judgement is ever produced for a solution that
failed an earlier stage.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ContractViolationError, OracleBugError
from .extract import ParseFailure, StructuredSolution, extract
from .instances import (
    GedInstance,
    McpInstance,
    ProblemInstance,
    TspInstance,
)
from .oracle import objective


class OutcomeKind(str, Enum):
    PARSE_FAILURE = "parse_failure"
    INFEASIBLE = "infeasible"
    SUBOPTIMAL = "suboptimal"
    OPTIMAL = "optimal"


@dataclass
class VerificationOutcome:
    kind: OutcomeKind
    achieved: int | None = None
    optimal: int | None = None
    violation: str | None = None

    @property
    def feasible(self) -> bool:
        return self.kind in (OutcomeKind.SUBOPTIMAL, OutcomeKind.OPTIMAL)

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind.value}
        if self.achieved is not None:
            out["achieved"] = self.achieved
        if self.optimal is not None:
            out["optimal"] = self.optimal
        if self.violation is not None:
            out["violation"] = self.violation
        return out


def outcome_from_dict(data: dict) -> VerificationOutcome:
    return VerificationOutcome(
        kind=OutcomeKind(data["kind"]),
        achieved=data.get("achieved"),
        optimal=data.get("optimal"),
        violation=data.get("violation"),
    )


def check_feasibility(
    instance: ProblemInstance, solution: StructuredSolution
) -> str | None:
    """None if the solution satisfies the task's structural constraints, else why not."""
    if solution.task is not instance.task:
        raise ContractViolationError(
            f"solution task {solution.task.value} does not match instance task "
            f"{instance.task.value}"
        )
    if isinstance(instance, TspInstance):
        route = solution.payload
        known = set(instance.node_names)
        for name in route:
            if name not in known:
                return f"unknown node {name!r}"
        if route[0] != route[-1]:
            return "route does not return to its starting node"
        interior = route[:-1]
        seen: set[str] = set()
        for name in interior:
            if name in seen:
                return f"node {name} visited twice"
            seen.add(name)
        missing = sorted(known - seen)
        if missing:
            return f"node {missing[0]} unvisited"
        return None
    if isinstance(instance, GedInstance):
        mapping = solution.payload
        size = instance.size_class
        if len(mapping) != size:
            return f"mapping has {len(mapping)} entries, expected {size}"
        if sorted(mapping) != list(range(size)):
            return f"mapping is not a permutation of 0..{size - 1}"
        return None
    if isinstance(instance, McpInstance):
        clique = solution.payload
        known = set(instance.author_names)
        for name in clique:
            if name not in known:
                return f"unknown author {name!r}"
        if len(set(clique)) != len(clique):
            return "clique lists an author twice"
        for i in range(len(clique)):
            for j in range(i + 1, len(clique)):
                a, b = sorted((clique[i], clique[j]))
                if (a, b) not in instance.edges:
                    return f"{a} and {b} are not connected"
        return None
    raise TypeError(f"unknown instance type: {type(instance)!r}")


def check_correctness(
    instance: ProblemInstance,
    solution: StructuredSolution,
    oracle_value: int,
) -> VerificationOutcome:
    """Compare the achieved objective against the oracle optimum.

    A value strictly better than the oracle can only mean an oracle or
    objective bug and aborts loudly.
    """
    achieved = objective(instance, solution)
    if achieved == oracle_value:
        return VerificationOutcome(
            kind=OutcomeKind.OPTIMAL, achieved=achieved, optimal=oracle_value
        )
    minimizing = not isinstance(instance, McpInstance)
    better = achieved < oracle_value if minimizing else achieved > oracle_value
    if better:
        raise OracleBugError(
            f"{instance.task.value} solution achieved {achieved}, strictly better "
            f"than the oracle optimum {oracle_value} on {instance.id}"
        )
    return VerificationOutcome(
        kind=OutcomeKind.SUBOPTIMAL, achieved=achieved, optimal=oracle_value
    )


def verify_response(
    instance: ProblemInstance, response: str, oracle_value: int
) -> VerificationOutcome:
    """extract -> feasibility -> correctness, short-circuiting on failure."""
    extracted = extract(instance.task, response)
    if isinstance(extracted, ParseFailure):
        return VerificationOutcome(
            kind=OutcomeKind.PARSE_FAILURE, violation=extracted.reason
        )
    violation = check_feasibility(instance, extracted)
    if violation is not None:
        return VerificationOutcome(kind=OutcomeKind.INFEASIBLE, violation=violation)
    return check_correctness(instance, extracted, oracle_value)
