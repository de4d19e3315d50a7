"""Five-stage difficulty schedule for the RL phase.

Each stage fixes the node counts, response-length budget, sampling
temperature and per-task sample count; stage datasets are generated
deterministically from a master seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .instances import (
    GenerationConfig,
    ProblemInstance,
    TaskKind,
    derive_seed,
    generate_batch,
)

RL_MASTER_SEED = 45
SAMPLES_PER_TASK = 3000

_TSP_GED_NODES = {1: 5, 2: 6, 3: 7, 4: 8, 5: 9}
_MCP_NODES = {1: (5, 6), 2: (7, 8), 3: (9, 10), 4: (11, 12), 5: (13, 14)}
_BUDGETS = {1: 4096, 2: 5120, 3: 6144, 4: 7168, 5: 8192}
_TEMPERATURES = {1: 1.0, 2: 1.0, 3: 1.0, 4: 1.1, 5: 1.2}

SCHEDULE_ORDERS = ("curriculum", "anti", "mixed")


@dataclass
class CurriculumStage:
    level: int
    tsp_ged_nodes: int
    mcp_nodes: tuple[int, int]
    max_response_length: int
    temperature: float
    samples_per_task: int = SAMPLES_PER_TASK


def stage_config(level: int) -> CurriculumStage:
    if level not in _BUDGETS:
        raise ValueError(f"curriculum level must be in 1..5, got {level}")
    return CurriculumStage(
        level=level,
        tsp_ged_nodes=_TSP_GED_NODES[level],
        mcp_nodes=_MCP_NODES[level],
        max_response_length=_BUDGETS[level],
        temperature=_TEMPERATURES[level],
    )


def build_stage_dataset(
    level: int, master_seed: int = RL_MASTER_SEED
) -> list[ProblemInstance]:
    """3000 instances per task at the stage's difficulty, split evenly across
    the sizes inside a range, de-duplicated and seed-deterministic."""
    stage = stage_config(level)
    per_task = stage.samples_per_task
    instances: list[ProblemInstance] = []
    for task in (TaskKind.TSP, TaskKind.GED):
        config = GenerationConfig(
            task=task,
            per_size_counts={stage.tsp_ged_nodes: per_task},
            master_seed=master_seed,
        )
        instances.extend(generate_batch(config))
    lo, hi = stage.mcp_nodes
    sizes = list(range(lo, hi + 1))
    config = GenerationConfig(
        task=TaskKind.MCP,
        per_size_counts={n: per_task // len(sizes) for n in sizes},
        master_seed=master_seed,
    )
    instances.extend(generate_batch(config))
    return instances


def stage_order(order: str = "curriculum") -> list[int]:
    """Level ordering preset: easy-to-hard, hard-to-easy, or mixed."""
    if order == "curriculum":
        return [1, 2, 3, 4, 5]
    if order == "anti":
        return [5, 4, 3, 2, 1]
    if order == "mixed":
        return [1, 2, 3, 4, 5]
    raise ValueError(f"unknown schedule order {order!r}")


def build_schedule(
    order: str = "curriculum", master_seed: int = RL_MASTER_SEED
) -> list[tuple[CurriculumStage, list[ProblemInstance]]]:
    """All five stage datasets in the requested order.

    "mixed" pools every stage's instances and shuffles them deterministically
    into a single phase carrying the largest budget.
    """
    levels = stage_order(order)
    stages = [(stage_config(lv), build_stage_dataset(lv, master_seed)) for lv in levels]
    if order != "mixed":
        return stages
    pooled: list[ProblemInstance] = []
    for _, dataset in stages:
        pooled.extend(dataset)
    rng = random.Random(derive_seed(master_seed, "mixed-order"))
    rng.shuffle(pooled)
    return [(stage_config(5), pooled)]


def stage_manifest(stage: CurriculumStage, dataset: list[ProblemInstance]) -> dict:
    counts: dict[str, int] = {}
    for inst in dataset:
        counts[inst.task.value] = counts.get(inst.task.value, 0) + 1
    return {
        "level": stage.level,
        "budget": stage.max_response_length,
        "temperature": stage.temperature,
        "counts": counts,
    }
