"""Reward engine and data foundry for NP-hard graph reasoning tasks.

Generates seeded TSP / GED / MCP instances, renders them to natural-language
prompts, solves them exactly, verifies free-text answers, scores them with a
fine-grained reward, and serves all of it to external training loops.
"""

from .curriculum import CurriculumStage, build_stage_dataset, stage_config
from .evaluation import AttemptRecord, EvalReport, score_run
from .extract import ParseFailure, StructuredSolution, extract, format_solution
from .instances import (
    GedInstance,
    GenerationConfig,
    McpInstance,
    Molecule,
    ProblemInstance,
    TaskKind,
    TspInstance,
    canonical_key,
    from_record,
    generate_batch,
    generate_ged,
    generate_mcp,
    generate_tsp,
    to_record,
)
from .oracle import OracleResult, objective, solve, solve_ged, solve_mcp, solve_tsp
from .pipeline import DatasetRecord, RejectionLog, assemble_sft_corpus, rejection_filter
from .prompts import render, system_prompt
from .repetition import RepetitionReport, detect_repetition
from .reward import (
    RewardBreakdown,
    ScoredResponse,
    format_reward,
    quality_reward,
    score_response,
    total_reward,
)
from .service import InstanceStore, build_reply, serve_stdio, serve_tcp
from .verify import (
    OutcomeKind,
    VerificationOutcome,
    check_correctness,
    check_feasibility,
    verify_response,
)

__version__ = "0.1.0"

__all__ = [
    "AttemptRecord",
    "CurriculumStage",
    "DatasetRecord",
    "EvalReport",
    "GedInstance",
    "GenerationConfig",
    "InstanceStore",
    "McpInstance",
    "Molecule",
    "OracleResult",
    "OutcomeKind",
    "ParseFailure",
    "ProblemInstance",
    "RejectionLog",
    "RepetitionReport",
    "RewardBreakdown",
    "ScoredResponse",
    "StructuredSolution",
    "TaskKind",
    "TspInstance",
    "VerificationOutcome",
    "assemble_sft_corpus",
    "build_reply",
    "build_stage_dataset",
    "canonical_key",
    "check_correctness",
    "check_feasibility",
    "detect_repetition",
    "extract",
    "format_reward",
    "format_solution",
    "from_record",
    "generate_batch",
    "generate_ged",
    "generate_mcp",
    "generate_tsp",
    "objective",
    "quality_reward",
    "rejection_filter",
    "render",
    "score_response",
    "score_run",
    "serve_stdio",
    "serve_tcp",
    "solve",
    "solve_ged",
    "solve_mcp",
    "solve_tsp",
    "stage_config",
    "system_prompt",
    "to_record",
    "total_reward",
    "verify_response",
]
