"""Command-line interface. All record I/O is line-delimited JSON on stdio.

Subcommands wire the library modules together: generate, solve, render,
extract, score, filter, curriculum, eval, serve. A JSON config file
(--config) can supply any documented key; explicit flags win.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import IO, Iterator

from . import curriculum as curriculum_mod
from . import pipeline as pipeline_mod
from .errors import GraphFoundryError
from .evaluation import AttemptRecord, score_run
from .extract import ParseFailure, extract
from .instances import (
    GenerationConfig,
    ProblemInstance,
    TaskKind,
    from_record,
    generate_batch,
    to_record,
)
from .oracle import solve
from .prompts import render, system_prompt
from .repetition import DEFAULT_MIN_LENGTH, DEFAULT_MIN_REPEATS
from .reward import count_length, score_response
from .service import InstanceStore, serve_stdio, serve_tcp
from .verify import outcome_from_dict

# Keys a --config file may provide; explicit flags override them.
CONFIG_KEYS = (
    "task", "n", "count", "seed", "density", "weight_range", "density_range",
    "edit_budget_range", "level", "order", "k", "counter", "mode", "l_min",
    "r_min", "host", "port", "transport", "instances", "oracle", "oracle_cache",
)


def _emit(record: dict, stream: IO[str] | None = None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(record, ensure_ascii=False, sort_keys=True) + "\n")


def _read_jsonl(stream: IO[str]) -> Iterator[dict]:
    for line in stream:
        line = line.strip()
        if line:
            yield json.loads(line)


def _load_instances(path: str) -> list[ProblemInstance]:
    with open(path, encoding="utf-8") as fh:
        return [from_record(rec) for rec in _read_jsonl(fh)]


def _load_oracle_values(path: str) -> dict[str, int]:
    with open(path, encoding="utf-8") as fh:
        return {rec["id"]: rec["optimal_value"] for rec in _read_jsonl(fh)}


def _int_pair(text: str) -> tuple[int, int]:
    lo, hi = text.split(",")
    return int(lo), int(hi)


def _float_pair(text: str) -> tuple[float, float]:
    lo, hi = text.split(",")
    return float(lo), float(hi)


def _apply_config(args: argparse.Namespace) -> argparse.Namespace:
    path = getattr(args, "config", None)
    if not path:
        return args
    with open(path, encoding="utf-8") as fh:
        config = json.load(fh)
    for key in CONFIG_KEYS:
        if key in config and getattr(args, key, None) is None:
            setattr(args, key, config[key])
    return args


def _cmd_generate(args: argparse.Namespace) -> int:
    if args.preset == "sft":
        seed = args.seed if args.seed is not None else pipeline_mod.SFT_MASTER_SEED
        for inst in pipeline_mod.assemble_sft_corpus(seed):
            _emit(to_record(inst))
        return 0
    if args.task is None or args.n is None:
        print("generate requires --task and --n (or --preset sft)", file=sys.stderr)
        return 2
    config = GenerationConfig(
        task=TaskKind(args.task),
        per_size_counts={args.n: args.count if args.count is not None else 1},
        master_seed=args.seed if args.seed is not None else 0,
    )
    if args.weight_range is not None:
        config.weight_range = _int_pair(str(args.weight_range))
    if args.density is not None:
        config.density_range = (args.density, args.density)
    elif args.density_range is not None:
        config.density_range = _float_pair(str(args.density_range))
    if args.edit_budget_range is not None:
        config.edit_budget_range = _int_pair(str(args.edit_budget_range))
    for inst in generate_batch(config):
        _emit(to_record(inst))
    return 0


def _cmd_solve(args: argparse.Namespace) -> int:
    status = 0
    source = open(args.input, encoding="utf-8") if args.input else sys.stdin
    try:
        for rec in _read_jsonl(source):
            try:
                result = solve(from_record(rec))
            except GraphFoundryError as exc:
                _emit({"id": rec.get("id"), "error": str(exc)})
                status = 1
                continue
            _emit(
                {
                    "id": rec["id"],
                    "optimal_value": result.optimal_value,
                    "witness": result.witness.payload,
                }
            )
    finally:
        if args.input:
            source.close()
    return status


def _cmd_render(args: argparse.Namespace) -> int:
    prefix = system_prompt() + "\n\n" if args.with_system_prompt else ""
    for rec in _read_jsonl(sys.stdin):
        _emit({"id": rec["id"], "prompt": prefix + render(from_record(rec))})
    return 0


def _cmd_extract(args: argparse.Namespace) -> int:
    task = TaskKind(args.task)
    for rec in _read_jsonl(sys.stdin):
        result = extract(task, rec["response"])
        if isinstance(result, ParseFailure):
            failure = {"reason": result.reason}
            if result.span is not None:
                failure["span"] = result.span
            _emit({"id": rec["id"], "parse_failure": failure})
        else:
            _emit({"id": rec["id"], "solution": result.payload})
    return 0


def _make_store(args: argparse.Namespace) -> InstanceStore:
    instances = _load_instances(args.instances)
    oracle_values = _load_oracle_values(args.oracle) if args.oracle else None
    return InstanceStore(
        instances,
        cache_path=getattr(args, "oracle_cache", None),
        oracle_values=oracle_values,
    )


def _cmd_score(args: argparse.Namespace) -> int:
    store = _make_store(args)
    l_min = args.l_min if args.l_min is not None else DEFAULT_MIN_LENGTH
    r_min = args.r_min if args.r_min is not None else DEFAULT_MIN_REPEATS
    status = 0
    for rec in _read_jsonl(sys.stdin):
        instance_id = rec.get("instance_id", rec.get("id"))
        instance = store.get(instance_id)
        if instance is None:
            _emit({"id": instance_id, "error": f"unknown instance_id {instance_id!r}"})
            status = 1
            continue
        scored = score_response(
            instance,
            rec["response"],
            store.oracle_value(instance),
            l_min=l_min,
            r_min=r_min,
            strict_format=args.strict_format,
        )
        if args.mode == "verify":
            _emit({"id": instance_id, "outcome": scored.outcome.to_dict()})
        else:
            _emit(
                {
                    "id": instance_id,
                    "format": scored.breakdown.format,
                    "quality": scored.breakdown.quality,
                    "repetition": {
                        "detected": scored.repetition.detected,
                        "substring": scored.repetition.substring,
                        "count": scored.repetition.count,
                    },
                    "total": scored.breakdown.total,
                }
            )
    return status


def _cmd_filter(args: argparse.Namespace) -> int:
    store = _make_store(args)
    records = []
    oracle_values: dict[str, int] = {}
    status = 0
    for rec in _read_jsonl(sys.stdin):
        instance = store.get(rec["instance_id"])
        if instance is None:
            _emit({"id": rec["instance_id"], "error": "unknown instance_id"})
            status = 1
            continue
        oracle_values[instance.id] = store.oracle_value(instance)
        records.append(
            pipeline_mod.DatasetRecord(
                instance=instance, prompt=render(instance), response=rec["response"]
            )
        )
    retained, log = pipeline_mod.rejection_filter(records, oracle_values)
    if args.unique_per_instance:
        seen: set[str] = set()
        unique = []
        for record in retained:
            if record.instance.id not in seen:
                seen.add(record.instance.id)
                unique.append(record)
        retained = unique
    for record in retained:
        _emit(
            {
                "instance_id": record.instance.id,
                "prompt": record.prompt,
                "response": record.response,
                "outcome": record.outcome.to_dict() if record.outcome else None,
                "split": record.split,
            }
        )
    if args.log:
        with open(args.log, "w", encoding="utf-8") as fh:
            json.dump(log.to_dict(), fh, indent=2, sort_keys=True)
            fh.write("\n")
    return status


def _cmd_curriculum(args: argparse.Namespace) -> int:
    seed = args.seed if args.seed is not None else curriculum_mod.RL_MASTER_SEED
    if args.level is not None:
        stage = curriculum_mod.stage_config(args.level)
        dataset = curriculum_mod.build_stage_dataset(args.level, seed)
        _emit(curriculum_mod.stage_manifest(stage, dataset))
        for inst in dataset:
            _emit(to_record(inst))
        return 0
    order = args.order or "curriculum"
    for stage, dataset in curriculum_mod.build_schedule(order, seed):
        _emit(curriculum_mod.stage_manifest(stage, dataset))
        for inst in dataset:
            _emit(to_record(inst))
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    k = args.k if args.k is not None else 1
    counter = args.counter or "whitespace"
    attempts = []
    for rec in _read_jsonl(sys.stdin):
        length = rec.get("length")
        if length is None and "response" in rec:
            length = count_length(rec["response"], counter)
        attempts.append(
            AttemptRecord(
                problem_id=rec.get("problem_id", rec.get("id")),
                task=rec.get("task", "unknown"),
                outcome=outcome_from_dict(rec["outcome"]),
                length=length,
            )
        )
    report = score_run(attempts, k=k, length_counter=counter)
    _emit(report.to_dict())
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    store = _make_store(args)
    l_min = args.l_min if args.l_min is not None else DEFAULT_MIN_LENGTH
    r_min = args.r_min if args.r_min is not None else DEFAULT_MIN_REPEATS
    kwargs = {"l_min": l_min, "r_min": r_min, "strict_format": args.strict_format}
    transport = args.transport or "stdio"
    if transport == "stdio":
        return serve_stdio(store, **kwargs)
    host = args.host or "127.0.0.1"
    port = args.port if args.port is not None else 7331
    return serve_tcp(store, host, port, **kwargs)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="graph-foundry",
        description="Generate, render, solve, verify and score NP-hard graph "
        "reasoning tasks (TSP / GED / MCP).",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_config(p: argparse.ArgumentParser) -> None:
        p.add_argument("--config", help="JSON config file; flags override its keys")

    p = sub.add_parser("generate", help="emit instance records")
    p.add_argument("--task", choices=[t.value for t in TaskKind])
    p.add_argument("--n", type=int, help="node count")
    p.add_argument("--count", type=int, help="instances to generate (default 1)")
    p.add_argument("--seed", type=int, help="master seed (default 0)")
    p.add_argument("--density", type=float, help="fixed MCP edge density")
    p.add_argument("--weight-range", dest="weight_range", help="TSP 'lo,hi' km")
    p.add_argument("--density-range", dest="density_range", help="MCP 'lo,hi'")
    p.add_argument(
        "--edit-budget-range", dest="edit_budget_range", help="GED 'lo,hi' edits"
    )
    p.add_argument(
        "--preset", choices=["sft"], help="emit the full 9000-instance SFT corpus"
    )
    add_config(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("solve", help="solve instance records to optimality")
    p.add_argument("--input", help="instances JSONL (default stdin)")
    add_config(p)
    p.set_defaults(func=_cmd_solve)

    p = sub.add_parser("render", help="render instance records to prompts")
    p.add_argument(
        "--with-system-prompt",
        action="store_true",
        help="prepend the RL system prompt",
    )
    add_config(p)
    p.set_defaults(func=_cmd_render)

    p = sub.add_parser("extract", help="parse structured solutions from responses")
    p.add_argument("--task", required=True, choices=[t.value for t in TaskKind])
    add_config(p)
    p.set_defaults(func=_cmd_extract)

    p = sub.add_parser("score", help="verify or reward {id, response} records")
    p.add_argument("--mode", choices=["verify", "reward"], default="reward")
    p.add_argument("--instances", required=True, help="instances JSONL")
    p.add_argument("--oracle", help="oracle records JSONL ({id, optimal_value})")
    p.add_argument("--oracle-cache", dest="oracle_cache", help="sidecar cache file")
    p.add_argument("--l-min", dest="l_min", type=int)
    p.add_argument("--r-min", dest="r_min", type=int)
    p.add_argument("--strict-format", dest="strict_format", action="store_true")
    add_config(p)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("filter", help="retain records verifying Optimal")
    p.add_argument("--instances", required=True)
    p.add_argument("--oracle", help="oracle records JSONL")
    p.add_argument("--oracle-cache", dest="oracle_cache")
    p.add_argument("--log", help="write the rejection log to this JSON file")
    p.add_argument(
        "--unique-per-instance",
        dest="unique_per_instance",
        action="store_true",
        help="keep at most one retained response per instance",
    )
    add_config(p)
    p.set_defaults(func=_cmd_filter)

    p = sub.add_parser("curriculum", help="emit stage datasets and manifests")
    p.add_argument("--level", type=int, choices=[1, 2, 3, 4, 5])
    p.add_argument("--seed", type=int)
    p.add_argument("--order", choices=list(curriculum_mod.SCHEDULE_ORDERS))
    add_config(p)
    p.set_defaults(func=_cmd_curriculum)

    p = sub.add_parser("eval", help="aggregate outcome records into a report")
    p.add_argument("--k", type=int)
    p.add_argument("--counter", choices=["whitespace", "chars"])
    add_config(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("serve", help="run the scoring service")
    p.add_argument("--transport", choices=["stdio", "tcp"])
    p.add_argument("--host")
    p.add_argument("--port", type=int)
    p.add_argument("--instances", required=True)
    p.add_argument("--oracle", help="oracle records JSONL")
    p.add_argument("--oracle-cache", dest="oracle_cache")
    p.add_argument("--l-min", dest="l_min", type=int)
    p.add_argument("--r-min", dest="r_min", type=int)
    p.add_argument("--strict-format", dest="strict_format", action="store_true")
    add_config(p)
    p.set_defaults(func=_cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args = _apply_config(args)
    try:
        return args.func(args)
    except GraphFoundryError as exc:
        _emit({"error": str(exc)})
        return 1
    except FileNotFoundError as exc:
        _emit({"error": str(exc)})
        return 1


if __name__ == "__main__":
    sys.exit(main())
