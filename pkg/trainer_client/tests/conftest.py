import json
import subprocess
import sys

import pytest

PYTHON = sys.executable
FOUNDRY = [PYTHON, "-m", "graph_foundry"]


def run_foundry(args, input_text=""):
    proc = subprocess.run(
        FOUNDRY + args, input=input_text, capture_output=True, text=True
    )
    if proc.returncode != 0:
        raise RuntimeError(f"graph-foundry {args} failed: {proc.stderr[:300]}")
    return [json.loads(line) for line in proc.stdout.splitlines() if line.strip()]


@pytest.fixture(scope="session")
def workspace(tmp_path_factory):
    """Instances + oracle files produced through the primary CLI only."""
    root = tmp_path_factory.mktemp("foundry")
    records = []
    for task, n, count in (("tsp", 5, 20), ("ged", 4, 20), ("mcp", 6, 20)):
        records.extend(
            run_foundry(
                [
                    "generate", "--task", task, "--n", str(n),
                    "--count", str(count), "--seed", "77",
                    "--density-range", "0.6,0.8",
                ]
            )
        )
    instances_path = root / "instances.jsonl"
    instances_path.write_text(
        "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    )
    solved = run_foundry(["solve", "--input", str(instances_path)])
    oracle_path = root / "oracle.jsonl"
    oracle_path.write_text("".join(json.dumps(r) + "\n" for r in solved))
    witnesses = {r["id"]: r["witness"] for r in solved}
    tasks = {r["id"]: r["task"] for r in records}
    return {
        "instances": str(instances_path),
        "oracle": str(oracle_path),
        "ids": [r["id"] for r in records],
        "witnesses": witnesses,
        "tasks": tasks,
    }


@pytest.fixture()
def service_cmd(workspace):
    return FOUNDRY + [
        "serve",
        "--transport", "stdio",
        "--instances", workspace["instances"],
        "--oracle", workspace["oracle"],
    ]


def format_answer(values):
    return "[" + ", ".join(str(v) for v in values) + "]"


def response_flavor(task, witness, flavor):
    """Deterministic response text built only from the solve-record witness."""
    if flavor == "optimal":
        return f"<think>worked through the cases</think><answer>{format_answer(witness)}</answer>"
    if flavor == "worse":
        if task == "mcp":
            reduced = witness[:-1] if len(witness) > 1 else witness
            return f"<think>quick pass</think><answer>{format_answer(reduced)}</answer>"
        candidate = list(witness)
        if task == "tsp":
            candidate[1], candidate[2] = candidate[2], candidate[1]
        else:
            candidate[0], candidate[1] = candidate[1], candidate[0]
        return f"<think>quick pass</think><answer>{format_answer(candidate)}</answer>"
    if flavor == "infeasible":
        return f"<answer>{format_answer([witness[0], witness[0]])}</answer>"
    if flavor == "repetitive":
        return "I am going in circles. " * 30
    return "no structured answer here"
