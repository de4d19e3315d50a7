import json
import subprocess
import sys

import pytest

from graph_foundry import from_record, solve, to_record, generate_tsp

from helpers import optimal_response


def run_cli(args, input_text=""):
    proc = subprocess.run(
        [sys.executable, "-m", "graph_foundry", *args],
        input=input_text,
        capture_output=True,
        text=True,
    )
    return proc


def records(stdout: str):
    return [json.loads(line) for line in stdout.splitlines() if line.strip()]


def test_generate_emits_requested_count():
    proc = run_cli(["generate", "--task", "tsp", "--n", "8", "--count", "3", "--seed", "43"])
    assert proc.returncode == 0
    recs = records(proc.stdout)
    assert len(recs) == 3
    assert all(r["task"] == "tsp" and r["n"] == 8 for r in recs)
    again = run_cli(["generate", "--task", "tsp", "--n", "8", "--count", "3", "--seed", "43"])
    assert again.stdout == proc.stdout


def test_solve_reads_stdin():
    gen = run_cli(["generate", "--task", "mcp", "--n", "6", "--count", "2", "--seed", "1"])
    proc = run_cli(["solve"], gen.stdout)
    assert proc.returncode == 0
    recs = records(proc.stdout)
    assert len(recs) == 2
    for rec, inst_rec in zip(recs, records(gen.stdout)):
        assert rec["id"] == inst_rec["id"]
        assert solve(from_record(inst_rec)).optimal_value == rec["optimal_value"]
        assert isinstance(rec["witness"], list)


def test_solve_oversized_instance_sets_exit_code():
    inst = generate_tsp(17, 3)
    proc = run_cli(["solve"], json.dumps(to_record(inst)) + "\n")
    assert proc.returncode == 1
    recs = records(proc.stdout)
    assert "error" in recs[0]


def test_render_and_system_prompt_flag():
    gen = run_cli(["generate", "--task", "ged", "--n", "4", "--count", "1", "--seed", "2"])
    plain = run_cli(["render"], gen.stdout)
    with_system = run_cli(["render", "--with-system-prompt"], gen.stdout)
    prompt = records(plain.stdout)[0]["prompt"]
    boosted = records(with_system.stdout)[0]["prompt"]
    assert "Molecule A" in prompt
    assert boosted.startswith("You are a helpful assistant.")
    assert boosted.endswith(prompt)
    assert "<think>" in boosted


def test_extract_subcommand():
    lines = [
        json.dumps({"id": "x", "response": "the mapping is [0, 1, 2]"}),
        json.dumps({"id": "y", "response": "no idea"}),
    ]
    proc = run_cli(["extract", "--task", "ged"], "\n".join(lines) + "\n")
    recs = records(proc.stdout)
    assert recs[0] == {"id": "x", "solution": [0, 1, 2]}
    assert recs[1]["id"] == "y" and "parse_failure" in recs[1]


@pytest.fixture()
def tsp_setup(tmp_path):
    gen = run_cli(["generate", "--task", "tsp", "--n", "5", "--count", "3", "--seed", "7"])
    instances_path = tmp_path / "instances.jsonl"
    instances_path.write_text(gen.stdout)
    solved = run_cli(["solve"], gen.stdout)
    oracle_path = tmp_path / "oracle.jsonl"
    oracle_path.write_text(solved.stdout)
    insts = [from_record(r) for r in records(gen.stdout)]
    oracle = {r["id"]: r["optimal_value"] for r in records(solved.stdout)}
    return instances_path, oracle_path, insts, oracle


def test_score_verify_and_reward_modes(tsp_setup):
    instances_path, oracle_path, insts, oracle = tsp_setup
    inst = insts[0]
    good = optimal_response(solve(inst))
    lines = [
        json.dumps({"instance_id": inst.id, "response": good}),
        json.dumps({"instance_id": inst.id, "response": "nothing"}),
    ]
    verify = run_cli(
        ["score", "--mode", "verify", "--instances", str(instances_path), "--oracle", str(oracle_path)],
        "\n".join(lines) + "\n",
    )
    recs = records(verify.stdout)
    assert recs[0]["outcome"]["kind"] == "optimal"
    assert recs[1]["outcome"]["kind"] == "parse_failure"

    reward = run_cli(
        ["score", "--mode", "reward", "--instances", str(instances_path), "--oracle", str(oracle_path)],
        "\n".join(lines) + "\n",
    )
    recs = records(reward.stdout)
    assert recs[0]["format"] == 1.0
    assert recs[0]["quality"] == 2.0
    assert recs[0]["total"] == 3.0
    assert recs[0]["repetition"] == {"detected": False, "substring": "", "count": 0}
    assert recs[1]["quality"] == -1.0


def test_filter_writes_log(tsp_setup, tmp_path):
    instances_path, oracle_path, insts, oracle = tsp_setup
    inst = insts[0]
    good = optimal_response(solve(inst))
    lines = [
        json.dumps({"instance_id": inst.id, "response": good}),
        json.dumps({"instance_id": inst.id, "response": good}),
        json.dumps({"instance_id": insts[1].id, "response": "garbage"}),
    ]
    log_path = tmp_path / "log.json"
    proc = run_cli(
        [
            "filter",
            "--instances", str(instances_path),
            "--oracle", str(oracle_path),
            "--log", str(log_path),
        ],
        "\n".join(lines) + "\n",
    )
    recs = records(proc.stdout)
    assert len(recs) == 2
    assert all(r["outcome"]["kind"] == "optimal" for r in recs)
    assert all(r["split"] == "SFT" for r in recs)
    log = json.loads(log_path.read_text())
    assert log["total"] == 3 and log["retained"] == 2 and log["rejected"] == 1
    assert log["reasons"]["parse_failure"] == 1

    unique = run_cli(
        [
            "filter",
            "--instances", str(instances_path),
            "--oracle", str(oracle_path),
            "--unique-per-instance",
        ],
        "\n".join(lines) + "\n",
    )
    assert len(records(unique.stdout)) == 1


def test_eval_subcommand():
    lines = [
        json.dumps({"problem_id": "p1", "task": "tsp", "outcome": {"kind": "optimal", "achieved": 4, "optimal": 4}}),
        json.dumps({"problem_id": "p1", "task": "tsp", "outcome": {"kind": "infeasible"}}),
        json.dumps({"problem_id": "p2", "task": "tsp", "outcome": {"kind": "suboptimal", "achieved": 9, "optimal": 4}}),
        json.dumps({"problem_id": "p2", "task": "tsp", "outcome": {"kind": "parse_failure"}}),
    ]
    proc = run_cli(["eval", "--k", "2"], "\n".join(lines) + "\n")
    report = records(proc.stdout)[0]
    assert report["k"] == 2
    assert report["overall"]["accuracy"] == 0.5
    assert report["overall"]["feasibility"] == 1.0
    assert report["overall"]["pass_at_k"] == 0.5
    assert report["overall"]["avg_at_k"] == 0.25


def test_curriculum_level_emits_manifest_and_dataset():
    proc = run_cli(["curriculum", "--level", "1", "--seed", "45"])
    lines = proc.stdout.splitlines()
    assert len(lines) == 9001
    manifest = json.loads(lines[0])
    assert manifest["level"] == 1
    assert manifest["budget"] == 4096
    assert manifest["counts"] == {"tsp": 3000, "ged": 3000, "mcp": 3000}
    first = json.loads(lines[1])
    assert first["task"] == "tsp" and first["n"] == 5


def test_unknown_flag_usage_error():
    proc = run_cli(["generate", "--task", "tsp", "--frobnicate"])
    assert proc.returncode == 2


def test_config_file_supplies_defaults(tmp_path):
    config = tmp_path / "config.json"
    config.write_text(json.dumps({"task": "tsp", "n": 5, "count": 2, "seed": 11}))
    proc = run_cli(["generate", "--config", str(config)])
    recs = records(proc.stdout)
    assert len(recs) == 2 and recs[0]["task"] == "tsp"
    override = run_cli(["generate", "--config", str(config), "--count", "4"])
    assert len(records(override.stdout)) == 4


def test_full_pipeline_round_trips_ids(tmp_path):
    gen = run_cli(["generate", "--task", "mcp", "--n", "7", "--count", "4", "--seed", "3"])
    instances_path = tmp_path / "instances.jsonl"
    instances_path.write_text(gen.stdout)
    rendered = run_cli(["render"], gen.stdout)
    prompts = records(rendered.stdout)
    # Scripted echo model: answer every prompt with the oracle witness.
    responses = []
    for rec, inst_rec in zip(prompts, records(gen.stdout)):
        witness = solve(from_record(inst_rec)).witness
        responses.append(
            json.dumps(
                {
                    "instance_id": rec["id"],
                    "response": f"<think>...</think><answer>[{', '.join(witness.payload)}]</answer>",
                }
            )
        )
    scored = run_cli(
        ["score", "--instances", str(instances_path)], "\n".join(responses) + "\n"
    )
    recs = records(scored.stdout)
    assert [r["id"] for r in recs] == [p["id"] for p in prompts]
    assert all(r["total"] == 3.0 for r in recs)
