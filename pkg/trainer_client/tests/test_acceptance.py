"""Secondary acceptance: field-for-field parity with the primary CLI scorer,
and recovery across a service subprocess restart."""

import json
import subprocess

from trainer_client import connect

from conftest import FOUNDRY, response_flavor

FLAVORS = ["optimal", "worse", "infeasible", "repetitive", "unparseable"]


def _mixed_items(workspace, count=1000):
    ids = workspace["ids"]
    items = []
    for i in range(count):
        iid = ids[i % len(ids)]
        flavor = FLAVORS[i % len(FLAVORS)]
        items.append(
            {
                "instance_id": iid,
                "response": response_flavor(
                    workspace["tasks"][iid], workspace["witnesses"][iid], flavor
                ),
            }
        )
    return items


def _cli_score(workspace, items, mode):
    payload = "".join(json.dumps(item) + "\n" for item in items)
    proc = subprocess.run(
        FOUNDRY
        + [
            "score",
            "--mode", mode,
            "--instances", workspace["instances"],
            "--oracle", workspace["oracle"],
        ],
        input=payload,
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr[:300]
    return [json.loads(line) for line in proc.stdout.splitlines() if line.strip()]


def test_client_parity_with_cli_over_1000_mixed_items(workspace, service_cmd):
    items = _mixed_items(workspace, 1000)
    with connect(service_cmd) as client:
        records = client.score_batch(items)
    assert len(records) == 1000

    reward_rows = _cli_score(workspace, items, "reward")
    verify_rows = _cli_score(workspace, items, "verify")
    for item, record, reward_row, verify_row in zip(
        items, records, reward_rows, verify_rows
    ):
        assert reward_row["id"] == item["instance_id"]
        assert "error" not in record
        # Reward fields, unrenamed and equal value-for-value.
        assert record["reward"]["format"] == reward_row["format"]
        assert record["reward"]["quality"] == reward_row["quality"]
        assert record["reward"]["total"] == reward_row["total"]
        assert (
            record["reward"]["repetition_detected"]
            == reward_row["repetition"]["detected"]
        )
        if record["reward"]["repetition_detected"]:
            assert (
                record["reward"]["repetition_count"]
                == reward_row["repetition"]["count"]
            )
        # Outcome fields against the verify-mode records.
        assert record["outcome"]["kind"] == verify_row["outcome"]["kind"]
        for key in ("achieved", "optimal"):
            assert record["outcome"].get(key) == verify_row["outcome"].get(key)
    print("[PASS] client parity: 1000 mixed items equal CLI score output")


def test_subprocess_restart_recovery(workspace, service_cmd):
    items = _mixed_items(workspace, 10)
    first = connect(service_cmd)
    before = first.score_batch(items)
    # Hard-kill the service mid-session, then bring up a fresh one.
    first._transport.proc.kill()
    first._transport.proc.wait()
    first.close()
    second = connect(service_cmd)
    try:
        after = second.score_batch(items)
    finally:
        second.close()
    assert after == before
    print("[PASS] subprocess restart recovery")
