"""Line-delimited JSON scoring service over stdio or TCP.

One request per LF-terminated line; replies are emitted in request order per
connection. Oracle values are cached by canonical key and optionally
persisted to an append-only sidecar file, so repeated epochs never re-solve
an instance.
"""

from __future__ import annotations

import json
import socketserver
import sys
from typing import IO, Iterable

from .instances import ProblemInstance, canonical_key
from .oracle import solve
from .repetition import DEFAULT_MIN_LENGTH, DEFAULT_MIN_REPEATS
from .reward import ScoredResponse, score_response


class InstanceStore:
    """Instances by id plus a monotone oracle-value cache keyed by canonical key."""

    def __init__(
        self,
        instances: Iterable[ProblemInstance],
        cache_path: str | None = None,
        oracle_values: dict[str, int] | None = None,
    ) -> None:
        self.instances: dict[str, ProblemInstance] = {i.id: i for i in instances}
        self.cache_path = cache_path
        self._by_key: dict[str, int] = {}
        self._by_id: dict[str, int] = {}
        if cache_path is not None:
            self._load_cache(cache_path)
        for instance_id, value in (oracle_values or {}).items():
            self._by_id[instance_id] = value

    def _load_cache(self, path: str) -> None:
        try:
            with open(path, encoding="utf-8") as fh:
                for line in fh:
                    line = line.strip()
                    if not line:
                        continue
                    entry = json.loads(line)
                    self._by_key[entry["key"]] = entry["value"]
        except FileNotFoundError:
            pass

    def get(self, instance_id: str) -> ProblemInstance | None:
        return self.instances.get(instance_id)

    def oracle_value(self, instance: ProblemInstance) -> int:
        value = self._by_id.get(instance.id)
        if value is not None:
            return value
        key = canonical_key(instance)
        value = self._by_key.get(key)
        if value is None:
            value = solve(instance).optimal_value
            self._by_key[key] = value
            if self.cache_path is not None:
                with open(self.cache_path, "a", encoding="utf-8") as fh:
                    fh.write(json.dumps({"key": key, "value": value}) + "\n")
        self._by_id[instance.id] = value
        return value


def reward_payload(scored: ScoredResponse) -> dict:
    reward: dict = {
        "format": scored.breakdown.format,
        "quality": scored.breakdown.quality,
        "repetition_detected": scored.repetition.detected,
        "total": scored.breakdown.total,
    }
    if scored.repetition.detected:
        reward["repetition_count"] = scored.repetition.count
    return reward


def outcome_payload(scored: ScoredResponse) -> dict:
    out: dict = {"kind": scored.outcome.kind.value}
    if scored.outcome.achieved is not None:
        out["achieved"] = scored.outcome.achieved
    if scored.outcome.optimal is not None:
        out["optimal"] = scored.outcome.optimal
    return out


def _score_item(
    store: InstanceStore, item: object, l_min: int, r_min: int, strict_format: bool
) -> dict:
    if not isinstance(item, dict):
        return {"error": "item must be an object"}
    instance_id = item.get("instance_id")
    response = item.get("response")
    if not isinstance(instance_id, str):
        return {"error": "missing instance_id"}
    instance = store.get(instance_id)
    if instance is None:
        return {"error": f"unknown instance_id {instance_id!r}"}
    if not isinstance(response, str):
        return {"error": "missing response"}
    scored = score_response(
        instance,
        response,
        store.oracle_value(instance),
        l_min=l_min,
        r_min=r_min,
        strict_format=strict_format,
    )
    return {"outcome": outcome_payload(scored), "reward": reward_payload(scored)}


def build_reply(
    store: InstanceStore,
    line: str,
    l_min: int = DEFAULT_MIN_LENGTH,
    r_min: int = DEFAULT_MIN_REPEATS,
    strict_format: bool = False,
) -> dict:
    """Reply document for one request line; never raises on bad input."""
    try:
        request = json.loads(line)
    except json.JSONDecodeError as exc:
        return {"error": f"malformed JSON: {exc.msg}"}
    if not isinstance(request, dict):
        return {"error": "request must be a JSON object"}
    reply: dict = {}
    if "req_id" in request:
        reply["req_id"] = request["req_id"]
    if "items" in request:
        items = request["items"]
        if not isinstance(items, list):
            reply["error"] = "items must be an array"
            return reply
        reply["items"] = [
            _score_item(store, item, l_min, r_min, strict_format) for item in items
        ]
        return reply
    result = _score_item(store, request, l_min, r_min, strict_format)
    reply.update(result)
    return reply


def serialize_reply(reply: dict) -> str:
    return json.dumps(reply, ensure_ascii=False, sort_keys=True)


def serve_stdio(
    store: InstanceStore,
    stdin: IO[str] | None = None,
    stdout: IO[str] | None = None,
    **score_kwargs,
) -> int:
    """Score request lines from stdin until EOF. Returns the exit status."""
    stdin = stdin if stdin is not None else sys.stdin
    stdout = stdout if stdout is not None else sys.stdout
    try:
        for line in stdin:
            if not line.strip():
                continue
            reply = build_reply(store, line, **score_kwargs)
            stdout.write(serialize_reply(reply) + "\n")
            stdout.flush()
    except (BrokenPipeError, OSError):
        return 1
    return 0


class _ScoringHandler(socketserver.StreamRequestHandler):
    def handle(self) -> None:
        store = self.server.store  # type: ignore[attr-defined]
        kwargs = self.server.score_kwargs  # type: ignore[attr-defined]
        for raw in self.rfile:
            line = raw.decode("utf-8", errors="replace")
            if not line.strip():
                continue
            reply = build_reply(store, line, **kwargs)
            self.wfile.write((serialize_reply(reply) + "\n").encode("utf-8"))
            self.wfile.flush()


class ScoringServer(socketserver.ThreadingTCPServer):
    """One thread per connection; within a connection replies follow request order."""

    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, address: tuple[str, int], store: InstanceStore, **score_kwargs):
        super().__init__(address, _ScoringHandler)
        self.store = store
        self.score_kwargs = score_kwargs


def serve_tcp(store: InstanceStore, host: str, port: int, **score_kwargs) -> int:
    try:
        with ScoringServer((host, port), store, **score_kwargs) as server:
            server.serve_forever()
    except OSError as exc:
        print(json.dumps({"error": f"transport failure: {exc}"}), file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 0
    return 0
