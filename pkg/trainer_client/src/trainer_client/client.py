"""Client for the graph-foundry scoring service.

Speaks the service's line-delimited JSON wire protocol over either a spawned
stdio subprocess (whose lifecycle the client owns) or a TCP connection.
Every field the service emits is surfaced unrenamed; no reward is ever
recomputed or adjusted client-side.
"""

from __future__ import annotations

import json
import socket
import subprocess
from typing import Sequence


class ClientError(Exception):
    """Base class for client failures."""


class ConnectError(ClientError):
    """Could not reach the service; carries the endpoint description."""


class TransportError(ClientError):
    """The connection dropped mid-exchange. Safe to retry on a fresh handle;
    partial results are always discarded."""


class ScoreError(ClientError):
    """A strict-mode batch contained per-item error records."""


class _StdioTransport:
    def __init__(self, command: Sequence[str]):
        self.command = list(command)
        try:
            self.proc = subprocess.Popen(
                self.command,
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
            )
        except OSError as exc:
            raise ConnectError(f"failed to spawn {self.command!r}: {exc}") from exc

    def exchange(self, line: str) -> str:
        proc = self.proc
        if proc.poll() is not None:
            raise TransportError(
                f"service process {self.command!r} exited with {proc.returncode}"
            )
        try:
            proc.stdin.write(line + "\n")
            proc.stdin.flush()
            reply = proc.stdout.readline()
        except (BrokenPipeError, OSError) as exc:
            raise TransportError(f"stdio transport dropped: {exc}") from exc
        if not reply:
            raise TransportError("service closed its output mid-exchange")
        return reply

    def close(self) -> None:
        proc = self.proc
        if proc.poll() is None:
            try:
                proc.stdin.close()
            except OSError:
                pass
            try:
                proc.wait(timeout=5)
            except subprocess.TimeoutExpired:
                proc.kill()
                proc.wait()


class _TcpTransport:
    def __init__(self, host: str, port: int, timeout: float):
        self.endpoint = f"{host}:{port}"
        try:
            self.sock = socket.create_connection((host, port), timeout=timeout)
        except OSError as exc:
            raise ConnectError(f"cannot connect to {self.endpoint}: {exc}") from exc
        self.reader = self.sock.makefile("r", encoding="utf-8")

    def exchange(self, line: str) -> str:
        try:
            self.sock.sendall((line + "\n").encode("utf-8"))
            reply = self.reader.readline()
        except OSError as exc:
            raise TransportError(f"tcp transport to {self.endpoint} dropped: {exc}") from exc
        if not reply:
            raise TransportError(f"{self.endpoint} closed the connection mid-exchange")
        return reply

    def close(self) -> None:
        try:
            self.reader.close()
            self.sock.close()
        except OSError:
            pass


class RewardClient:
    """One handle per worker process; not shareable across concurrent callers."""

    def __init__(self, transport):
        self._transport = transport
        self._next_req = 0

    def _request(self, body: dict) -> dict:
        req_id = f"c{self._next_req}"
        self._next_req += 1
        reply_line = self._transport.exchange(
            json.dumps({"req_id": req_id, **body}, ensure_ascii=False)
        )
        try:
            reply = json.loads(reply_line)
        except json.JSONDecodeError as exc:
            raise TransportError(f"unparseable service reply: {exc.msg}") from exc
        if reply.get("req_id") != req_id:
            raise TransportError(
                f"reply req_id {reply.get('req_id')!r} does not match {req_id!r}"
            )
        return reply

    def ping(self) -> bool:
        """Round-trip an empty batch."""
        return self._request({"items": []}).get("items") == []

    def score_batch(self, items: list[dict], strict: bool = False) -> list[dict]:
        """Score items positionally: result i belongs to items[i].

        Each result is the service record verbatim ({outcome, reward} or
        {error}); with strict=True any per-item error raises instead.
        """
        reply = self._request({"items": list(items)})
        if "error" in reply:
            raise ScoreError(f"batch rejected: {reply['error']}")
        results = reply.get("items")
        if not isinstance(results, list) or len(results) != len(items):
            raise TransportError(
                f"expected {len(items)} results, got {len(results) if isinstance(results, list) else results!r}"
            )
        if strict:
            for position, record in enumerate(results):
                if "error" in record:
                    raise ScoreError(
                        f"item {position} failed: {record['error']}"
                    )
        return results

    def score(self, instance_id: str, response: str) -> dict:
        """Score one response; returns the service record verbatim."""
        return self.score_batch([{"instance_id": instance_id, "response": response}])[0]

    def close(self) -> None:
        self._transport.close()

    def __enter__(self) -> "RewardClient":
        return self

    def __exit__(self, *exc_info) -> None:
        self.close()


def connect(
    endpoint: Sequence[str] | str, timeout: float = 30.0, check: bool = True
) -> RewardClient:
    """Open a handle to a scoring service.

    endpoint is either an argv list (spawn the service as a stdio child) or
    a "host:port" string (TCP). The handle is liveness-checked with a ping
    unless check=False.
    """
    if isinstance(endpoint, str):
        host, _, port_text = endpoint.rpartition(":")
        if not host or not port_text.isdigit():
            raise ConnectError(f"endpoint {endpoint!r} is not host:port")
        transport = _TcpTransport(host, int(port_text), timeout)
    else:
        transport = _StdioTransport(endpoint)
    client = RewardClient(transport)
    if check:
        try:
            alive = client.ping()
        except ClientError as exc:
            client.close()
            raise ConnectError(f"liveness check failed for {endpoint!r}: {exc}") from exc
        if not alive:
            client.close()
            raise ConnectError(f"liveness check failed for {endpoint!r}")
    return client


def batch_totals(records: list[dict]) -> list[float]:
    """Convenience for reward callables: the total reward per record, with
    errors surfacing as raises rather than silent placeholders."""
    totals = []
    for position, record in enumerate(records):
        if "error" in record:
            raise ScoreError(f"item {position} failed: {record['error']}")
        totals.append(record["reward"]["total"])
    return totals


def fetch_records(command: Sequence[str]) -> list[dict]:
    """Run a record-emitting CLI (generate / curriculum / solve / render) and
    parse its JSONL stdout. Used for dataset and curriculum fetch."""
    proc = subprocess.run(
        list(command), capture_output=True, text=True
    )
    if proc.returncode != 0:
        raise ClientError(
            f"{command!r} exited {proc.returncode}: {proc.stderr.strip()[:200]}"
        )
    return [json.loads(line) for line in proc.stdout.splitlines() if line.strip()]
