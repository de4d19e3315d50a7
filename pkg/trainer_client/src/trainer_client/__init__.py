"""Thin RL-trainer client for the graph-foundry scoring service."""

from .client import (
    ClientError,
    ConnectError,
    RewardClient,
    ScoreError,
    TransportError,
    batch_totals,
    connect,
    fetch_records,
)

__version__ = "0.1.0"

__all__ = [
    "ClientError",
    "ConnectError",
    "RewardClient",
    "ScoreError",
    "TransportError",
    "batch_totals",
    "connect",
    "fetch_records",
]
