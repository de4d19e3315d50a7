"""Parse free-text model responses into task-shaped structured solutions.

The extractor scans the whole response for bracketed lists and keeps the
LAST one whose elements all conform to the task grammar. Long reasoning
traces routinely contain intermediate candidate lists, so the final answer
is taken to be the last well-formed one.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .instances import TaskKind

_BRACKET_RE = re.compile(r"\[([^\[\]]*)\]")
# Airport codes and person names: letters first, then letters/digits/spaces
# and common name punctuation. Never matches "..." or bare numbers.
_IDENTIFIER_RE = re.compile(r"[A-Za-z][A-Za-z0-9 .'\-]*")
_INTEGER_RE = re.compile(r"\d+")

TspRoute = list[str]
GedMapping = list[int]
McpClique = list[str]


@dataclass
class StructuredSolution:
    task: TaskKind
    payload: TspRoute | GedMapping | McpClique

    def __post_init__(self) -> None:
        if not self.payload:
            raise ValueError("solution payload must be nonempty")


@dataclass
class ParseFailure:
    reason: str
    span: str | None = None


ExtractionResult = StructuredSolution | ParseFailure


def _parse_elements(task: TaskKind, raw: str) -> list[str] | list[int] | None:
    """Elements of one bracketed list if they all conform to the task grammar."""
    elements = [part.strip() for part in raw.split(",")]
    if not elements or any(not e for e in elements):
        return None
    if task is TaskKind.GED:
        if all(_INTEGER_RE.fullmatch(e) for e in elements):
            return [int(e) for e in elements]
        return None
    if any(not _IDENTIFIER_RE.fullmatch(e) for e in elements):
        return None
    if task is TaskKind.TSP:
        # The answer format closes the route: "..., Airport A]".
        if len(elements) < 2 or elements[0] != elements[-1]:
            return None
    return elements


def extract(task: TaskKind, response: str) -> ExtractionResult:
    """Extract the last conforming bracketed list from arbitrary text."""
    best: list[str] | list[int] | None = None
    for match in _BRACKET_RE.finditer(response):
        parsed = _parse_elements(task, match.group(1))
        if parsed is not None:
            best = parsed
    if best is None:
        return ParseFailure(
            reason=f"no bracketed list conforming to the {task.value} answer format",
            span=response[-80:] if response else None,
        )
    return StructuredSolution(task=task, payload=best)


def format_solution(solution: StructuredSolution) -> str:
    """Render a solution in the bracketed answer format the extractor reads."""
    return "[" + ", ".join(str(x) for x in solution.payload) + "]"
