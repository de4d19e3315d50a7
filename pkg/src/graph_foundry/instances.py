"""Seeded generation of TSP / GED / MCP instances with de-duplication.

All generators are pure functions of their arguments: the same (n, seed)
always yields the same instance. Batch generation derives one seed per
instance slot from the master seed via SHA-256, so instances can be produced
independently and in parallel without sharing an RNG stream.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from enum import Enum

from .errors import GenerationExhaustedError, RangeError
from .namepools import ATOM_LABELS, sample_airport_codes, sample_author_names

DEFAULT_WEIGHT_RANGE = (500, 20000)
DEFAULT_DENSITY_RANGE = (0.3, 0.7)
DEFAULT_EDIT_BUDGET_RANGE = (1, 4)

# Retries per instance slot before giving up on uniqueness.
MAX_DEDUP_ATTEMPTS = 100

# Probability of adding each non-tree bond when growing a random molecule.
EXTRA_BOND_PROB = 0.15


class TaskKind(str, Enum):
    TSP = "tsp"
    GED = "ged"
    MCP = "mcp"


@dataclass
class TspInstance:
    """A symmetric TSP instance over named airports with integer km distances."""

    id: str
    seed: int
    node_names: list[str]
    dist: list[list[int]]

    task = TaskKind.TSP

    def __post_init__(self) -> None:
        n = len(self.node_names)
        if n < 3:
            raise ValueError("TSP instance needs at least 3 nodes")
        if len(set(self.node_names)) != n:
            raise ValueError("node names must be unique")
        if len(self.dist) != n or any(len(row) != n for row in self.dist):
            raise ValueError("distance matrix shape must be n x n")
        for i in range(n):
            for j in range(i + 1, n):
                if self.dist[i][j] != self.dist[j][i]:
                    raise ValueError("distance matrix must be symmetric")
                if self.dist[i][j] <= 0:
                    raise ValueError("off-diagonal distances must be positive")

    @property
    def n(self) -> int:
        return len(self.node_names)


@dataclass
class Molecule:
    """Atoms indexed 0..n-1 with element labels and undirected unit bonds."""

    atom_labels: list[str]
    bonds: set[tuple[int, int]]

    def __post_init__(self) -> None:
        n = len(self.atom_labels)
        if n == 0:
            raise ValueError("molecule must have at least one atom")
        normalized = set()
        for a, b in self.bonds:
            if a == b:
                raise ValueError("self-bonds are not allowed")
            if not (0 <= a < n and 0 <= b < n):
                raise ValueError("bond endpoint out of range")
            normalized.add((min(a, b), max(a, b)))
        self.bonds = normalized
        if not self._connected():
            raise ValueError("molecule must be connected")

    def _connected(self) -> bool:
        n = len(self.atom_labels)
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in self.bonds:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        return len(seen) == n

    @property
    def n(self) -> int:
        return len(self.atom_labels)


@dataclass
class GedInstance:
    """A molecule pair; mol_b is mol_a plus at most `edit_budget` unit edits."""

    id: str
    seed: int
    mol_a: Molecule
    mol_b: Molecule
    edit_budget: int = 0

    task = TaskKind.GED

    @property
    def size_class(self) -> int:
        return max(self.mol_a.n, self.mol_b.n)

    @property
    def n(self) -> int:
        return self.size_class


@dataclass
class McpInstance:
    """An undirected collaboration network over named authors."""

    id: str
    seed: int
    author_names: list[str]
    edges: set[tuple[str, str]]

    task = TaskKind.MCP

    def __post_init__(self) -> None:
        if len(set(self.author_names)) != len(self.author_names):
            raise ValueError("author names must be unique")
        known = set(self.author_names)
        normalized = set()
        for a, b in self.edges:
            if a == b:
                raise ValueError("self-loops are not allowed")
            if a not in known or b not in known:
                raise ValueError(f"edge endpoint {a!r}/{b!r} not in author list")
            normalized.add((min(a, b), max(a, b)))
        self.edges = normalized

    @property
    def n(self) -> int:
        return len(self.author_names)


ProblemInstance = TspInstance | GedInstance | McpInstance


@dataclass
class GenerationConfig:
    """Batch recipe: how many instances per node count, and the knobs per task."""

    task: TaskKind
    per_size_counts: dict[int, int]
    master_seed: int
    weight_range: tuple[int, int] = DEFAULT_WEIGHT_RANGE
    density_range: tuple[float, float] = DEFAULT_DENSITY_RANGE
    edit_budget_range: tuple[int, int] = DEFAULT_EDIT_BUDGET_RANGE

    def __post_init__(self) -> None:
        if any(c <= 0 for c in self.per_size_counts.values()):
            raise ValueError("per-size counts must be positive")
        lo, hi = self.density_range
        if not (0.0 < lo <= hi < 1.0):
            raise ValueError("density range must lie within (0, 1)")
        if self.edit_budget_range[0] < 0:
            raise ValueError("edit budget must be non-negative")


def derive_seed(*parts: object) -> int:
    """Stable 64-bit seed from arbitrary parts (independent of PYTHONHASHSEED)."""
    text = "|".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big")


def generate_tsp(
    n: int, seed: int, weight_range: tuple[int, int] = DEFAULT_WEIGHT_RANGE
) -> TspInstance:
    """Random symmetric integer-weight TSP instance on n named airports."""
    if not 3 <= n <= 20:
        raise RangeError(f"TSP node count must be in [3, 20], got {n}")
    rng = random.Random(seed)
    names = sample_airport_codes(n, rng)
    lo, hi = weight_range
    dist = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            d = rng.randint(lo, hi)
            dist[i][j] = dist[j][i] = d
    return TspInstance(id=f"tsp-n{n}-s{seed}", seed=seed, node_names=names, dist=dist)


def _random_molecule(n: int, rng: random.Random) -> Molecule:
    labels = [rng.choice(ATOM_LABELS) for _ in range(n)]
    bonds: set[tuple[int, int]] = set()
    for i in range(1, n):
        bonds.add((rng.randrange(i), i))
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) not in bonds and rng.random() < EXTRA_BOND_PROB:
                bonds.add((i, j))
    return Molecule(atom_labels=labels, bonds=bonds)


def _bridge_free_bonds(n: int, bonds: set[tuple[int, int]]) -> list[tuple[int, int]]:
    """Bonds whose removal keeps the molecule connected."""
    keep = []
    for bond in sorted(bonds):
        remaining = bonds - {bond}
        adj: list[list[int]] = [[] for _ in range(n)]
        for a, b in remaining:
            adj[a].append(b)
            adj[b].append(a)
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for v in adj[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        if len(seen) == n:
            keep.append(bond)
    return keep


def _apply_unit_edits(
    mol: Molecule, k: int, rng: random.Random
) -> Molecule:
    """Apply k random unit edits (relabel / bond add / bond delete), keeping connectivity."""
    labels = list(mol.atom_labels)
    bonds = set(mol.bonds)
    n = len(labels)
    for _ in range(k):
        non_bonds = [
            (i, j)
            for i in range(n)
            for j in range(i + 1, n)
            if (i, j) not in bonds
        ]
        deletable = _bridge_free_bonds(n, bonds)
        ops = ["relabel"]
        if non_bonds:
            ops.append("add")
        if deletable:
            ops.append("delete")
        op = rng.choice(ops)
        if op == "relabel":
            atom = rng.randrange(n)
            choices = [lab for lab in ATOM_LABELS if lab != labels[atom]]
            labels[atom] = rng.choice(choices)
        elif op == "add":
            bonds.add(rng.choice(non_bonds))
        else:
            bonds.discard(rng.choice(deletable))
    return Molecule(atom_labels=labels, bonds=bonds)


def generate_ged(
    n: int,
    seed: int,
    edit_budget_range: tuple[int, int] = DEFAULT_EDIT_BUDGET_RANGE,
) -> GedInstance:
    """Random molecule pair whose true edit distance is at most the drawn budget."""
    if not 3 <= n <= 12:
        raise RangeError(f"GED node count must be in [3, 12], got {n}")
    rng = random.Random(seed)
    mol_a = _random_molecule(n, rng)
    k = rng.randint(*edit_budget_range)
    mol_b = _apply_unit_edits(mol_a, k, rng)
    return GedInstance(
        id=f"ged-n{n}-s{seed}", seed=seed, mol_a=mol_a, mol_b=mol_b, edit_budget=k
    )


def generate_mcp(n: int, seed: int, density: float) -> McpInstance:
    """Erdos-Renyi collaboration graph over n named authors."""
    if not 4 <= n <= 20:
        raise RangeError(f"MCP node count must be in [4, 20], got {n}")
    if not 0.0 < density < 1.0:
        raise RangeError(f"density must be in (0, 1), got {density}")
    rng = random.Random(seed)
    names = sample_author_names(n, rng)
    edges: set[tuple[str, str]] = set()
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < density:
                a, b = names[i], names[j]
                edges.add((min(a, b), max(a, b)))
    return McpInstance(id=f"mcp-n{n}-s{seed}", seed=seed, author_names=names, edges=edges)


def _generate_one(
    config: GenerationConfig, n: int, seed: int, instance_id: str
) -> ProblemInstance:
    if config.task is TaskKind.TSP:
        inst: ProblemInstance = generate_tsp(n, seed, config.weight_range)
    elif config.task is TaskKind.GED:
        inst = generate_ged(n, seed, config.edit_budget_range)
    else:
        density = random.Random(derive_seed(seed, "density")).uniform(
            *config.density_range
        )
        inst = generate_mcp(n, seed, density)
    inst.id = instance_id
    return inst


def generate_batch(config: GenerationConfig) -> list[ProblemInstance]:
    """Generate the configured counts per size, de-duplicated by canonical key.

    A slot that collides with an earlier instance is regenerated with a fresh
    derived seed; running out of retries raises GenerationExhaustedError.
    """
    out: list[ProblemInstance] = []
    seen: set[str] = set()
    task = config.task.value
    for n in sorted(config.per_size_counts):
        for index in range(config.per_size_counts[n]):
            instance_id = f"{task}-m{config.master_seed}-n{n}-i{index:04d}"
            for attempt in range(MAX_DEDUP_ATTEMPTS):
                seed = derive_seed(config.master_seed, task, n, index, attempt)
                candidate = _generate_one(config, n, seed, instance_id)
                key = canonical_key(candidate)
                if key not in seen:
                    break
            else:
                raise GenerationExhaustedError(
                    f"no unique {task} instance for n={n} index={index} "
                    f"after {MAX_DEDUP_ATTEMPTS} attempts"
                )
            seen.add(key)
            out.append(candidate)
    return out


def _refine_atom_order(mol: Molecule) -> list[int]:
    """Order atoms by label/degree-refined colors (Weisfeiler-Lehman style).

    Ties after refinement are broken by atom id; good enough for
    de-duplication of labeled graphs at these sizes.
    """
    n = mol.n
    adj: list[list[int]] = [[] for _ in range(n)]
    for a, b in mol.bonds:
        adj[a].append(b)
        adj[b].append(a)
    colors = list(mol.atom_labels)
    for _ in range(n):
        signatures = [
            (colors[i], tuple(sorted(colors[j] for j in adj[i]))) for i in range(n)
        ]
        palette = {sig: str(rank) for rank, sig in enumerate(sorted(set(signatures)))}
        new_colors = [palette[sig] for sig in signatures]
        if new_colors == colors:
            break
        colors = new_colors
    return sorted(range(n), key=lambda i: (colors[i], i))


def _molecule_key(mol: Molecule) -> str:
    order = _refine_atom_order(mol)
    position = {atom: idx for idx, atom in enumerate(order)}
    labels = ",".join(mol.atom_labels[a] for a in order)
    edges = sorted(
        (min(position[a], position[b]), max(position[a], position[b]))
        for a, b in mol.bonds
    )
    bonds = ",".join(f"{a}-{b}" for a, b in edges)
    return f"{labels};{bonds}"


def canonical_key(instance: ProblemInstance) -> str:
    """Order-normalized serialization used for de-duplication.

    Ignores id and seed; two instances with the same structure (after sorting
    node names / edge lists and re-indexing) map to the same key.
    """
    if isinstance(instance, TspInstance):
        order = sorted(range(instance.n), key=lambda i: instance.node_names[i])
        names = ",".join(instance.node_names[i] for i in order)
        cells = ",".join(
            str(instance.dist[order[i]][order[j]])
            for i in range(instance.n)
            for j in range(i + 1, instance.n)
        )
        return f"tsp|{names}|{cells}"
    if isinstance(instance, GedInstance):
        return f"ged|{_molecule_key(instance.mol_a)}||{_molecule_key(instance.mol_b)}"
    if isinstance(instance, McpInstance):
        names = ",".join(sorted(instance.author_names))
        edges = ",".join(f"{a}|{b}" for a, b in sorted(instance.edges))
        return f"mcp|{names}|{edges}"
    raise TypeError(f"unknown instance type: {type(instance)!r}")


def to_record(instance: ProblemInstance) -> dict:
    """Line-delimited JSON record: the lingua franca of every downstream module."""
    if isinstance(instance, TspInstance):
        payload: dict = {"node_names": instance.node_names, "dist": instance.dist}
    elif isinstance(instance, GedInstance):
        payload = {
            "mol_a": _molecule_payload(instance.mol_a),
            "mol_b": _molecule_payload(instance.mol_b),
            "edit_budget": instance.edit_budget,
        }
    elif isinstance(instance, McpInstance):
        payload = {
            "author_names": instance.author_names,
            "edges": [list(e) for e in sorted(instance.edges)],
        }
    else:
        raise TypeError(f"unknown instance type: {type(instance)!r}")
    return {
        "id": instance.id,
        "task": instance.task.value,
        "seed": instance.seed,
        "n": instance.n,
        "payload": payload,
    }


def _molecule_payload(mol: Molecule) -> dict:
    return {
        "atom_labels": mol.atom_labels,
        "bonds": [list(b) for b in sorted(mol.bonds)],
    }


def from_record(record: dict) -> ProblemInstance:
    task = TaskKind(record["task"])
    payload = record["payload"]
    if task is TaskKind.TSP:
        return TspInstance(
            id=record["id"],
            seed=record["seed"],
            node_names=list(payload["node_names"]),
            dist=[list(row) for row in payload["dist"]],
        )
    if task is TaskKind.GED:
        return GedInstance(
            id=record["id"],
            seed=record["seed"],
            mol_a=_molecule_from_payload(payload["mol_a"]),
            mol_b=_molecule_from_payload(payload["mol_b"]),
            edit_budget=payload.get("edit_budget", 0),
        )
    return McpInstance(
        id=record["id"],
        seed=record["seed"],
        author_names=list(payload["author_names"]),
        edges={(a, b) for a, b in payload["edges"]},
    )


def _molecule_from_payload(payload: dict) -> Molecule:
    return Molecule(
        atom_labels=list(payload["atom_labels"]),
        bonds={(a, b) for a, b in payload["bonds"]},
    )
