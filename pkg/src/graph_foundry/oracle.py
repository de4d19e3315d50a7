"""Exact solvers and objective evaluators for TSP / GED / MCP.

These provide the ground truth every correctness check and reward is
measured against. Size limits are chosen so exhaustive cross-checks in the
test suite stay fast; anything larger raises SizeLimitError.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .errors import ContractViolationError, SizeLimitError
from .extract import StructuredSolution
from .instances import (
    GedInstance,
    McpInstance,
    Molecule,
    ProblemInstance,
    TaskKind,
    TspInstance,
)

TSP_MAX_NODES = 16
GED_MAX_NODES = 9
MCP_MAX_NODES = 20


@dataclass
class OracleResult:
    task: TaskKind
    optimal_value: int
    witness: StructuredSolution
    elapsed: float


def solve_tsp(instance: TspInstance) -> OracleResult:
    """Held-Karp dynamic program over subsets.

    The witness is the lexicographically smallest optimal tour (by node
    index) starting and ending at node 0.
    """
    start_time = time.perf_counter()
    n = instance.n
    if n > TSP_MAX_NODES:
        raise SizeLimitError(f"TSP solver handles n <= {TSP_MAX_NODES}, got {n}")
    d = instance.dist
    full = (1 << n) - 1
    inf = float("inf")

    # f[mask][j]: cheapest path from node 0 that visits exactly `mask` and ends at j.
    f = [[inf] * n for _ in range(1 << n)]
    f[1][0] = 0
    for mask in range(1, 1 << n):
        if not mask & 1:
            continue
        row = f[mask]
        for j in range(n):
            cost_j = row[j]
            if cost_j == inf:
                continue
            dj = d[j]
            for k in range(n):
                if mask & (1 << k):
                    continue
                next_mask = mask | (1 << k)
                cand = cost_j + dj[k]
                if cand < f[next_mask][k]:
                    f[next_mask][k] = cand

    optimal = min(f[full][j] + d[j][0] for j in range(1, n))

    # Forward greedy reconstruction: always take the smallest next node that
    # still completes to an optimal tour. Completion cost from c through the
    # unvisited set back to 0 equals f over the reversed path (d symmetric).
    route_idx = [0]
    mask = 1
    cost_so_far = 0
    last = 0
    for _ in range(n - 1):
        for c in range(1, n):
            bit = 1 << c
            if mask & bit:
                continue
            rest = full & ~(mask | bit)
            completion = f[rest | 1 | bit][c]
            if cost_so_far + d[last][c] + completion == optimal:
                route_idx.append(c)
                mask |= bit
                cost_so_far += d[last][c]
                last = c
                break
        else:
            raise AssertionError("Held-Karp reconstruction failed")

    names = instance.node_names
    route = [names[i] for i in route_idx] + [names[0]]
    witness = StructuredSolution(task=TaskKind.TSP, payload=route)
    return OracleResult(
        task=TaskKind.TSP,
        optimal_value=optimal,
        witness=witness,
        elapsed=time.perf_counter() - start_time,
    )


def _padded_labels(mol: Molecule, size: int) -> list[str | None]:
    return list(mol.atom_labels) + [None] * (size - mol.n)


def _adjacency_bits(mol: Molecule, size: int) -> list[int]:
    adj = [0] * size
    for a, b in mol.bonds:
        adj[a] |= 1 << b
        adj[b] |= 1 << a
    return adj


def mapping_cost(mol_a: Molecule, mol_b: Molecule, mapping: list[int]) -> int:
    """Unit-cost edits induced by a full padded node mapping.

    Label mismatches and real<->dummy assignments cost 1 per node; every edge
    present on exactly one side (after mapping) costs 1.
    """
    size = max(mol_a.n, mol_b.n)
    if sorted(mapping) != list(range(size)):
        raise ContractViolationError("mapping must be a permutation of the padded ids")
    labels_a = _padded_labels(mol_a, size)
    labels_b = _padded_labels(mol_b, size)
    adj_a = _adjacency_bits(mol_a, size)
    adj_b = _adjacency_bits(mol_b, size)
    cost = 0
    for i in range(size):
        la, lb = labels_a[i], labels_b[mapping[i]]
        if la != lb or (la is None) != (lb is None):
            cost += 1
    for i in range(size):
        for j in range(i + 1, size):
            a_edge = adj_a[i] >> j & 1
            b_edge = adj_b[mapping[i]] >> mapping[j] & 1
            cost += a_edge != b_edge
    return cost


def solve_ged(instance: GedInstance) -> OracleResult:
    """Branch-and-bound over full node mappings, smaller molecule padded with dummies.

    Candidate images are tried in ascending order with strict-improvement
    updates, so the witness is the lexicographically smallest optimal mapping.
    """
    start_time = time.perf_counter()
    mol_a, mol_b = instance.mol_a, instance.mol_b
    size = max(mol_a.n, mol_b.n)
    if size > GED_MAX_NODES:
        raise SizeLimitError(f"GED solver handles n <= {GED_MAX_NODES}, got {size}")
    labels_a = _padded_labels(mol_a, size)
    labels_b = _padded_labels(mol_b, size)
    adj_a = _adjacency_bits(mol_a, size)
    adj_b = _adjacency_bits(mol_b, size)

    best_cost = size * size + 1  # strictly above any achievable cost
    best_map: list[int] = []
    mapping = [-1] * size
    taken = [False] * size

    def dfs(i: int, partial: int) -> None:
        nonlocal best_cost, best_map
        if partial >= best_cost:
            return
        if i == size:
            best_cost = partial
            best_map = mapping[:i]
            return
        la = labels_a[i]
        for v in range(size):
            if taken[v]:
                continue
            delta = 1 if (la != labels_b[v]) else 0
            row_b = adj_b[v]
            for j in range(i):
                if (adj_a[i] >> j & 1) != (row_b >> mapping[j] & 1):
                    delta += 1
            mapping[i] = v
            taken[v] = True
            dfs(i + 1, partial + delta)
            taken[v] = False
        mapping[i] = -1

    dfs(0, 0)
    witness = StructuredSolution(task=TaskKind.GED, payload=best_map)
    return OracleResult(
        task=TaskKind.GED,
        optimal_value=best_cost,
        witness=witness,
        elapsed=time.perf_counter() - start_time,
    )


def solve_mcp(instance: McpInstance) -> OracleResult:
    """Branch-and-bound maximum clique search with pivoting (Bron-Kerbosch style)."""
    start_time = time.perf_counter()
    n = instance.n
    if n > MCP_MAX_NODES:
        raise SizeLimitError(f"MCP solver handles n <= {MCP_MAX_NODES}, got {n}")
    names = instance.author_names
    index = {name: i for i, name in enumerate(names)}
    adj = [0] * n
    for a, b in instance.edges:
        i, j = index[a], index[b]
        adj[i] |= 1 << j
        adj[j] |= 1 << i

    best: list[int] = []

    def expand(clique: list[int], candidates: int) -> None:
        nonlocal best
        if not candidates:
            if len(clique) > len(best):
                best = clique.copy()
            return
        if len(clique) + bin(candidates).count("1") <= len(best):
            return
        # Pivot on the candidate covering the most of the candidate set.
        pivot = -1
        pivot_cover = -1
        probe = candidates
        while probe:
            u = (probe & -probe).bit_length() - 1
            cover = bin(candidates & adj[u]).count("1")
            if cover > pivot_cover:
                pivot_cover = cover
                pivot = u
            probe &= probe - 1
        ext = candidates & ~adj[pivot]
        while ext:
            v = (ext & -ext).bit_length() - 1
            bit = 1 << v
            clique.append(v)
            expand(clique, candidates & adj[v])
            clique.pop()
            candidates &= ~bit
            ext &= ~bit

    expand([], (1 << n) - 1)
    witness = StructuredSolution(
        task=TaskKind.MCP, payload=[names[i] for i in sorted(best)]
    )
    return OracleResult(
        task=TaskKind.MCP,
        optimal_value=len(best),
        witness=witness,
        elapsed=time.perf_counter() - start_time,
    )


def solve(instance: ProblemInstance) -> OracleResult:
    if isinstance(instance, TspInstance):
        return solve_tsp(instance)
    if isinstance(instance, GedInstance):
        return solve_ged(instance)
    return solve_mcp(instance)


def objective(instance: ProblemInstance, solution: StructuredSolution) -> int:
    """Objective value of a feasible solution; raises on clearly infeasible input."""
    if solution.task is not instance.task:
        raise ContractViolationError(
            f"solution task {solution.task.value} does not match instance task "
            f"{instance.task.value}"
        )
    if isinstance(instance, TspInstance):
        route = solution.payload
        index = {name: i for i, name in enumerate(instance.node_names)}
        unknown = [name for name in route if name not in index]
        if unknown:
            raise ContractViolationError(f"unknown node {unknown[0]!r} in route")
        if route[0] != route[-1] or sorted(route[:-1]) != sorted(instance.node_names):
            raise ContractViolationError("route is not a closed tour over all nodes")
        return sum(
            instance.dist[index[route[i]]][index[route[i + 1]]]
            for i in range(len(route) - 1)
        )
    if isinstance(instance, GedInstance):
        return mapping_cost(instance.mol_a, instance.mol_b, list(solution.payload))
    if isinstance(instance, McpInstance):
        clique = solution.payload
        known = set(instance.author_names)
        if len(set(clique)) != len(clique) or not set(clique) <= known:
            raise ContractViolationError("clique members must be distinct known authors")
        for i in range(len(clique)):
            for j in range(i + 1, len(clique)):
                a, b = sorted((clique[i], clique[j]))
                if (a, b) not in instance.edges:
                    raise ContractViolationError(f"{a!r} and {b!r} are not adjacent")
        return len(clique)
    raise TypeError(f"unknown instance type: {type(instance)!r}")
