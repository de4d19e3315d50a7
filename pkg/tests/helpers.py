"""Shared fixtures: reference instances, independent brute-force oracles, and
the scripted responder used by pipeline/service tests.

The brute forcers here are deliberately written with different data
structures than the library solvers so the two routes stay independent.
"""

from __future__ import annotations

import itertools
import random

from graph_foundry import (
    GedInstance,
    McpInstance,
    Molecule,
    OracleResult,
    ProblemInstance,
    StructuredSolution,
    TaskKind,
    TspInstance,
    format_solution,
    objective,
)

# ---------------------------------------------------------------------------
# Reference instances lifted from the published prompt examples.

FLIGHT_AIRPORTS = ["BVC", "URA", "SMR", "KOK", "MTV", "TFF", "FLN", "YZF"]

_FLIGHT_DISTANCES = {
    ("BVC", "KOK"): 6401, ("BVC", "YZF"): 9193, ("BVC", "TFF"): 5716,
    ("BVC", "FLN"): 5667, ("BVC", "SMR"): 8046, ("BVC", "URA"): 8349,
    ("BVC", "MTV"): 20125, ("URA", "KOK"): 3138, ("URA", "YZF"): 11132,
    ("URA", "TFF"): 13590, ("URA", "FLN"): 13463, ("URA", "SMR"): 13193,
    ("URA", "MTV"): 14802, ("SMR", "KOK"): 11079, ("SMR", "YZF"): 7927,
    ("SMR", "TFF"): 4079, ("SMR", "FLN"): 5562, ("SMR", "MTV"): 16291,
    ("KOK", "YZF"): 8634, ("KOK", "TFF"): 11307, ("KOK", "FLN"): 11987,
    ("KOK", "MTV"): 16203, ("MTV", "YZF"): 12733, ("MTV", "TFF"): 18200,
    ("MTV", "FLN"): 14727, ("TFF", "YZF"): 9491, ("TFF", "FLN"): 3676,
    ("FLN", "YZF"): 11826,
}


def flight_tsp_instance() -> TspInstance:
    n = len(FLIGHT_AIRPORTS)
    dist = [[0] * n for _ in range(n)]
    for (a, b), d in _FLIGHT_DISTANCES.items():
        i, j = FLIGHT_AIRPORTS.index(a), FLIGHT_AIRPORTS.index(b)
        dist[i][j] = dist[j][i] = d
    return TspInstance(
        id="tsp-flight-example", seed=0, node_names=list(FLIGHT_AIRPORTS), dist=dist
    )


def chloro_ged_instance() -> GedInstance:
    bonds = {(0, 1), (1, 2), (1, 3)}
    return GedInstance(
        id="ged-chloro-example",
        seed=0,
        mol_a=Molecule(atom_labels=["Cl", "C", "Cl", "Cl"], bonds=set(bonds)),
        mol_b=Molecule(atom_labels=["Cl", "Ge", "Cl", "Cl"], bonds=set(bonds)),
        edit_budget=1,
    )


ACADEMIC_AUTHORS = [
    "Gang Zhou",
    "Jean-Dominique Decotignie",
    "Michel Misson",
    "Pascale Minet",
    "Gary V. Yee",
    "Bhaskar Krishnamachari",
    "Rana Diab",
    "Erwan Livolant",
]

ACADEMIC_EDGES = [
    ("Gang Zhou", "Bhaskar Krishnamachari"),
    ("Gang Zhou", "Michel Misson"),
    ("Gang Zhou", "Rana Diab"),
    ("Jean-Dominique Decotignie", "Michel Misson"),
    ("Michel Misson", "Pascale Minet"),
    ("Michel Misson", "Bhaskar Krishnamachari"),
    ("Michel Misson", "Gary V. Yee"),
    ("Michel Misson", "Erwan Livolant"),
    ("Michel Misson", "Rana Diab"),
    ("Pascale Minet", "Bhaskar Krishnamachari"),
    ("Pascale Minet", "Erwan Livolant"),
    ("Bhaskar Krishnamachari", "Erwan Livolant"),
]

ACADEMIC_MAX_CLIQUE = {
    "Michel Misson",
    "Pascale Minet",
    "Bhaskar Krishnamachari",
    "Erwan Livolant",
}


def academic_mcp_instance() -> McpInstance:
    return McpInstance(
        id="mcp-academic-example",
        seed=0,
        author_names=list(ACADEMIC_AUTHORS),
        edges={(min(a, b), max(a, b)) for a, b in ACADEMIC_EDGES},
    )


# ---------------------------------------------------------------------------
# Independent brute-force oracles.


def brute_force_tsp(instance: TspInstance) -> int:
    """Minimum closed-tour length over all (n-1)!/2 undirected tours."""
    names = instance.node_names
    index = {name: i for i, name in enumerate(names)}
    d = instance.dist
    rest = list(range(1, len(names)))
    best = None
    for perm in itertools.permutations(rest):
        if perm[0] > perm[-1]:
            continue  # each undirected tour once
        length = d[0][perm[0]] + d[perm[-1]][0]
        for a, b in zip(perm, perm[1:]):
            length += d[a][b]
        if best is None or length < best:
            best = length
    assert best is not None
    return best


def independent_mapping_cost(
    mol_a: Molecule, mol_b: Molecule, mapping: tuple[int, ...]
) -> int:
    """Set-based reimplementation of the unit-cost mapping objective."""
    size = max(mol_a.n, mol_b.n)
    cost = 0
    for i in range(size):
        la = mol_a.atom_labels[i] if i < mol_a.n else None
        lb = mol_b.atom_labels[mapping[i]] if mapping[i] < mol_b.n else None
        if la != lb:
            cost += 1
    inverse = {v: i for i, v in enumerate(mapping)}
    edges_a = {frozenset(e) for e in mol_a.bonds}
    pulled_b = {frozenset((inverse[x], inverse[y])) for x, y in mol_b.bonds}
    return cost + len(edges_a ^ pulled_b)


def brute_force_ged(instance: GedInstance) -> tuple[int, list[int]]:
    """Exhaustive enumeration of all padded bijections, lex-smallest winner."""
    size = max(instance.mol_a.n, instance.mol_b.n)
    best_cost = None
    best_mapping: tuple[int, ...] = ()
    for mapping in itertools.permutations(range(size)):
        cost = independent_mapping_cost(instance.mol_a, instance.mol_b, mapping)
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_mapping = mapping
    assert best_cost is not None
    return best_cost, list(best_mapping)


def brute_force_mcp(instance: McpInstance) -> tuple[int, set[str]]:
    """Exhaustive 2^n subset check; returns size and one maximum clique."""
    names = instance.author_names
    n = len(names)
    edges = instance.edges
    best_size = 0
    best: set[str] = set()
    for subset in range(1 << n):
        members = [names[i] for i in range(n) if subset >> i & 1]
        if len(members) <= best_size:
            continue
        ok = all(
            (min(a, b), max(a, b)) in edges
            for a, b in itertools.combinations(members, 2)
        )
        if ok:
            best_size = len(members)
            best = set(members)
    return best_size, best


def brute_force_repetition(text: str, l_min: int, r_min: int) -> bool:
    """O(n * l_min) window counter: does any l_min-length substring occur
    r_min times (overlaps allowed)? Equivalent to the >= l_min criterion."""
    n = len(text)
    if n < l_min:
        return False
    counts: dict[str, int] = {}
    for i in range(n - l_min + 1):
        window = text[i : i + l_min]
        counts[window] = counts.get(window, 0) + 1
    return any(c >= r_min for c in counts.values())


def count_occurrences(text: str, sub: str) -> int:
    """Occurrences of sub in text, overlaps included."""
    count = 0
    at = text.find(sub)
    while at != -1:
        count += 1
        at = text.find(sub, at + 1)
    return count


# ---------------------------------------------------------------------------
# Scripted responder.


def optimal_response(result: OracleResult, think: bool = True) -> str:
    answer = format_solution(result.witness)
    if think:
        return f"<think>systematic search over candidates</think><answer>{answer}</answer>"
    return f"The best I found is {answer}"


def perturbed_response(instance: ProblemInstance, result: OracleResult) -> str | None:
    """A feasible but strictly suboptimal answer, or None if none was found."""
    witness = result.witness.payload
    if isinstance(instance, TspInstance):
        route = list(witness)
        for i, j in itertools.combinations(range(1, len(route) - 1), 2):
            candidate = list(route)
            candidate[i], candidate[j] = candidate[j], candidate[i]
            solution = StructuredSolution(task=TaskKind.TSP, payload=candidate)
            if objective(instance, solution) > result.optimal_value:
                return f"<think>greedy pass</think><answer>{format_solution(solution)}</answer>"
        return None
    if isinstance(instance, GedInstance):
        mapping = list(witness)
        for i, j in itertools.combinations(range(len(mapping)), 2):
            candidate = list(mapping)
            candidate[i], candidate[j] = candidate[j], candidate[i]
            solution = StructuredSolution(task=TaskKind.GED, payload=candidate)
            if objective(instance, solution) > result.optimal_value:
                return f"<think>partial match</think><answer>{format_solution(solution)}</answer>"
        return None
    if result.optimal_value < 2:
        return None
    clique = list(witness)[:-1]
    solution = StructuredSolution(task=TaskKind.MCP, payload=clique)
    return f"<think>grew a clique</think><answer>{format_solution(solution)}</answer>"


def garbage_response(instance: ProblemInstance, flavor: str) -> str:
    if flavor == "unparseable":
        return "<think>no idea</think> I cannot produce an answer for this one."
    if isinstance(instance, TspInstance):
        name = instance.node_names[0]
        return f"<answer>[{name}, {name}]</answer>"
    if isinstance(instance, GedInstance):
        zeros = ", ".join("0" for _ in range(instance.size_class))
        return f"<answer>[{zeros}]</answer>"
    name = instance.author_names[0]
    return f"<answer>[{name}, {name}]</answer>"


def scripted_response(
    instance: ProblemInstance, result: OracleResult, index: int
) -> tuple[str, str]:
    """Deterministic 40/40/20 optimal / perturbed / garbage mix by index."""
    slot = index % 5
    if slot in (0, 1):
        return "optimal", optimal_response(result)
    if slot in (2, 3):
        text = perturbed_response(instance, result)
        if text is not None:
            return "perturbed", text
        return "garbage", garbage_response(instance, "infeasible")
    flavor = "unparseable" if index % 2 else "infeasible"
    return "garbage", garbage_response(instance, flavor)


def seeded_rng(label: str) -> random.Random:
    return random.Random(hash_label(label))


def hash_label(label: str) -> int:
    import hashlib

    return int.from_bytes(hashlib.sha256(label.encode()).digest()[:8], "big")
