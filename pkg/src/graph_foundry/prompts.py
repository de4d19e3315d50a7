"""Render instances into their natural-language prompt templates.

The templates live as literal resource files next to this module; they are
the normative text, and tests pin rendered prompts against golden files.
Line endings are LF throughout.
"""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .instances import (
    GedInstance,
    McpInstance,
    Molecule,
    ProblemInstance,
    TspInstance,
)


@lru_cache(maxsize=None)
def _template(name: str) -> str:
    text = (
        resources.files("graph_foundry.templates").joinpath(f"{name}.txt").read_text(
            encoding="utf-8"
        )
    )
    return text.replace("\r\n", "\n").rstrip("\n")


def _atoms_line(mol: Molecule) -> str:
    return ", ".join(f"{label} (atom {i})" for i, label in enumerate(mol.atom_labels))


def _bonds_line(mol: Molecule) -> str:
    return ", ".join(f"{a}-{b}" for a, b in sorted(mol.bonds))


def render(instance: ProblemInstance) -> str:
    """Prompt text for one instance. Pair lines follow (i, j) with i < j in list order."""
    if isinstance(instance, TspInstance):
        names = instance.node_names
        lines = "\n".join(
            f"{names[i]} to {names[j]}: {instance.dist[i][j]}"
            for i in range(instance.n)
            for j in range(i + 1, instance.n)
        )
        return _template("tsp").format(
            airports=", ".join(names), distance_lines=lines
        )
    if isinstance(instance, GedInstance):
        return _template("ged").format(
            atoms_a=_atoms_line(instance.mol_a),
            bonds_a=_bonds_line(instance.mol_a),
            atoms_b=_atoms_line(instance.mol_b),
            bonds_b=_bonds_line(instance.mol_b),
        )
    if isinstance(instance, McpInstance):
        names = instance.author_names
        pairs = [
            f"{names[i]} and {names[j]}"
            for i in range(instance.n)
            for j in range(i + 1, instance.n)
            if (min(names[i], names[j]), max(names[i], names[j])) in instance.edges
        ]
        return _template("mcp").format(
            authors=", ".join(names), collaborations=", ".join(pairs)
        )
    raise TypeError(f"unknown instance type: {type(instance)!r}")


def system_prompt() -> str:
    """The RL-stage system prompt, verbatim."""
    return _template("system")
