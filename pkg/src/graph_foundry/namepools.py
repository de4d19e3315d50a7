"""Name pools used by the instance generators.

Airport codes are random 3-letter strings, atom labels come from a fixed
12-element pool, and author names are built from bundled first/last name
lists. Only the structure of an instance matters downstream; the pools just
keep prompts looking like their real-world counterparts.
"""

from __future__ import annotations

import random
import string

ATOM_LABELS = ["C", "N", "O", "S", "P", "F", "Cl", "Br", "I", "Si", "B", "Ge"]

FIRST_NAMES = [
    "Aisha", "Alejandro", "Amara", "Anders", "Anika", "Arjun", "Beatriz",
    "Bram", "Carmen", "Chen", "Dalia", "Dmitri", "Elena", "Emeka", "Farah",
    "Felix", "Giulia", "Hannah", "Hiroshi", "Ibrahim", "Ingrid", "Ivan",
    "Jamal", "Joanna", "Kenji", "Lakshmi", "Leila", "Lucas", "Magnus",
    "Mariana", "Mateo", "Mei", "Nadia", "Niklas", "Olga", "Omar", "Priya",
    "Rafael", "Rosa", "Sana", "Sergei", "Sofia", "Tariq", "Thomas", "Uma",
    "Viktor", "Wei", "Yusuf",
]

LAST_NAMES = [
    "Abe", "Almeida", "Andersson", "Bakker", "Banerjee", "Bauer", "Castillo",
    "Chen", "Costa", "Dubois", "Eriksson", "Fernandez", "Fischer", "Garcia",
    "Haddad", "Hansen", "Huang", "Ivanov", "Jansen", "Kato", "Kaur", "Kim",
    "Kowalski", "Kumar", "Laurent", "Lindqvist", "Mbeki", "Mehta", "Moreau",
    "Nakamura", "Nguyen", "Novak", "Okafor", "Olsen", "Ortega", "Park",
    "Petrov", "Ricci", "Rossi", "Santos", "Sato", "Schmidt", "Silva",
    "Tanaka", "Vargas", "Weber", "Yamamoto", "Zhang",
]


def sample_airport_codes(n: int, rng: random.Random) -> list[str]:
    """Draw n distinct 3-uppercase-letter codes."""
    codes: list[str] = []
    seen: set[str] = set()
    while len(codes) < n:
        code = "".join(rng.choice(string.ascii_uppercase) for _ in range(3))
        if code not in seen:
            seen.add(code)
            codes.append(code)
    return codes


def sample_author_names(n: int, rng: random.Random) -> list[str]:
    """Draw n distinct "First Last" author names from the bundled pools."""
    if n > len(FIRST_NAMES) * len(LAST_NAMES):
        raise ValueError(f"cannot draw {n} distinct names from the pool")
    names: list[str] = []
    seen: set[str] = set()
    while len(names) < n:
        name = f"{rng.choice(FIRST_NAMES)} {rng.choice(LAST_NAMES)}"
        if name not in seen:
            seen.add(name)
            names.append(name)
    return names
