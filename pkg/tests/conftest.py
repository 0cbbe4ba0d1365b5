"""Shared test data and helpers.

GOLDEN_N4_ENTRIES is the 4x4 symbolic CI-matrix written out by hand,
entry for entry, in the canonical term order (total degree descending,
then exponent tuple ascending): row h, column k holds e_{4-h} of the
symbolic nodes u1..u4 with uk removed.
"""

import random
from fractions import Fraction

GOLDEN_N4_ENTRIES = [
    ["u2*u3*u4", "u1*u3*u4", "u1*u2*u4", "u1*u2*u3"],
    [
        "u3*u4 + u2*u4 + u2*u3",
        "u3*u4 + u1*u4 + u1*u3",
        "u2*u4 + u1*u4 + u1*u2",
        "u2*u3 + u1*u3 + u1*u2",
    ],
    ["u4 + u3 + u2", "u4 + u3 + u1", "u4 + u2 + u1", "u3 + u2 + u1"],
    ["1", "1", "1", "1"],
]


def pretty_layout(entries) -> str:
    """The documented pretty format: per-column width, two-space gutters."""
    n = len(entries)
    widths = [max(len(entries[r][c]) for r in range(n)) for c in range(n)]
    lines = []
    for row in entries:
        body = "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip()
        lines.append(f"[ {body} ]")
    return "\n".join(lines) + "\n"


def random_distinct_fractions(rng: random.Random, n: int) -> list[Fraction]:
    """n distinct small rationals: numerators in [-9, 9], denominators in [1, 9]."""
    values: set[Fraction] = set()
    while len(values) < n:
        values.add(Fraction(rng.randint(-9, 9), rng.randint(1, 9)))
    out = list(values)
    rng.shuffle(out)
    return out
