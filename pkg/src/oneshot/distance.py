"""Compression-based distance between plans.

ncd(a, b) = (C_ab - min(C_a, C_b)) / max(C_a, C_b), where C_ab is the
compressed size of ``a + b"\\n" + b``.  The conceptual distance between a
theory and an example compares the plan of the theory's grounding with
the plan of the example's own facts; a theory that cannot be grounded or
expanded is maximally far away (1 + EPSILON_C).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .logic import GroundExample, Theory
from .compressor import compressed_size
from .plans import ExpansionError, GroundingError, derive_plan, example_plan, ground_theory

EPSILON_C = 0.15
SENTINEL_DISTANCE = 1.0 + EPSILON_C
SEPARATOR = b"\n"

Compressor = Callable[[bytes], int]


@dataclass(frozen=True)
class DistanceReport:
    ncd: float
    c_a: int = 0
    c_b: int = 0
    c_ab: int = 0
    len_a: int = 0
    len_b: int = 0
    sentinel: bool = False
    reason: str = ""

    def line(self) -> str:
        if self.sentinel:
            return f"ncd={self.ncd:.6f} sentinel ({self.reason})"
        return (
            f"ncd={self.ncd:.6f} c_a={self.c_a} c_b={self.c_b} c_ab={self.c_ab}"
            f" len_a={self.len_a} len_b={self.len_b}"
        )


def ncd(a: bytes, b: bytes, compressor: Compressor = compressed_size) -> DistanceReport:
    """Normalized compression distance between two byte strings.

    Raises ValueError when both inputs are empty (the ratio is undefined).
    """
    if not a and not b:
        raise ValueError("ncd is undefined for two empty strings")
    c_a = compressor(a)
    c_b = compressor(b)
    c_ab = compressor(a + SEPARATOR + b)
    value = (c_ab - min(c_a, c_b)) / max(c_a, c_b)
    return DistanceReport(value, c_a, c_b, c_ab, len(a), len(b))


def conceptual_distance(
    t: Theory,
    x: GroundExample,
    rules,
    compressor: Compressor = compressed_size,
) -> DistanceReport:
    """Distance between a candidate theory and a ground example, measured
    between their derived plans.  Grounding or expansion failure returns
    the sentinel report rather than raising."""
    instance_plan = example_plan(x, rules)
    try:
        ground = ground_theory(t, x)
        theory_plan = derive_plan(ground, rules)
    except (GroundingError, ExpansionError) as e:
        return DistanceReport(SENTINEL_DISTANCE, sentinel=True, reason=str(e))
    if not theory_plan and not instance_plan:
        return DistanceReport(0.0, len_a=0, len_b=0)
    return ncd(theory_plan, instance_plan, compressor)
