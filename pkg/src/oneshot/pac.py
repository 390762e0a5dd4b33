"""Sample and query complexity calculators for the induction setting.

These are closed-form bounds over the clause language: hypothesis space
size under depth and arity bounds, how many examples a target error
demands, how far one refinement step can move a hypothesis, and how many
examples one unit of advice is worth.  The space size is handled in log
domain because the tower (t*p*m)^(j^i) overflows quickly.
"""

from __future__ import annotations

import math


def _positive(name: str, value: float) -> None:
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value}")


def log_hypothesis_space_size(t: int, p: int, m: int, i: int, j: int) -> float:
    """Natural log of (t*p*m)^(j^i): types t, predicates p, constants m,
    variable depth i, arity bound j."""
    for name, v in (("t", t), ("p", p), ("m", m), ("i", i), ("j", j)):
        _positive(name, v)
    return (j**i) * math.log(t * p * m)


def hypothesis_space_size(t: int, p: int, m: int, i: int, j: int) -> float:
    """Exact size when it fits a float, otherwise inf."""
    ln = log_hypothesis_space_size(t, p, m, i, j)
    try:
        return math.exp(ln)
    except OverflowError:
        return math.inf


def sample_complexity(
    epsilon: float, delta: float, d: int, L: int, h0: int, m: int
) -> float:
    """Examples needed for error epsilon with confidence 1-delta, when
    each of L refinement passes can branch d ways over a start hypothesis
    of size h0 with m constants."""
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon must be in (0,1), got {epsilon}")
    if not 0 < delta < 1:
        raise ValueError(f"delta must be in (0,1), got {delta}")
    _positive("d", d)
    if L < 0:
        raise ValueError(f"L must be non-negative, got {L}")
    _positive("h0", h0)
    if m < 0:
        raise ValueError(f"m must be non-negative, got {m}")
    return (d**L * math.log(h0 + d + m) + math.log(1.0 / delta)) / epsilon


def refinement_distance_bounds(
    d_prev: float,
    d_cur: float,
    universe_size: int,
    t: int,
    q: int,
    pr: float = 0.5,
) -> tuple[float, float]:
    """Bounds on how far one accepted refinement moves the hypothesis in
    plan distance.  The lower bound is the observed step; the upper bound
    counts constraint placements: 2^(universe-1) subsets times ordered
    choices of q of t variables, discounted by the acceptance rate."""
    _positive("universe_size", universe_size)
    _positive("t", t)
    if not 0 <= q <= t:
        raise ValueError(f"q must be in [0,t], got {q}")
    if not 0 < pr <= 1:
        raise ValueError(f"pr must be in (0,1], got {pr}")
    lower = abs(d_cur - d_prev)
    upper = (2 ** (universe_size - 1)) * math.perm(t, q) * pr
    return lower, upper


def advice_example_rate(n_star: int, observed: int, iterations: int) -> float:
    """Examples each advice iteration replaces: the gap between the
    unguided sample requirement and the examples actually seen, spread
    over the advice iterations."""
    _positive("n_star", n_star)
    if observed < 0:
        raise ValueError(f"observed must be non-negative, got {observed}")
    _positive("iterations", iterations)
    return (n_star - observed) / iterations
