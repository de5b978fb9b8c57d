"""Closed-form bounds on prime counts and prime gaps, with verdict records.

``log`` is the natural logarithm throughout.  Comparisons that decide a
verdict are guarded against float rounding: when the two sides agree to
within 1e-9 (relative), the comparison is re-evaluated either exactly in
integer/rational arithmetic (where the bound permits) or in 50-digit
floating point via mpmath, and the verdict is flagged `marginal`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import mpmath

DUSART_UPPER_MIN_X = 60184
DUSART_LOWER_MIN_X = 5393
COROLLARY1_MIN_P = 5
CHAIN_MIN_P = 60184  # chain stages valid for p strictly above this
MARGINAL_RTOL = 1e-9
_RECHECK_DPS = 50

# (numerator, denominator, min_index): gap(p_n) < (num/den) * p_n for n > min_index.
EPSILON_PAIRS: tuple[tuple[int, int, int], ...] = (
    (1, 5, 9),
    (1, 13, 118),
    (1, 16597, 2010760),
)


class BoundKind(enum.Enum):
    DUSART_UPPER = "dusart_upper"
    DUSART_LOWER = "dusart_lower"
    COROLLARY1 = "corollary1"
    EMPIRICAL = "empirical"
    BERTRAND = "bertrand"
    ANDRICA = "andrica"
    EPSILON = "epsilon"


@dataclass(frozen=True, slots=True)
class BoundVerdict:
    """Outcome of checking one bound at one point.

    `slack` is bound_value - observed (positive when the bound has room);
    `marginal` marks verdicts that needed the high-precision re-check.
    """

    kind: BoundKind
    at: int
    bound_value: float
    observed: float
    holds: bool
    slack: float
    marginal: bool = False
    note: str = ""


def is_marginal(observed: float, bound: float) -> bool:
    """True when the two sides are too close for float comparison to be trusted."""
    return abs(bound - observed) <= MARGINAL_RTOL * max(1.0, abs(bound), abs(observed))


def dusart_upper(x: float) -> float:
    """Prime-count upper bound x / (log x - 1.1), valid for x >= 60184."""
    if x < DUSART_UPPER_MIN_X:
        raise ValueError(f"dusart_upper requires x >= {DUSART_UPPER_MIN_X}, got {x}")
    return x / (math.log(x) - 1.1)


def dusart_lower(x: float) -> float:
    """Prime-count lower bound x / (log x - 1), valid for x >= 5393."""
    if x < DUSART_LOWER_MIN_X:
        raise ValueError(f"dusart_lower requires x >= {DUSART_LOWER_MIN_X}, got {x}")
    return x / (math.log(x) - 1)


def corollary1_bound(p: int) -> float:
    """Gap bound p / (log p - 1.1) for primes p >= 5."""
    if p < COROLLARY1_MIN_P:
        raise ValueError(f"corollary1_bound requires p >= {COROLLARY1_MIN_P}, got {p}")
    return p / (math.log(p) - 1.1)


def empirical_bound(p: int) -> float:
    """Observed-envelope gap bound (p + 1) / log p, stated for all p >= 2."""
    if p < 2:
        raise ValueError(f"empirical_bound requires p >= 2, got {p}")
    return (p + 1) / math.log(p)


def andrica_bound(p: int) -> float:
    """Gap bound 2*sqrt(p) + 1 (equivalent to sqrt(p + g) - sqrt(p) < 1)."""
    if p < 2:
        raise ValueError(f"andrica_bound requires p >= 2, got {p}")
    return 2.0 * math.sqrt(p) + 1.0

def corollary1_holds(p: int, gap: int) -> tuple[bool, bool]:
    """(holds, marginal) for gap < p / (log p - 1.1)."""
    bound = corollary1_bound(p)
    if not is_marginal(gap, bound):
        return gap < bound, False
    with mpmath.workdps(_RECHECK_DPS):
        holds = mpmath.mpf(gap) < p / (mpmath.log(p) - mpmath.mpf("1.1"))
    return bool(holds), True


def empirical_holds(p: int, gap: int) -> tuple[bool, bool]:
    """(holds, marginal) for gap < (p + 1) / log p."""
    bound = empirical_bound(p)
    if not is_marginal(gap, bound):
        return gap < bound, False
    with mpmath.workdps(_RECHECK_DPS):
        holds = mpmath.mpf(gap) < (mpmath.mpf(p) + 1) / mpmath.log(p)
    return bool(holds), True


def andrica_holds(p: int, gap: int) -> bool:
    """gap < 2*sqrt(p) + 1, decided exactly: (gap - 1)^2 < 4p for gap >= 1."""
    if gap < 1:
        raise ValueError(f"gap must be >= 1, got {gap}")
    return (gap - 1) ** 2 < 4 * p


def bertrand_verdict(p: int, gap: int) -> BoundVerdict:
    """Strict integer comparison gap < p (Bertrand: a prime in (p, 2p))."""
    return BoundVerdict(
        kind=BoundKind.BERTRAND,
        at=p,
        bound_value=float(p),
        observed=float(gap),
        holds=gap < p,
        slack=float(p - gap),
    )


def corollary1_verdict(p: int, gap: int) -> BoundVerdict:
    bound = corollary1_bound(p)
    holds, marginal = corollary1_holds(p, gap)
    return BoundVerdict(
        kind=BoundKind.COROLLARY1,
        at=p,
        bound_value=bound,
        observed=float(gap),
        holds=holds,
        slack=bound - gap,
        marginal=marginal,
    )


def empirical_verdict(p: int, gap: int) -> BoundVerdict:
    bound = empirical_bound(p)
    holds, marginal = empirical_holds(p, gap)
    return BoundVerdict(
        kind=BoundKind.EMPIRICAL,
        at=p,
        bound_value=bound,
        observed=float(gap),
        holds=holds,
        slack=bound - gap,
        marginal=marginal,
    )


def andrica_verdict(p: int, gap: int) -> BoundVerdict:
    bound = andrica_bound(p)
    return BoundVerdict(
        kind=BoundKind.ANDRICA,
        at=p,
        bound_value=bound,
        observed=float(gap),
        holds=andrica_holds(p, gap),
        slack=bound - gap,
    )


def epsilon_verdict(n: int, p: int, gap: int, num: int, den: int, min_index: int) -> BoundVerdict | None:
    """Strict bound gap < (num/den) * p, applicable only for indices n > min_index.

    Returns None when the index is outside the bound's range.  The comparison
    is exact (cross-multiplied integers), so it is never marginal.
    """
    if n <= min_index:
        return None
    bound = num * p / den
    return BoundVerdict(
        kind=BoundKind.EPSILON,
        at=p,
        bound_value=bound,
        observed=float(gap),
        holds=gap * den < num * p,
        slack=bound - gap,
        note=f"epsilon={num}/{den}, applies for n > {min_index}",
    )


def dusart_upper_verdict(x: int, pi_x: int) -> BoundVerdict:
    """Non-strict pi(x) <= x / (log x - 1.1)."""
    bound = dusart_upper(x)
    if not is_marginal(pi_x, bound):
        holds, marginal = pi_x <= bound, False
    else:
        with mpmath.workdps(_RECHECK_DPS):
            holds = mpmath.mpf(pi_x) <= x / (mpmath.log(x) - mpmath.mpf("1.1"))
        holds, marginal = bool(holds), True
    return BoundVerdict(
        kind=BoundKind.DUSART_UPPER,
        at=x,
        bound_value=bound,
        observed=float(pi_x),
        holds=holds,
        slack=bound - pi_x,
        marginal=marginal,
    )


def dusart_lower_verdict(x: int, pi_x: int) -> BoundVerdict:
    """Non-strict pi(x) >= x / (log x - 1)."""
    bound = dusart_lower(x)
    if not is_marginal(pi_x, bound):
        holds, marginal = pi_x >= bound, False
    else:
        with mpmath.workdps(_RECHECK_DPS):
            holds = mpmath.mpf(pi_x) >= x / (mpmath.log(x) - 1)
        holds, marginal = bool(holds), True
    return BoundVerdict(
        kind=BoundKind.DUSART_LOWER,
        at=x,
        bound_value=bound,
        observed=float(pi_x),
        holds=holds,
        slack=pi_x - bound,
        marginal=marginal,
    )


@dataclass(frozen=True, slots=True)
class ChainStage:
    """One stage of the window lower-bound chain: a label and its value."""

    name: str
    value: float


def proof_chain_check(p: int, pi_p: int, n_p: int) -> list[ChainStage]:
    """Evaluate the lower-bound chain for N_p = count of primes in (p, p + pi(p)].

    Stages, in descending order along the derivation:

    * S0 -- the exact window count `n_p`;
    * S1 -- the two-sided prime-count-bound substitution
      p * ((1 + 1/(L-1)) / (L + log(1 + 1/(L-1)) - 1) - 1/(L - 1.1));
    * S2 -- after log(1+x) < x:  p * (L/((L-1)^2 + 1) - 1/(L - 1.1));
    * S3 -- the single rational form (0.9 L - 2) p / (L^3 - 3.1 L^2 + 4.2 L - 2.2),
      algebraically equal to S2;
    * S4 -- the closed floor 0.9 p / L^2.

    Valid for p > 60184.  `pi_p` is sanity-checked against the prime-count
    bounds; an inconsistent value raises ValueError.
    """
    if p <= CHAIN_MIN_P:
        raise ValueError(f"chain stages require p > {CHAIN_MIN_P}, got {p}")
    if not dusart_lower(p) <= pi_p <= dusart_upper(p):
        raise ValueError(
            f"pi_p={pi_p} is inconsistent with the prime-count bounds at p={p}"
        )
    if n_p < 0:
        raise ValueError(f"n_p must be a count, got {n_p}")
    L = math.log(p)
    inv = 1.0 / (L - 1.0)
    s1 = p * ((1.0 + inv) / (L + math.log1p(inv) - 1.0) - 1.0 / (L - 1.1))
    s2 = p * (L / ((L - 1.0) ** 2 + 1.0) - 1.0 / (L - 1.1))
    s3 = (0.9 * L - 2.0) * p / (L**3 - 3.1 * L**2 + 4.2 * L - 2.2)
    s4 = 0.9 * p / L**2
    return [
        ChainStage("S0", float(n_p)),
        ChainStage("S1", s1),
        ChainStage("S2", s2),
        ChainStage("S3", s3),
        ChainStage("S4", s4),
    ]


def chain_tail_excess(p: int) -> float:
    """(S4 - S3) rearranged to -(79/90) L + 911/405 + (10201/3645)/(L - 20/9).

    Negative exactly when S4 <= S3 (denominators positive for p > 60184),
    which is how the final floor of the chain is justified.
    """
    if p <= CHAIN_MIN_P:
        raise ValueError(f"excess term requires p > {CHAIN_MIN_P}, got {p}")
    L = math.log(p)
    return -(79.0 / 90.0) * L + 911.0 / 405.0 + (10201.0 / 3645.0) / (L - 20.0 / 9.0)
