"""Closed-form lower and upper bounds on the minimum number of dinners.

Everything is exact: ceilings are computed with integer arithmetic, the
square roots inside lb4 are resolved by comparing squared integers, and lb5
uses Fractions.  No float ever decides a returned value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .model import Instance


def ceil_div(a: int, b: int) -> int:
    return -(-a // b)


def _ceil_sqrt_div(n: int, d: int) -> int:
    """Smallest integer k with k*d >= sqrt(n), for n >= 0, d >= 1."""
    k = math.isqrt(n) // d
    while k * k * d * d < n:
        k += 1
    return k


def lb1(inst: Instance) -> int:
    """Each customer meets at most sigma suppliers per dinner."""
    return ceil_div(inst.s, inst.sigma)


def lb2(inst: Instance) -> int:
    """Each supplier meets at most gamma customers per dinner."""
    return ceil_div(inst.c, inst.gamma)


def lb3(inst: Instance) -> int:
    """Table-usage count: ceil(s * ceil(c/gamma) / (t * sigma))."""
    return ceil_div(inst.s * inst.customer_groups, inst.t * inst.sigma)


def lb4(inst: Instance) -> int:
    """Counting bound on customer attendance; only defined when gamma < c.

    The bound is ceil((sqrt(s)/(t*gamma)) * ((c-gamma)*M + gamma/M)) with
    M = max(sqrt(gamma/(c-gamma)), 1).  Algebraically this collapses to
    ceil(sqrt(s)*c/(t*gamma)) when c >= 2*gamma and to
    ceil(2*sqrt(s*gamma*(c-gamma))/(t*gamma)) otherwise, which lets the
    ceiling be decided by exact squared-integer comparisons.
    """
    t, s, c, gamma = inst.t, inst.s, inst.c, inst.gamma
    if gamma >= c:
        raise ValueError("lb4 requires gamma < c")
    if c >= 2 * gamma:
        return _ceil_sqrt_div(s * c * c, t * gamma)
    return _ceil_sqrt_div(4 * s * gamma * (c - gamma), t * gamma)


def lb5_term(inst: Instance, j: int) -> int:
    """ceil((s/t) * (2*ceil(c/gamma)/j - (s-1)/(j*(j-1)))) for one j >= 2."""
    cg = inst.customer_groups
    value = Fraction(inst.s, inst.t) * (
        Fraction(2 * cg, j) - Fraction(inst.s - 1, j * (j - 1))
    )
    return math.ceil(value)


def lb5(inst: Instance) -> int:
    """LP-duality bound: max over j in 2..sigma of lb5_term, clamped at 0.

    Returns 0 when sigma == 1 (empty range) or when every term is negative;
    a dinner count cannot be negative, so clamping keeps the bound sound.
    """
    if inst.sigma < 2:
        return 0
    best = max(lb5_term(inst, j) for j in range(2, inst.sigma + 1))
    return max(best, 0)


def j_star(s: int, cg: int) -> int:
    """Integer maximizer hint for lb5's inner expression.

    Computes floor(1 / (1 - sqrt((s-1)/(s-1+2*cg)))) exactly: the value
    rewrites to floor((b + sqrt(a*b)) / (2*cg)) with a = s-1, b = s-1+2*cg,
    and since no integer can sit strictly between b+isqrt(a*b) and the next
    integer boundary inside the same unit interval, integer sqrt suffices.
    The unceiled objective is maximized at j_star or j_star + 1; clamp into
    [2, sigma] before use.
    """
    if s < 2:
        raise ValueError("j_star requires s >= 2")
    if cg < 1:
        raise ValueError("j_star requires cg >= 1")
    a = s - 1
    b = s - 1 + 2 * cg
    return (b + math.isqrt(a * b)) // (2 * cg)


def lb_best(inst: Instance) -> int:
    """Best (largest) applicable lower bound."""
    best = max(lb1(inst), lb2(inst), lb3(inst), lb5(inst))
    if inst.gamma < inst.c:
        best = max(best, lb4(inst))
    return best


# (cg, s) pairs whose two-supplier-per-table base schedule needs 3 dinners
# instead of max(cg, ceil(s/2)) = 2: with four (or three) suppliers and two
# customer groups there is no 2-dinner seating, because the two tables of a
# dinner would have to use both pairs of one perfect matching while each
# group's own pairs must sit in different dinners.
SIGMA2_THREE_DINNER_PAIRS = frozenset({(2, 3), (2, 4)})


def sigma2_base_tables(cg: int, s: int) -> int:
    """Tables actually used per dinner by the two-supplier base construction.

    For most shapes this is min(cg, ceil(s/2)); the listed special pairs need
    wider seatings (their optimal schedules use single-supplier tables), and
    a square shape cg == s with even s needs one extra table because the
    supplier set is padded by two.
    """
    if cg > s:
        raise ValueError("base layer requires cg <= s")
    if cg == 1:
        return 1
    if (cg, s) in SIGMA2_THREE_DINNER_PAIRS or (cg, s) == (2, 2):
        return 2
    if (cg, s) in ((3, 3), (3, 4)):
        return 3
    if (cg, s) in ((5, 5), (5, 6), (5, 7), (5, 8)):
        return 5
    half = ceil_div(s, 2)
    if cg < half:
        return cg
    if cg == s and s % 2 == 0:
        return s // 2 + 1
    return half


def sigma2_base_dinners(cg: int, s: int) -> int:
    """Dinner count of the two-supplier base construction."""
    if (cg, s) in SIGMA2_THREE_DINNER_PAIRS:
        return 3
    return max(cg, ceil_div(s, 2))


def ub1(inst: Instance) -> int:
    """Universal upper bound built from the two-supplier base plus splitting.

    ceil(2/sigma) * ceil(min(cg, s)/t) * max(cg, ceil(s/2)), corrected for
    the two shapes where the base needs 3 dinners (the plain formula would
    undercut the true optimum there).
    """
    cg = inst.customer_groups
    if (cg, inst.s) in SIGMA2_THREE_DINNER_PAIRS:
        return ceil_div(2, inst.sigma) * (4 if inst.t == 1 else 3)
    return (
        ceil_div(2, inst.sigma)
        * ceil_div(min(cg, inst.s), inst.t)
        * max(cg, ceil_div(inst.s, 2))
    )


def ub1_improved(inst: Instance) -> int | None:
    """Tighter ub1 variant using min(cg, ceil(s/2)) tables for the base.

    Only sound when s*gamma > c and the base layer really fits in
    min(cg, ceil(s/2)) tables with max(cg, ceil(s/2)) dinners; for the wide
    special shapes the variant is reported as not applicable.
    """
    cg = inst.customer_groups
    s = inst.s
    if inst.s * inst.gamma <= inst.c:
        return None
    if (cg, s) in SIGMA2_THREE_DINNER_PAIRS:
        return None
    if sigma2_base_tables(cg, s) != min(cg, ceil_div(s, 2)):
        return None
    return (
        ceil_div(2, inst.sigma)
        * ceil_div(min(cg, ceil_div(s, 2)), inst.t)
        * max(cg, ceil_div(s, 2))
    )


def ub2(inst: Instance) -> int | None:
    """Round-robin upper bound; applicable when ceil(s/sigma) <= ceil(c/gamma)."""
    cg = inst.customer_groups
    blocks = ceil_div(inst.s, inst.sigma)
    if blocks > cg:
        return None
    return ceil_div(blocks, inst.t) * (1 - inst.sigma + inst.sigma * max(cg, 2 * blocks))


def ub_eucli(inst: Instance) -> int:
    """Euclidean-division extension of ub2 to any supplier count.

    Write ceil(s/sigma) = q*cg + rho with 0 <= rho < cg; q full supplier
    blocks are scheduled like ub2 and the remainder block adds one more term.
    """
    cg = inst.customer_groups
    blocks = ceil_div(inst.s, inst.sigma)
    q, rho = divmod(blocks, cg)
    total = q * ceil_div(cg, inst.t) * (1 - inst.sigma + 2 * inst.sigma * cg)
    if rho:
        total += ceil_div(rho, inst.t) * (1 - inst.sigma + 2 * inst.sigma * max(cg, 2 * rho))
    return total


def ub_best(inst: Instance) -> int:
    candidates = [ub1(inst), ub_eucli(inst)]
    for v in (ub1_improved(inst), ub2(inst)):
        if v is not None:
            candidates.append(v)
    return min(candidates)


@dataclass(frozen=True)
class BoundsReport:
    lb1: int
    lb2: int
    lb3: int
    lb4: int | None
    lb5: int
    lb_best: int
    ub1: int
    ub1_improved: int | None
    ub2: int | None
    ub_eucli: int
    ub_best: int


def compute_bounds(inst: Instance) -> BoundsReport:
    """All lower and upper bounds for an instance, with inapplicable ones None."""
    return BoundsReport(
        lb1=lb1(inst),
        lb2=lb2(inst),
        lb3=lb3(inst),
        lb4=lb4(inst) if inst.gamma < inst.c else None,
        lb5=lb5(inst),
        lb_best=lb_best(inst),
        ub1=ub1(inst),
        ub1_improved=ub1_improved(inst),
        ub2=ub2(inst),
        ub_eucli=ub_eucli(inst),
        ub_best=ub_best(inst),
    )


def lp_value_scan(s: int, sigma: int, cg: int) -> Fraction:
    """Evaluate the per-supplier dual program by scanning its breakpoints.

    The dual objective max over mu >= 0 of
    min over j in 1..sigma of ((j-1)*cg - (s-1))*mu + cg/j
    is piecewise linear in mu with breakpoints in
    {0} union {1/(k*(k-1)) : k = 2..sigma} union {1/2}, so its maximum is
    attained at one of them.  Scaling by s/t and taking the ceiling turns the
    result into the combined table-usage / pairing lower bound; this serves
    as the independent cross-check of lb5's closed form.
    """
    if s < 1 or sigma < 1 or cg < 1:
        raise ValueError("lp_value_scan needs positive parameters")
    breakpoints = {Fraction(0), Fraction(1, 2)}
    for k in range(2, sigma + 1):
        breakpoints.add(Fraction(1, k * (k - 1)))
    best: Fraction | None = None
    for mu in breakpoints:
        value = min(
            ((j - 1) * cg - (s - 1)) * mu + Fraction(cg, j) for j in range(1, sigma + 1)
        )
        if best is None or value > best:
            best = value
    assert best is not None
    return best
