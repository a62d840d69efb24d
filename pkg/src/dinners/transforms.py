"""Schedule rewrites and the generic feasible-schedule pipelines.

The rewrites turn a feasible schedule for one parameter set into one for
another (fewer tables, smaller supplier cap, grouped customers, merged
supplier pools); the pipelines compose them with the special-case builders to
produce witness schedules matching the closed-form upper bounds.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from . import bounds
from .constructions import (
    ConstructionError,
    build_howell_schedule,
    build_sigma1,
    dispatch_optimal,
)
from .howell import DEFAULT_NODE_BUDGET, SearchBudgetExceeded
from .model import (
    CustomerGrouping,
    Dinner,
    Instance,
    Schedule,
    TableSeating,
    group_customers,
)


def split_tables(sched: Schedule, t1: int) -> Schedule:
    """Rewrite for a smaller table count: chop every dinner into ceil(w/t1)
    dinners of at most t1 consecutive tables each."""
    if t1 < 1:
        raise ValueError("t1 must be positive")
    dinners = []
    for dinner in sched.dinners:
        tables = list(dinner.tables)
        for i in range(0, len(tables), t1):
            dinners.append(Dinner.of(tables[i : i + t1]))
    return Schedule.of(dataclasses.replace(sched.instance, t=t1), dinners)


def split_sigma(sched: Schedule, sigma1: int) -> Schedule:
    """Rewrite for a smaller supplier cap: dinner copy g keeps each table's
    g-th chunk of at most sigma1 suppliers (chunks in ascending id order)."""
    if sigma1 < 1:
        raise ValueError("sigma1 must be positive")
    copies = bounds.ceil_div(sched.instance.sigma, sigma1)
    dinners = []
    for dinner in sched.dinners:
        for g in range(copies):
            tables = []
            for table in dinner.tables:
                chunk = sorted(table.suppliers)[g * sigma1 : (g + 1) * sigma1]
                if chunk:
                    tables.append(TableSeating(frozenset(chunk), table.customers))
            if tables:
                dinners.append(Dinner.of(tables))
    return Schedule.of(dataclasses.replace(sched.instance, sigma=sigma1), dinners)


@dataclass(frozen=True)
class GammaGrouping:
    """Customer-grouping rewrite: a derived instance over super-customers plus
    the expansion back to real customers."""

    original: Instance
    derived: Instance
    grouping: CustomerGrouping

    def expand(self, sched: Schedule) -> Schedule:
        if sched.instance != self.derived:
            raise ValueError("schedule does not match the derived instance")
        dinners = []
        for dinner in sched.dinners:
            tables = []
            for table in dinner.tables:
                members: set[int] = set()
                for j in table.customers:
                    members.update(self.grouping.groups[j - 1])
                tables.append(TableSeating(table.suppliers, frozenset(members)))
            dinners.append(Dinner.of(tables))
        return Schedule.of(self.original, dinners)


def group_gamma(inst: Instance, gamma1: int) -> GammaGrouping:
    """Treat blocks of at most gamma1 customers as single super-customers.

    The derived instance allows floor(gamma/gamma1) super-customers per table
    so that expansion never exceeds the original per-table cap.
    """
    if gamma1 > inst.gamma:
        raise ValueError("gamma1 must not exceed the instance gamma")
    if gamma1 < 1:
        raise ValueError("gamma1 must be positive")
    derived = dataclasses.replace(
        inst,
        c=bounds.ceil_div(inst.c, gamma1),
        gamma=inst.gamma // gamma1,
    )
    return GammaGrouping(inst, derived, group_customers(inst.c, gamma1))


def concat_suppliers(first: Schedule, second: Schedule) -> Schedule:
    """Merge schedules over disjoint supplier pools; the second pool's ids are
    shifted up by the first pool's size."""
    a, b = first.instance, second.instance
    if (a.t, a.c, a.sigma, a.gamma) != (b.t, b.c, b.sigma, b.gamma):
        raise ValueError("shared parameters (t, c, sigma, gamma) must match")
    shift = a.s
    dinners = list(first.dinners)
    for dinner in second.dinners:
        dinners.append(
            Dinner.of(
                TableSeating(frozenset(x + shift for x in table.suppliers), table.customers)
                for table in dinner.tables
            )
        )
    return Schedule.of(dataclasses.replace(a, s=a.s + b.s), dinners)


def _parallel_matching_base(inst: Instance) -> Schedule:
    """One pair table per dinner for the two exceptional shapes at t = 1.

    With cg = 2 and s in {3, 4} the 3-dinner template needs two tables; on a
    single table, giving each group its own pair matching in separate dinners
    costs 2*ceil(s/2) dinners, which is what ub1 promises there.
    """
    grouping = group_customers(inst.c, inst.gamma)
    g1, g2 = grouping.groups
    if inst.s == 4:
        visits = [({1, 2}, g1), ({3, 4}, g1), ({1, 3}, g2), ({2, 4}, g2)]
    else:
        visits = [({1, 2}, g1), ({3}, g1), ({1, 3}, g2), ({2}, g2)]
    dinners = [Dinner.of([TableSeating(frozenset(sups), grp)]) for sups, grp in visits]
    return Schedule.of(inst, dinners)


def build_ub1(inst: Instance, node_budget: int | None = DEFAULT_NODE_BUDGET) -> Schedule:
    """Witness pipeline for ub1: two-supplier base on min(cg, s) tables, then
    supplier-cap and table splitting down to the real instance.

    If the Howell search exhausts its budget the base falls back to
    single-supplier tables; the result stays feasible but may exceed ub1.
    """
    cg = inst.customer_groups
    t2 = min(cg, inst.s)
    if inst.s * inst.gamma > inst.c:
        if (cg, inst.s) in bounds.SIGMA2_THREE_DINNER_PAIRS and inst.t == 1:
            base = _parallel_matching_base(Instance(1, inst.s, inst.c, 2, inst.gamma))
        else:
            try:
                base = build_howell_schedule(
                    Instance(t2, inst.s, inst.c, 2, inst.gamma), node_budget
                )
            except SearchBudgetExceeded:
                base = build_sigma1(Instance(t2, inst.s, inst.c, 1, inst.gamma))
    else:
        base = build_sigma1(Instance(t2, inst.s, inst.c, 1, inst.gamma))
    if inst.sigma == 1:
        base = split_sigma(base, 1)
    else:
        base = Schedule.of(dataclasses.replace(base.instance, sigma=inst.sigma), base.dinners)
    return split_tables(base, inst.t)


def build_ub2(inst: Instance) -> Schedule:
    """Witness pipeline for ub2 (needs ceil(s/sigma) <= ceil(c/gamma)).

    The first ceil(s/sigma) customer groups each sit once with a full block
    of sigma suppliers and then collect the other blocks one supplier at a
    time in a rotating pattern; remaining groups use single-supplier tables.
    Built on ceil(s/sigma) tables, then split down to t.
    """
    cg = inst.customer_groups
    sigma = inst.sigma
    t_blocks = bounds.ceil_div(inst.s, sigma)
    if t_blocks > cg:
        raise ConstructionError("build_ub2 needs ceil(s/sigma) <= ceil(c/gamma)")
    grouping = group_customers(inst.c, inst.gamma)
    groups = list(grouping.groups)
    dinners = []

    def block_member(block: int, member: int) -> int:
        return block * sigma + member + 1

    first_tables = []
    for g in range(t_blocks):
        sups = frozenset(
            x for x in (block_member(g, m) for m in range(sigma)) if x <= inst.s
        )
        if sups:
            first_tables.append(TableSeating(sups, groups[g]))
    dinners.append(Dinner.of(first_tables))
    for d in range(1, t_blocks):
        for m in range(sigma):
            tables = []
            for g in range(t_blocks):
                sup = block_member((g + d) % t_blocks, m)
                if sup <= inst.s:
                    tables.append(TableSeating(frozenset({sup}), groups[g]))
            if tables:
                dinners.append(Dinner.of(tables))
    rest = groups[t_blocks:]
    if rest:
        from .constructions import _singleton_dinners

        k2 = sigma * max(t_blocks, cg - t_blocks)
        dinners.extend(
            _singleton_dinners(list(range(1, inst.s + 1)), rest, t_blocks, k2)
        )
    staged = Schedule.of(dataclasses.replace(inst, t=t_blocks), dinners)
    return split_tables(staged, inst.t)


def build_eucli(inst: Instance) -> Schedule:
    """Witness pipeline for the Euclidean-division bound: chop suppliers into
    blocks of at most sigma*cg, run the ub2 pipeline per block, concatenate."""
    cg = inst.customer_groups
    chunk = inst.sigma * cg
    combined: Schedule | None = None
    for lo in range(1, inst.s + 1, chunk):
        size = min(chunk, inst.s - lo + 1)
        part = build_ub2(dataclasses.replace(inst, s=size))
        combined = part if combined is None else concat_suppliers(combined, part)
    assert combined is not None
    return combined


def best_feasible(
    inst: Instance, node_budget: int | None = DEFAULT_NODE_BUDGET
) -> tuple[Schedule, int]:
    """Fewest-dinner schedule among the optimal-case dispatch and the generic
    pipelines; ties break toward the earlier route (optimal, ub2, ub1, eucli)."""
    candidates: list[Schedule] = []
    try:
        hit = dispatch_optimal(inst, node_budget)
        if hit is not None:
            candidates.append(hit[0])
    except SearchBudgetExceeded:
        pass
    if bounds.ub2(inst) is not None:
        candidates.append(build_ub2(inst))
    try:
        candidates.append(build_ub1(inst, node_budget))
    except SearchBudgetExceeded:
        pass
    candidates.append(build_eucli(inst))
    best = min(candidates, key=lambda sched: sched.dinner_count())
    return best, best.dinner_count()
