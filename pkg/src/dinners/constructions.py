"""Constructive schedule builders for the special cases with proven optima.

Routes: one-group instances (all customers fit one table), single-supplier
tables (sigma = 1, via equitable edge coloring), the two-suppliers-per-table
layer backed by Howell designs and four embedded exceptional templates, the
half-table regime (t = ceil(s/2) with many customer groups), and the prime
square construction for one table and one customer per table.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from importlib import resources

from . import bounds
from .coloring import color_bipartite_edges
from .howell import DEFAULT_NODE_BUDGET, generate_howell
from .model import CustomerGrouping, Dinner, Instance, Schedule, TableSeating, group_customers


class ConstructionError(ValueError):
    """The instance does not satisfy the construction's preconditions."""


@dataclass(frozen=True)
class ScheduleTemplate:
    """Supplier sets per (dinner, customer-group) cell; empty cell = no table."""

    suppliers: int
    groups: int
    rows: tuple[tuple[frozenset[int], ...], ...]

    def max_tables_per_dinner(self) -> int:
        return max(sum(1 for cell in row if cell) for row in self.rows)


_TEMPLATE_FILES = {
    "S4C3": "template_s4_g3.json",
    "S6C5": "template_s6_g5.json",
    "S8C5": "template_s8_g5.json",
    "S4C2": "template_s4_g2.json",
}


def exceptional_schedule(key: str) -> ScheduleTemplate:
    """Load one of the four embedded optimal templates by key."""
    try:
        fname = _TEMPLATE_FILES[key]
    except KeyError:
        raise ConstructionError(f"unknown template key {key!r}; choose from {sorted(_TEMPLATE_FILES)}")
    raw = json.loads(resources.files("dinners.fixtures").joinpath(fname).read_text())
    rows = tuple(tuple(frozenset(cell) for cell in row) for row in raw["rows"])
    return ScheduleTemplate(suppliers=raw["suppliers"], groups=raw["groups"], rows=rows)


def load_example_schedule() -> Schedule:
    """The embedded 6-dinner example schedule for (t=2, s=5, c=6, sigma=2, gamma=3)."""
    from .model import decode_schedule

    text = resources.files("dinners.fixtures").joinpath("example_schedule_t2_s5_c6.json").read_text()
    return decode_schedule(text)


def _grid_schedule(
    inst: Instance, rows: list[list[frozenset[int]]], grouping: CustomerGrouping
) -> Schedule:
    """Assemble a schedule from per-dinner supplier sets indexed by group."""
    dinners = []
    for row in rows:
        tables = [
            TableSeating(suppliers=cell, customers=grouping.groups[j])
            for j, cell in enumerate(row)
            if cell
        ]
        dinners.append(Dinner.of(tables))
    return Schedule.of(inst, dinners)


def build_trivial(inst: Instance) -> Schedule:
    """All customers at one table; ceil(s/sigma) dinners of one supplier block each."""
    if inst.c > inst.gamma:
        raise ConstructionError("trivial construction needs c <= gamma")
    customers = frozenset(range(1, inst.c + 1))
    dinners = []
    for lo in range(1, inst.s + 1, inst.sigma):
        sups = frozenset(range(lo, min(lo + inst.sigma, inst.s + 1)))
        dinners.append(Dinner.of([TableSeating(sups, customers)]))
    return Schedule.of(inst, dinners)


def _singleton_dinners(
    supplier_ids: list[int], grouping_slice: list[frozenset[int]], tables: int, k: int
) -> list[Dinner]:
    """Dinners where every table holds one supplier and one customer group.

    Colors the complete bipartite meeting graph between the given suppliers
    and groups with k classes; equitability keeps every class within the
    table count.
    """
    a, b = len(supplier_ids), len(grouping_slice)
    edges = [(i, j) for i in range(1, a + 1) for j in range(1, b + 1)]
    classes = color_bipartite_edges(a, b, edges, k)
    assert max(len(cls) for cls in classes) <= tables
    dinners = []
    for cls in classes:
        if not cls:
            continue
        dinners.append(
            Dinner.of(
                TableSeating(frozenset({supplier_ids[i - 1]}), grouping_slice[j - 1])
                for i, j in cls
            )
        )
    return dinners


def build_sigma1(inst: Instance) -> Schedule:
    """Optimal schedule for sigma = 1: max(s, cg, ceil(s*cg/t)) dinners."""
    if inst.sigma != 1:
        raise ConstructionError("build_sigma1 needs sigma == 1")
    grouping = group_customers(inst.c, inst.gamma)
    cg = inst.customer_groups
    k = max(inst.s, cg, bounds.ceil_div(inst.s * cg, inst.t))
    dinners = _singleton_dinners(list(range(1, inst.s + 1)), list(grouping.groups), inst.t, k)
    return Schedule.of(inst, dinners)


def _strip_rows(rows: list[list[frozenset[int]]], real_s: int) -> list[list[frozenset[int]]]:
    """Drop fictitious padding suppliers (ids above real_s) from every cell."""
    return [[frozenset(x for x in cell if x <= real_s) for cell in row] for row in rows]


def _template_rows(key: str) -> list[list[frozenset[int]]]:
    return [list(row) for row in exceptional_schedule(key).rows]


_EXCEPTION_TEMPLATE_KEYS = {(2, 4): "S4C2", (3, 4): "S4C3", (5, 6): "S6C5", (5, 8): "S8C5"}


def build_howell_schedule(
    inst: Instance, node_budget: int | None = DEFAULT_NODE_BUDGET
) -> Schedule:
    """Two-suppliers-per-table layer: max(cg, ceil(s/2)) dinners (3 for the
    two exceptional shapes with cg = 2).

    Requires sigma == 2, s*gamma > c, and enough tables for the underlying
    array: min(cg, ceil(s/2)) in the regular shapes, more for the exceptional
    ones (see bounds.sigma2_base_tables).  An odd supplier count is padded
    with a fictitious largest supplier; a square shape cg == s with even s is
    padded with two; padding is stripped from the final seating.
    """
    if inst.sigma != 2:
        raise ConstructionError("build_howell_schedule needs sigma == 2")
    if inst.s * inst.gamma <= inst.c:
        raise ConstructionError("build_howell_schedule needs s > c/gamma")
    cg, s = inst.customer_groups, inst.s
    need_t = bounds.sigma2_base_tables(cg, s)
    if inst.t < need_t:
        raise ConstructionError(
            f"shape (cg={cg}, s={s}) needs at least {need_t} tables, instance has {inst.t}"
        )
    grouping = group_customers(inst.c, inst.gamma)
    half = bounds.ceil_div(s, 2)

    if cg == 1:
        # One group: seat it with supplier pairs, ceil(s/2) dinners.
        rows = [[frozenset(range(lo, min(lo + 2, s + 1)))] for lo in range(1, s + 1, 2)]
    elif (cg, s) == (2, 2):
        # No 2-dinner pairing exists; single-supplier tables reach 2 dinners.
        return Schedule.of(
            inst, _singleton_dinners([1, 2], list(grouping.groups), inst.t, 2)
        )
    elif cg >= half:
        if s % 2 == 0 and cg <= s - 1:
            n2 = s
        elif s % 2 == 1:
            n2 = s + 1
        else:  # cg == s, even s >= 4: pad by two suppliers
            n2 = s + 2
        key = _EXCEPTION_TEMPLATE_KEYS.get((cg, n2))
        if key is not None:
            rows = _strip_rows(_template_rows(key), s)
        else:
            design = generate_howell(cg, n2, node_budget)
            assert design is not None
            rows = _strip_rows(
                [[frozenset(cell) if cell else frozenset() for cell in row] for row in design.cells],
                s,
            )
    else:
        # Fewer groups than half the suppliers: complete array, first cg columns.
        n2 = s if s % 2 == 0 else s + 1
        design = generate_howell(n2 // 2, n2, node_budget)
        assert design is not None
        rows = _strip_rows(
            [[frozenset(cell) if cell else frozenset() for cell in row[:cg]] for row in design.cells],
            s,
        )

    sched = _grid_schedule(inst, rows, grouping)
    assert sched.dinner_count() == bounds.sigma2_base_dinners(cg, s)
    return sched


def _cas_par_paper_route(inst: Instance, node_budget: int | None) -> Schedule:
    """Half-table regime via a Howell phase plus a single-supplier phase."""
    s, t = inst.s, inst.t
    cg = inst.customer_groups
    grouping = group_customers(inst.c, inst.gamma)
    groups = list(grouping.groups)
    dinners: list[Dinner] = []
    if s % 2 == 0:
        design = generate_howell(s - 1, s, node_budget)
        assert design is not None
        lead = s - 1
        for row in design.cells:
            tables = [
                TableSeating(frozenset(cell), groups[j])
                for j, cell in enumerate(row[: s - 1])
                if cell
            ]
            dinners.append(Dinner.of(tables))
    else:
        design = generate_howell(s, s + 1, node_budget)
        assert design is not None
        lead = s
        for row in design.cells:
            tables = []
            for j, cell in enumerate(row[:s]):
                if not cell:
                    continue
                real = frozenset(x for x in cell if x <= s)
                if real:
                    tables.append(TableSeating(real, groups[j]))
            dinners.append(Dinner.of(tables))
    rest = groups[lead:]
    k2 = max(s, len(rest), bounds.ceil_div(s * len(rest), t))
    dinners.extend(_singleton_dinners(list(range(1, s + 1)), rest, t, k2))
    return Schedule.of(inst, dinners)


def _cas_par_s3(inst: Instance) -> Schedule:
    """Interleaved schedule for s=3, t=2: pair tables share dinners with
    singles, remaining singles are edge-colored into ceil(3q/2) dinners."""
    grouping = group_customers(inst.c, inst.gamma)
    groups = list(grouping.groups)
    g = groups[:3]
    hs = groups[3:]
    q = len(hs)
    dinners = [
        Dinner.of([TableSeating(frozenset({1, 2}), g[0]), TableSeating(frozenset({3}), hs[0])]),
        Dinner.of([TableSeating(frozenset({1, 3}), g[1]), TableSeating(frozenset({2}), hs[1])]),
        Dinner.of([TableSeating(frozenset({2, 3}), g[2]), TableSeating(frozenset({1}), hs[0])]),
    ]
    # Remaining single-supplier visits: the pair groups' leftover supplier,
    # plus everything the companion seats above did not cover.
    left: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []

    def add(group: frozenset[int], sups: list[int]) -> None:
        left.append(group)
        edges.extend((len(left), x) for x in sups)

    add(g[0], [3])
    add(g[1], [2])
    add(g[2], [1])
    add(hs[0], [2])
    add(hs[1], [1, 3])
    for h in hs[2:]:
        add(h, [1, 2, 3])
    k = bounds.ceil_div(3 * q, 2)
    classes = color_bipartite_edges(len(left), 3, [(i, x) for i, x in edges], k)
    for cls in classes:
        if cls:
            dinners.append(
                Dinner.of(TableSeating(frozenset({x}), left[i - 1]) for i, x in cls)
            )
    return Schedule.of(inst, dinners)


def _cas_par_s4(inst: Instance) -> Schedule:
    """Interleaved schedule for s=4, t=2: each supplier pair gets its own
    dinner beside one companion single; the rest is edge-colored."""
    grouping = group_customers(inst.c, inst.gamma)
    groups = list(grouping.groups)
    g = groups[:3]
    hs = groups[3:]
    q = len(hs)
    pair_plan = [
        ({1, 2}, 0, 0, 3),
        ({3, 4}, 0, 0, 1),
        ({1, 3}, 1, 1, 2),
        ({2, 4}, 1, 1, 1),
        ({1, 4}, 2, 2, 3),
        ({2, 3}, 2, 2, 4),
    ]
    dinners = [
        Dinner.of(
            [
                TableSeating(frozenset(pair), g[gi]),
                TableSeating(frozenset({sup}), hs[hi]),
            ]
        )
        for pair, gi, hi, sup in pair_plan
    ]
    left: list[frozenset[int]] = []
    edges: list[tuple[int, int]] = []

    def add(group: frozenset[int], sups: list[int]) -> None:
        left.append(group)
        edges.extend((len(left), x) for x in sups)

    add(hs[0], [2, 4])
    add(hs[1], [3, 4])
    add(hs[2], [1, 2])
    for h in hs[3:]:
        add(h, [1, 2, 3, 4])
    k = 2 * q - 3
    classes = color_bipartite_edges(len(left), 4, edges, k)
    for cls in classes:
        if cls:
            dinners.append(
                Dinner.of(TableSeating(frozenset({x}), left[i - 1]) for i, x in cls)
            )
    return Schedule.of(inst, dinners)


def cas_par_dinner_count(inst: Instance) -> int:
    """Closed-form optimum for the half-table regime."""
    cg, s, t = inst.customer_groups, inst.s, inst.t
    if s % 2 == 0:
        return 2 * cg - s + 1
    return s + bounds.ceil_div(s * (cg - s), t)


def build_cas_par(inst: Instance, node_budget: int | None = DEFAULT_NODE_BUDGET) -> Schedule:
    """Half-table regime: sigma=2, t=ceil(s/2), cg >= 3s/2.

    Even s gives 2*cg - s + 1 dinners; odd s gives s + ceil(s*(cg-s)/t).
    Supplier counts 5 and 6 are rejected: the natural two-phase decomposition
    would need an H(5,6), which does not exist, and no replacement scheme
    with a matching dinner count is established here.
    """
    cg, s = inst.customer_groups, inst.s
    if inst.sigma != 2:
        raise ConstructionError("build_cas_par needs sigma == 2")
    if s < 2:
        raise ConstructionError("build_cas_par needs s >= 2")
    if inst.t != bounds.ceil_div(s, 2):
        raise ConstructionError("build_cas_par needs t == ceil(s/2)")
    if 2 * cg < 3 * s:
        raise ConstructionError("build_cas_par needs ceil(c/gamma) >= 3s/2")
    if s in (5, 6):
        raise ConstructionError("supplier counts 5 and 6 are not covered by this construction")
    if s == 3:
        sched = _cas_par_s3(inst)
    elif s == 4:
        sched = _cas_par_s4(inst)
    else:
        sched = _cas_par_paper_route(inst, node_budget)
    assert sched.dinner_count() == cas_par_dinner_count(inst)
    return sched


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    for d in range(2, math.isqrt(p) + 1):
        if p % d == 0:
            return False
    return True


def build_prime(inst: Instance) -> Schedule:
    """Prime-square construction: t = gamma = 1, s = p^2, c <= p <= sigma.

    Customer k dines p times; dinner i of its block seats the suppliers
    {(j + p*(k*j - j - k + i)) mod p^2 : j = 1..p} (residue 0 mapped to p^2).
    All p^2 suppliers appear once per block and no supplier pair repeats, so
    the pc dinners are feasible.
    """
    if inst.t != 1 or inst.gamma != 1:
        raise ConstructionError("build_prime needs t == 1 and gamma == 1")
    p = math.isqrt(inst.s)
    if p * p != inst.s or not _is_prime(p):
        raise ConstructionError("build_prime needs s to be the square of a prime")
    if not inst.c <= p <= inst.sigma:
        raise ConstructionError("build_prime needs c <= p <= sigma")
    dinners = []
    for k in range(1, inst.c + 1):
        for i in range(1, p + 1):
            sups = frozenset(
                (j + p * (k * j - j - k + i) - 1) % (p * p) + 1 for j in range(1, p + 1)
            )
            assert len(sups) == p
            dinners.append(Dinner.of([TableSeating(sups, frozenset({k}))]))
    return Schedule.of(inst, dinners)


def dispatch_optimal(
    inst: Instance, node_budget: int | None = DEFAULT_NODE_BUDGET
) -> tuple[Schedule, bool] | None:
    """Build a provably optimal schedule when a special case covers the instance.

    Returns (schedule, True) for a covered instance, None when no case
    applies.  The flag is always True on success; it is kept explicit so
    callers exercise the same contract as the generic pipelines.
    """
    if inst.c <= inst.gamma:
        return build_trivial(inst), True
    if inst.sigma == 1:
        return build_sigma1(inst), True
    if (
        inst.t == 1
        and inst.gamma == 1
        and (p := math.isqrt(inst.s)) >= 2
        and p * p == inst.s
        and _is_prime(p)
        and inst.c <= p <= inst.sigma
    ):
        return build_prime(inst), True
    cg, s = inst.customer_groups, inst.s
    if inst.sigma == 2:
        if inst.s * inst.gamma > inst.c and inst.t >= bounds.sigma2_base_tables(cg, s):
            return build_howell_schedule(inst, node_budget), True
        if (
            s >= 2
            and s not in (5, 6)
            and inst.t == bounds.ceil_div(s, 2)
            and 2 * cg >= 3 * s
        ):
            return build_cas_par(inst, node_budget), True
    return None
