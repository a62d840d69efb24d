"""Generation of Howell designs H(m, 2n) by backtracking.

An H(m, 2n) is an m x m array where every cell is empty or holds an unordered
pair of symbols from 1..2n, every symbol occurs exactly once in each row and
each column, and every unordered pair occurs at most once.  Such a design
exists iff n <= m <= 2n-1 and (m, 2n) is not one of four small exceptions.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

DEFAULT_NODE_BUDGET = 20_000_000

NONEXISTENT_EXCEPTIONS = frozenset({(2, 4), (3, 4), (5, 6), (5, 8)})


class SearchBudgetExceeded(RuntimeError):
    """The backtracking search ran out of its node budget before an answer."""


@dataclass(frozen=True)
class HowellDesign:
    m: int
    n2: int
    cells: tuple[tuple[tuple[int, int] | None, ...], ...]


def howell_exists(m: int, n2: int) -> bool:
    """Existence per the complete characterization of H(m, 2n)."""
    if n2 < 2 or n2 % 2:
        raise ValueError("symbol count must be a positive even integer")
    n = n2 // 2
    return n <= m <= 2 * n - 1 and (m, n2) not in NONEXISTENT_EXCEPTIONS


def validate_howell(design: HowellDesign) -> list[str]:
    """Check the three design axioms from scratch; returns violation messages."""
    m, n2 = design.m, design.n2
    problems = []
    if len(design.cells) != m or any(len(row) != m for row in design.cells):
        return [f"cell array is not {m}x{m}"]
    pairs_seen: set[tuple[int, int]] = set()
    for r, row in enumerate(design.cells):
        for k, cell in enumerate(row):
            if cell is None:
                continue
            x, y = cell
            if not (1 <= x <= n2 and 1 <= y <= n2 and x != y):
                problems.append(f"cell ({r},{k}) holds invalid pair {cell}")
                continue
            pair = (min(x, y), max(x, y))
            if pair in pairs_seen:
                problems.append(f"pair {pair} occurs twice")
            pairs_seen.add(pair)
    for r, row in enumerate(design.cells):
        seen: list[int] = []
        for cell in row:
            if cell:
                seen.extend(cell)
        if sorted(seen) != list(range(1, n2 + 1)):
            problems.append(f"row {r} does not hold each symbol exactly once")
    for k in range(m):
        seen = []
        for r in range(m):
            cell = design.cells[r][k]
            if cell:
                seen.extend(cell)
        if sorted(seen) != list(range(1, n2 + 1)):
            problems.append(f"column {k} does not hold each symbol exactly once")
    return problems


class _Search:
    """Backtracking state; symbols are bits 0..2n-1 internally.

    Symmetry breaking: row 0 is fixed to the pairs {1,2},{3,4},... in columns
    0..n-1, and in every later row r symbol 1 sits in column r (rows can be
    reordered so that symbol 1's column index is increasing, and those indices
    form a permutation of the columns).  Within a row the next symbol to place
    is the one with the fewest open columns (ties to the lowest id), which
    keeps the search deterministic while pruning hard.  A seed permutes the
    partner/column value ordering only; any seed explores the same space.
    """

    def __init__(self, m: int, n2: int, node_budget: int | None, seed: int | None = None):
        self.m = m
        self.n2 = n2
        self.n = n2 // 2
        self.budget = node_budget
        self.nodes = 0
        self.full = (1 << n2) - 1
        self.all_cols = (1 << m) - 1
        self.sym_cols = [self.all_cols] * n2  # columns still missing symbol x
        self.col_filled = [0] * m
        self.col_open = self.all_cols if self.n > 0 else 0
        self.partner_used = [0] * n2  # symbols already paired with x
        self.grid: list[list[tuple[int, int] | None]] = [[None] * m for _ in range(m)]
        # When every pair must appear (m == 2n-1), unused pairs must keep a
        # common open column, which prunes dead rows early.
        self.all_pairs_needed = m == n2 - 1
        self.n_tables = 16
        if seed is None:
            self.partner_order = [list(range(n2))] * self.n_tables
            self.col_order = [list(range(m))] * self.n_tables
        else:
            rng = random.Random(seed * 7919 + 17)
            self.partner_order = []
            self.col_order = []
            for _ in range(self.n_tables):
                p = list(range(n2))
                rng.shuffle(p)
                self.partner_order.append(p)
                cols = list(range(m))
                rng.shuffle(cols)
                self.col_order.append(cols)
        for i in range(self.n):
            self._place(0, i, 2 * i, 2 * i + 1)

    def _place(self, r: int, k: int, x: int, y: int) -> None:
        kbit = 1 << k
        self.grid[r][k] = (x + 1, y + 1)
        self.sym_cols[x] &= ~kbit
        self.sym_cols[y] &= ~kbit
        self.col_filled[k] += 1
        if self.col_filled[k] >= self.n:
            self.col_open &= ~kbit
        self.partner_used[x] |= 1 << y
        self.partner_used[y] |= 1 << x

    def _unplace(self, r: int, k: int, x: int, y: int) -> None:
        kbit = 1 << k
        self.grid[r][k] = None
        self.sym_cols[x] |= kbit
        self.sym_cols[y] |= kbit
        if self.col_filled[k] >= self.n:
            self.col_open |= kbit
        self.col_filled[k] -= 1
        self.partner_used[x] &= ~(1 << y)
        self.partner_used[y] &= ~(1 << x)

    def _tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise SearchBudgetExceeded(
                f"H({self.m},{self.n2}) search exceeded {self.budget} nodes"
            )

    def _row_done_ok(self, r: int) -> bool:
        rows_left = self.m - r - 1
        for k in range(self.m):
            if self.n - self.col_filled[k] > rows_left:
                return False
        for x in range(self.n2):
            if bin(self.partner_used[x]).count("1") + rows_left > self.n2 - 1:
                return False
            if bin(self.sym_cols[x] & self.col_open).count("1") < rows_left:
                return False
        if self.all_pairs_needed:
            for x in range(self.n2):
                pu = self.partner_used[x]
                sx = self.sym_cols[x]
                for y in range(x + 1, self.n2):
                    if not (pu >> y) & 1 and not (sx & self.sym_cols[y]):
                        return False
        return True

    def run(self) -> HowellDesign | None:
        if not self._row_done_ok(0):
            return None
        if self._extend_row(1):
            cells = tuple(tuple(row) for row in self.grid)
            return HowellDesign(self.m, self.n2, cells)
        return None

    def _extend_row(self, r: int) -> bool:
        if r == self.m:
            return True
        if not (self.sym_cols[0] & self.col_open & (1 << r)):
            return False
        return self._fill(r, self.full, self.all_cols, r)

    def _fill(self, r: int, unplaced: int, row_free: int, pin_col: int) -> bool:
        if not unplaced:
            if not self._row_done_ok(r):
                return False
            return self._extend_row(r + 1)
        avail = row_free & self.col_open
        cells_left = bin(unplaced).count("1") // 2
        if bin(avail).count("1") < cells_left:
            return False
        # Columns whose deficit equals the remaining row count must receive a
        # cell in this row; if they already cannot, or there are more of them
        # than cells left, this branch is dead.
        rows_after = self.m - r - 1
        must = 0
        for k in range(self.m):
            lack = self.n - self.col_filled[k]
            kbit = 1 << k
            if lack > rows_after + (1 if avail & kbit else 0):
                return False
            if lack == rows_after + 1 and avail & kbit:
                must |= kbit
        n_must = bin(must).count("1")
        if n_must > cells_left:
            return False
        forced_cols = must if n_must == cells_left else self.all_cols
        # The pinned symbol is maximally constrained; otherwise pick the
        # unplaced symbol with the fewest candidate columns.
        if unplaced & 1:
            x = 0
            xcols = avail & self.sym_cols[0] & (1 << pin_col)
            if not xcols:
                return False
        else:
            x = -1
            best = 1 << 30
            u = unplaced
            while u:
                cand = (u & -u).bit_length() - 1
                u &= u - 1
                cols = avail & self.sym_cols[cand]
                score = bin(cols).count("1")
                if score == 0:
                    return False
                if not (unplaced & ~(1 << cand) & ~self.partner_used[cand]):
                    return False
                if score < best:
                    best = score
                    x = cand
            xcols = avail & self.sym_cols[x] & forced_cols
            if not xcols:
                return False
        rest = unplaced & ~(1 << x)
        pmask = rest & ~self.partner_used[x]
        order = (r * 7 + x) % self.n_tables
        for y in self.partner_order[order]:
            if not (pmask >> y) & 1:
                continue
            cols = xcols & self.sym_cols[y]
            if not cols:
                continue
            for k in self.col_order[order]:
                if not (cols >> k) & 1:
                    continue
                self._tick()
                self._place(r, k, x, y)
                if self._fill(r, rest & ~(1 << y), row_free & ~(1 << k), pin_col):
                    return True
                self._unplace(r, k, x, y)
        return False


def search_howell(m: int, n2: int, node_budget: int | None = None) -> HowellDesign | None:
    """Backtracking search, without consulting the existence theorem.

    Runs a deterministic ladder of restarts: each attempt explores the same
    symmetry-reduced space under a different (seeded) value ordering with an
    escalating per-attempt node cap.  An attempt that exhausts the space
    without hitting its cap proves nonexistence, so None means none exists.
    Raises SearchBudgetExceeded once total nodes pass node_budget.

    Requires n <= m so the canonical first row fits.
    """
    if n2 < 2 or n2 % 2:
        raise ValueError("symbol count must be a positive even integer")
    if m < n2 // 2:
        raise ValueError("m must be at least n for the search")
    total = 0
    seeds_per_round = 64
    attempt = 0
    while True:
        cap = 8_000 * 4 ** (attempt // seeds_per_round)
        if node_budget is not None:
            cap = min(cap, node_budget - total)
            if cap <= 0:
                raise SearchBudgetExceeded(f"H({m},{n2}) search exceeded {node_budget} nodes")
        seed = None if attempt == 0 else attempt - 1
        search = _Search(m, n2, cap, seed)
        try:
            design = search.run()
            return design  # found, or space exhausted => proven nonexistent
        except SearchBudgetExceeded:
            total += search.nodes
            attempt += 1


_CACHE: dict[tuple[int, int], HowellDesign] = {}


def generate_howell(m: int, n2: int, node_budget: int | None = DEFAULT_NODE_BUDGET) -> HowellDesign | None:
    """Return an H(m, 2n), or None when no such design exists.

    Existence is decided by the characterization theorem; when a design
    exists it is found by backtracking (raising SearchBudgetExceeded if the
    node budget runs out first).  Results are cached per (m, 2n).
    """
    if not howell_exists(m, n2):
        return None
    key = (m, n2)
    if key not in _CACHE:
        design = search_howell(m, n2, node_budget)
        if design is None:
            raise AssertionError(f"H{key} must exist but the search found none")
        _CACHE[key] = design
    return _CACHE[key]
