"""Chart enumeration and label supermatrices.

Every p|q-index I|R with p+q = k+l labels a chart.  Its label matrix
holds the (non-standard) identity on the minor columns I and m+R; the
remaining columns are filled column by column, top to bottom, with
fresh coordinates.  Positionally, the first m-k non-minor columns carry
the even pattern (x in the top rows, e in the bottom rows) and the last
n-l carry the odd pattern (e on top, x at the bottom); whenever a
column's pattern side differs from its physical side of the divider the
stored entry is the involution of its generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .errors import BadIndexError
from .grassmann import NuStructure, SuperElem
from .spaces import ChartIndex, GrassSpec
from .supermatrix import NU_ONE, SMatrix, NuOne, nonstd_identity, nu_one_local_columns

X_KIND = "x"
E_KIND = "e"


@dataclass(frozen=True)
class Slot:
    """One generator position: which generator, and whether it is wrapped."""

    kind: str
    gen: int
    wrapped: bool

    def token(self) -> str:
        name = f"{self.kind}{self.gen}"
        return f"v({name})" if self.wrapped else name


@dataclass
class ChartLabel:
    space: GrassSpec
    index: ChartIndex
    A: SMatrix
    slots: dict[tuple[int, int], Slot]  # (row, absolute column 0-based) -> slot
    order: list[tuple[str, int]]  # generator traversal order

    def slot_at(self, row: int, col: int) -> Slot | None:
        return self.slots.get((row, col))

    def nonminor_columns(self) -> list[int]:
        drop = {c - 1 for c in self.index.minor_columns(self.space)}
        return [c for c in range(self.space.m + self.space.n) if c not in drop]

    def generator_elem(self, kind: str, gen: int) -> SuperElem:
        if kind == X_KIND:
            return SuperElem.x_var(self.space.alpha, self.space.beta, gen)
        return SuperElem.e_var(self.space.alpha, self.space.beta, gen)

    def to_json(self) -> dict:
        return {
            "I": list(self.index.I),
            "R": list(self.index.R),
            "p": self.index.p,
            "q": self.index.q,
            "standard": self.index.is_standard(self.space),
            "matrix": render_token_grid(self),
            "generator_order": [f"{k}{g}" for k, g in self.order],
        }


def enumerate_charts(space: GrassSpec) -> list[ChartIndex]:
    """All p|q-indices, p descending, then lexicographic."""
    out: list[ChartIndex] = []
    top = min(space.m, space.k + space.l)
    low = max(0, space.k + space.l - space.n)
    for p in range(top, low - 1, -1):
        q = space.k + space.l - p
        for I in combinations(range(1, space.m + 1), p):
            for R in combinations(range(1, space.n + 1), q):
                out.append(ChartIndex(I, R))
    return out


def build_label(space: GrassSpec, index: ChartIndex, nu: NuStructure) -> ChartLabel:
    index.validate(space)
    if nu.beta != space.beta:
        raise BadIndexError(
            f"nu structure over beta={nu.beta}, space needs beta={space.beta}"
        )
    k, l, m, n = space.k, space.l, space.m, space.n
    rows = k + l
    zero = SuperElem.zero(space.alpha, space.beta)
    grid: list[list] = [[zero for _ in range(m + n)] for _ in range(rows)]

    minor = nonstd_identity(space, index)
    minor_cols = [c - 1 for c in index.minor_columns(space)]
    for t, c in enumerate(minor_cols):
        for i in range(rows):
            grid[i][c] = minor.entries[i][t]

    nonminor = [c for c in range(m + n) if c not in set(minor_cols)]
    slots: dict[tuple[int, int], Slot] = {}
    order: list[tuple[str, int]] = []
    x_next = 1
    e_next = 1
    for cpos, c in enumerate(nonminor):
        even_pattern = cpos < m - k
        even_side = c < m
        wrapped = even_pattern != even_side
        for i in range(rows):
            top_row = i < k
            kind = X_KIND if top_row == even_pattern else E_KIND
            if kind == X_KIND:
                gen, x_next = x_next, x_next + 1
            else:
                gen, e_next = e_next, e_next + 1
            slot = Slot(kind, gen, wrapped)
            slots[(i, c)] = slot
            order.append((kind, gen))
            elem = (
                SuperElem.x_var(space.alpha, space.beta, gen)
                if kind == X_KIND
                else SuperElem.e_var(space.alpha, space.beta, gen)
            )
            grid[i][c] = nu.apply(elem) if wrapped else elem
    assert x_next - 1 == space.alpha and e_next - 1 == space.beta
    A = SMatrix((k, l), (m, n), grid, space.alpha, space.beta).validate()
    return ChartLabel(space, index, A, slots, order)


# ---------------------------------------------------------------------------
# Rendering in the printed layout (tokens, not expanded elements)
# ---------------------------------------------------------------------------


def _entry_token(label: ChartLabel, row: int, col: int, extra_nu: int = 0) -> str:
    """Display token of a label entry with extra_nu further involutions."""
    slot = label.slots.get((row, col))
    if slot is not None:
        wrapped = slot.wrapped ^ (extra_nu & 1)
        name = f"{slot.kind}{slot.gen}"
        return f"v({name})" if wrapped else name
    e = label.A.entries[row][col]
    if isinstance(e, NuOne):
        return "1" if extra_nu & 1 else "1v"
    if e.is_zero():
        return "0"
    # minor one entry
    return "v(1)" if extra_nu & 1 else "1"


def render_token_grid(label: ChartLabel) -> list[list[str]]:
    return [
        [_entry_token(label, i, j) for j in range(label.space.m + label.space.n)]
        for i in range(label.A.rows)
    ]


def _layout(grid: list[list[str]], even_cols: int, even_rows: int) -> str:
    widths = [max(len(r[j]) for r in grid) for j in range(len(grid[0]))]
    lines = []
    for i, row in enumerate(grid):
        if i == even_rows:
            seg_even = "-" * (sum(widths[:even_cols]) + even_cols + 1)
            seg_odd = "-" * (sum(widths[even_cols:]) + len(widths) - even_cols + 1)
            lines.append("[" + seg_even + "+" + seg_odd + "]")
        cells = [row[j].ljust(widths[j]) for j in range(len(row))]
        left = " ".join(cells[:even_cols])
        right = " ".join(cells[even_cols:])
        lines.append(f"[ {left} | {right} ]")
    return "\n".join(lines)


def render_label(label: ChartLabel) -> str:
    grid = render_token_grid(label)
    out = _layout(grid, label.space.m, label.space.k)
    gens = " ".join(f"{k}{g}" for k, g in label.order)
    return out + "\ngenerators: " + gens


def render_minor(label: ChartLabel, target: ChartIndex, prime: bool = False) -> str:
    """Printed form of the (involution-corrected) minor of a label."""
    space = label.space
    target.validate(space)
    cols = [c - 1 for c in target.minor_columns(space)]
    tokens = [[(c, 0) for c in cols] for _ in range(label.A.rows)]
    split_even = target.p
    if prime:
        moved = nu_one_local_columns(space, target)
        even_cols = [j for j in range(target.p) if j not in moved]
        odd_cols = [j for j in range(target.p, target.p + target.q) if j not in moved]
        even_moved = [j for j in moved if j < target.p]
        odd_moved = [j for j in moved if j >= target.p]
        plan = (
            [(j, 0) for j in even_cols]
            + [(j, 1) for j in odd_moved]
            + [(j, 1) for j in even_moved]
            + [(j, 0) for j in odd_cols]
        )
        split_even = len(even_cols) + len(odd_moved)
        tokens = [[(cols[j], nuc) for j, nuc in plan] for _ in range(label.A.rows)]
    grid = [
        [_entry_token(label, i, c, nuc) for c, nuc in tokens[i]]
        for i in range(label.A.rows)
    ]
    return _layout(grid, split_even, space.k)
