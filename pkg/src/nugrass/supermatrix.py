"""Block-partitioned supermatrices with a formal odd unit.

Entries are either concrete algebra elements or the formal symbol 1nu
that sits on the diagonal of non-standard identities.  Multiplication
by the formal unit applies the involution: z * 1nu = nu(z) and, by the
adopted closure, 1nu * z = nu(z) and 1nu * 1nu = 1.

A matrix carries a row split (k, l) and column split (r, s); the entry
at (i, j) must be homogeneous of parity row-parity + column-parity
(+ parity_shift for involution-twisted matrices).
"""

from __future__ import annotations

from .errors import (
    IndexRangeError,
    MixedParityEntryError,
    NuOneSumError,
    ShapeMismatchError,
    SingularError,
)
from .grassmann import EVEN, MIXED, ODD, NuStructure, SuperElem, invert_even
from .ratfunc import RatFunc
from .spaces import ChartIndex, GrassSpec


class NuOne:
    """The formal odd unit; a singleton."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "1v"


NU_ONE = NuOne()

Entry = object  # SuperElem | NuOne


def entry_mul(a, b, nu: NuStructure):
    """Product of two entries under the formal-unit rules."""
    a_nu = isinstance(a, NuOne)
    b_nu = isinstance(b, NuOne)
    if a_nu and b_nu:
        return None  # caller supplies 1 in its own context
    if a_nu:
        return nu.apply(b)
    if b_nu:
        return nu.apply(a)
    return a * b


def entry_nu(a, nu: NuStructure, alpha: int, beta: int):
    """nu of an entry; nu(1nu) = 1 by the adopted closure."""
    if isinstance(a, NuOne):
        return SuperElem.one(alpha, beta)
    return nu.apply(a)


class SMatrix:
    """Supermatrix over the chart algebra."""

    __slots__ = ("row_split", "col_split", "entries", "alpha", "beta", "parity_shift")

    def __init__(self, row_split, col_split, entries, alpha, beta, parity_shift=0):
        self.row_split = tuple(row_split)
        self.col_split = tuple(col_split)
        self.entries = [list(row) for row in entries]
        self.alpha = alpha
        self.beta = beta
        self.parity_shift = parity_shift & 1
        if len(self.entries) != self.rows or any(
            len(r) != self.cols for r in self.entries
        ):
            raise ShapeMismatchError("entry grid does not match the splits")

    # -- shape -------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.row_split[0] + self.row_split[1]

    @property
    def cols(self) -> int:
        return self.col_split[0] + self.col_split[1]

    def row_parity(self, i: int) -> int:
        return 0 if i < self.row_split[0] else 1

    def col_parity(self, j: int) -> int:
        return 0 if j < self.col_split[0] else 1

    def slot_parity(self, i: int, j: int) -> int:
        return (self.row_parity(i) + self.col_parity(j) + self.parity_shift) & 1

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    # -- structure checks ---------------------------------------------

    def validate(self) -> "SMatrix":
        """Assert the parity-per-block invariant; returns self."""
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                want = self.slot_parity(i, j)
                if isinstance(e, NuOne):
                    if want != 1:
                        raise MixedParityEntryError(
                            f"formal unit at even slot ({i}, {j})"
                        )
                    continue
                p = e.parity()
                if p == MIXED:
                    raise MixedParityEntryError(f"mixed entry at ({i}, {j})")
                if not e.is_zero() and (p == ODD) != (want == 1):
                    raise MixedParityEntryError(
                        f"entry at ({i}, {j}) has parity {p}, slot wants "
                        f"{'odd' if want else 'even'}"
                    )
        return self

    def has_nu_one(self) -> bool:
        return any(isinstance(e, NuOne) for row in self.entries for e in row)

    def column(self, j: int) -> list:
        return [row[j] for row in self.entries]

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        one = SuperElem.one(self.alpha, self.beta)
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if isinstance(e, NuOne):
                    return False
                if i == j:
                    if e != one:
                        return False
                elif not e.is_zero():
                    return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SMatrix):
            return NotImplemented
        if (
            self.row_split != other.row_split
            or self.col_split != other.col_split
            or self.parity_shift != other.parity_shift
        ):
            return False
        for ra, rb in zip(self.entries, other.entries):
            for a, b in zip(ra, rb):
                a_nu = isinstance(a, NuOne)
                b_nu = isinstance(b, NuOne)
                if a_nu != b_nu:
                    return False
                if not a_nu and a != b:
                    return False
        return True

    def __hash__(self):
        raise TypeError("SMatrix is not hashable")

    def text_grid(self) -> list[list[str]]:
        return [
            ["1v" if isinstance(e, NuOne) else e.text() for e in row]
            for row in self.entries
        ]

    def __repr__(self):
        return f"SMatrix({self.row_split}x{self.col_split})"


def identity_matrix(space_alpha, space_beta, split) -> SMatrix:
    k, l = split
    n = k + l
    one = SuperElem.one(space_alpha, space_beta)
    zero = SuperElem.zero(space_alpha, space_beta)
    return SMatrix(
        split,
        split,
        [[one if i == j else zero for j in range(n)] for i in range(n)],
        space_alpha,
        space_beta,
    )


def smat_mul(a: SMatrix, b: SMatrix, nu: NuStructure) -> SMatrix:
    """Row-by-column product under the formal-unit rules."""
    if a.col_split != b.row_split:
        raise ShapeMismatchError(
            f"col split {a.col_split} does not match row split {b.row_split}"
        )
    zero = SuperElem.zero(a.alpha, a.beta)
    one = SuperElem.one(a.alpha, a.beta)
    out = []
    for i in range(a.rows):
        arow = a.entries[i]
        orow = []
        for j in range(b.cols):
            acc = zero
            for t in range(a.cols):
                x = arow[t]
                y = b.entries[t][j]
                if isinstance(x, NuOne):
                    term = one if isinstance(y, NuOne) else nu.apply(y)
                elif isinstance(y, NuOne):
                    term = nu.apply(x)
                else:
                    if not x.terms or not y.terms:
                        continue
                    term = x * y
                if isinstance(term, NuOne):
                    raise NuOneSumError("formal unit leaked into a sum")
                if not term.is_zero():
                    acc = acc + term
            orow.append(acc)
        out.append(orow)
    return SMatrix(
        a.row_split,
        b.col_split,
        out,
        a.alpha,
        a.beta,
        a.parity_shift ^ b.parity_shift,
    ).validate()


def nonstd_identity(space: GrassSpec, index: ChartIndex) -> SMatrix:
    """Square identity with 1nu on diagonal slots of odd parity."""
    index.validate(space)
    k, l = space.k, space.l
    p = index.p
    n = k + l
    one = SuperElem.one(space.alpha, space.beta)
    zero = SuperElem.zero(space.alpha, space.beta)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i != j:
                row.append(zero)
            elif (i < k) == (i < p):
                row.append(one)
            else:
                row.append(NU_ONE)
        rows.append(row)
    return SMatrix((k, l), (p, index.q), rows, space.alpha, space.beta).validate()


def nu_one_local_columns(space: GrassSpec, index: ChartIndex) -> list[int]:
    """Local minor columns whose non-standard identity entry is 1nu."""
    k = space.k
    p = index.p
    lo, hi = min(k, p), max(k, p)
    return list(range(lo, hi))


def minor_m(a: SMatrix, space: GrassSpec, target: ChartIndex) -> SMatrix:
    """Columns of a label-shaped matrix selected by the target index."""
    target.validate(space)
    if a.col_split != (space.m, space.n):
        raise IndexRangeError("minor selection expects label-shaped columns")
    cols = [c - 1 for c in target.minor_columns(space)]
    rows = [[a.entries[i][c] for c in cols] for i in range(a.rows)]
    return SMatrix(
        a.row_split, (target.p, target.q), rows, a.alpha, a.beta, a.parity_shift
    ).validate()


def m_prime(
    a: SMatrix, space: GrassSpec, target: ChartIndex, nu: NuStructure
) -> SMatrix:
    """Involution-corrected minor: 1nu-columns of the target's identity are
    moved across the divider (even ones to the left edge of the odd side,
    odd ones to the right edge of the even side) with nu applied entrywise."""
    m = minor_m(a, space, target)
    moved = nu_one_local_columns(space, target)
    if not moved:
        return m
    p = target.p
    even_cols = [j for j in range(p) if j not in moved]
    odd_cols = [j for j in range(p, p + target.q) if j not in moved]
    even_moved = [j for j in moved if j < p]
    odd_moved = [j for j in moved if j >= p]

    def nu_col(j):
        return [entry_nu(m.entries[i][j], nu, a.alpha, a.beta) for i in range(m.rows)]

    def plain_col(j):
        return [m.entries[i][j] for i in range(m.rows)]

    new_cols = (
        [plain_col(j) for j in even_cols]
        + [nu_col(j) for j in odd_moved]
        + [nu_col(j) for j in even_moved]
        + [plain_col(j) for j in odd_cols]
    )
    new_even = len(even_cols) + len(odd_moved)
    new_odd = len(even_moved) + len(odd_cols)
    rows = [[col[i] for col in new_cols] for i in range(m.rows)]
    return SMatrix(
        a.row_split, (new_even, new_odd), rows, a.alpha, a.beta, a.parity_shift
    ).validate()


def d_omit(a: SMatrix, space: GrassSpec, target: ChartIndex) -> SMatrix:
    """Remove the target's minor columns, keeping the rest in order."""
    target.validate(space)
    if a.col_split != (space.m, space.n):
        raise IndexRangeError("column omission expects label-shaped columns")
    drop = {c - 1 for c in target.minor_columns(space)}
    keep_even = [j for j in range(space.m) if j not in drop]
    keep_odd = [j for j in range(space.m, space.m + space.n) if j not in drop]
    rows = [
        [a.entries[i][j] for j in keep_even + keep_odd] for i in range(a.rows)
    ]
    return SMatrix(
        a.row_split,
        (len(keep_even), len(keep_odd)),
        rows,
        a.alpha,
        a.beta,
        a.parity_shift,
    ).validate()


def body_matrix(a: SMatrix, nu: NuStructure) -> list[list[RatFunc]]:
    """Bodies after normalizing formal-unit rows by a left involution pass."""
    rows = []
    for row in a.entries:
        if any(isinstance(e, NuOne) for e in row):
            rows.append(
                [entry_nu(e, nu, a.alpha, a.beta).body() for e in row]
            )
        else:
            rows.append([e.body() for e in row])
    return rows


def body_determinant(rows: list[list[RatFunc]], nvars: int) -> RatFunc:
    """Exact determinant of a square matrix over the rational-function field."""
    n = len(rows)
    work = [list(r) for r in rows]
    det = RatFunc.const(nvars, 1)
    sign = 1
    for col in range(n):
        piv = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
        if piv is None:
            return RatFunc.zero(nvars)
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            sign = -sign
        pval = work[col][col]
        det = det * pval
        pinv = pval.inv()
        for r in range(col + 1, n):
            f = work[r][col] * pinv
            if f.is_zero():
                continue
            work[r] = [x - f * y for x, y in zip(work[r], work[col])]
    if sign < 0:
        det = -det
    return det


def smat_inv(a: SMatrix, nu: NuStructure) -> SMatrix:
    """Two-sided inverse by Gauss-Jordan elimination.

    Rows holding the formal unit are first scaled by it (left action:
    every entry passes through nu, the unit becomes 1); afterwards the
    elimination runs over concrete elements with body-invertible pivots.
    The product checks A*inv = inv*A = id run before returning.
    """
    if a.rows != a.cols:
        raise ShapeMismatchError("inverse of a non-square supermatrix")
    n = a.rows
    alpha, beta = a.alpha, a.beta
    one = SuperElem.one(alpha, beta)
    zero = SuperElem.zero(alpha, beta)
    work = []
    left = []
    for i, row in enumerate(a.entries):
        lrow = [one if i == j else zero for j in range(n)]
        if any(isinstance(e, NuOne) for e in row):
            work.append([entry_nu(e, nu, alpha, beta) for e in row])
            left.append([nu.apply(x) for x in lrow])
        else:
            work.append(list(row))
            left.append(lrow)
    for col in range(n):
        piv = next(
            (r for r in range(col, n) if not work[r][col].body().is_zero()), None
        )
        if piv is None:
            raise SingularError(f"no body-invertible pivot in column {col}")
        if piv != col:
            work[col], work[piv] = work[piv], work[col]
            left[col], left[piv] = left[piv], left[col]
        pinv = invert_even(work[col][col])
        work[col] = [pinv * e for e in work[col]]
        left[col] = [pinv * e for e in left[col]]
        for r in range(n):
            if r == col:
                continue
            f = work[r][col]
            if f.is_zero():
                continue
            work[r] = [x - f * y for x, y in zip(work[r], work[col])]
            left[r] = [x - f * y for x, y in zip(left[r], left[col])]
    inv = SMatrix(
        a.col_split, a.row_split, left, alpha, beta, a.parity_shift
    ).validate()
    if not smat_mul(inv, a, nu).is_identity() or not smat_mul(a, inv, nu).is_identity():
        raise SingularError(
            "inverse verification failed; the formal-unit closure does not "
            "support this matrix"
        )
    return inv
