"""Exterior algebra over the rational-function field, with the odd involution.

An element is a finite sum of terms  c(x) * e_{i1}...e_{ir}  where the
coefficient is a rational function in the even variables and the mask is
a strictly increasing product of odd generators.  Masks are stored as
bitmasks (bit j set means generator e_{j+1} occurs).

The odd involution is induced by a linear map T on the exterior factor
that swaps the even and odd halves of an ordered monomial basis through
an invertible pairing matrix; T**2 = id holds for every such pairing.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ContextMismatchError, NotInvertibleError, ParityError
from .ratfunc import Poly, RatFunc

EVEN = "even"
ODD = "odd"
MIXED = "mixed"


def mask_indices(mask: int) -> tuple[int, ...]:
    """1-based generator indices of a bitmask, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def mask_from_indices(indices) -> int:
    mask = 0
    for i in indices:
        bit = 1 << (i - 1)
        if mask & bit:
            raise ValueError(f"duplicate odd index {i}")
        mask |= bit
    return mask


def mask_key(mask: int) -> tuple[int, tuple[int, ...]]:
    """Graded-lex sort key: degree first, then index tuple."""
    return (bin(mask).count("1"), mask_indices(mask))


def wedge_sign(a: int, b: int) -> int:
    """Sign of e_A ^ e_B for disjoint masks; 0 if they intersect."""
    if a & b:
        return 0
    sign = 1
    rest = b
    while rest:
        low = rest & -rest
        # generators of a strictly above this one must jump over it
        if bin(a >> low.bit_length()).count("1") & 1:
            sign = -sign
        rest ^= low
    return sign


def all_masks(beta: int) -> list[int]:
    return sorted(range(1 << beta), key=mask_key)


class SuperElem:
    """Element of the chart algebra: rational coefficients on odd masks."""

    __slots__ = ("alpha", "beta", "terms")

    def __init__(self, alpha: int, beta: int, terms: dict[int, RatFunc] | None = None):
        self.alpha = alpha
        self.beta = beta
        self.terms = terms if terms is not None else {}

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, alpha: int, beta: int) -> "SuperElem":
        return cls(alpha, beta)

    @classmethod
    def scalar(cls, alpha: int, beta: int, value) -> "SuperElem":
        r = value if isinstance(value, RatFunc) else RatFunc.const(alpha, value)
        if r.is_zero():
            return cls(alpha, beta)
        return cls(alpha, beta, {0: r})

    @classmethod
    def one(cls, alpha: int, beta: int) -> "SuperElem":
        return cls.scalar(alpha, beta, 1)

    @classmethod
    def x_var(cls, alpha: int, beta: int, idx: int) -> "SuperElem":
        return cls(alpha, beta, {0: RatFunc.var(alpha, idx - 1)})

    @classmethod
    def e_var(cls, alpha: int, beta: int, idx: int) -> "SuperElem":
        if not 1 <= idx <= beta:
            raise ContextMismatchError(f"odd generator e{idx} outside 1..{beta}")
        return cls(alpha, beta, {1 << (idx - 1): RatFunc.const(alpha, 1)})

    # -- predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "SuperElem") -> None:
        if self.alpha != other.alpha or self.beta != other.beta:
            raise ContextMismatchError(
                f"contexts ({self.alpha}|{self.beta}) vs ({other.alpha}|{other.beta})"
            )

    def parity(self) -> str:
        if not self.terms:
            return EVEN
        sizes = {bin(m).count("1") & 1 for m in self.terms}
        if sizes == {0}:
            return EVEN
        if sizes == {1}:
            return ODD
        return MIXED

    def body(self) -> RatFunc:
        return self.terms.get(0, RatFunc.zero(self.alpha))

    def soul(self) -> "SuperElem":
        return SuperElem(
            self.alpha, self.beta, {m: c for m, c in self.terms.items() if m}
        )

    # -- arithmetic --------------------------------------------------

    def __add__(self, other: "SuperElem") -> "SuperElem":
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            s = c if s is None else s + c
            if s.is_zero():
                out.pop(m, None)
            else:
                out[m] = s
        return SuperElem(self.alpha, self.beta, out)

    def __sub__(self, other: "SuperElem") -> "SuperElem":
        return self + (-other)

    def __neg__(self) -> "SuperElem":
        return SuperElem(self.alpha, self.beta, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other: "SuperElem") -> "SuperElem":
        self._check(other)
        out: dict[int, RatFunc] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                sign = wedge_sign(ma, mb)
                if sign == 0:
                    continue
                m = ma | mb
                c = ca * cb
                if sign < 0:
                    c = -c
                s = out.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return SuperElem(self.alpha, self.beta, out)

    def scale(self, c: RatFunc) -> "SuperElem":
        if c.is_zero():
            return SuperElem(self.alpha, self.beta)
        return SuperElem(
            self.alpha, self.beta, {m: k * c for m, k in self.terms.items()}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SuperElem):
            return NotImplemented
        self._check(other)
        if set(self.terms) != set(other.terms):
            return False
        return all(c == other.terms[m] for m, c in self.terms.items())

    def __hash__(self):
        raise TypeError("SuperElem is not hashable")

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for mask in sorted(self.terms, key=mask_key):
            c = self.terms[mask]
            neg = c.is_negative_leading()
            mag = -c if neg else c
            if mask == 0:
                body = mag.text()
            else:
                estr = "".join(f"e{i}" for i in mask_indices(mask))
                if mag.is_one():
                    body = estr
                else:
                    ctext = mag.text()
                    if len(mag.num.terms) > 1 and mag.den.is_one():
                        ctext = f"({ctext})"
                    body = f"{ctext}*{estr}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append(("- " if neg else "+ ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"SuperElem({self.text()})"


def parity_of(elem: SuperElem) -> str:
    return elem.parity()


class NuStructure:
    """Odd involution data: ordered basis split plus an invertible pairing.

    T maps odd_basis[j] to sum_i pairing[i][j] * even_basis[i] and
    even_basis[j] to sum_i inv_pairing[i][j] * odd_basis[i].
    """

    def __init__(
        self,
        beta: int,
        even_basis: list[int] | None = None,
        odd_basis: list[int] | None = None,
        pairing: list[list[Fraction]] | None = None,
    ):
        if beta < 1:
            raise ContextMismatchError("nu structure needs at least one odd generator")
        self.beta = beta
        masks = all_masks(beta)
        if even_basis is None:
            even_basis = [m for m in masks if bin(m).count("1") % 2 == 0]
        if odd_basis is None:
            odd_basis = [m for m in masks if bin(m).count("1") % 2 == 1]
        half = 1 << (beta - 1)
        if len(even_basis) != half or len(odd_basis) != half:
            raise ContextMismatchError("basis split sizes must both be 2^(beta-1)")
        if sorted(even_basis + odd_basis) != list(range(1 << beta)):
            raise ContextMismatchError("bases must jointly enumerate all masks")
        self.even_basis = list(even_basis)
        self.odd_basis = list(odd_basis)
        if pairing is None:
            pairing = [
                [Fraction(1) if i == j else Fraction(0) for j in range(half)]
                for i in range(half)
            ]
        self.pairing = [[Fraction(v) for v in row] for row in pairing]
        if len(self.pairing) != half or any(len(r) != half for r in self.pairing):
            raise ContextMismatchError(f"pairing must be {half}x{half}")
        inv = _fraction_inverse(self.pairing)
        if inv is None:
            raise ContextMismatchError("pairing matrix is singular")
        self.inv_pairing = inv
        self._even_pos = {m: i for i, m in enumerate(self.even_basis)}
        self._odd_pos = {m: i for i, m in enumerate(self.odd_basis)}

    @classmethod
    def default(cls, beta: int) -> "NuStructure":
        return cls(beta)

    @classmethod
    def from_permutation(cls, beta: int, perm: list[int]) -> "NuStructure":
        """Pairing that couples even_basis[perm[j]] with odd_basis[j]."""
        half = 1 << (beta - 1)
        if sorted(perm) != list(range(half)):
            raise ContextMismatchError("not a permutation of 0..2^(beta-1)-1")
        pairing = [[Fraction(0)] * half for _ in range(half)]
        for j, i in enumerate(perm):
            pairing[i][j] = Fraction(1)
        return cls(beta, pairing=pairing)

    def is_default(self) -> bool:
        half = 1 << (self.beta - 1)
        masks = all_masks(self.beta)
        if self.even_basis != [m for m in masks if bin(m).count("1") % 2 == 0]:
            return False
        if self.odd_basis != [m for m in masks if bin(m).count("1") % 2 == 1]:
            return False
        return self.pairing == [
            [Fraction(1) if i == j else Fraction(0) for j in range(half)]
            for i in range(half)
        ]

    def apply(self, elem: SuperElem) -> SuperElem:
        """The involution, coefficient-linear over the even variables."""
        if elem.beta != self.beta:
            raise ContextMismatchError(
                f"element over beta={elem.beta}, nu over beta={self.beta}"
            )
        out: dict[int, RatFunc] = {}
        for mask, coeff in elem.terms.items():
            pos = self._even_pos.get(mask)
            if pos is None:
                pos = self._odd_pos[mask]
            for m, w in _basis_images(self, mask, pos):
                c = coeff if w == 1 else coeff * RatFunc.const(elem.alpha, w)
                s = out.get(m)
                s = c if s is None else s + c
                if s.is_zero():
                    out.pop(m, None)
                else:
                    out[m] = s
        return SuperElem(elem.alpha, elem.beta, out)

    def body_shadow(self, idx: int, alpha: int) -> RatFunc:
        """Body of T(e_idx): the scalar the involution leaves on a generator."""
        img = self.apply(SuperElem.e_var(alpha, self.beta, idx))
        return img.body()

    def summary(self) -> dict:
        if self.is_default():
            return {"beta": self.beta, "pairing": "identity"}
        return {
            "beta": self.beta,
            "pairing": [[str(v) for v in row] for row in self.pairing],
        }


def _basis_images(nu: NuStructure, mask: int, pos: int):
    if mask in nu._even_pos:
        for i, m in enumerate(nu.odd_basis):
            w = nu.inv_pairing[i][pos]
            if w:
                yield m, w
    else:
        for i, m in enumerate(nu.even_basis):
            w = nu.pairing[i][pos]
            if w:
                yield m, w


def _fraction_inverse(rows: list[list[Fraction]]) -> list[list[Fraction]] | None:
    n = len(rows)
    work = [list(r) + [Fraction(1) if i == j else Fraction(0) for j in range(n)]
            for i, r in enumerate(rows)]
    for col in range(n):
        piv = next((r for r in range(col, n) if work[r][col] != 0), None)
        if piv is None:
            return None
        work[col], work[piv] = work[piv], work[col]
        inv = 1 / work[col][col]
        work[col] = [v * inv for v in work[col]]
        for r in range(n):
            if r != col and work[r][col]:
                f = work[r][col]
                work[r] = [a - f * b for a, b in zip(work[r], work[col])]
    return [row[n:] for row in work]


def elem_mul(a: SuperElem, b: SuperElem) -> SuperElem:
    return a * b


def body(a: SuperElem) -> RatFunc:
    return a.body()


def nu_apply(nu: NuStructure, a: SuperElem) -> SuperElem:
    return nu.apply(a)


def invert_even(a: SuperElem) -> SuperElem:
    """Inverse of an even element with invertible body.

    Writes a = b(1 + n) with b the body and n nilpotent of exterior
    degree >= 2, then expands the finite geometric series.
    """
    p = a.parity()
    if p != EVEN:
        raise ParityError(f"invert_even needs an even element, got {p}")
    b = a.body()
    if b.is_zero():
        raise NotInvertibleError("element has zero body")
    binv = b.inv()
    n = a.soul().scale(binv)
    result = SuperElem.one(a.alpha, a.beta)
    power = SuperElem.one(a.alpha, a.beta)
    for _ in range(a.beta // 2 + 1):
        power = -(power * n)
        if power.is_zero():
            break
        result = result + power
    return result.scale(binv)
