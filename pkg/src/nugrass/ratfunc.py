"""Exact sparse multivariate polynomials and rational functions.

Scalars are arbitrary-precision rationals (`fractions.Fraction`).  A
polynomial maps exponent tuples to nonzero rational coefficients; the
zero polynomial has no terms.  Rational functions keep a possibly
unreduced numerator/denominator pair: equality is decided by cross
multiplication, and only cheap reductions (common monomial, content,
one-shot exact division) are applied to control term blowup.

Canonical text uses graded-lexicographic term order, descending, which
also fixes serialization for golden files.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import ContextMismatchError, PoleAtPointError, ZeroInverseError

Rat = Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _grlex_key(exps: tuple[int, ...]) -> tuple[int, tuple[int, ...]]:
    return (sum(exps), exps)


class Poly:
    """Sparse polynomial over the rationals in a fixed set of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict[tuple[int, ...], Fraction] | None = None):
        self.nvars = nvars
        self.terms = terms if terms is not None else {}

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Poly":
        return cls(nvars)

    @classmethod
    def const(cls, nvars: int, value) -> "Poly":
        c = Fraction(value)
        if c == 0:
            return cls(nvars)
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, idx: int) -> "Poly":
        if not 0 <= idx < nvars:
            raise ContextMismatchError(f"variable index {idx} outside 0..{nvars - 1}")
        exps = [0] * nvars
        exps[idx] = 1
        return cls(nvars, {tuple(exps): _ONE})

    # -- predicates --------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * self.nvars: _ONE}

    def _check(self, other: "Poly") -> None:
        if self.nvars != other.nvars:
            raise ContextMismatchError(
                f"polynomials over {self.nvars} vs {other.nvars} variables"
            )

    # -- arithmetic --------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, _ZERO) + c
            if s:
                out[mono] = s
            elif mono in out:
                del out[mono]
        return Poly(self.nvars, out)

    def __neg__(self) -> "Poly":
        return Poly(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        self._check(other)
        out = dict(self.terms)
        for mono, c in other.terms.items():
            s = out.get(mono, _ZERO) - c
            if s:
                out[mono] = s
            elif mono in out:
                del out[mono]
        return Poly(self.nvars, out)

    def __mul__(self, other: "Poly") -> "Poly":
        self._check(other)
        if not self.terms or not other.terms:
            return Poly(self.nvars)
        out: dict[tuple[int, ...], Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                mono = tuple(x + y for x, y in zip(ma, mb))
                s = out.get(mono, _ZERO) + ca * cb
                if s:
                    out[mono] = s
                elif mono in out:
                    del out[mono]
        return Poly(self.nvars, out)

    def scale(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return Poly(self.nvars)
        return Poly(self.nvars, {m: k * c for m, k in self.terms.items()})

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise ValueError("negative polynomial power")
        result = Poly.const(self.nvars, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Poly)
            and self.nvars == other.nvars
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    # -- structure ---------------------------------------------------

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        """Leading term under descending graded-lex order."""
        mono = max(self.terms, key=_grlex_key)
        return mono, self.terms[mono]

    def content(self) -> Fraction:
        """Positive rational gcd of all coefficients (0 for the zero poly)."""
        if not self.terms:
            return _ZERO
        num = 0
        den = 1
        for c in self.terms.values():
            num = gcd(num, c.numerator)
            den = den * c.denominator // gcd(den, c.denominator)
        return Fraction(num, den)

    def monomial_gcd(self) -> tuple[int, ...]:
        it = iter(self.terms)
        try:
            low = list(next(it))
        except StopIteration:
            return (0,) * self.nvars
        for mono in it:
            for i, e in enumerate(mono):
                if e < low[i]:
                    low[i] = e
        return tuple(low)

    def shift_down(self, mono: tuple[int, ...]) -> "Poly":
        if not any(mono):
            return self
        return Poly(
            self.nvars,
            {tuple(e - g for e, g in zip(m, mono)): c for m, c in self.terms.items()},
        )

    def eval(self, point: Sequence[Fraction]) -> Fraction:
        if len(point) != self.nvars:
            raise ContextMismatchError("point dimension mismatch")
        total = _ZERO
        for mono, c in self.terms.items():
            v = c
            for x, e in zip(point, mono):
                if e:
                    v *= Fraction(x) ** e
            total += v
        return total

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=0)

    def diff(self, idx: int) -> "Poly":
        out: dict[tuple[int, ...], Fraction] = {}
        for mono, c in self.terms.items():
            e = mono[idx]
            if not e:
                continue
            lowered = list(mono)
            lowered[idx] = e - 1
            key = tuple(lowered)
            s = out.get(key, _ZERO) + c * e
            if s:
                out[key] = s
            elif key in out:
                del out[key]
        return Poly(self.nvars, out)

    # -- text --------------------------------------------------------

    def text(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for mono in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[mono]
            factors = [
                f"x{i + 1}" + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(mono)
                if e
            ]
            mag = abs(c)
            if factors:
                body = "*".join(factors) if mag == 1 else f"{mag}*" + "*".join(factors)
            else:
                body = str(mag)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self):
        return f"Poly({self.text()})"


def try_divide(num: Poly, den: Poly) -> Poly | None:
    """Exact multivariate division: return num/den if the remainder is zero."""
    if den.is_zero():
        return None
    if num.is_zero():
        return Poly.zero(num.nvars)
    dmono, dcoef = den.leading()
    quo: dict[tuple[int, ...], Fraction] = {}
    rem = num
    while not rem.is_zero():
        rmono, rcoef = rem.leading()
        qmono = tuple(a - b for a, b in zip(rmono, dmono))
        if any(e < 0 for e in qmono):
            return None
        qcoef = rcoef / dcoef
        quo[qmono] = quo.get(qmono, _ZERO) + qcoef
        rem = rem - den * Poly(num.nvars, {qmono: qcoef})
    return Poly(num.nvars, {m: c for m, c in quo.items() if c})


class RatFunc:
    """Rational function num/den with cheap normalization.

    Invariants: den != 0; den has coprime integer coefficients with a
    positive leading coefficient; num and den share no monomial factor.
    Full gcd reduction is not attempted; equality goes through cross
    multiplication, so unreduced pairs are still compared soundly.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = Poly.const(num.nvars, 1)
        if den.is_zero():
            raise ZeroInverseError("zero denominator")
        if num.is_zero():
            self.num = Poly.zero(num.nvars)
            self.den = Poly.const(num.nvars, 1)
            return
        g = tuple(
            min(a, b)
            for a, b in zip(num.monomial_gcd(), den.monomial_gcd())
        )
        if any(g):
            num = num.shift_down(g)
            den = den.shift_down(g)
        if not den.is_one():
            q = try_divide(num, den)
            if q is not None:
                num, den = q, Poly.const(num.nvars, 1)
            else:
                q = try_divide(den, num)
                if q is not None:
                    num, den = Poly.const(num.nvars, 1), q
        scale = den.content()
        if den.leading()[1] < 0:
            scale = -scale
        if scale != 1:
            num = num.scale(1 / scale)
            den = den.scale(1 / scale)
        self.num = num
        self.den = den

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "RatFunc":
        return cls(Poly.zero(nvars))

    @classmethod
    def const(cls, nvars: int, value) -> "RatFunc":
        return cls(Poly.const(nvars, value))

    @classmethod
    def var(cls, nvars: int, idx: int) -> "RatFunc":
        return cls(Poly.var(nvars, idx))

    @property
    def nvars(self) -> int:
        return self.num.nvars

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def _check(self, other: "RatFunc") -> None:
        if self.nvars != other.nvars:
            raise ContextMismatchError(
                f"rational functions over {self.nvars} vs {other.nvars} variables"
            )

    # -- arithmetic --------------------------------------------------

    def __add__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(self.num + other.num, self.den)
        return RatFunc(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        if other.is_zero():
            return self
        if self.den == other.den:
            return RatFunc(self.num - other.num, self.den)
        return RatFunc(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RatFunc":
        out = RatFunc.__new__(RatFunc)
        out.num = -self.num
        out.den = self.den
        return out

    def __mul__(self, other: "RatFunc") -> "RatFunc":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return RatFunc.zero(self.nvars)
        return RatFunc(self.num * other.num, self.den * other.den)

    def inv(self) -> "RatFunc":
        if self.is_zero():
            raise ZeroInverseError("cannot invert zero rational function")
        return RatFunc(self.den, self.num)

    def __truediv__(self, other: "RatFunc") -> "RatFunc":
        return self * other.inv()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatFunc):
            return NotImplemented
        self._check(other)
        if self.den == other.den:
            return self.num == other.num
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        raise TypeError("RatFunc is not hashable (equality is cross-multiplied)")

    def __bool__(self) -> bool:
        return not self.is_zero()

    def eval(self, point: Sequence[Fraction]) -> Fraction:
        d = self.den.eval(point)
        if d == 0:
            raise PoleAtPointError(f"denominator vanishes at {tuple(point)}")
        return self.num.eval(point) / d

    def eval_or_none(self, point: Sequence[Fraction]) -> Fraction | None:
        try:
            return self.eval(point)
        except PoleAtPointError:
            return None

    def diff(self, idx: int) -> "RatFunc":
        return RatFunc(
            self.num.diff(idx) * self.den - self.num * self.den.diff(idx),
            self.den * self.den,
        )

    def is_negative_leading(self) -> bool:
        """Sign of the leading numerator coefficient (den is positive-led)."""
        if self.is_zero():
            return False
        return self.num.leading()[1] < 0

    def text(self) -> str:
        if self.den.is_one():
            return self.num.text()
        ntext = self.num.text()
        if len(self.num.terms) > 1:
            ntext = f"({ntext})"
        dtext = self.den.text()
        if not _plain_den(self.den):
            dtext = f"({dtext})"
        return f"{ntext}/{dtext}"

    def __repr__(self):
        return f"RatFunc({self.text()})"


def _plain_den(den: Poly) -> bool:
    """True when the denominator renders unambiguously without parens."""
    if len(den.terms) != 1:
        return False
    mono, c = den.leading()
    nz = [e for e in mono if e]
    if not nz:
        return c.denominator == 1
    return c == 1 and len(nz) == 1


def ratfunc_arith(a: RatFunc, b: RatFunc, op: str) -> RatFunc:
    """Dispatch form of field arithmetic used by the CLI/tests."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def ratfunc_eq(a: RatFunc, b: RatFunc) -> bool:
    return a == b


def ratfunc_inv(a: RatFunc) -> RatFunc:
    return a.inv()


def eval_at(a: RatFunc, point: Iterable) -> Fraction:
    return a.eval([Fraction(p) for p in point])
