"""Transition morphisms between charts, solved from the pasting equation.

For a source label A and target index J|S the corrected minor Z is
inverted and E = D_{J|S}(Z^{-1} A) is matched slot-by-slot against the
target label: a plain slot holding g reads off table[g] = E entry, a
wrapped slot holding nu(g) reads table[g] = nu(E entry).  Both pasting
cases share this path because the corrected minor of a standard target
is the plain minor.

Composition is generator substitution; it realizes the ring-map
composite g*_{a,b} o g*_{b,c} whose table expresses chart-c generators
over chart a.
"""

from __future__ import annotations

from dataclasses import dataclass

from .atlas import ChartLabel, E_KIND, X_KIND, build_label
from .errors import (
    EmptyOverlapError,
    NonInvertibleDenominatorError,
    NotInvertibleError,
    ParityError,
    SingularError,
)
from .grassmann import EVEN, ODD, NuStructure, SuperElem, invert_even
from .ratfunc import Poly, RatFunc
from .spaces import ChartIndex, GrassSpec
from .supermatrix import (
    body_determinant,
    body_matrix,
    d_omit,
    m_prime,
    smat_inv,
    smat_mul,
)

GenKey = tuple[str, int]


@dataclass
class TransitionMap:
    """Generator-substitution table for g*_{source,target}."""

    space: GrassSpec
    source: ChartIndex
    target: ChartIndex
    table: dict[GenKey, SuperElem]
    domain_certificate: RatFunc

    def is_identity(self) -> bool:
        alpha, beta = self.space.alpha, self.space.beta
        for (kind, gen), img in self.table.items():
            want = (
                SuperElem.x_var(alpha, beta, gen)
                if kind == X_KIND
                else SuperElem.e_var(alpha, beta, gen)
            )
            if img != want:
                return False
        return True

    def image(self, kind: str, gen: int) -> SuperElem:
        return self.table[(kind, gen)]

    def reduced_table(self) -> list[RatFunc]:
        """Bodies of the even-generator images, in generator order."""
        return [
            self.table[(X_KIND, i + 1)].body() for i in range(self.space.alpha)
        ]

    def reduced_jacobian(self) -> RatFunc:
        """Jacobian determinant of the reduced (body-level) point map.

        An identically zero Jacobian means the would-be chart change is
        nowhere a local diffeomorphism, so the pair glues over an empty
        open set even though the corrected minor inverts formally.
        """
        from .supermatrix import body_determinant

        bodies = self.reduced_table()
        alpha = self.space.alpha
        rows = [[b.diff(j) for j in range(alpha)] for b in bodies]
        return body_determinant(rows, alpha)

    def is_degenerate(self) -> bool:
        return self.reduced_jacobian().is_zero()

    def to_json(self) -> dict:
        return {
            "source": self.source.json_key(),
            "target": self.target.json_key(),
            "table": {
                f"{k}{g}": img.text()
                for (k, g), img in sorted(self.table.items())
            },
            "domain_certificate": self.domain_certificate.text(),
        }


def check_parities(tmap: TransitionMap) -> None:
    for (kind, _), img in tmap.table.items():
        p = img.parity()
        if img.is_zero():
            continue
        if kind == X_KIND and p != EVEN:
            raise ParityError(f"even generator image has parity {p}")
        if kind == E_KIND and p != ODD:
            raise ParityError(f"odd generator image has parity {p}")


def compute_transition(
    space: GrassSpec,
    source: ChartIndex,
    target: ChartIndex,
    nu: NuStructure,
    source_label: ChartLabel | None = None,
    target_label: ChartLabel | None = None,
) -> TransitionMap:
    """Solve the pasting equation for g*_{source,target}."""
    src = source_label if source_label is not None else build_label(space, source, nu)
    tgt = target_label if target_label is not None else build_label(space, target, nu)
    z = m_prime(src.A, space, target, nu)
    cert = body_determinant(body_matrix(z, nu), space.alpha)
    if cert.is_zero():
        raise EmptyOverlapError(
            f"corrected minor of {source} at {target} is nowhere invertible"
        )
    zinv = smat_inv(z, nu)
    prod = smat_mul(zinv, src.A, nu)
    e_mat = d_omit(prod, space, target)
    cols = tgt.nonminor_columns()
    col_pos = {c: i for i, c in enumerate(cols)}
    table: dict[GenKey, SuperElem] = {}
    for (row, col), slot in tgt.slots.items():
        entry = e_mat.entries[row][col_pos[col]]
        img = nu.apply(entry) if slot.wrapped else entry
        table[(slot.kind, slot.gen)] = img
    tmap = TransitionMap(space, source, target, table, cert)
    check_parities(tmap)
    return tmap


def identity_transition(space: GrassSpec, index: ChartIndex) -> TransitionMap:
    alpha, beta = space.alpha, space.beta
    table: dict[GenKey, SuperElem] = {}
    for i in range(1, alpha + 1):
        table[(X_KIND, i)] = SuperElem.x_var(alpha, beta, i)
    for j in range(1, beta + 1):
        table[(E_KIND, j)] = SuperElem.e_var(alpha, beta, j)
    return TransitionMap(space, index, index, table, RatFunc.const(alpha, 1))


class _Substituter:
    """Evaluates expressions over a map's target chart in its source chart."""

    def __init__(self, tmap: TransitionMap):
        self.tmap = tmap
        alpha = tmap.space.alpha
        beta = tmap.space.beta
        self.alpha = alpha
        self.beta = beta
        self._x_powers: dict[int, list[SuperElem]] = {}
        self._den_cache: dict[int, SuperElem] = {}
        self.one = SuperElem.one(alpha, beta)

    def _x_power(self, idx: int, exp: int) -> SuperElem:
        powers = self._x_powers.setdefault(idx, [self.one])
        while len(powers) <= exp:
            powers.append(powers[-1] * self.tmap.table[(X_KIND, idx + 1)])
        return powers[exp]

    def poly(self, p: Poly) -> SuperElem:
        acc = SuperElem.zero(self.alpha, self.beta)
        for mono, coeff in p.terms.items():
            term = SuperElem.scalar(self.alpha, self.beta, coeff)
            for i, e in enumerate(mono):
                if e:
                    term = term * self._x_power(i, e)
            acc = acc + term
        return acc

    def ratfunc(self, r: RatFunc) -> SuperElem:
        num = self.poly(r.num)
        if r.den.is_one():
            return num
        key = hash((frozenset(r.den.terms.items()), r.den.nvars))
        den_inv = self._den_cache.get(key)
        if den_inv is None:
            den = self.poly(r.den)
            try:
                den_inv = invert_even(den)
            except NotInvertibleError as exc:
                raise NonInvertibleDenominatorError(
                    f"denominator {r.den.text()} pulls back to a zero-body element"
                ) from exc
            self._den_cache[key] = den_inv
        return num * den_inv

    def elem(self, expr: SuperElem) -> SuperElem:
        acc = SuperElem.zero(self.alpha, self.beta)
        for mask, coeff in expr.terms.items():
            term = self.ratfunc(coeff)
            m = mask
            idx = 1
            while m:
                if m & 1:
                    term = term * self.tmap.table[(E_KIND, idx)]
                m >>= 1
                idx += 1
            acc = acc + term
        return acc


def substitute(expr: SuperElem, tmap: TransitionMap) -> SuperElem:
    """Rewrite an expression over tmap.target in tmap.source generators."""
    return _Substituter(tmap).elem(expr)


def substitute_body(r: RatFunc, tmap: TransitionMap) -> RatFunc:
    """Compose a rational function with the reduced (body-level) map."""
    bodies = [
        tmap.table[(X_KIND, i + 1)].body() for i in range(tmap.space.alpha)
    ]

    def poly_at(p: Poly) -> RatFunc:
        acc = RatFunc.zero(tmap.space.alpha)
        for mono, coeff in p.terms.items():
            term = RatFunc.const(tmap.space.alpha, coeff)
            for i, e in enumerate(mono):
                for _ in range(e):
                    term = term * bodies[i]
            acc = acc + term
        return acc

    num = poly_at(r.num)
    den = poly_at(r.den)
    if den.is_zero():
        raise NonInvertibleDenominatorError("reduced denominator vanishes")
    return num / den


def compose(outer: TransitionMap, inner: TransitionMap) -> TransitionMap:
    """Composite g*_{outer.source,outer.target} o g*_{inner.source,inner.target}.

    Requires outer.target == inner.source: inner's images (over the
    middle chart) are pushed through outer's table, producing a map with
    outer's source and inner's target.
    """
    if outer.target != inner.source:
        raise SingularError(
            f"cannot compose: outer target {outer.target} != inner source "
            f"{inner.source}"
        )
    sub = _Substituter(outer)
    table = {key: sub.elem(img) for key, img in inner.table.items()}
    cert = outer.domain_certificate * substitute_body(
        inner.domain_certificate, outer
    )
    result = TransitionMap(
        outer.space, outer.source, inner.target, table, cert
    )
    check_parities(result)
    return result
