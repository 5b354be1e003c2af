"""Ambient space dimensions and chart indices."""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import BadIndexError


@dataclass(frozen=True)
class GrassSpec:
    """Dimension data (k, l | m, n) with derived coordinate counts."""

    k: int
    l: int
    m: int
    n: int

    def __post_init__(self):
        if not (0 <= self.k <= self.m):
            raise BadIndexError(f"need 0 <= k <= m, got k={self.k}, m={self.m}")
        if not (0 <= self.l <= self.n):
            raise BadIndexError(f"need 0 <= l <= n, got l={self.l}, n={self.n}")
        if self.n < 1:
            raise BadIndexError("need n >= 1 for the odd involution to exist")

    @property
    def alpha(self) -> int:
        return self.k * (self.m - self.k) + self.l * (self.n - self.l)

    @property
    def beta(self) -> int:
        return self.l * (self.m - self.k) + self.k * (self.n - self.l)

    def describe(self) -> dict:
        return {"k": self.k, "l": self.l, "m": self.m, "n": self.n,
                "alpha": self.alpha, "beta": self.beta}


@dataclass(frozen=True)
class ChartIndex:
    """A p|q-index: ascending even indices I and odd indices R."""

    I: tuple[int, ...]
    R: tuple[int, ...]

    def __post_init__(self):
        if list(self.I) != sorted(set(self.I)) or list(self.R) != sorted(set(self.R)):
            raise BadIndexError("index sets must be strictly ascending")

    @property
    def p(self) -> int:
        return len(self.I)

    @property
    def q(self) -> int:
        return len(self.R)

    def validate(self, space: GrassSpec) -> None:
        if self.p + self.q != space.k + space.l:
            raise BadIndexError(
                f"p+q = {self.p + self.q} but k+l = {space.k + space.l}"
            )
        if self.I and (self.I[0] < 1 or self.I[-1] > space.m):
            raise BadIndexError(f"even indices {self.I} outside 1..{space.m}")
        if self.R and (self.R[0] < 1 or self.R[-1] > space.n):
            raise BadIndexError(f"odd indices {self.R} outside 1..{space.n}")

    def is_standard(self, space: GrassSpec) -> bool:
        return self.p == space.k

    def parity_weight(self, space: GrassSpec) -> int:
        """0 for a standard index, 1 otherwise."""
        return 0 if self.is_standard(space) else 1

    def minor_columns(self, space: GrassSpec) -> list[int]:
        """Absolute label columns of the minor: I then m+R, each ascending."""
        return list(self.I) + [space.m + r for r in self.R]

    def __str__(self) -> str:
        i = ",".join(str(v) for v in self.I)
        r = ",".join(str(v) for v in self.R)
        return f"{{{i}}}|{{{r}}}"

    def json_key(self) -> dict:
        return {"I": list(self.I), "R": list(self.R)}


def chart(I, R) -> ChartIndex:
    return ChartIndex(tuple(I), tuple(R))
