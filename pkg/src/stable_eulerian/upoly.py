"""Dense univariate polynomials with exact rational coefficients."""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .multipoly import MPoly, as_number, _norm


class UPoly:
    """``coeffs[k]`` is the coefficient of ``x**k``; trailing zeros are stripped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [as_number(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple = tuple(cs)

    @classmethod
    def x(cls) -> "UPoly":
        return cls([0, 1])

    @classmethod
    def from_mpoly(cls, p: MPoly) -> "UPoly":
        """Read off a polynomial in at most one variable."""
        vs = p.variables()
        if len(vs) > 1:
            raise ValueError(f"polynomial has {len(vs)} variables, expected at most one")
        deg = p.total_degree()
        cs = [0] * (deg + 1)
        for m, c in p.items():
            cs[m[0][1] if m else 0] += c
        return cls(cs)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lead(self):
        return self.coeffs[-1]

    def __getitem__(self, k: int):
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __eq__(self, other) -> bool:
        if isinstance(other, (list, tuple)):
            other = UPoly(other)
        if not isinstance(other, UPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __add__(self, other) -> "UPoly":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return UPoly(_norm(self[k] + other[k]) for k in range(n))

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly(-c for c in self.coeffs)

    def __sub__(self, other) -> "UPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "UPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "UPoly":
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return UPoly()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UPoly(_norm(c) for c in out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "UPoly":
        out = UPoly([1])
        for _ in range(k):
            out = out * self
        return out

    def derivative(self) -> "UPoly":
        return UPoly(k * c for k, c in enumerate(self.coeffs) if k)

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, other: "UPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = [Fraction(c) for c in self.coeffs]
        dq = other.degree
        lead = Fraction(other.lead())
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for k in range(len(rem) - 1, dq - 1, -1):
            c = rem[k] / lead
            if c:
                quot[k - dq] = c
                for j, b in enumerate(other.coeffs):
                    rem[k - dq + j] -= c * b
        return UPoly(quot), UPoly(rem[:dq])

    def __mod__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[1]

    def __floordiv__(self, other: "UPoly") -> "UPoly":
        return self.divmod(other)[0]

    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        lead = Fraction(self.lead())
        return UPoly(Fraction(c) / lead for c in self.coeffs)

    def to_mpoly(self, axis: int = 0, index: int = 1) -> MPoly:
        return sum((MPoly.variable(axis, index, k) * c if k else MPoly.const(c)
                    for k, c in enumerate(self.coeffs) if c), MPoly())

    def __repr__(self) -> str:
        return f"UPoly({list(self.coeffs)!r})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            mon = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            body = str(abs(c)) if (abs(c) != 1 or not mon) else ""
            if body and mon:
                body += "*"
            term = body + mon
            if not parts:
                parts.append(f"-{term}" if c < 0 else term)
            else:
                parts.append(f" - {term}" if c < 0 else f" + {term}")
        return "".join(parts)


def _coerce(other) -> UPoly:
    if isinstance(other, UPoly):
        return other
    return UPoly([other])


def gcd(a: UPoly, b: UPoly) -> UPoly:
    """Monic greatest common divisor (Euclid over the rationals)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def from_values(cs: Sequence) -> UPoly:
    return UPoly(cs)
