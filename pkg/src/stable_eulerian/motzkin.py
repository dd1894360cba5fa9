"""Descent-top supports, 2-coloured Motzkin paths and Viennot weights.

Letters are classified as peaks (in both DT and AT), valleys (in neither),
double descents (DT only) and double ascents (AT only).  Each letter is one
path step: peak -> SE, valley -> NE, double descent -> EBar, double ascent
-> EUnder.  For type A on ``[n]`` letter 1 is always a valley and is dropped,
giving a path of length ``n - 1``; for type B on ``[n]`` every letter is a
step (the sigma_0 = 0 slot supplies the starting height), giving length
``n``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, FrozenSet, Iterator, List, Tuple, Union

from . import eulerian
from .multipoly import MPoly, Q, X, Y, as_number

NE, SE, EBAR, EUNDER = "NE", "SE", "EBar", "EUnder"
STEPS = (NE, SE, EBAR, EUNDER)
_RISE = {NE: 1, SE: -1, EBAR: 0, EUNDER: 0}
_GLYPH = {NE: "U", SE: "D", EBAR: "F+", EUNDER: "F-"}
_FROM_GLYPH = {v: k for k, v in _GLYPH.items()}


@dataclass(frozen=True)
class MotzkinPath:
    steps: Tuple[str, ...]

    def __post_init__(self):
        if any(s not in STEPS for s in self.steps):
            raise ValueError(f"unknown step in {self.steps}")

    @property
    def heights(self) -> Tuple[int, ...]:
        h = [0]
        for s in self.steps:
            h.append(h[-1] + _RISE[s])
        return tuple(h)

    def is_valid(self) -> bool:
        h = self.heights
        return min(h) >= 0 and h[-1] == 0

    def __len__(self) -> int:
        return len(self.steps)

    def __str__(self) -> str:
        return " ".join(_GLYPH[s] for s in self.steps)

    @classmethod
    def from_string(cls, text: str) -> "MotzkinPath":
        return cls(tuple(_FROM_GLYPH[t] for t in text.split()))


@dataclass(frozen=True)
class SupportPattern:
    n: int
    dt: FrozenSet[int]
    at: FrozenSet[int]
    family: str = "A"

    def __post_init__(self):
        object.__setattr__(self, "dt", frozenset(self.dt))
        object.__setattr__(self, "at", frozenset(self.at))
        letters = set(range(1, self.n + 1))
        if not (self.dt <= letters and self.at <= letters):
            raise ValueError(f"tops must lie in 1..{self.n}")
        if self.family not in ("A", "B"):
            raise ValueError("family must be 'A' or 'B'")

    @property
    def peaks(self) -> FrozenSet[int]:
        return self.dt & self.at

    @property
    def valleys(self) -> FrozenSet[int]:
        return frozenset(range(1, self.n + 1)) - (self.dt | self.at)

    @property
    def double_descents(self) -> FrozenSet[int]:
        return self.dt - self.at

    @property
    def double_ascents(self) -> FrozenSet[int]:
        return self.at - self.dt

    def kind(self, j: int) -> str:
        if j in self.dt:
            return SE if j in self.at else EBAR
        return EUNDER if j in self.at else NE


def support_valid(sp: SupportPattern) -> bool:
    """Prefix condition on valleys vs peaks, plus the closing balance.

    Type A needs ``|[i] & V| > |[i] & P|`` for every i and ``|V| = |P| + 1``;
    type B needs ``>=`` and ``|V| = |P|``.
    """
    slack = 1 if sp.family == "A" else 0
    v = p = 0
    for i in range(1, sp.n + 1):
        k = sp.kind(i)
        v += k == NE
        p += k == SE
        if v - p < slack:
            return False
    return v - p == slack


def path_from_support(sp: SupportPattern) -> MotzkinPath:
    if not support_valid(sp):
        raise ValueError(f"invalid support dt={sorted(sp.dt)} at={sorted(sp.at)}")
    first = 2 if sp.family == "A" else 1
    return MotzkinPath(tuple(sp.kind(j) for j in range(first, sp.n + 1)))


def support_from_path(path: MotzkinPath, n: int, family: str = "A") -> SupportPattern:
    if not path.is_valid():
        raise ValueError("not a Motzkin path")
    first = 2 if family == "A" else 1
    if len(path) != n - first + 1:
        raise ValueError(f"path length {len(path)} does not fit n={n}")
    dt, at = set(), set()
    for j, s in enumerate(path.steps, first):
        if s in (SE, EBAR):
            dt.add(j)
        if s in (SE, EUNDER):
            at.add(j)
    return SupportPattern(n, frozenset(dt), frozenset(at), family)


def support_of_monomial(mono, n: int, family: str = "A") -> SupportPattern:
    dt = {v[1] for v, _ in mono if v[0] == X}
    at = {v[1] for v, _ in mono if v[0] == Y}
    return SupportPattern(n, frozenset(dt), frozenset(at), family)


def enumerate_paths(length: int) -> Iterator[MotzkinPath]:
    """All 2-coloured Motzkin paths of the given length (depth-first, lexicographic)."""
    def rec(prefix: List[str], h: int):
        left = length - len(prefix)
        if left == 0:
            if h == 0:
                yield MotzkinPath(tuple(prefix))
            return
        for s in STEPS:
            nh = h + _RISE[s]
            if 0 <= nh <= left - 1 or (left == 1 and nh == 0):
                prefix.append(s)
                yield from rec(prefix, nh)
                prefix.pop()
    yield from rec([], 0)


def catalan(n: int) -> int:
    return math.comb(2 * n, n) // (n + 1)


# ---------------------------------------------------------------------------
# weights
# ---------------------------------------------------------------------------

Weight = Union[int, Fraction, MPoly]


def _qvalue(q):
    if q is None or q == "sym":
        return MPoly.variable(Q, 1)
    return as_number(q)


def step_weight(step: str, k: int, scheme: str, q=None, r: int = 2) -> Weight:
    """Weight of a step starting at height ``k``.

    ``A``: every step weighs k + 1.  ``B``/``Bq``: NE (k+1)(1+q),
    SE k(1+q), double descent q + k(1+q), double ascent 1 + k(1+q); ``B``
    is ``Bq`` at q = 1.  ``G`` (experimental) replaces 1 + q by
    1 + q + ... + q^(r-1) and the lone q by q + ... + q^(r-1).
    """
    if scheme == "A":
        return k + 1
    if scheme == "B":
        q, r = 1, 2
    elif scheme == "Bq":
        q, r = _qvalue(q), 2
    elif scheme == "G":
        q = _qvalue(q)
    else:
        raise ValueError(f"unknown weight scheme {scheme!r}")
    one = MPoly.const(1) if isinstance(q, MPoly) else 1
    powers = [one]
    for _ in range(1, r):
        powers.append(powers[-1] * q)
    total = sum(powers[1:], 0 * one)
    full = total + one
    if step == NE:
        w = full * (k + 1)
    elif step == SE:
        w = full * k
    elif step == EBAR:
        w = total + full * k
    else:
        w = one + full * k
    if isinstance(w, MPoly) and not w.variables():
        return w.coeff(())
    return w


def weight(path: MotzkinPath, scheme: str = "A", q=None, r: int = 2) -> Weight:
    total: Weight = 1
    for step, k in zip(path.steps, path.heights):
        total = total * step_weight(step, k, scheme, q, r)
    if isinstance(total, MPoly) and not total.variables():
        return total.coeff(())
    return total


# ---------------------------------------------------------------------------
# censuses and coefficient recovery
# ---------------------------------------------------------------------------

def catalan_census(family: str, n: int) -> Dict[str, object]:
    """Support count and path-weight total for A_{n-1}(x, y) or B_n(x, y; 1)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if family == "A":
        poly = eulerian.rec_a(n - 1)
        length, scheme, order = n - 1, "A", math.factorial(n)
    elif family == "B":
        poly = eulerian.rec_g(n, 2, None)
        length, scheme, order = n, "B", 2 ** n * math.factorial(n)
    else:
        raise ValueError("family must be 'A' or 'B'")
    total = sum(weight(p, scheme) for p in enumerate_paths(length))
    row = {"n": n, "family": family, "supportCount": len(poly),
           "catalan": catalan(n), "weightedTotal": int(total), "groupOrder": order}
    if family == "B":
        row["catalanShifted"] = catalan(n + 1)
    return row


def coefficient_mismatches(family: str, n: int, q=None, r: int = 2) -> List[Tuple]:
    """Monomials whose coefficient differs from the weight of their path.

    ``family`` is ``A`` (A_{n-1}(x, y)), ``B`` (B_n(x, y; q), q symbolic by
    default) or ``G`` (experimental, G_n^r(x, y; q)).  The q-part of each
    monomial is folded into the compared coefficient.
    """
    if family == "A":
        poly, fam, scheme = eulerian.rec_a(n - 1), "A", "A"
    elif family in ("B", "G"):
        rr = 2 if family == "B" else r
        qmode = "sym" if q is None or q == "sym" else as_number(q)
        poly, fam = eulerian.rec_g(n, rr, qmode), "B"
        scheme = "Bq" if family == "B" else "G"
    else:
        raise ValueError("family must be A, B or G")
    grouped: Dict[Tuple, MPoly] = {}
    for m, c in poly.items():
        xy = tuple((v, e) for v, e in m if v[0] in (X, Y))
        qpart = tuple((v, e) for v, e in m if v[0] == Q)
        grouped[xy] = grouped.get(xy, MPoly()) + MPoly({qpart: c})
    bad = []
    for xy, coeff in grouped.items():
        sp = support_of_monomial(xy, n, fam)
        if not support_valid(sp):
            bad.append((xy, coeff, None))
            continue
        w = weight(path_from_support(sp), scheme, q, r)
        if MPoly.const(w) != coeff if not isinstance(w, MPoly) else w != coeff:
            bad.append((xy, coeff, w))
    return bad


def all_valid_supports(n: int, family: str = "A") -> Iterator[SupportPattern]:
    letters = range(1, n + 1)
    for kinds in itertools.product(STEPS, repeat=n):
        dt = {j for j, k in zip(letters, kinds) if k in (SE, EBAR)}
        at = {j for j, k in zip(letters, kinds) if k in (SE, EUNDER)}
        sp = SupportPattern(n, frozenset(dt), frozenset(at), family)
        if support_valid(sp):
            yield sp


def actual_supports(n: int, family: str = "A") -> set:
    poly = eulerian.rec_a(n - 1) if family == "A" else eulerian.rec_g(n, 2, None)
    return {support_of_monomial(m, n, family) for m in poly}
