"""Multivariate Eulerian polynomials: brute force, recurrences and identities.

Every family is available by exhaustive enumeration of group statistics
(``brute_force``) and, where one exists, by a stability-preserving
recurrence.  The two routes share nothing beyond ``MPoly`` arithmetic, which
is what makes them useful as oracles for each other.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Optional, Union

import numpy as np

from . import coxeter
from .multipoly import MPoly, Q, X, Y, as_number
from .parallel import map_reduce
from .upoly import UPoly

FAMILIES = ("A", "B", "D", "G", "AffA", "AffC", "AffB", "DStar", "DviaStembridge")

# CLI family codes
FAMILY_CODES = {
    "A": "A", "B": "B", "D": "D", "Dstar": "DStar", "affA": "AffA",
    "affC": "AffC", "affB": "AffB", "Dstem": "DviaStembridge", "G": "G",
}

QMode = Union[None, str, Fraction, int]


def parse_qmode(text: Optional[str]) -> QMode:
    """``None``/``"1"`` -> q = 1, ``"sym"``, ``"multisym"``, or a rational value."""
    if text is None:
        return None
    if text in ("sym", "multisym"):
        return text
    return as_number(text)


@dataclass(frozen=True)
class FamilySpec:
    family: str
    n: int
    r: int = 1
    q: QMode = None

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        lo = 2 if self.family in ("D", "DStar", "AffB", "DviaStembridge") else \
            (0 if self.family == "A" else 1)
        if self.n < lo:
            raise ValueError(f"family {self.family} needs n >= {lo}, got {self.n}")
        if self.r < 1:
            raise ValueError("r must be >= 1")
        if self.family != "G" and self.r != 1:
            raise ValueError("r is only meaningful for family G")
        if self.q not in (None, "sym", "multisym") and not isinstance(self.q, (int, Fraction)):
            raise ValueError(f"bad q mode {self.q!r}")

    @property
    def colors(self) -> int:
        return self.r if self.family == "G" else 2


# ---------------------------------------------------------------------------
# q handling
# ---------------------------------------------------------------------------

def _q_poly(q: QMode, index: int) -> MPoly:
    if q is None:
        return MPoly.const(1)
    if q == "sym":
        return MPoly.variable(Q, 1)
    if q == "multisym":
        return MPoly.variable(Q, index)
    return MPoly.const(q)


def _geometric(qp: MPoly, lo: int, hi: int) -> MPoly:
    """qp**lo + ... + qp**hi (empty sum is 0)."""
    total = MPoly()
    power = qp ** lo if lo <= hi else MPoly()
    for _ in range(lo, hi + 1):
        total = total + power
        power = power * qp
    return total


# ---------------------------------------------------------------------------
# recurrences
# ---------------------------------------------------------------------------

def _step(prev: MPoly, new_index: int, coef_x: MPoly, coef_y: MPoly,
          coef_d: MPoly, diagonal: bool, live: range) -> MPoly:
    """(coef_x*x + coef_y*y) * prev + coef_d*x*y*del(prev)."""
    i = 1 if diagonal else new_index
    xv, yv = (X, i), (Y, i)
    out = prev * coef_x.mul_monomial(((xv, 1),)) + prev * coef_y.mul_monomial(((yv, 1),))
    d = prev.del_op(live)
    if d:
        out = out + (d * coef_d).mul_monomial(((xv, 1), (yv, 1)))
    return out


def rec_a(n: int, diagonal: bool = False) -> MPoly:
    """A_n(x, y) over Sym(n+1) by inserting the largest letter.

    With ``diagonal=True`` every new variable is x1/y1, which yields the
    diagonalised polynomial directly (the total derivative commutes with
    diagonalisation).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    return _rec_a_cached(n, diagonal)


@lru_cache(maxsize=None)
def _rec_a_cached(n: int, diagonal: bool) -> MPoly:
    if n == 0:
        return MPoly.const(1)
    prev = _rec_a_cached(n - 1, diagonal)
    one = MPoly.const(1)
    live = range(1, 2) if diagonal else range(1, n + 1)
    return _step(prev, n + 1, one, one, one, diagonal, live)


def rec_g(n: int, r: int = 2, q: QMode = None, diagonal: bool = False) -> MPoly:
    """G_n^r(x, y; q); r = 2 is type B, r = 1 is Sym(n) with sigma_0 = 0."""
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    return _rec_g_cached(n, r, q, diagonal)


@lru_cache(maxsize=None)
def _rec_g_cached(n: int, r: int, q: QMode, diagonal: bool) -> MPoly:
    qp = _q_poly(q, n)
    coef_x = _geometric(qp, 1, r - 1)
    coef_d = _geometric(qp, 0, r - 1)
    one = MPoly.const(1)
    if n == 1:
        i = 1
        return coef_x.mul_monomial((((X, i), 1),)) + MPoly.variable(Y, i)
    prev = _rec_g_cached(n - 1, r, q, diagonal)
    live = range(1, 2) if diagonal else range(1, n)
    return _step(prev, n, coef_x, one, coef_d, diagonal, live)


def rec_b(n: int, q: QMode = None) -> MPoly:
    return rec_g(n, 2, q)


def affine_a(n: int) -> MPoly:
    if n < 1:
        raise ValueError("n must be >= 1")
    return rec_a(n - 1).mul_monomial((((X, n + 1), 1), ((Y, n + 1), 1)), n + 1)


def rec_affine_c(n: int) -> MPoly:
    if n < 1:
        raise ValueError("n must be >= 1")
    return _rec_affine_c_cached(n)


@lru_cache(maxsize=None)
def _rec_affine_c_cached(n: int) -> MPoly:
    if n == 1:
        return MPoly.monomial([(X, 1), (Y, 1)], 2)
    prev = _rec_affine_c_cached(n - 1)
    return prev.del_op(range(1, n)).mul_monomial((((X, n), 1), ((Y, n), 1)), 2)


def affine_c_closed(n: int) -> MPoly:
    """2^n x_n y_n A_{n-1} with A's variables shifted down by one."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return rec_a(n - 1).shift_indices(-1).mul_monomial(
        (((X, n), 1), ((Y, n), 1)), 2 ** n)


def d_multivariate(n: int) -> MPoly:
    """B_n(x, y; 1) - n 2^(n-1) x_n y_n A_{n-2}(x, y)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    sub = rec_a(n - 2).mul_monomial((((X, n), 1), ((Y, n), 1)), n * 2 ** (n - 1))
    return rec_g(n, 2, None) - sub


def affine_b(n: int) -> MPoly:
    """2 C~_n(x, y) - 2n x_n y_n B_{n-1}(x, y; 1)."""
    if n < 2:
        raise ValueError("n must be >= 2")
    sub = rec_g(n - 1, 2, None).mul_monomial((((X, n), 1), ((Y, n), 1)), 2 * n)
    return rec_affine_c(n).scale(2) - sub


def chow_d(n: int) -> UPoly:
    """Type D Eulerian polynomial from Chow's recurrence (corrected sign)."""
    if n < -1:
        raise ValueError("n must be >= -1")
    return _chow_table(max(n, 1))[n + 1]


@lru_cache(maxsize=None)
def _chow_table(top: int):
    x = UPoly.x()
    one = UPoly([1])
    omx = one - x
    table = [one, one, one]  # D_-1, D_0, D_1
    for m in range(0, top - 1):
        d1, d0, dm = table[m + 2], table[m + 1], table[m]  # D_{m+1}, D_m, D_{m-1}
        term = (UPoly([m, 5 * m]) + UPoly([0, 4])) * d1
        term = term + UPoly([0, 4]) * omx * d1.derivative()
        term = term + (omx * omx - (one + UPoly([0, 3])) ** 2 * m
                       - UPoly([0, 4 * m * (m - 1)]) * (one + UPoly([0, 2]))) * d0
        term = term - (UPoly([0, 4 * m]) * omx * (one + UPoly([0, 3]))
                       + UPoly([0, 4]) * omx * omx) * d0.derivative()
        term = term - UPoly([0, 0, 4]) * omx * omx * d0.derivative().derivative()
        term = term + (UPoly([0, 2 * m * (m - 1)]) * UPoly([3, 2, 3])
                       + UPoly([0, 0, 4 * m * (m - 1) * (m - 2)]) * (one + x)) * dm
        term = term + (UPoly([0, 2 * m]) * omx * omx * UPoly([3, 1])
                       + UPoly([0, 0, 8 * m * (m - 1)]) * omx * (one + x)) * dm.derivative()
        term = term + UPoly([0, 0, 4 * m]) * omx * omx * (one + x) * dm.derivative().derivative()
        table.append(term)
    return tuple(table)


def univariate(p: MPoly, q=None) -> UPoly:
    """Specialise every y to 1 (and every q to ``q`` if given), then diagonalise x."""
    p = p.specialize_axis(Y, 1)
    if q is not None:
        p = p.specialize_axis(Q, q)
    if any(v[0] != X for v in p.variables()):
        raise ValueError("polynomial still has non-x variables; pass q")
    return UPoly.from_mpoly(p.diagonalize(X))


def bivariate_q(p: MPoly) -> MPoly:
    """W(x; q): y := 1, x and q both diagonalised."""
    return p.specialize_axis(Y, 1).diagonalize(X).diagonalize(Q)


def recurrence(spec: FamilySpec) -> MPoly:
    """Recurrence (or identity) construction of a family."""
    f, n = spec.family, spec.n
    if f == "A":
        return rec_a(n)
    if f == "B":
        return rec_g(n, 2, spec.q)
    if f == "G":
        return rec_g(n, spec.r, spec.q)
    if f == "AffA":
        return affine_a(n)
    if f == "AffC":
        return rec_affine_c(n)
    if f == "AffB":
        return affine_b(n)
    if f == "DviaStembridge":
        return d_multivariate(n)
    raise ValueError(f"no recurrence for family {f}")


# ---------------------------------------------------------------------------
# brute force
# ---------------------------------------------------------------------------

def _colour_key(values, colors, qkind):
    if qkind == "multisym":
        ck = [0] * len(values)
        for v, e in zip(values, colors):
            ck[v - 1] = e
        return tuple(ck)
    if qkind == "none":
        return 0
    return sum(colors)


def _kernel(family: str, n: int, r: int, qkind: str, start: int, stop: int) -> Counter:
    out: Counter = Counter()
    if family in ("A", "AffA"):
        affine = family == "AffA"
        for values in itertools.islice(itertools.permutations(range(1, n + 2)), start, stop):
            dt, at = coxeter.tops_a(values)
            if affine:
                if values[-1] > values[0]:
                    dt |= 1 << values[-1]
                else:
                    at |= 1 << values[0]
            out[(dt, at)] += 1
        return out
    if family == "DStar":
        for values in itertools.islice(itertools.permutations(range(1, n + 1)), start, stop):
            for colors in itertools.product((0, 1), repeat=n):
                if sum(colors) % 2:
                    continue
                w = [-v if e else v for v, e in zip(values, colors)]
                dt, at = coxeter.tops_dstar(w)
                out[(tuple(sorted(dt.items())), tuple(sorted(at.items())))] += 1
        return out
    color_vectors = list(itertools.product(range(r), repeat=n))
    if family == "D":
        color_vectors = [c for c in color_vectors if sum(c) % 2 == 0]
    affine_c = family == "AffC"
    tops = coxeter.tops_colored
    for values in itertools.islice(itertools.permutations(range(1, n + 1)), start, stop):
        last = values[-1]
        for colors in color_vectors:
            dt, at = tops(values, colors, r)
            if affine_c:
                if colors[-1] == 0:
                    dt |= 1 << last
                else:
                    at |= 1 << last
            out[(dt, at, _colour_key(values, colors, qkind))] += 1
    return out


def _mask_mono(dt: int, at: int):
    vs = [((X, i), 1) for i in range(dt.bit_length()) if dt >> i & 1]
    vs += [((Y, i), 1) for i in range(at.bit_length()) if at >> i & 1]
    return vs


def brute_force(spec: FamilySpec, jobs: int = 1) -> MPoly:
    """Generating polynomial by exhaustive enumeration of the group."""
    f, n = spec.family, spec.n
    if f in ("AffB", "DviaStembridge"):
        raise ValueError(f"family {f} has no element-statistic model; use the recurrence")
    if f in ("A", "AffA"):
        r, perms = 1, math.factorial(n + 1)
    else:
        r, perms = spec.colors, math.factorial(n)
    q = spec.q
    qkind = "multisym" if q == "multisym" else ("none" if q is None or f in ("A", "AffA", "DStar") else "scalar")
    counts = map_reduce(_kernel, (f, n, r, qkind), perms, jobs)
    terms: Dict = {}
    for key, c in counts.items():
        if f == "DStar":
            dt, at = key
            mono = [((X, i), e) for i, e in dt] + [((Y, i), e) for i, e in at]
            coeff = c
        else:
            mono = _mask_mono(key[0], key[1])
            coeff = c
            if len(key) == 3 and qkind != "none":
                ck = key[2]
                if qkind == "multisym":
                    mono += [((Q, v), e) for v, e in enumerate(ck, 1) if e]
                elif q == "sym":
                    if ck:
                        mono.append(((Q, 1), ck))
                else:
                    coeff = c * as_number(q) ** ck
        m = tuple(sorted(mono))
        terms[m] = terms.get(m, 0) + coeff
    return MPoly(terms)


# ---------------------------------------------------------------------------
# univariate descent polynomials by vectorised enumeration
# ---------------------------------------------------------------------------

def _perm_chunks(n: int, size: int = 4096):
    it = itertools.permutations(range(1, n + 1))
    while True:
        block = list(itertools.islice(it, size))
        if not block:
            return
        yield np.array(block, dtype=np.int8)


def _sign_vectors(n: int) -> np.ndarray:
    return np.array(list(itertools.product((1, -1), repeat=n)), dtype=np.int8)


def descent_table(kind: str, n: int) -> np.ndarray:
    """Counts ``T[k, d]`` of elements with k negative entries and d descents.

    ``kind`` is one of ``A`` (Sym(n+1), k always 0), ``AffA``, ``B``,
    ``AffC``, ``D`` (type D descents over D_n) or ``BoverD`` (type B
    descents over D_n).
    """
    if kind in ("A", "AffA"):
        m = n + 1
        table = np.zeros((1, m + 2), dtype=np.int64)
        for P in _perm_chunks(m):
            des = (P[:, :-1] > P[:, 1:]).sum(axis=1)
            if kind == "AffA":
                des = des + (P[:, -1] > P[:, 0])
            table[0] += np.bincount(des, minlength=m + 2)[: m + 2]
        return table
    if kind not in ("B", "AffC", "D", "BoverD"):
        raise ValueError(f"unknown descent kind {kind!r}")
    if kind in ("D", "BoverD") and n < 2:
        raise ValueError("type D needs n >= 2")
    S = _sign_vectors(n)
    negs = (S < 0).sum(axis=1)
    if kind in ("D", "BoverD"):
        keep = negs % 2 == 0
        S, negs = S[keep], negs[keep]
    table = np.zeros((n + 1, n + 2), dtype=np.int64)
    width = n + 2
    for P in _perm_chunks(n, max(1, 2 ** 20 // max(len(S), 1))):
        W = P[:, None, :] * S[None, :, :]
        if kind == "D":
            first = -W[:, :, 1:2]
        else:
            first = np.zeros(W.shape[:2] + (1,), dtype=np.int8)
        seq = np.concatenate([first, W], axis=2)
        des = (seq[:, :, :-1] > seq[:, :, 1:]).sum(axis=2)
        if kind == "AffC":
            des = des + (W[:, :, -1] > 0)
        flat = negs[None, :] * width + des
        table += np.bincount(flat.ravel(), minlength=(n + 1) * width).reshape(n + 1, width)
    return table


def descent_polynomial(kind: str, n: int, q=1) -> UPoly:
    """Sum over the group of q^{neg} x^{des} from ``descent_table``."""
    table = descent_table(kind, n)
    q = as_number(q)
    coeffs = [0] * table.shape[1]
    for k in range(table.shape[0]):
        w = q ** k if k else 1
        for d in range(table.shape[1]):
            if table[k, d]:
                coeffs[d] += int(table[k, d]) * w
    return UPoly(coeffs)


# ---------------------------------------------------------------------------
# identities
# ---------------------------------------------------------------------------

def difference_product(n: int) -> MPoly:
    """(y_1 - x_1) ... (y_n - x_n)."""
    out = MPoly.const(1)
    for i in range(1, n + 1):
        out = out * (MPoly.variable(Y, i) - MPoly.variable(X, i))
    return out


def reiner_sum(n: int) -> MPoly:
    """Sum over B_n of (-1)^N(sigma) times the product of x_i over descent positions."""
    terms: Counter = Counter()
    for s in coxeter.enumerate_group(n, 2):
        seq = (0,) + s.signed()
        mono = tuple(((X, i), 1) for i in range(1, n + 1) if seq[i - 1] > seq[i])
        terms[mono] += -1 if s.n_count % 2 else 1
    return MPoly(dict(terms))


def reiner_product(n: int) -> MPoly:
    out = MPoly.const(1)
    for i in range(1, n + 1):
        out = out * (1 - MPoly.variable(X, i))
    return out


def root_of_unity_gap(n: int, r: int, points: int = 10, seed: int = 0) -> float:
    """Largest |G_n^r(x, y; zeta, ..., zeta) - prod (y_i - x_i)| over random real points.

    Uses the multi-q polynomial, every zeta != 1 among the r-th roots of unity,
    and x, y drawn uniformly from [-1, 1].
    """
    from .stability import _Compiled  # numeric evaluator

    g = rec_g(n, r, "multisym")
    order = sorted(g.variables() | difference_product(n).variables())
    comp = _Compiled(g, order)
    rng = np.random.default_rng(seed)
    worst = 0.0
    for k in range(1, r):
        zeta = complex(np.exp(2j * np.pi * k / r))
        for _ in range(points):
            xy = rng.uniform(-1.0, 1.0, size=(2, n))
            pt = np.array([xy[0, v[1] - 1] if v[0] == X else
                           xy[1, v[1] - 1] if v[0] == Y else zeta
                           for v in order], dtype=complex)
            lhs = complex((comp.monomials(pt[None, :]) @ comp.coeffs)[0])
            rhs = float(np.prod(xy[1] - xy[0]))
            worst = max(worst, abs(lhs - rhs))
    return worst


DEFAULT_IDENTITY_BOUNDS = {"qminus1": 7, "unity_n": 5, "unity_r": 5, "stembridge": 8,
                           "affBC": 8, "affD": 8, "reiner": 6}


def identity_suite(bounds: Optional[Dict[str, int]] = None, seed: int = 0):
    """Exact (and one numerical) checks of the identities between families."""
    from .report import INFORMATIONAL, INFO, Check, check

    b = dict(DEFAULT_IDENTITY_BOUNDS)
    b.update(bounds or {})
    out = []
    for n in range(1, b["qminus1"] + 1):
        out.append(check("B(x,y;-1)=prod(y-x)", rec_g(n, 2, -1) == difference_product(n), n=n))
    for r in range(2, b["unity_r"] + 1):
        for n in range(1, b["unity_n"] + 1):
            gap = root_of_unity_gap(n, r, seed=seed)
            out.append(check("G(x,y;zeta)=prod(y-x)", gap <= 1e-8,
                             detail=f"max gap {gap:.2e}", n=n, r=r))
    for n in range(2, b["stembridge"] + 1):
        d = descent_polynomial("D", n)
        bn = descent_polynomial("B", n)
        a = descent_polynomial("A", n - 2)
        ok = d == bn - UPoly([0, n * 2 ** (n - 1)]) * a
        out.append(check("Stembridge D=B-n2^(n-1)xA", ok, n=n))
    for n in range(2, b["affBC"] + 1):
        lhs = descent_polynomial("AffC", n) * 2
        rhs = univariate(affine_b(n)) + UPoly([0, 2 * n]) * descent_polynomial("B", n - 1)
        out.append(check("2C~=B~+2nxC", lhs == rhs, n=n))
    for n in range(3, b["affD"] + 1):
        dtil = univariate(affine_b(n)) - UPoly([0, 2 * n]) * descent_polynomial("D", n - 1)
        out.append(Check("derived D~=B~-2nxD", {"n": n}, INFO, INFORMATIONAL,
                         str(dtil)))
    for n in range(1, b["reiner"] + 1):
        out.append(check("Reiner signed sum", reiner_sum(n) == reiner_product(n), n=n))
    return out
