"""Real-rootedness and real-stability checks.

Univariate claims are decided exactly with Sturm chains.  Multivariate
stability is only ever *falsified*: a witness is a concrete point, checked
again in exact or extended precision, and the absence of a witness is
reported as "none found", never as a proof.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import minimize

from . import eulerian
from .multipoly import MPoly, U, V, Var, X, Y, as_number, var_name
from .report import ASSERTED, INFORMATIONAL, Check, check
from .upoly import UPoly, gcd

HALFPLANE_TOL = 1e-6
REFINE_TOL = 1e-9
DEFAULT_BUDGET = 100_000
SEARCH_BLOCKS = 8
BOX = 10.0
MIN_IMAG = 0.05


# ---------------------------------------------------------------------------
# Sturm sequences
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SturmReport:
    degree: int
    distinct_real_roots: int
    squarefree_degree: int

    @property
    def is_real_rooted(self) -> bool:
        return self.distinct_real_roots == self.squarefree_degree


def squarefree_part(p: UPoly) -> UPoly:
    if p.degree < 1:
        return p.monic()
    return (p // gcd(p, p.derivative())).monic()


def sturm_chain(p: UPoly) -> List[UPoly]:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero() and chain[-1].degree > 0:
        chain.append(-(chain[-2] % chain[-1]))
    return [c for c in chain if not c.is_zero()]


def _sign_changes(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def count_real_roots(p: UPoly) -> int:
    """Distinct real roots of a squarefree (or arbitrary) nonzero polynomial."""
    chain = sturm_chain(p)
    at_pos = [1 if c.lead() > 0 else -1 for c in chain]
    at_neg = [s if c.degree % 2 == 0 else -s for s, c in zip(at_pos, chain)]
    return _sign_changes(at_neg) - _sign_changes(at_pos)


def sturm(p: UPoly) -> SturmReport:
    if p.is_zero():
        raise ValueError("the zero polynomial has no Sturm sequence")
    sf = squarefree_part(p)
    return SturmReport(p.degree, count_real_roots(sf), sf.degree)


def is_real_rooted(p: UPoly) -> bool:
    return sturm(p).is_real_rooted


# ---------------------------------------------------------------------------
# Rayleigh differences
# ---------------------------------------------------------------------------

def rayleigh_delta(p: MPoly, i: Var, j: Var) -> MPoly:
    """d_i p * d_j p - d_i d_j p * p (exact)."""
    if i == j:
        raise ValueError("rayleigh_delta needs two distinct variables")
    if not p.is_multiaffine((X, Y)):
        raise ValueError("rayleigh_delta needs a polynomial multiaffine in x and y")
    pi, pj = p.partial(i), p.partial(j)
    return pi * pj - pi.partial(j) * p


@dataclass
class StabilityWitness:
    kind: str  # "halfPlaneZero" or "rayleighNegative"
    point: Dict[str, complex]
    value: complex
    pair: Optional[Tuple[str, str]] = None
    delta: Optional[str] = None
    exact_value: Optional[str] = None

    def to_dict(self) -> dict:
        def enc(z):
            z = complex(z)
            return [z.real, z.imag]
        out = {"kind": self.kind,
               "point": {k: enc(v) for k, v in self.point.items()},
               "value": enc(self.value)}
        if self.pair:
            out["pair"] = list(self.pair)
        if self.delta is not None:
            out["delta"] = self.delta
        if self.exact_value is not None:
            out["exactValue"] = self.exact_value
        return out


class _Compiled:
    """Vectorised evaluator for an MPoly over a fixed variable order."""

    def __init__(self, p: MPoly, order: Sequence[Var]):
        pos = {v: k for k, v in enumerate(order)}
        items = list(p.items())
        self.exps = np.zeros((len(items), len(order)), dtype=np.int64)
        self.coeffs = np.array([float(c) for _, c in items]) if items else np.zeros(0)
        for t, (m, _) in enumerate(items):
            for v, e in m:
                self.exps[t, pos[v]] = e

    def monomials(self, pts: np.ndarray) -> np.ndarray:
        # pts: (N, m) -> (N, terms)
        return np.prod(pts[:, None, :] ** self.exps[None, :, :], axis=2)

    def value_and_scale(self, pts: np.ndarray):
        mons = self.monomials(pts)
        return mons @ self.coeffs, np.abs(mons) @ np.abs(self.coeffs)


def _block_seeds(seed: int, blocks: int = SEARCH_BLOCKS):
    return np.random.SeedSequence(seed).spawn(blocks)


def _grid_points(m: int, count: int, rng) -> np.ndarray:
    levels = np.array([-BOX, -2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, BOX])
    return levels[rng.integers(0, len(levels), size=(count, m))]


def falsify_rayleigh(p: MPoly, budget: int = DEFAULT_BUDGET, seed: int = 0,
                     jobs: int = 1) -> Optional[StabilityWitness]:
    """Search real points for a pair (i, j) with a negative Rayleigh difference.

    ``budget`` counts evaluations of a single difference polynomial at a
    single point.  The budget is split over a fixed number of seeded blocks,
    half on a coarse grid and half uniform in the box; the first witness in
    block order is returned, so results do not depend on ``jobs``.
    """
    if not p.is_multiaffine((X, Y)):
        raise ValueError("falsify_rayleigh needs a multiaffine polynomial")
    if any(v[0] not in (X, Y) for v in p.variables()):
        raise ValueError("specialise q (and other parameters) before testing stability")
    order = sorted(p.variables())
    pairs = [(a, b) for k, a in enumerate(order) for b in order[k + 1:]]
    if not pairs:
        return None
    deltas = [(a, b, rayleigh_delta(p, a, b)) for a, b in pairs]
    deltas = [(a, b, d, _Compiled(d, order)) for a, b, d in deltas if d]
    if not deltas:
        return None
    per_block = max(1, budget // (SEARCH_BLOCKS * len(pairs)))
    args = [(order, deltas, per_block, s) for s in _block_seeds(seed)]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_rayleigh_block, *zip(*args)))
    else:
        results = []
        for a in args:
            results.append(_rayleigh_block(*a))
            if results[-1] is not None:
                break
    return next((w for w in results if w is not None), None)


def _rayleigh_block(order, deltas, count, seed_seq) -> Optional[StabilityWitness]:
    rng = np.random.default_rng(seed_seq)
    m = len(order)
    half = count // 2
    pts = np.concatenate([_grid_points(m, half, rng),
                          rng.uniform(-BOX, BOX, size=(count - half, m))])
    for a, b, d, comp in deltas:
        vals, scale = comp.value_and_scale(pts)
        bad = np.nonzero(vals < -1e-9 * np.maximum(scale, 1.0))[0]
        for k in bad:
            point = {v: Fraction(float(x)) for v, x in zip(order, pts[k])}
            exact = d.eval_exact(point)
            if exact < 0:
                return StabilityWitness(
                    "rayleighNegative",
                    {var_name(v): complex(float(x)) for v, x in point.items()},
                    complex(float(exact)), (var_name(a), var_name(b)),
                    d.to_text(), str(exact))
    return None


# ---------------------------------------------------------------------------
# upper half-plane search
# ---------------------------------------------------------------------------

def _rel_modulus(comp: _Compiled, z: np.ndarray):
    mons = comp.monomials(z)
    return np.abs(mons @ comp.coeffs) / np.maximum(np.abs(mons) @ np.abs(comp.coeffs), 1e-300)


def falsify_halfplane(p: MPoly, budget: int = DEFAULT_BUDGET, seed: int = 0,
                      seeds: Sequence[Dict[Var, complex]] = (),
                      tol: float = HALFPLANE_TOL, refine: int = 8) -> Optional[StabilityWitness]:
    """Look for a zero of ``p`` with every coordinate in the open upper half-plane.

    Candidate points are ranked by ``|p(z)| / sum |c_k z^m_k|``; the best ones
    are refined by Nelder-Mead with imaginary parts kept above ``MIN_IMAG``.
    A point is reported when ``|p(z)| < tol``.  Points in ``seeds`` are
    tried first.
    """
    order = sorted(p.variables())
    if not order:
        return None
    comp = _Compiled(p, order)
    m = len(order)
    used = 0
    for s in seeds:
        z = np.array([[complex(s[v]) for v in order]])
        if np.any(z.imag <= 0):
            raise ValueError("seed points must lie in the open upper half-plane")
        used += 1
        val = complex((comp.monomials(z) @ comp.coeffs)[0])
        if abs(val) < tol:
            return _halfplane_witness(order, z[0], val)
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    refine_evals = min(budget // 2, 400 * refine * m)
    n_samples = max(0, budget - used - refine_evals)
    best: List[Tuple[float, np.ndarray]] = []
    batch = 4096
    while n_samples > 0:
        k = min(batch, n_samples)
        n_samples -= k
        re = rng.uniform(-BOX, BOX, size=(k, m))
        im = np.exp(rng.uniform(np.log(MIN_IMAG), np.log(BOX), size=(k, m)))
        z = re + 1j * im
        rel = _rel_modulus(comp, z)
        for idx in np.argsort(rel)[:refine]:
            best.append((float(rel[idx]), z[idx]))
        best = sorted(best, key=lambda t: t[0])[:refine]
    per_start = max(1, refine_evals // max(len(best), 1))
    for _, z0 in best:
        z = _refine(comp, z0, per_start)
        val = complex((comp.monomials(z[None, :]) @ comp.coeffs)[0])
        if abs(val) < tol and np.all(z.imag > 0):
            return _halfplane_witness(order, z, val)
    return None


def _refine(comp: _Compiled, z0: np.ndarray, maxfev: int) -> np.ndarray:
    m = len(z0)

    def unpack(t):
        re = np.clip(t[:m], -BOX, BOX)
        return re + 1j * (MIN_IMAG + np.exp(np.clip(t[m:], -30.0, math.log(BOX))))

    def obj(t):
        with np.errstate(all="ignore"):
            v = float(_rel_modulus(comp, unpack(t)[None, :])[0])
        return v if math.isfinite(v) else 1.0

    t0 = np.concatenate([z0.real, np.log(np.maximum(z0.imag - MIN_IMAG, 1e-12))])
    res = minimize(obj, t0, method="Nelder-Mead",
                   options={"maxfev": maxfev, "xatol": 1e-12, "fatol": 1e-16})
    return unpack(res.x)


def _halfplane_witness(order, z, val) -> StabilityWitness:
    return StabilityWitness("halfPlaneZero",
                            {var_name(v): complex(c) for v, c in zip(order, z)},
                            complex(val))


# ---------------------------------------------------------------------------
# the D*_3 counterexample point, evaluated with exact Gaussian rationals
# ---------------------------------------------------------------------------

def _sqrt3(bits: int) -> Fraction:
    return Fraction(math.isqrt(3 << (2 * bits)), 1 << bits)


def _gmul(a, b):
    return (a[0] * b[0] - a[1] * b[1], a[0] * b[1] + a[1] * b[0])


def d3star_point(bits: int = 120) -> Dict[Var, Tuple[Fraction, Fraction]]:
    """y2 = y3 = x3 = 2+i and x2 = (-1+2i)(2i+sqrt 3), as Gaussian rationals.

    sqrt(3) is truncated to ``bits`` binary digits.
    """
    s3 = _sqrt3(bits)
    two_i = (Fraction(2), Fraction(1))
    x2 = _gmul((Fraction(-1), Fraction(2)), (s3, Fraction(2)))
    return {(X, 2): x2, (X, 3): two_i, (Y, 2): two_i, (Y, 3): two_i}


def eval_gaussian(p: MPoly, point: Dict[Var, Tuple[Fraction, Fraction]]):
    total = (Fraction(0), Fraction(0))
    for m, c in p.items():
        t = (Fraction(c), Fraction(0))
        for v, e in m:
            for _ in range(e):
                t = _gmul(t, point[v])
        total = (total[0] + t[0], total[1] + t[1])
    return total


def d3star_witness(bits: int = 120) -> StabilityWitness:
    p = eulerian.brute_force(eulerian.FamilySpec("DStar", 3))
    exact_pt = d3star_point(bits)
    re, im = eval_gaussian(p, exact_pt)
    point = {v: complex(float(a), float(b)) for v, (a, b) in exact_pt.items()}
    val = p.eval_complex(point)
    mag = math.sqrt(float(re * re + im * im))
    return StabilityWitness("halfPlaneZero",
                            {var_name(v): z for v, z in point.items()}, val,
                            exact_value=f"|D*_3| = {mag:.3e} at {bits}-bit sqrt(3)")


# ---------------------------------------------------------------------------
# operator symbols
# ---------------------------------------------------------------------------

def divide_linear(p: MPoly, v: Var, rest: MPoly) -> MPoly:
    """Exact quotient ``p / (v + rest)``; ``rest`` must not involve ``v``.

    Synthetic division in ``v`` with polynomial coefficients; raises if the
    remainder is nonzero.
    """
    if v in rest.variables():
        raise ValueError("rest must not involve the division variable")
    by_power: Dict[int, Dict] = {}
    for m, c in p.items():
        e = dict(m).get(v, 0)
        mm = tuple((w, k) for w, k in m if w != v)
        by_power.setdefault(e, {})[mm] = c
    if not by_power:
        return MPoly()
    d = max(by_power)
    coeff = [MPoly(by_power.get(k, {})) for k in range(d + 1)]
    quot = [MPoly()] * d
    carry = coeff[d]
    for k in range(d - 1, -1, -1):
        quot[k] = carry
        carry = coeff[k] - rest * carry
    if carry:
        raise ArithmeticError("division by linear factor left a remainder")
    out = MPoly()
    for k, qk in enumerate(quot):
        out = out + (qk.mul_monomial(((v, k),)) if k else qk)
    return out


def divide_monomial(p: MPoly, v: Var) -> MPoly:
    terms = {}
    for m, c in p.items():
        d = dict(m)
        if d.get(v, 0) < 1:
            raise ArithmeticError(f"{var_name(v)} does not divide every term")
        d[v] -= 1
        terms[tuple(sorted((w, e) for w, e in d.items() if e))] = c
    return MPoly(terms)


def operator_coefficients(op: str, q=None, r: int = 2) -> Tuple:
    """(coefficient of x_{n+1}, of y_{n+1}, of x_{n+1}y_{n+1} del)."""
    if op == "typeA":
        return 1, 1, 1
    if op not in ("typeBq", "G"):
        raise ValueError(f"unknown operator {op!r}")
    q = as_number(1 if q is None else q)
    if op == "typeBq":
        return q, 1, 1 + q
    if op == "G":
        return sum(q ** k for k in range(1, r)), 1, sum(q ** k for k in range(r))
    raise ValueError(f"unknown operator {op!r}")


def verify_operator_symbol(op: str, n: int, q=None, r: int = 2) -> bool:
    """Check T(prod (x_i+u_i)(y_i+v_i)) against its factored form exactly."""
    if n < 1:
        raise ValueError("n must be >= 1")
    a, b, c = operator_coefficients(op, q, r)
    xn, yn = MPoly.variable(X, n + 1), MPoly.variable(Y, n + 1)
    factors = []
    for i in range(1, n + 1):
        factors.append(((X, i), MPoly.variable(U, i)))
        factors.append(((Y, i), MPoly.variable(V, i)))
    P = MPoly.const(1)
    for v, rest in factors:
        P = P * (MPoly.variable(*v) + rest)
    lhs = (xn.scale(a) + yn.scale(b)) * P + (xn * yn * P.del_op(range(1, n + 1))).scale(c)
    xy = xn * yn
    bracket = divide_monomial(xy * P, (Y, n + 1)).scale(a) + \
        divide_monomial(xy * P, (X, n + 1)).scale(b)
    cof = MPoly()
    for v, rest in factors:
        quotient = divide_linear(P, v, rest)
        if quotient * (MPoly.variable(*v) + rest) != P:
            raise ArithmeticError("cofactor check failed")
        cof = cof + quotient
    rhs = bracket + (xy * cof).scale(c)
    return lhs == rhs


# ---------------------------------------------------------------------------
# real-rootedness suite
# ---------------------------------------------------------------------------

DEFAULT_REALROOT_BOUNDS = {
    "A": 10, "Bq": 8, "G_r": 4, "G_n": 6, "AffA": 8, "AffC": 8, "D": 10,
    "AffB": 8, "AffD": 8,
}
Q_VALUES = (Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2))


def affine_b_univariate(n: int) -> UPoly:
    return eulerian.univariate(eulerian.affine_b(n))


def affine_d_univariate(n: int) -> UPoly:
    """Derived D~_n(x) = B~_n(x) - 2n x D_{n-1}(x)."""
    return affine_b_univariate(n) - UPoly([0, 2 * n]) * eulerian.chow_d(n - 1)


def _rr(name: str, p: UPoly, severity: str = ASSERTED, **params) -> Check:
    rep = sturm(p)
    return check("realroot", rep.is_real_rooted, severity,
                 f"{rep.distinct_real_roots}/{rep.squarefree_degree} distinct real roots",
                 family=name, **params)


def realrooted_suite(bounds: Optional[Dict[str, int]] = None) -> List[Check]:
    b = dict(DEFAULT_REALROOT_BOUNDS)
    b.update(bounds or {})
    out: List[Check] = []
    for n in range(1, b["A"] + 1):
        out.append(_rr("A", eulerian.univariate(eulerian.rec_a(n)), n=n))
    for q in Q_VALUES:
        for n in range(1, b["Bq"] + 1):
            out.append(_rr("B", eulerian.univariate(eulerian.rec_g(n, 2, q)), n=n, q=str(q)))
    for r in range(1, b["G_r"] + 1):
        for n in range(1, b["G_n"] + 1):
            out.append(_rr("G", eulerian.univariate(eulerian.rec_g(n, r, None)), n=n, r=r))
    for n in range(1, b["AffA"] + 1):
        out.append(_rr("AffA", eulerian.univariate(eulerian.affine_a(n)), n=n))
    for n in range(1, b["AffC"] + 1):
        out.append(_rr("AffC", eulerian.univariate(eulerian.rec_affine_c(n)), n=n))
    for n in range(2, b["D"] + 1):
        out.append(_rr("D", eulerian.chow_d(n), n=n))
    for n in range(2, b["AffB"] + 1):
        out.append(_rr("AffB", affine_b_univariate(n), n=n))
    for n in range(3, b["AffD"] + 1):
        out.append(_rr("AffD(derived)", affine_d_univariate(n), INFORMATIONAL, n=n))
    return out
