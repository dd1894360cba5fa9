"""Exact sparse multivariate polynomials over indexed variable families.

Variables are ``(axis, index)`` pairs.  The axes ``X``, ``Y`` and ``Q`` carry
the descent-top, ascent-top and colour variables; ``U`` and ``V`` are only
used as auxiliary variables when checking operator symbols.

A monomial is a tuple of ``(var, exponent)`` pairs sorted by variable, with
every exponent positive.  Coefficients are ``int`` whenever possible and
``fractions.Fraction`` otherwise.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

X, Y, Q, U, V = 0, 1, 2, 3, 4
AXIS_NAMES = ("x", "y", "q", "u", "v")
_AXIS_BY_NAME = {name: i for i, name in enumerate(AXIS_NAMES)}

Var = Tuple[int, int]
Monomial = Tuple[Tuple[Var, int], ...]
Number = Union[int, Fraction]

ONE_MONOMIAL: Monomial = ()

_VAR_RE = re.compile(r"^([xyquv])(\d+)$")


def var(axis: Union[int, str], index: int) -> Var:
    if isinstance(axis, str):
        axis = _AXIS_BY_NAME[axis]
    if index < 1:
        raise ValueError(f"variable index must be >= 1, got {index}")
    return (axis, index)


def var_name(v: Var) -> str:
    return f"{AXIS_NAMES[v[0]]}{v[1]}"


def parse_var(name: str) -> Var:
    m = _VAR_RE.match(name)
    if not m:
        raise ValueError(f"bad variable name {name!r}")
    return var(m.group(1), int(m.group(2)))


def _norm(c: Number) -> Number:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def as_number(c) -> Number:
    """Coerce ints, Fractions and decimal/rational strings to an exact number."""
    if isinstance(c, bool):
        raise TypeError("booleans are not coefficients")
    if isinstance(c, (int, Fraction)):
        return _norm(c)
    if isinstance(c, str):
        return _norm(Fraction(c))
    if isinstance(c, float):
        raise TypeError("floating-point coefficients are not allowed; use Fraction")
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    d = dict(a)
    for v, e in b:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def mono_key(m: Monomial):
    """Sort key realising graded lexicographic order, largest monomial first."""
    return (-mono_degree(m), tuple((v, -e) for v, e in m))


def mono_from_vars(vs: Iterable[Var]) -> Monomial:
    d: Dict[Var, int] = {}
    for v in vs:
        d[v] = d.get(v, 0) + 1
    return tuple(sorted(d.items()))


class MPoly:
    """Immutable sparse polynomial ``{monomial: coefficient}`` with no zero terms."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        clean: Dict[Monomial, Number] = {}
        if terms:
            for m, c in terms.items():
                c = as_number(c)
                if c != 0:
                    clean[m] = c
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, terms: Dict[Monomial, Number]) -> "MPoly":
        # caller guarantees no zero coefficients and normalised numbers
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, c) -> "MPoly":
        return cls({ONE_MONOMIAL: as_number(c)})

    @classmethod
    def variable(cls, axis: Union[int, str], index: int, power: int = 1) -> "MPoly":
        return cls({((var(axis, index), power),): 1})

    @classmethod
    def monomial(cls, vs: Iterable[Var], coeff=1) -> "MPoly":
        return cls({mono_from_vars(vs): as_number(coeff)})

    # -- basic protocol ---------------------------------------------------
    @property
    def terms(self) -> Dict[Monomial, Number]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __iter__(self) -> Iterator[Monomial]:
        return iter(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def coeff(self, m: Monomial) -> Number:
        return self._terms.get(m, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = MPoly.const(other)
        if not isinstance(other, MPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def variables(self) -> set:
        return {v for m in self._terms for v, _ in m}

    def indices(self, axes: Iterable[int] = (X, Y)) -> set:
        axes = set(axes)
        return {v[1] for v in self.variables() if v[0] in axes}

    def total_degree(self) -> int:
        return max((mono_degree(m) for m in self._terms), default=-1)

    def sorted_terms(self):
        return sorted(self._terms.items(), key=lambda t: mono_key(t[0]))

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other) -> "MPoly":
        if isinstance(other, MPoly):
            return other
        return MPoly.const(other)

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        if len(self._terms) < len(other._terms):
            small, big = self._terms, other._terms
        else:
            small, big = other._terms, self._terms
        out = dict(big)
        for m, c in small.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = _norm(s)
            else:
                out.pop(m, None)
        return MPoly._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return self._coerce(other) - self

    def scale(self, c) -> "MPoly":
        c = as_number(c)
        if c == 0:
            return MPoly()
        return MPoly._raw({m: _norm(k * c) for m, k in self._terms.items()})

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        out: Dict[Monomial, Number] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return MPoly({m: c for m, c in out.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "MPoly":
        if k < 0:
            raise ValueError("negative powers are not polynomials")
        result = MPoly.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def mul_monomial(self, mono: Monomial, c=1) -> "MPoly":
        """Multiply by ``c * mono``; cheaper than a general product."""
        c = as_number(c)
        if c == 0:
            return MPoly()
        return MPoly._raw({mono_mul(m, mono): _norm(k * c) for m, k in self._terms.items()})

    # -- calculus and reductions -----------------------------------------
    def partial(self, v: Var) -> "MPoly":
        out: Dict[Monomial, Number] = {}
        for m, c in self._terms.items():
            for pos, (w, e) in enumerate(m):
                if w == v:
                    if e == 1:
                        nm = m[:pos] + m[pos + 1:]
                    else:
                        nm = m[:pos] + ((w, e - 1),) + m[pos + 1:]
                    out[nm] = out.get(nm, 0) + c * e
                    break
        return MPoly({m: c for m, c in out.items()})

    def del_op(self, index_range: Iterable[int]) -> "MPoly":
        """Sum of partial derivatives in ``x_i`` and ``y_i`` for i in ``index_range``."""
        live = set(index_range)
        out: Dict[Monomial, Number] = {}
        for m, c in self._terms.items():
            for pos, (w, e) in enumerate(m):
                if w[0] > Y or w[1] not in live:
                    continue
                if e == 1:
                    nm = m[:pos] + m[pos + 1:]
                else:
                    nm = m[:pos] + ((w, e - 1),) + m[pos + 1:]
                out[nm] = out.get(nm, 0) + c * e
        return MPoly({m: c for m, c in out.items()})

    def specialize(self, v: Var, a) -> "MPoly":
        return self.substitute({v: a})

    def substitute(self, values: Mapping[Var, object]) -> "MPoly":
        """Replace variables by exact numbers (simultaneously)."""
        vals = {v: as_number(a) for v, a in values.items()}
        out: Dict[Monomial, Number] = {}
        for m, c in self._terms.items():
            keep = []
            for w, e in m:
                if w in vals:
                    c = c * vals[w] ** e
                    if c == 0:
                        break
                else:
                    keep.append((w, e))
            if c == 0:
                continue
            nm = tuple(keep)
            out[nm] = out.get(nm, 0) + c
        return MPoly({m: c for m, c in out.items()})

    def specialize_axis(self, axis: int, a) -> "MPoly":
        return self.substitute({v: a for v in self.variables() if v[0] == axis})

    def rename(self, mapping) -> "MPoly":
        """Rename variables by ``mapping(var) -> var``; merged variables add exponents."""
        out: Dict[Monomial, Number] = {}
        for m, c in self._terms.items():
            d: Dict[Var, int] = {}
            for w, e in m:
                t = mapping(w)
                d[t] = d.get(t, 0) + e
            nm = tuple(sorted(d.items()))
            out[nm] = out.get(nm, 0) + c
        return MPoly({m: c for m, c in out.items()})

    def diagonalize(self, axis: int) -> "MPoly":
        return self.rename(lambda w: (w[0], 1) if w[0] == axis else w)

    def shift_indices(self, delta: int) -> "MPoly":
        for v in self.variables():
            if v[1] + delta < 1:
                raise ValueError(
                    f"shifting {var_name(v)} by {delta} leaves index < 1")
        return self.rename(lambda w: (w[0], w[1] + delta))

    def is_multiaffine(self, axes: Iterable[int] = (X, Y, Q, U, V)) -> bool:
        axes = set(axes)
        return all(e <= 1 for m in self._terms for w, e in m if w[0] in axes)

    # -- evaluation -------------------------------------------------------
    def eval_complex(self, assignment: Mapping[Var, complex]) -> complex:
        """Double-precision evaluation; every variable of the polynomial must be assigned."""
        missing = self.variables() - set(assignment)
        if missing:
            names = ", ".join(sorted(var_name(v) for v in missing))
            raise KeyError(f"no value assigned to {names}")
        total = 0j
        for m, c in self._terms.items():
            t = complex(c)
            for w, e in m:
                t *= complex(assignment[w]) ** e
            total += t
        return total

    def eval_exact(self, assignment: Mapping[Var, object]) -> Number:
        p = self.substitute(assignment)
        if p.variables():
            names = ", ".join(sorted(var_name(v) for v in p.variables()))
            raise KeyError(f"no value assigned to {names}")
        return p.coeff(ONE_MONOMIAL)

    # -- rendering --------------------------------------------------------
    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (m, c) in enumerate(self.sorted_terms()):
            neg = c < 0
            a = -c if neg else c
            factors = [var_name(w) if e == 1 else f"{var_name(w)}^{e}" for w, e in m]
            if a != 1 or not factors:
                factors.insert(0, str(a))
            body = "*".join(factors)
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"m": {var_name(w): e for w, e in m}, "c": str(c)}
                for m, c in self.sorted_terms()
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, data: dict) -> "MPoly":
        out: Dict[Monomial, Number] = {}
        for term in data["terms"]:
            m = tuple(sorted((parse_var(k), int(e)) for k, e in term["m"].items() if int(e)))
            out[m] = out.get(m, 0) + as_number(str(term["c"]))
        return cls(out)

    @classmethod
    def from_json(cls, text: str) -> "MPoly":
        return cls.from_dict(json.loads(text))

    def __repr__(self) -> str:
        return f"MPoly({self.to_text()!r})"

    __str__ = to_text


_TERM_RE = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse(text: str) -> MPoly:
    """Parse the canonical text form (``2*x3*y3 + x2^2 - 1/2*q1``).

    Juxtaposition is not supported; factors must be joined with ``*``.
    """
    text = text.strip()
    if text == "0":
        return MPoly()
    result: Dict[Monomial, Number] = {}
    pos = 0
    while pos < len(text):
        m = _TERM_RE.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        coeff: Number = sign
        vs: Dict[Var, int] = {}
        for factor in m.group(2).strip().split("*"):
            factor = factor.strip()
            if not factor:
                raise ValueError(f"empty factor in {text!r}")
            if factor[0].isdigit():
                coeff = coeff * as_number(factor)
                continue
            name, _, exp = factor.partition("^")
            v = parse_var(name)
            vs[v] = vs.get(v, 0) + (int(exp) if exp else 1)
        mono = tuple(sorted(vs.items()))
        result[mono] = result.get(mono, 0) + coeff
        pos = m.end()
    return MPoly(result)


def xs(i: int) -> MPoly:
    return MPoly.variable(X, i)


def ys(i: int) -> MPoly:
    return MPoly.variable(Y, i)


def qs(i: int) -> MPoly:
    return MPoly.variable(Q, i)
