"""Coloured permutations and their descent-top / ascent-top statistics.

Elements of ``G(n, r) = Z_r wr Sym(n)`` are stored in window notation as a
tuple of values (a permutation of ``1..n``) and an aligned tuple of colours
in ``0..r-1``.  For ``r = 2`` colour 1 means a negative entry, so a signed
permutation ``(3, 1, -4)`` is ``values=(3, 1, 4), colors=(0, 0, 1)``.
"""
from __future__ import annotations

import csv
import itertools
import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterator, Optional, Sequence, Tuple


@dataclass(frozen=True)
class ColoredPerm:
    values: Tuple[int, ...]
    colors: Tuple[int, ...]
    r: int = 1

    def __post_init__(self):
        n = len(self.values)
        if sorted(self.values) != list(range(1, n + 1)):
            raise ValueError(f"{self.values} is not a permutation of 1..{n}")
        if len(self.colors) != n:
            raise ValueError("colors must align with values")
        if self.r < 1 or any(not 0 <= e < self.r for e in self.colors):
            raise ValueError(f"colors must lie in 0..{self.r - 1}")

    @property
    def n(self) -> int:
        return len(self.values)

    @classmethod
    def from_perm(cls, values: Sequence[int]) -> "ColoredPerm":
        values = tuple(values)
        return cls(values, (0,) * len(values), 1)

    @classmethod
    def from_signed(cls, entries: Sequence[int]) -> "ColoredPerm":
        return cls(tuple(abs(v) for v in entries),
                   tuple(1 if v < 0 else 0 for v in entries), 2)

    def signed(self) -> Tuple[int, ...]:
        if self.r > 2:
            raise ValueError("signed form only exists for r <= 2")
        return tuple(-v if e else v for v, e in zip(self.values, self.colors))

    @property
    def n_count(self) -> int:
        """Number of coloured (for r=2: negative) entries."""
        return sum(1 for e in self.colors if e)

    def __str__(self) -> str:
        return format_element(self)


def format_element(s: ColoredPerm) -> str:
    """``3,-1,-4`` for r <= 2 and ``3,z2^1,z4^3`` style for larger r."""
    if s.r <= 2:
        return ",".join(str(v) for v in s.signed())
    return ",".join(str(v) if e == 0 else f"z{v}^{e}" for v, e in zip(s.values, s.colors))


@dataclass(frozen=True)
class StatRecord:
    dt: FrozenSet[int]
    at: FrozenSet[int]
    neg_exp: Dict[int, int] = field(default_factory=dict, compare=False, hash=False)
    n_count: int = 0


def letter_key(value: int, color: int, r: int) -> int:
    """Integer key realising the total order on coloured letters.

    Coloured letters sit below 0, first by larger value, then by larger
    exponent; uncoloured letters sit above 0 in natural order.  Zero is
    ``letter_key(0, 0, r)``.
    """
    if color == 0:
        return value
    return -(value * r + color)


def colored_less(a: Tuple[int, int], b: Tuple[int, int], r: int) -> bool:
    """Compare ``(value, color)`` letters; ``(0, 0)`` is the letter 0."""
    return letter_key(a[0], a[1], r) < letter_key(b[0], b[1], r)


def group_order(n: int, r: int) -> int:
    return r ** n * math.factorial(n)


def enumerate_group(n: int, r: int = 1, start: int = 0,
                    stop: Optional[int] = None) -> Iterator[ColoredPerm]:
    """All ``r**n * n!`` elements in lexicographic order on (values, colors).

    ``start``/``stop`` slice the underlying permutation index range so
    disjoint chunks can be consumed independently.
    """
    if n < 1 or r < 1:
        raise ValueError("need n >= 1 and r >= 1")
    perms = itertools.islice(itertools.permutations(range(1, n + 1)), start, stop)
    color_vectors = list(itertools.product(range(r), repeat=n))
    for values in perms:
        for colors in color_vectors:
            yield ColoredPerm(values, colors, r)


def enumerate_d(n: int) -> Iterator[ColoredPerm]:
    """Signed permutations with an even number of negative entries."""
    if n < 2:
        raise ValueError("type D needs n >= 2")
    for s in enumerate_group(n, 2):
        if s.n_count % 2 == 0:
            yield s


# -- raw statistics on tuples (hot paths) ------------------------------------

def tops_a(values: Sequence[int]) -> Tuple[int, int]:
    """Descent-top and ascent-top bitmasks of a permutation in one-line notation."""
    dt = at = 0
    for a, b in zip(values, values[1:]):
        if a > b:
            dt |= 1 << a
        else:
            at |= 1 << b
    return dt, at


def tops_colored(values: Sequence[int], colors: Sequence[int], r: int) -> Tuple[int, int]:
    """Bitmasks with sigma_0 = 0 prepended, compared in the coloured order."""
    dt = at = 0
    prev_key, prev_abs = 0, 0
    for v, e in zip(values, colors):
        k = v if e == 0 else -(v * r + e)
        top = v if v > prev_abs else prev_abs
        if prev_key > k:
            dt |= 1 << top
        else:
            at |= 1 << top
        prev_key, prev_abs = k, v
    return dt, at


def _set(mask: int) -> FrozenSet[int]:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


# -- public statistics --------------------------------------------------------

def stats_a(s: ColoredPerm) -> StatRecord:
    if s.r != 1:
        raise ValueError("type A statistics need r = 1")
    dt, at = tops_a(s.values)
    return StatRecord(_set(dt), _set(at))


def _neg(s: ColoredPerm) -> Dict[int, int]:
    return {v: e for v, e in zip(s.values, s.colors) if e}


def stats_colored(s: ColoredPerm) -> StatRecord:
    dt, at = tops_colored(s.values, s.colors, s.r)
    return StatRecord(_set(dt), _set(at), _neg(s), s.n_count)


def affine_stats_a(s: ColoredPerm) -> StatRecord:
    if s.r != 1:
        raise ValueError("affine type A statistics need r = 1")
    dt, at = tops_a(s.values)
    first, last = s.values[0], s.values[-1]
    if last > first:
        dt |= 1 << last
    else:
        at |= 1 << first
    return StatRecord(_set(dt), _set(at))


def affine_stats_c(s: ColoredPerm) -> StatRecord:
    if s.r != 2:
        raise ValueError("affine type C statistics need r = 2")
    dt, at = tops_colored(s.values, s.colors, 2)
    last = s.values[-1]
    if s.colors[-1] == 0:
        dt |= 1 << last
    else:
        at |= 1 << last
    return StatRecord(_set(dt), _set(at), _neg(s), s.n_count)


def tops_dstar(signed: Sequence[int]) -> Tuple[Dict[int, int], Dict[int, int]]:
    """Naive type D tops with sigma_0 = -sigma_2, as exponent multisets.

    The slot-0 top max(|sigma_2|, |sigma_1|) can repeat a later top, so the
    result is a multiset rather than a set.
    """
    seq = [-signed[1]] + list(signed)
    dt: Dict[int, int] = {}
    at: Dict[int, int] = {}
    for a, b in zip(seq, seq[1:]):
        top = max(abs(a), abs(b))
        bucket = dt if a > b else at
        bucket[top] = bucket.get(top, 0) + 1
    return dt, at


def descent_count_b(s: ColoredPerm) -> int:
    seq = (0,) + s.signed()
    return sum(1 for a, b in zip(seq, seq[1:]) if a > b)


def descent_count_d(s: ColoredPerm) -> int:
    if s.n < 2:
        raise ValueError("type D needs n >= 2")
    w = s.signed()
    seq = (-w[1],) + w
    return sum(1 for a, b in zip(seq, seq[1:]) if a > b)


def export_csv(elements, stats, path) -> int:
    """Write ``element, dt, at, negExp`` rows; returns the number of rows."""
    rows = 0
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["element", "dt", "at", "negExp"])
        for s in elements:
            rec = stats(s)
            w.writerow([
                format_element(s),
                " ".join(map(str, sorted(rec.dt))),
                " ".join(map(str, sorted(rec.at))),
                " ".join(f"{v}:{e}" for v, e in sorted(rec.neg_exp.items())),
            ])
            rows += 1
    return rows
