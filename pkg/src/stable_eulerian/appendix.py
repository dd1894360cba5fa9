"""The printed list of small multivariate Eulerian polynomials, as golden data.

``PRINTED`` holds the polynomials exactly as published.  Two entries
(Ã₂, Ã₃) carry coefficient 2 where the factorisation
``(n+1) x_{n+1} y_{n+1} A_{n-1}`` and direct enumeration both give
``n + 1``; they are kept verbatim and flagged in ``KNOWN_ERRATA``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from . import eulerian
from .eulerian import FamilySpec
from .multipoly import MPoly, parse


@dataclass(frozen=True)
class GoldenEntry:
    name: str
    printed: str
    spec: FamilySpec

    @property
    def polynomial(self) -> MPoly:
        return parse(self.printed)

    def recurrence(self) -> MPoly:
        return eulerian.recurrence(self.spec)

    def brute_force(self) -> Optional[MPoly]:
        if self.spec.family == "A" and self.spec.n == 0:
            return MPoly.const(1)  # Sym(1): the empty product
        return eulerian.brute_force(self.spec)


PRINTED: List[GoldenEntry] = [
    GoldenEntry("A_0", "1", FamilySpec("A", 0)),
    GoldenEntry("A_1", "x2 + y2", FamilySpec("A", 1)),
    GoldenEntry("A_2", "x2*x3 + x3*y2 + x2*y3 + 2*x3*y3 + y2*y3", FamilySpec("A", 2)),
    GoldenEntry("B_1", "x1 + y1", FamilySpec("B", 1)),
    GoldenEntry("B_2", "x1*x2 + x2*y1 + x1*y2 + 4*x2*y2 + y1*y2", FamilySpec("B", 2)),
    GoldenEntry("B_1(q)", "q1*x1 + y1", FamilySpec("B", 1, q="sym")),
    GoldenEntry("B_2(q)",
                "q1^2*x1*x2 + q1*x2*y1 + q1*x1*y2 + x2*y2 + 2*q1*x2*y2 + q1^2*x2*y2 + y1*y2",
                FamilySpec("B", 2, q="sym")),
    GoldenEntry("AffA_1", "2*x2*y2", FamilySpec("AffA", 1)),
    GoldenEntry("AffA_2", "2*x2*x3*y3 + 2*x3*y2*y3", FamilySpec("AffA", 2)),
    GoldenEntry("AffA_3",
                "2*x2*x3*x4*y4 + 2*x3*x4*y2*y4 + 2*x2*x4*y3*y4 + 4*x3*x4*y3*y4 + 2*x4*y2*y3*y4",
                FamilySpec("AffA", 3)),
    GoldenEntry("AffC_1", "2*x1*y1", FamilySpec("AffC", 1)),
    GoldenEntry("AffC_2", "4*x1*x2*y2 + 4*x2*y1*y2", FamilySpec("AffC", 2)),
    GoldenEntry("AffC_3",
                "8*x1*x2*x3*y3 + 8*x2*x3*y1*y3 + 8*x1*x3*y2*y3 + 16*x2*x3*y2*y3 + 8*x3*y1*y2*y3",
                FamilySpec("AffC", 3)),
]

BY_NAME: Dict[str, GoldenEntry] = {e.name: e for e in PRINTED}

# printed coefficient 2 should be n + 1
KNOWN_ERRATA = {
    "AffA_2": "3*x2*x3*y3 + 3*x3*y2*y3",
    "AffA_3": "4*x2*x3*x4*y4 + 4*x3*x4*y2*y4 + 4*x2*x4*y3*y4 + 8*x3*x4*y3*y4 + 4*x4*y2*y3*y4",
}

D3STAR_PRINTED = ("x2^2*x3 + 2*x2*x3*y2 + x3*y2^2 + x2^2*y3 + 4*x2*x3*y3 + 4*x3^2*y3"
                  " + 2*x2*y2*y3 + 4*x3*y2*y3 + y2^2*y3 + 4*x3*y3^2")

D3_PRINTED = ("x1*x2*x3 + x2*x3*y1 + x1*x3*y2 + x3*y1*y2 + x1*x2*y3 + x2*y1*y3 + x1*y2*y3"
              " + y1*y2*y3 + 4*x2*x3*y2 + 4*x1*x3*y3 + 4*x2*y2*y3 + 4*x3*y1*y3")
D3X_PRINTED = "1 + x1 + x1*x2 + x1*x2*x3 + 5*x2 + 5*x3 + 5*x1*x3 + 5*x2*x3"


def d2_printed() -> MPoly:
    return (parse("x1 + y1")) * parse("x2 + y2")


def appendix_rows() -> List[dict]:
    """Recomputed polynomials alongside the printed ones, for export."""
    rows = []
    for e in PRINTED:
        rec = e.recurrence()
        brute = e.brute_force()
        rows.append({
            "name": e.name,
            "family": e.spec.family,
            "n": e.spec.n,
            "q": None if e.spec.q is None else str(e.spec.q),
            "printed": e.polynomial.to_text(),
            "recurrence": rec.to_text(),
            "bruteForce": brute.to_text() if brute is not None else None,
            "matchesPrinted": rec == e.polynomial and (brute is None or brute == e.polynomial),
            "erratum": e.name in KNOWN_ERRATA,
            "json": rec.to_dict(),
        })
    return rows


# sign patterns of D_3 in the order the table lists them
_TABLE1_SIGNS = ((1, 1, 1), (-1, -1, 1), (-1, 1, -1), (1, -1, -1))


def _columns(seq) -> Tuple[str, str, int]:
    """Slot-0 kind (X/Y), the full descent/ascent-top monomial, descent count."""
    kinds, factors = [], []
    for a, b in zip(seq, seq[1:]):
        top = max(abs(a), abs(b))
        kinds.append("X" if a > b else "Y")
        factors.append(f"{'x' if a > b else 'y'}{top}")
    mono = MPoly.const(1)
    for f in factors:
        mono = mono * parse(f)
    return kinds[0], mono.to_text(), kinds.count("X")


def table1_rows() -> List[dict]:
    """B-statistics (sigma_0 = 0) and D*-statistics (sigma_0 = -sigma_2) over D_3."""
    rows = []
    for perm in itertools.permutations((1, 2, 3)):
        for signs in _TABLE1_SIGNS:
            w = tuple(p * s for p, s in zip(perm, signs))
            b0, bmono, bdes = _columns((0,) + w)
            d0, dmono, ddes = _columns((-w[1],) + w)
            rows.append({"element": ",".join(map(str, w)),
                         "bSlot0": b0, "bMonomial": bmono, "bDescents": bdes,
                         "dSlot0": d0, "dMonomial": dmono, "dDescents": ddes})
    return rows
