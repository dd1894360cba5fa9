from __future__ import annotations

import csv
import re
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stable_eulerian import appendix, coxeter
from stable_eulerian.coxeter import ColoredPerm, colored_less
from stable_eulerian.multipoly import MPoly, parse


def perm(*vals):
    return ColoredPerm.from_perm(vals)


def signed(*vals):
    return ColoredPerm.from_signed(vals)


class TestColoredPerm:
    def test_rejects_non_permutation(self):
        with pytest.raises(ValueError):
            ColoredPerm((1, 1), (0, 0), 1)

    def test_rejects_bad_colour(self):
        with pytest.raises(ValueError):
            ColoredPerm((1, 2), (0, 2), 2)

    def test_signed_roundtrip(self):
        s = signed(3, -1, -4, 2)
        assert s.signed() == (3, -1, -4, 2)
        assert s.n_count == 2

    def test_format(self):
        assert coxeter.format_element(signed(3, -1, -4, 2, 5)) == "3,-1,-4,2,5"
        s = ColoredPerm((3, 1, 4, 5, 2), (0, 2, 2, 4, 1), 5)
        assert str(s) == "3,z1^2,z4^2,z5^4,z2^1"


class TestEnumeration:
    @pytest.mark.parametrize("n,r,count", [(2, 2, 8), (3, 3, 162), (3, 1, 6), (4, 2, 384)])
    def test_counts(self, n, r, count):
        elems = list(coxeter.enumerate_group(n, r))
        assert len(elems) == count == coxeter.group_order(n, r)
        assert len(set(elems)) == count

    @pytest.mark.parametrize("n,r", [(5, 2), (4, 3), (5, 1)])
    def test_chunks_partition(self, n, r):
        full = list(coxeter.enumerate_group(n, r))
        pieces = []
        for start in range(0, 120, 7):
            pieces.extend(coxeter.enumerate_group(n, r, start, start + 7))
        assert pieces == full

    def test_type_d(self):
        assert len(list(coxeter.enumerate_d(2))) == 4
        d3 = list(coxeter.enumerate_d(3))
        assert len(d3) == 24
        assert all(s.n_count % 2 == 0 for s in d3)

    def test_d_and_coset_equal_size(self):
        parity = Counter(s.n_count % 2 for s in coxeter.enumerate_group(4, 2))
        assert parity[0] == parity[1] == 192


class TestOrder:
    def test_mixed_colour_chain(self):
        # zeta^4 5 < zeta 2, and zeta^2 4 > zeta^4 5 (r = 5)
        assert colored_less((5, 4), (2, 1), 5)
        assert colored_less((5, 4), (4, 2), 5)

    def test_zero_position(self):
        assert colored_less((0, 0), (1, 0), 3)
        assert colored_less((1, 1), (0, 0), 3)

    def test_exponent_breaks_ties(self):
        assert colored_less((1, 2), (1, 1), 3)

    def test_signed_order_is_integer_order(self):
        letters = [(v, c) for v in range(1, 5) for c in (0, 1)] + [(0, 0)]
        as_int = {(v, c): (-v if c else v) for v, c in letters}
        for a in letters:
            for b in letters:
                assert colored_less(a, b, 2) == (as_int[a] < as_int[b])


class TestStatistics:
    def test_type_a_example(self):
        rec = coxeter.stats_a(perm(3, 1, 4, 5, 2))
        assert rec.dt == {3, 5} and rec.at == {4, 5}

    def test_type_a_identity(self):
        rec = coxeter.stats_a(perm(1, 2, 3, 4))
        assert rec.dt == set() and rec.at == {2, 3, 4}

    def test_type_a_transposition(self):
        rec = coxeter.stats_a(perm(2, 1))
        assert rec.dt == {2} and rec.at == set()

    def test_type_b_example(self):
        rec = coxeter.stats_colored(signed(3, 1, -4, -5, 2))
        assert rec.dt == {3, 4, 5} and rec.at == {3, 5}
        assert rec.n_count == 2 and rec.neg_exp == {4: 1, 5: 1}

    def test_coloured_example(self):
        s = ColoredPerm((3, 1, 4, 5, 2), (0, 2, 2, 4, 1), 5)
        rec = coxeter.stats_colored(s)
        assert rec.dt == {3, 4, 5} and rec.at == {3, 5}
        assert sum(rec.neg_exp.values()) == 9

    def test_type_b_all_positive(self):
        rec = coxeter.stats_colored(signed(1, 2, 3))
        assert rec.dt == set() and rec.at == {1, 2, 3}

    def test_descent_counts(self):
        assert coxeter.descent_count_d(signed(-1, -2)) == 2
        assert coxeter.descent_count_b(signed(1, 2, 3, 4)) == 0
        assert coxeter.descent_count_b(signed(-2, -1)) == 1

    def test_affine_a(self):
        rec = coxeter.affine_stats_a(perm(2, 3, 1))
        assert rec.dt == {3} and rec.at == {2, 3}
        rec = coxeter.affine_stats_a(perm(1, 2))
        assert rec.dt == {2} and rec.at == {2}

    def test_affine_a_sum(self):
        total = MPoly()
        for s in coxeter.enumerate_group(2, 1):
            rec = coxeter.affine_stats_a(s)
            total = total + MPoly.monomial([(0, i) for i in rec.dt] + [(1, i) for i in rec.at])
        assert total == parse("2*x2*y2")

    def test_affine_c(self):
        for s in (signed(1), signed(-1)):
            rec = coxeter.affine_stats_c(s)
            assert rec.dt == {1} and rec.at == {1}

    def test_affine_c_sum(self):
        total = MPoly()
        for s in coxeter.enumerate_group(2, 2):
            rec = coxeter.affine_stats_c(s)
            total = total + MPoly.monomial([(0, i) for i in rec.dt] + [(1, i) for i in rec.at])
        assert total == parse("4*x1*x2*y2 + 4*x2*y1*y2")

    @settings(max_examples=80, deadline=None)
    @given(st.permutations(range(1, 7)))
    def test_type_a_tops(self, p):
        rec = coxeter.stats_a(perm(*p))
        assert 1 not in rec.dt
        assert rec.dt | rec.at <= set(range(2, 7))
        descents = sum(a > b for a, b in zip(p, p[1:]))
        assert len(rec.dt) == descents  # descent tops are distinct letters

    @settings(max_examples=80, deadline=None)
    @given(st.permutations(range(1, 6)), st.lists(st.integers(0, 1), min_size=5, max_size=5))
    def test_type_b_slots(self, p, colors):
        s = ColoredPerm(tuple(p), tuple(colors), 2)
        rec = coxeter.stats_colored(s)
        # each of the n slots is a descent or an ascent; tops are distinct per kind
        assert len(rec.dt) == coxeter.descent_count_b(s)
        assert len(rec.dt) + len(rec.at) == 5
        assert rec.n_count == sum(rec.neg_exp.values())


# printed Table 1: element, B column, D column (slot-0 letter then the remaining tops)
TABLE1_PRINTED = """
123 Yy2y3 Yy2y3 | -1-23 Xx2y3 Xy2y3 | -12-3 Xy2x3 Yy2x3 | 1-2-3 Yy2x3 Xy2x3
132 Yy3x3 Yy3x3 | -1-32 Xx3y3 Xx3y3 | -13-2 Xy3x3 Yy3x3 | 1-3-2 Yx3y3 Xx3y3
213 Yx2y3 Yx2y3 | -2-13 Xy2y3 Xy2y3 | -21-3 Xy2x3 Xy2x3 | 2-1-3 Yx2x3 Yx2x3
231 Yy3x3 Yy3x3 | -2-31 Xx3y3 Xx3y3 | -23-1 Xy3x3 Yy3x3 | 2-3-1 Yx3y3 Xx3y3
312 Yx3y2 Yx3y2 | -3-12 Xy3y2 Xy3y2 | -31-2 Xy3x2 Yy3x2 | 3-1-2 Yx3x2 Xx3x2
321 Yx3x2 Yx3x2 | -3-21 Xy3y2 Xy3y2 | -32-1 Xy3x2 Xy3x2 | 3-2-1 Yx3y2 Yx3y2
"""

# cells whose printed value contradicts the stated rules (one slot each)
TABLE1_MISPRINTS = {("1,-2,-3", "B"), ("-1,-2,3", "D"), ("1,-2,-3", "D"),
                    ("-3,1,-2", "D"), ("3,-1,-2", "D")}


def _printed_rows():
    for line in TABLE1_PRINTED.strip().splitlines():
        for cell in line.split("|"):
            elem, b, d = cell.split()
            w = ",".join(re.findall(r"-?\d", elem))
            yield w, b, d


def _cell(slot0: str, monomial: str):
    """Printed form ``X`` + tops of slots 1..n-1, compared as a multiset."""
    return slot0, Counter(re.findall(r"[xy]\d", monomial))


class TestTable1:
    def test_24_rows_cover_d3(self):
        rows = appendix.table1_rows()
        assert len(rows) == 24
        got = {tuple(int(t) for t in r["element"].split(",")) for r in rows}
        assert got == {s.signed() for s in coxeter.enumerate_d(3)}

    def test_against_printed(self):
        rows = {r["element"]: r for r in appendix.table1_rows()}
        mismatches = set()
        for w, b, d in _printed_rows():
            row = rows[w]
            for col, printed in (("B", b), ("D", d)):
                mono = parse(row[f"{col.lower()}Monomial"])
                # drop the slot-0 factor: it is rendered as X/Y in the table
                seq = [int(t) for t in w.split(",")]
                first = seq[0]
                slot0_top = abs(first) if col == "B" else max(abs(seq[1]), abs(first))
                letter = "x" if row[f"{col.lower()}Slot0"] == "X" else "y"
                (m, _), = mono.items()
                counts = Counter()
                for (axis, i), e in m:
                    counts[f"{'xy'[axis]}{i}"] += e
                counts[f"{letter}{slot0_top}"] -= 1
                counts = +counts
                if (row[f"{col.lower()}Slot0"], counts) != _cell(printed[0], printed[1:]):
                    mismatches.add((w, col))
        assert mismatches == TABLE1_MISPRINTS

    def test_d_column_sums_to_dstar(self):
        total = sum((parse(r["dMonomial"]) for r in appendix.table1_rows()), MPoly())
        assert total == parse(appendix.D3STAR_PRINTED)

    def test_b_column_sums_to_b_statistics_over_d3(self):
        total = sum((parse(r["bMonomial"]) for r in appendix.table1_rows()), MPoly())
        want = MPoly()
        for s in coxeter.enumerate_d(3):
            rec = coxeter.stats_colored(s)
            want = want + MPoly.monomial([(0, i) for i in rec.dt] + [(1, i) for i in rec.at])
        assert total == want


def test_export_csv(tmp_path):
    path = tmp_path / "b2.csv"
    n = coxeter.export_csv(coxeter.enumerate_group(2, 2), coxeter.stats_colored, path)
    assert n == 8
    with open(path) as fh:
        rows = list(csv.DictReader(fh))
    assert rows[0].keys() == {"element", "dt", "at", "negExp"}
    by_elem = {r["element"]: r for r in rows}
    assert by_elem["-2,1"]["dt"] == "2" and by_elem["-2,1"]["negExp"] == "2:1"
