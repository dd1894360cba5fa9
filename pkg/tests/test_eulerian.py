from __future__ import annotations

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stable_eulerian import eulerian
from stable_eulerian.eulerian import FamilySpec, brute_force, recurrence, univariate
from stable_eulerian.multipoly import MPoly, Q, X, Y, parse
from stable_eulerian.upoly import UPoly


def ones(p: MPoly):
    return p.substitute({v: 1 for v in p.variables()}).coeff(())


class TestFamilySpec:
    @pytest.mark.parametrize("family,n", [("D", 1), ("AffB", 1), ("DStar", 1), ("A", -1), ("B", 0)])
    def test_rank_bounds(self, family, n):
        with pytest.raises(ValueError):
            FamilySpec(family, n)

    def test_r_only_for_g(self):
        with pytest.raises(ValueError):
            FamilySpec("B", 2, r=3)
        assert FamilySpec("G", 2, r=3).colors == 3

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            FamilySpec("E", 6)

    def test_parse_qmode(self):
        assert eulerian.parse_qmode(None) is None
        assert eulerian.parse_qmode("sym") == "sym"
        assert eulerian.parse_qmode("1/2") == Fraction(1, 2)
        assert eulerian.parse_qmode("-1") == -1


class TestTypeA:
    def test_base(self):
        assert eulerian.rec_a(0) == MPoly.const(1)
        assert eulerian.rec_a(1) == parse("x2 + y2")

    def test_a2_brute(self):
        want = parse("x2*x3 + x3*y2 + x2*y3 + 2*x3*y3 + y2*y3")
        assert brute_force(FamilySpec("A", 2)) == want == eulerian.rec_a(2)

    @pytest.mark.parametrize("n", range(1, 7))
    def test_rec_equals_brute(self, n):
        assert eulerian.rec_a(n) == brute_force(FamilySpec("A", n))

    def test_univariate_eulerian_numbers(self):
        assert univariate(eulerian.rec_a(2)) == UPoly([1, 4, 1])
        assert univariate(eulerian.rec_a(3)) == UPoly([1, 11, 11, 1])

    @pytest.mark.parametrize("n", range(1, 8))
    def test_diagonal_recurrence(self, n):
        full = eulerian.rec_a(n).diagonalize(X).diagonalize(Y)
        assert eulerian.rec_a(n, diagonal=True) == full

    @pytest.mark.parametrize("n", range(0, 8))
    def test_shape(self, n):
        p = eulerian.rec_a(n)
        assert ones(p) == math.factorial(n + 1)
        assert p.is_multiaffine((X, Y))
        assert all(sum(e for _, e in m) == n for m in p)


class TestTypeBG:
    def test_b1(self):
        assert eulerian.rec_g(1, 2, "sym") == parse("q1*x1 + y1")

    def test_b2_sym(self):
        want = parse("q1^2*x1*x2 + q1*x2*y1 + q1*x1*y2 + x2*y2 + 2*q1*x2*y2 + q1^2*x2*y2 + y1*y2")
        assert eulerian.rec_g(2, 2, "sym") == want
        assert brute_force(FamilySpec("B", 2, q="sym")) == want

    def test_g_2_3_multisym(self):
        spec = FamilySpec("G", 2, 3, "multisym")
        assert recurrence(spec) == brute_force(spec)

    @pytest.mark.parametrize("n,r", [(3, 1), (3, 2), (3, 3), (4, 2), (3, 4), (4, 3)])
    def test_multisym_oracle(self, n, r):
        spec = FamilySpec("G", n, r, "multisym")
        assert recurrence(spec) == brute_force(spec)

    @pytest.mark.parametrize("q", [0, Fraction(1, 2), 2, -1])
    def test_rational_q(self, q):
        spec = FamilySpec("B", 3, q=q)
        assert recurrence(spec) == brute_force(spec)

    def test_q_minus_one_example(self):
        assert eulerian.rec_g(2, 2, -1) == eulerian.difference_product(2)

    def test_q_zero_note(self):
        for n in range(2, 6):
            b0 = eulerian.rec_g(n, 2, 0)
            assert b0 != eulerian.rec_a(n - 1)
            assert univariate(b0) == univariate(eulerian.rec_a(n - 1))

    @pytest.mark.parametrize("n", range(1, 7))
    def test_b_shape(self, n):
        p = eulerian.rec_g(n, 2, None)
        assert ones(p) == 2 ** n * math.factorial(n)
        assert p.is_multiaffine((X, Y))
        assert all(sum(e for _, e in m) == n for m in p)

    @pytest.mark.parametrize("n,r", [(4, 3), (5, 2)])
    def test_diagonal_g(self, n, r):
        assert eulerian.rec_g(n, r, "sym", diagonal=True) == \
            eulerian.rec_g(n, r, "sym").diagonalize(X).diagonalize(Y)

    def test_brenti_b_q(self):
        # sum over B_3 of q^{neg} x^{des}, from the descent table
        got = eulerian.bivariate_q(eulerian.rec_g(3, 2, "sym"))
        want = MPoly()
        for s in eulerian.coxeter.enumerate_group(3, 2):
            d = eulerian.coxeter.descent_count_b(s)
            want = want + MPoly.monomial([(X, 1)] * d + [(Q, 1)] * s.n_count)
        assert got == want


class TestAffine:
    def test_affine_a_small(self):
        assert eulerian.affine_a(1) == parse("2*x2*y2")
        assert eulerian.affine_a(2) == parse("3*x2*x3*y3 + 3*x3*y2*y3")

    @pytest.mark.parametrize("n", range(1, 6))
    def test_affine_a_brute(self, n):
        assert eulerian.affine_a(n) == brute_force(FamilySpec("AffA", n))

    def test_affine_a_univariate(self):
        want = UPoly()
        for s in eulerian.coxeter.enumerate_group(3, 1):
            w = s.values
            d = sum(a > b for a, b in zip(w, w[1:])) + (w[-1] > w[0])
            want = want + UPoly([0] * d + [1])
        assert univariate(eulerian.affine_a(2)) == want

    def test_affine_c_small(self):
        assert eulerian.rec_affine_c(1) == parse("2*x1*y1")
        assert eulerian.rec_affine_c(3) == parse(
            "8*x1*x2*x3*y3 + 8*x2*x3*y1*y3 + 8*x1*x3*y2*y3 + 16*x2*x3*y2*y3 + 8*x3*y1*y2*y3")

    @pytest.mark.parametrize("n", range(1, 6))
    def test_affine_c_brute_and_closed(self, n):
        rec = eulerian.rec_affine_c(n)
        assert rec == eulerian.affine_c_closed(n) == brute_force(FamilySpec("AffC", n))

    def test_affine_b_two(self):
        p = eulerian.affine_b(2)
        assert p == parse("4*x1*x2*y2 + 4*x2*y1*y2")
        assert all(c >= 0 for _, c in p.items())

    def test_affine_b_has_no_brute_force(self):
        with pytest.raises(ValueError):
            brute_force(FamilySpec("AffB", 2))


class TestTypeD:
    def test_d2(self):
        assert eulerian.d_multivariate(2) == parse("x1 + y1") * parse("x2 + y2")
        assert univariate(eulerian.d_multivariate(2)) == UPoly([1, 2, 1])

    def test_d3_block(self):
        p = eulerian.d_multivariate(3)
        for m in ("x2*x3*y2", "x1*x3*y3", "x2*y2*y3", "x3*y1*y3"):
            assert p.coeff(next(iter(parse(m)))) == 4
        assert len(p) == 12

    def test_dstar_printed(self):
        want = parse("x2^2*x3 + 2*x2*x3*y2 + x3*y2^2 + x2^2*y3 + 4*x2*x3*y3 + 4*x3^2*y3"
                     " + 2*x2*y2*y3 + 4*x3*y2*y3 + y2^2*y3 + 4*x3*y3^2")
        got = brute_force(FamilySpec("DStar", 3))
        assert got == want
        assert not got.is_multiaffine((X, Y))

    @pytest.mark.parametrize("n", range(2, 8))
    def test_d_univariate_matches_descent_count(self, n):
        assert univariate(eulerian.d_multivariate(n)) == eulerian.descent_polynomial("D", n)

    def test_chow_base(self):
        for n in (-1, 0, 1):
            assert eulerian.chow_d(n) == UPoly([1])
        assert eulerian.chow_d(2) == UPoly([1, 2, 1])

    @pytest.mark.parametrize("n", range(2, 8))
    def test_chow_brute(self, n):
        assert eulerian.chow_d(n) == eulerian.descent_polynomial("D", n)

    def test_chow_d5_direct(self):
        want = UPoly()
        for s in eulerian.coxeter.enumerate_d(5):
            want = want + UPoly([0] * eulerian.coxeter.descent_count_d(s) + [1])
        assert eulerian.chow_d(5) == want

    def test_b_statistics_over_d(self):
        # the D family: type-B tops summed over D_n, half of B_n's group order
        p = brute_force(FamilySpec("D", 3))
        assert ones(p) == 24


class TestDescentTables:
    @pytest.mark.parametrize("kind,n", [("A", 4), ("B", 4), ("D", 4), ("AffA", 3), ("AffC", 3)])
    def test_against_loop(self, kind, n):
        cx = eulerian.coxeter
        want = UPoly()
        if kind == "A":
            elems = cx.enumerate_group(n + 1, 1)
            count = lambda s: sum(a > b for a, b in zip(s.values, s.values[1:]))  # noqa: E731
        elif kind == "AffA":
            elems = cx.enumerate_group(n + 1, 1)
            count = lambda s: len(cx.affine_stats_a(s).dt)  # noqa: E731
        elif kind == "B":
            elems, count = cx.enumerate_group(n, 2), cx.descent_count_b
        elif kind == "AffC":
            elems = cx.enumerate_group(n, 2)
            count = lambda s: cx.descent_count_b(s) + (s.signed()[-1] > 0)  # noqa: E731
        else:
            elems, count = cx.enumerate_d(n), cx.descent_count_d
        for s in elems:
            want = want + UPoly([0] * count(s) + [1])
        assert eulerian.descent_polynomial(kind, n) == want


class TestIdentities:
    @pytest.mark.parametrize("n", range(1, 6))
    def test_q_minus_one(self, n):
        assert eulerian.rec_g(n, 2, -1) == eulerian.difference_product(n)

    @pytest.mark.parametrize("n,r", [(2, 3), (3, 4), (4, 5)])
    def test_root_of_unity(self, n, r):
        assert eulerian.root_of_unity_gap(n, r) < 1e-8

    @pytest.mark.parametrize("n", range(2, 7))
    def test_stembridge(self, n):
        d = eulerian.descent_polynomial("D", n)
        b = eulerian.descent_polynomial("B", n)
        a = eulerian.descent_polynomial("A", n - 2)
        assert d == b - UPoly([0, n * 2 ** (n - 1)]) * a

    def test_stembridge_n2(self):
        assert eulerian.descent_polynomial("D", 2) == UPoly([1, 2, 1])
        assert eulerian.descent_polynomial("B", 2) == UPoly([1, 6, 1])

    @pytest.mark.parametrize("n", range(2, 7))
    def test_prop_6_1(self, n):
        lhs = eulerian.descent_polynomial("AffC", n) * 2
        rhs = univariate(eulerian.affine_b(n)) + UPoly([0, 2 * n]) * eulerian.descent_polynomial("B", n - 1)
        assert lhs == rhs

    def test_reiner_n1(self):
        assert eulerian.reiner_sum(1) == parse("1 - x1")

    @pytest.mark.parametrize("n", range(1, 6))
    def test_reiner(self, n):
        assert eulerian.reiner_sum(n) == eulerian.reiner_product(n)

    def test_suite_small_bounds(self):
        bounds = {"qminus1": 3, "unity_n": 2, "unity_r": 3, "stembridge": 4, "affBC": 4,
                  "affD": 4, "reiner": 3}
        entries = eulerian.identity_suite(bounds)
        assert entries and all(e.status in ("pass", "info") for e in entries)


class TestParallel:
    @settings(max_examples=5, deadline=None)
    @given(st.sampled_from([("A", 5, 1, None), ("B", 4, 1, "sym"), ("G", 3, 3, "multisym"),
                            ("AffC", 4, 1, None), ("DStar", 4, 1, None)]))
    def test_jobs_do_not_change_result(self, case):
        family, n, r, q = case
        spec = FamilySpec(family, n, r, q)
        one = brute_force(spec, jobs=1)
        two = brute_force(spec, jobs=2)
        assert one == two and one.to_json() == two.to_json()
