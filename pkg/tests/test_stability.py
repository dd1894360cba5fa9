from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from stable_eulerian import eulerian, stability
from stable_eulerian.eulerian import FamilySpec
from stable_eulerian.multipoly import MPoly, X, Y, parse
from stable_eulerian.stability import rayleigh_delta, sturm
from stable_eulerian.upoly import UPoly

_x = sympy.Symbol("x")


def sympy_real_roots(p: UPoly) -> int:
    """Independent count of distinct real roots."""
    poly = sympy.Poly(sum(sympy.Rational(str(c)) * _x ** k for k, c in enumerate(p.coeffs)), _x)
    return len(set(sympy.real_roots(poly)))


def linear_product(roots):
    out = UPoly([1])
    for r in roots:
        out = out * UPoly([-r, 1])
    return out


class TestSturm:
    def test_no_real_roots(self):
        rep = sturm(UPoly([1, 0, 1]))
        assert rep.distinct_real_roots == 0 and not rep.is_real_rooted

    def test_a2(self):
        rep = sturm(UPoly([1, 4, 1]))
        assert rep.distinct_real_roots == 2 and rep.is_real_rooted

    def test_multiplicity(self):
        rep = sturm(UPoly([1, 2, 1]))
        assert rep.squarefree_degree == 1 and rep.distinct_real_roots == 1 and rep.is_real_rooted

    def test_constant(self):
        assert sturm(UPoly([5])).is_real_rooted

    def test_zero_rejected(self):
        with pytest.raises(ValueError):
            sturm(UPoly())

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.fractions(-5, 5, max_denominator=6), min_size=1, max_size=8))
    def test_rational_products(self, roots):
        p = linear_product(roots) * 3
        rep = sturm(p)
        assert rep.is_real_rooted
        assert rep.distinct_real_roots == len(set(roots))
        assert not sturm(p * UPoly([1, 0, 1])).is_real_rooted

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.integers(-6, 6), min_size=2, max_size=7))
    def test_against_sympy(self, cs):
        p = UPoly(cs)
        if p.is_zero():
            return
        assert sturm(p).distinct_real_roots == sympy_real_roots(p)

    @pytest.mark.parametrize("n", range(2, 7))
    def test_eulerian_against_sympy(self, n):
        p = eulerian.univariate(eulerian.rec_g(n, 3, None))
        assert sturm(p).distinct_real_roots == sympy_real_roots(p) == p.degree


class TestRayleigh:
    def test_linear(self):
        assert rayleigh_delta(parse("x1 + x2"), (X, 1), (X, 2)) == MPoly.const(1)

    def test_monomial(self):
        assert rayleigh_delta(parse("x1*x2"), (X, 1), (X, 2)) == MPoly()

    def test_d3_symbol(self):
        d3x = eulerian.d_multivariate(3).specialize_axis(Y, 1)
        assert rayleigh_delta(d3x, (X, 1), (X, 3)) == parse("-16*x2")

    def test_rejects_non_multiaffine(self):
        with pytest.raises(ValueError):
            rayleigh_delta(parse("x1^2 + x2"), (X, 1), (X, 2))

    def test_rejects_same_variable(self):
        with pytest.raises(ValueError):
            rayleigh_delta(parse("x1 + x2"), (X, 1), (X, 1))

    @pytest.mark.parametrize("pair", [((X, 1), (X, 2)), ((X, 2), (Y, 3)), ((Y, 1), (X, 3))])
    def test_symmetry(self, pair):
        p = eulerian.rec_g(3, 2, None)
        i, j = pair
        assert rayleigh_delta(p, i, j) == rayleigh_delta(p, j, i)


class TestFalsify:
    def test_rayleigh_finds_d3(self):
        d3x = eulerian.d_multivariate(3).specialize_axis(Y, 1)
        w = stability.falsify_rayleigh(d3x, budget=20_000)
        assert w is not None and w.kind == "rayleighNegative"
        assert w.value.real < 0

    def test_rayleigh_product_none(self):
        assert stability.falsify_rayleigh(parse("x1 + y1") * parse("x2 + y2"), budget=20_000) is None

    def test_rayleigh_affine_b3_none(self):
        assert stability.falsify_rayleigh(eulerian.affine_b(3), budget=20_000) is None

    def test_rayleigh_deterministic(self):
        d3x = eulerian.d_multivariate(3).specialize_axis(Y, 1)
        a = stability.falsify_rayleigh(d3x, budget=5_000, seed=7)
        b = stability.falsify_rayleigh(d3x, budget=5_000, seed=7)
        assert a.to_dict() == b.to_dict()

    def test_rayleigh_jobs_invariant(self):
        d3x = eulerian.d_multivariate(3).specialize_axis(Y, 1)
        a = stability.falsify_rayleigh(d3x, budget=5_000, seed=3, jobs=1)
        b = stability.falsify_rayleigh(d3x, budget=5_000, seed=3, jobs=2)
        assert a.to_dict() == b.to_dict()

    def test_halfplane_dstar_seeded(self):
        p = eulerian.brute_force(FamilySpec("DStar", 3))
        seed = {v: complex(float(a), float(b)) for v, (a, b) in stability.d3star_point().items()}
        w = stability.falsify_halfplane(p, budget=1_000, seeds=[seed])
        assert w is not None and abs(w.value) < 1e-6
        assert all(z.imag > 0 for z in w.point.values())

    def test_halfplane_dstar_unseeded(self):
        p = eulerian.brute_force(FamilySpec("DStar", 3))
        w = stability.falsify_halfplane(p, budget=20_000)
        assert w is not None and abs(w.value) < 1e-6
        assert all(z.imag >= stability.MIN_IMAG for z in w.point.values())

    def test_halfplane_a3_none(self):
        assert stability.falsify_halfplane(eulerian.rec_a(3), budget=20_000) is None

    def test_halfplane_constant_none(self):
        assert stability.falsify_halfplane(MPoly.const(1), budget=1_000) is None

    def test_halfplane_deterministic(self):
        p = eulerian.d_multivariate(3)
        a = stability.falsify_halfplane(p, budget=5_000, seed=4)
        b = stability.falsify_halfplane(p, budget=5_000, seed=4)
        assert (a is None and b is None) or a.to_dict() == b.to_dict()


class TestD3Star:
    def test_known_point_exact(self):
        p = eulerian.brute_force(FamilySpec("DStar", 3))
        re, im = stability.eval_gaussian(p, stability.d3star_point(120))
        assert abs(re) < Fraction(1, 10 ** 20) and abs(im) < Fraction(1, 10 ** 20)

    def test_known_point_double(self):
        w = stability.d3star_witness()
        assert abs(w.value) < 1e-6
        assert all(z.imag > 0 for z in w.point.values())

    def test_point_coordinates(self):
        pt = stability.d3star_point(60)
        assert pt[(Y, 2)] == pt[(Y, 3)] == pt[(X, 3)] == (2, 1)
        a, b = pt[(X, 2)]
        # (-1+2i)(2i+sqrt3) = (-4 - sqrt3) + (2sqrt3 - 2) i
        assert abs(float(a) + 4 + 3 ** 0.5) < 1e-12 and abs(float(b) - (2 * 3 ** 0.5 - 2)) < 1e-12


class TestOperatorSymbols:
    @pytest.mark.parametrize("n", range(1, 5))
    def test_type_a(self, n):
        assert stability.verify_operator_symbol("typeA", n)

    @pytest.mark.parametrize("q", [0, 1, 2, Fraction(1, 2)])
    @pytest.mark.parametrize("n", [1, 2, 3])
    def test_type_b(self, q, n):
        assert stability.verify_operator_symbol("typeBq", n, q)

    def test_g(self):
        assert stability.verify_operator_symbol("G", 3, 2, 3)

    def test_coefficients(self):
        assert stability.operator_coefficients("typeA") == (1, 1, 1)
        assert stability.operator_coefficients("typeBq", 2) == (2, 1, 3)
        assert stability.operator_coefficients("G", 2, 3) == (6, 1, 7)

    def test_divide_linear(self):
        p = parse("x1 + u1") * parse("y1 + v1")
        assert stability.divide_linear(p, (X, 1), parse("u1")) == parse("y1 + v1")

    def test_unknown_operator(self):
        with pytest.raises(ValueError):
            stability.verify_operator_symbol("typeE", 2)


class TestRealRootedSuite:
    def test_small_bounds(self):
        bounds = {"A": 4, "Bq": 3, "G_r": 3, "G_n": 3, "AffA": 3, "AffC": 3, "D": 4,
                  "AffB": 3, "AffD": 4}
        entries = stability.realrooted_suite(bounds)
        assert all(e.status == "pass" for e in entries)
        assert {e.parameters["family"] for e in entries} >= {"A", "B", "G", "AffA", "AffC", "D", "AffB"}

    def test_affine_b_univariate(self):
        lhs = eulerian.descent_polynomial("AffC", 3) * 2
        rhs = stability.affine_b_univariate(3) + UPoly([0, 6]) * eulerian.descent_polynomial("B", 2)
        assert lhs == rhs
