import random
from fractions import Fraction
from math import gcd

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from iterfield import (
    INF,
    QQ,
    Mobius,
    NumberField,
    Poly,
    ProjPoint,
    RatFunc,
    classify_B,
    conjugate,
    counterexample_map,
    cyclotomic_field,
    field_of_definition,
    field_of_iterates,
    iterate,
    min_n_divisibility,
    poly_classify_A,
    poly_classify_An,
    ratfunc_in_An_direct,
    rational_periodic_points,
    report,
    shape_detect,
    subfield_contains,
    sn,
)
from iterfield.classify import rational_power_order
from iterfield.errors import ConstantInput
from iterfield.families import Curve, lattes_translated

from oracles import X, brute_iterate

SQRT2 = NumberField([-2, 0, 1])
SQRT3 = NumberField([-3, 0, 1])
CBRT2 = NumberField([-2, 0, 0, 1])
QI = NumberField([1, 0, 1])
ZETA5 = cyclotomic_field(5)


def P(K, *coeffs):
    return Poly(K, [K(c) for c in coeffs])


def mono(K, a, k):
    return Poly(K, [K.zero] * k + [K(a)])


class TestSums:
    @pytest.mark.parametrize("k, n, value", [(2, 2, 3), (1, 5, 5), (3, 2, 4)])
    def test_sn(self, k, n, value):
        assert sn(k, n) == value

    @given(st.integers(2, 9), st.integers(1, 8))
    def test_closed_form(self, k, n):
        assert sn(k, n) == sum(k ** i for i in range(n)) == (k ** n - 1) // (k - 1)

    def test_min_n_examples(self):
        assert min_n_divisibility(3, 2, 10) == 2
        assert min_n_divisibility(2, 2, 10) is None

    def test_min_n_brute_force(self):
        # S_n(6) = n mod 5, so n = 5 is the first hit
        expected = next(n for n in range(1, 11) if sum(6 ** i for i in range(n)) % 5 == 0)
        assert min_n_divisibility(5, 6, 10) == expected == 5

    @given(st.integers(1, 30), st.integers(1, 30))
    def test_exists_iff_coprime(self, t, k):
        assert (min_n_divisibility(t, k, 200) is not None) == (gcd(t, k) == 1)


class TestRationalPowerOrder:
    def test_examples(self):
        assert rational_power_order(CBRT2.gen) == 3
        assert rational_power_order(SQRT2.gen) == 2
        assert rational_power_order(QI.gen) == 2
        assert rational_power_order(1 + SQRT2.gen) is None
        z = ZETA5.gen
        assert rational_power_order(z) == 5
        assert rational_power_order(-z) == 5
        assert rational_power_order(1 + z) is None

    @given(st.integers(1, 12), st.integers(0, 9), st.sampled_from([1, 2, 3, -1, Fraction(1, 2)]))
    def test_brute_force(self, j, i, scale):
        z = cyclotomic_field(20).gen
        a = z ** i * scale
        s = rational_power_order(a)
        brute = next(m for m in range(1, 41) if (a ** m).rational() is not None)
        assert s == brute


class TestFields:
    def test_over_q(self):
        f = RatFunc(P(QQ, 1, 0, 3), P(QQ, 0, 1))
        assert field_of_definition(f).degree == 1
        foi = field_of_iterates(f, 3)
        assert foi.subfield.degree == 1 and foi.stabilized_at == 1

    def test_counterexample(self):
        f = counterexample_map()
        K = field_of_definition(f)
        assert K.degree == 2 and subfield_contains(K, f.field.gen)
        foi = field_of_iterates(f, 4)
        assert foi.subfield.degree == 1 and foi.stabilized_at == 2
        assert [d for _, d in foi.degrees] == [2, 1, 2, 1]
        assert not foi.bounded

    def test_cube_root(self):
        f = RatFunc.from_poly(mono(CBRT2, CBRT2.gen, 2))
        assert field_of_definition(f).degree == 3
        foi = field_of_iterates(f, 3)
        assert foi.subfield.degree == 1 and foi.stabilized_at == 2

    def test_flagged_when_unstable(self):
        f = RatFunc.from_poly(mono(SQRT2, SQRT2.gen, 2))
        assert field_of_iterates(f, 1).bounded
        # every iterate carries 2^((2^n - 1)/2), so the field never shrinks
        foi = field_of_iterates(f, 3)
        assert foi.subfield.degree == 2 and not foi.bounded

    def test_direct(self):
        f = counterexample_map()
        assert ratfunc_in_An_direct(f, 2)
        assert not ratfunc_in_An_direct(RatFunc.from_poly(mono(SQRT2, SQRT2.gen, 2)), 2)
        q = RatFunc(P(QQ, 1, 2), P(QQ, 3, 0, 1))
        assert all(ratfunc_in_An_direct(q, n) for n in (1, 2, 3))


class TestPolynomialClassifiers:
    def test_cube_root_square(self):
        f = mono(CBRT2, CBRT2.gen, 2)
        v = poly_classify_An(f, 2)
        assert v.member and (v.witness.k, v.witness.t) == (2, 3) and v.witness.a == CBRT2.gen
        assert v.witness.verify(f)
        w = poly_classify_A(f)
        assert w.member and w.witness.verify(f)

    def test_i_times_x(self):
        f = mono(QI, QI.gen, 1)
        v = poly_classify_An(f, 2)
        assert v.member
        assert ratfunc_in_An_direct(f, 2)

    def test_irrational_ratio(self):
        s = SQRT2.gen
        f = P(SQRT2, 0, 1, 0, s)
        for n in (2, 3):
            assert not poly_classify_An(f, n).member
            assert not ratfunc_in_An_direct(f, n)

    def test_sqrt2_square_not_in_A(self):
        f = mono(SQRT2, SQRT2.gen, 2)
        assert not poly_classify_A(f).member
        assert not any(ratfunc_in_An_direct(f, n) for n in range(1, 7))

    def test_translation(self):
        f = P(SQRT2, SQRT2.gen, 1)
        assert not poly_classify_A(f).member
        assert not any(poly_classify_An(f, n).member for n in range(1, 7))

    def test_root_of_unity_branch(self):
        f = P(QI, 1, QI.gen)
        assert [poly_classify_An(f, n).member for n in (1, 2, 3, 4)] == [False, False, False, True]
        assert poly_classify_A(f).member
        assert iterate(RatFunc.from_poly(f), 4) == RatFunc.identity(QI)

    def test_constant_rejected(self):
        with pytest.raises(ConstantInput):
            poly_classify_An(P(SQRT2, 3), 2)
        with pytest.raises(ConstantInput):
            poly_classify_A(P(SQRT2, 3))

    def test_conjugated_normal_form(self):
        # ell^-1 o (cbrt2 x^2 (x^3 + 1)) o ell with ell = 2x + 1
        K = CBRT2
        a = K.gen
        base = RatFunc.from_poly(P(K, 0, 0, a, 0, 0, a))
        ell = Mobius(2, 1, 0, 1, field=K)
        f = conjugate(base, ell.inverse())
        v = poly_classify_An(f.num, 2)
        assert v.member and v.witness.verify(f)
        assert ratfunc_in_An_direct(f, 2)


def _random_poly(K, rng, deg):
    coeffs = []
    for _ in range(deg + 1):
        coords = [Fraction(rng.randint(-2, 2)) if rng.random() < 0.5 else Fraction(0) for _ in range(K.degree)]
        coeffs.append(K.from_coords(coords))
    if coeffs[-1].is_zero():
        coeffs[-1] = K.one
    return Poly(K, coeffs)


class TestAgreement:
    """The polynomial classifier agrees with brute-force iteration."""

    @pytest.mark.parametrize("K", [SQRT2, CBRT2, ZETA5], ids=["sqrt2", "cbrt2", "zeta5"])
    def test_random_agreement(self, K):
        rng = random.Random(hash(K.modulus) & 0xFFFF)
        for _ in range(40):
            deg = rng.randint(1, 4)
            f = _random_poly(K, rng, deg)
            n = rng.randint(1, 4) if deg <= 3 else rng.randint(1, 3)
            assert poly_classify_An(f, n).member == ratfunc_in_An_direct(f, n), (f, n)

    @pytest.mark.parametrize("K", [SQRT2, CBRT2, ZETA5], ids=["sqrt2", "cbrt2", "zeta5"])
    def test_structured_agreement(self, K):
        # sparse shapes with irrational leading coefficient hit the accepting branch
        rng = random.Random(7)
        gens = [K.gen, K.gen ** 2, -K.gen, K.gen * 2]
        for _ in range(30):
            a = rng.choice(gens)
            k = rng.randint(1, 3)
            t = rng.choice([1, 2, 3, 5])
            terms = [Fraction(rng.randint(1, 3))] + [Fraction(rng.randint(-2, 2)) for _ in range(rng.randint(0, 1))]
            f = Poly(K, [])
            x = Poly.x(K)
            for i, c in enumerate(terms):
                f = f + x ** (k + t * i) * (a * c)
            shift = Fraction(rng.randint(-2, 2), rng.randint(1, 2))
            f = conjugate(RatFunc.from_poly(f), Mobius(1, shift, 0, 1, field=K)).num
            n = rng.randint(1, 3)
            v = poly_classify_An(f, n)
            assert v.member == ratfunc_in_An_direct(f, n), (f, n)
            if v.witness is not None:
                assert v.witness.verify(f)

    def test_degree_bound_for_accepted(self):
        K = CBRT2
        f = RatFunc.from_poly(P(K, 0, 0, K.gen, 0, 0, K.gen))
        v = poly_classify_An(f.num, 2)
        assert v.member
        assert field_of_definition(f).degree <= f.degree


class TestIterateProperties:
    def test_power_of_member(self):
        f = counterexample_map()
        for k in range(1, 5):
            m = 2 // gcd(k, 2)
            assert ratfunc_in_An_direct(iterate(f, k), m)

    @given(st.tuples(*[st.integers(-3, 3)] * 4).filter(lambda t: t[0] * t[3] != t[1] * t[2]))
    def test_rational_conjugation_invariance(self, t):
        ell = Mobius(*t, field=CBRT2)
        f = RatFunc.from_poly(mono(CBRT2, CBRT2.gen, 2))
        g = conjugate(f, ell)
        assert ratfunc_in_An_direct(g, 2) == ratfunc_in_An_direct(f, 2) is True
        assert not ratfunc_in_An_direct(g, 1)

    def test_twist_in_A2(self):
        K = SQRT3
        c = 2 - K.gen
        h = RatFunc(P(K, 0, -2), P(K, -1, 0, 1))
        g = conjugate(h, Mobius(1, c, c, -1, field=K))
        assert ratfunc_in_An_direct(g, 2)


class TestShapeDetect:
    def test_identity(self):
        a, k, t, g = shape_detect(RatFunc.identity(QQ))
        assert (a, k, t) == (1, 1, 1) and g == RatFunc.constant(QQ, 1)

    def test_sqrt2_example(self):
        K = SQRT2
        f = RatFunc(mono(K, K.gen, 3), P(K, 1, 0, 0, 0, 1))
        a, k, t, g = shape_detect(f, "coprime")
        assert (a, k, t) == (K.gen, 3, 4) and (a ** 4).rational() == 4
        assert ratfunc_in_An_direct(f, 2)

    def test_counterexample_has_no_shape(self):
        f = counterexample_map()
        assert shape_detect(f, "coprime") is None
        assert shape_detect(f, ("divides", 2)) is None


class TestPeriodicPoints:
    def test_square(self):
        f = RatFunc.from_poly(P(QQ, 0, 0, 1))
        per = rational_periodic_points(f)
        assert set(per.rational_fixed) == {ProjPoint(QQ(0)), ProjPoint(QQ(1)), INF}
        # -1 -> 1 is preperiodic, so no rational 2-cycles
        assert per.rational_two_cycles == []

    def test_rational_cycle(self):
        f = RatFunc.from_poly(P(QQ, -1, 0, 1))  # 0 -> -1 -> 0
        per = rational_periodic_points(f)
        assert set(per.rational_fixed) == {INF}
        assert per.rational_two_cycles == [(ProjPoint(QQ(-1)), ProjPoint(QQ(0)))]

    def test_counterexample(self):
        f = counterexample_map()
        K = f.field
        c = 2 - K.gen
        per = rational_periodic_points(f)
        assert per.rational_fixed == [] and per.rational_two_cycles == []
        assert per.rational_period_two == [ProjPoint(K(1))]
        assert per.irrational_partner == [(ProjPoint(K(1)), ProjPoint(-1 / c))]

    def test_counterexample_oracle(self):
        # sympy: f(f(x)) = x minus fixed points, over Q(sqrt 3)
        c = 2 - sympy.sqrt(3)
        fx = (c * X ** 2 - 2 * X - c) / (X ** 2 + 2 * c * X - 1)
        f2 = brute_iterate(fx, 2)
        num = sympy.fraction(sympy.together(f2 - X))[0]
        fixed = sympy.fraction(sympy.together(fx - X))[0]
        fac = sympy.factor(sympy.cancel(num / fixed), extension=sympy.sqrt(3))
        roots = set(sympy.solve(fac, X))
        assert {sympy.nsimplify(r) for r in roots} == {1, sympy.nsimplify(-1 / c)}

    def test_lattes(self):
        K = SQRT2
        s = K.gen
        E = Curve(-2, 0, K)
        f = lattes_translated(E, 3, s)
        per = rational_periodic_points(f)
        assert per.rational_two_cycles == []
        partners = dict(per.irrational_partner)
        assert partners == {ProjPoint(K(0)): ProjPoint(-s), INF: ProjPoint(s)}


class TestClassifyB:
    def test_over_q(self):
        f = RatFunc(P(QQ, 1, 0, 1), P(QQ, 0, 1))
        v = classify_B(f)
        assert v.member and v.witness.verify(f) and v.witness.t == 1

    def test_counterexample(self):
        v = classify_B(counterexample_map())
        assert not v.member and v.obstruction == "no invariant rational pair"

    def test_lattes(self):
        K = SQRT2
        f = lattes_translated(Curve(-2, 0, K), 3, K.gen)
        assert not classify_B(f).member

    def test_round_trip(self):
        K = SQRT2
        base = RatFunc(mono(K, K.gen, 3), P(K, 1, 0, 0, 0, 1))
        f = conjugate(base, Mobius(1, -1, 1, 1, field=K))
        v = classify_B(f)
        assert v.member and v.witness.verify(f)
        n = min_n_divisibility(v.witness.t, v.witness.k, 50)
        assert ratfunc_in_An_direct(f, n)

    def test_fixed_point_and_preimage_pair(self):
        # conjugate(sqrt2 x^3/(x^4+1), ...) sends {P, Q} into itself with one point fixed
        K = SQRT2
        base = RatFunc(mono(K, K.gen, 3), P(K, 1, 0, 0, 0, 1))  # 0 fixed, inf -> 0
        f = conjugate(base, Mobius(2, 3, 1, 1, field=K))
        v = classify_B(f)
        assert v.member and v.witness.verify(f)

    def test_shape_obstruction(self):
        # 0 and inf are fixed but the shape fails: x(x+sqrt2)/(1)... over Q pair only
        K = SQRT2
        f = RatFunc(P(K, 0, 1, K.gen), P(K, 1, 1))
        v = classify_B(f)
        assert not v.member


class TestReport:
    def test_counterexample(self):
        rep = report(counterexample_map(), n=2, max_n=4)
        assert rep.degrees == [2, 1, 2, 1]
        assert rep.An.member and not rep.B.member

    def test_over_q(self):
        f = RatFunc(P(QQ, 1, 0, 1), P(QQ, 0, 1))
        rep = report(f, n=2, max_n=3)
        assert rep.degrees == [1, 1, 1] and rep.B.member

    def test_cube_root(self):
        rep = report(RatFunc.from_poly(mono(CBRT2, CBRT2.gen, 2)), n=2, max_n=2)
        assert rep.degrees == [3, 1] and rep.An.member and rep.A.member
        assert rep.iterates.subfield.is_subfield_of(rep.field_of_definition)
