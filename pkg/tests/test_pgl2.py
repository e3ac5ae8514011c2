import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from iterfield import QQ
from iterfield.errors import DiagonalizableInput, NoConstructibleRoot, NotDiagonalizable, PreconditionError
from iterfield.numfield import minimal_polynomial
from iterfield.pgl2 import (
    Mat2,
    RationalAlready,
    RootDecomposition,
    check_prop42,
    eigen_data,
    nondiagonalizable_power_check,
    pgl2_nth_root,
    power_class,
    proj_rational,
    ratio_power_degree,
    rational_representative,
    root_decompose,
)

from pgl2_samples import QI, SQRT2, constructed_samples, lift, nondiagonalizable_samples, rand_invertible

s = SQRT2.gen
i = QI.gen
FIB = Mat2(1, 1, 1, 0, field=QQ)


class TestProjRational:
    def test_examples(self):
        assert proj_rational(Mat2(s, 0, 0, s))
        assert proj_rational(Mat2(s, s, 0, s))
        assert not proj_rational(Mat2(1, s, 0, 1, field=SQRT2))

    def test_representative(self):
        assert rational_representative(Mat2(s, s, 0, s)) == Mat2(1, 1, 0, 1, field=QQ)
        assert rational_representative(Mat2(-2 * s, 4 * s, 0, 6 * s)) == Mat2(1, -2, 0, -3, field=QQ)
        assert rational_representative(Mat2(1, s, 0, 1, field=SQRT2)) is None

    def test_singular(self):
        with pytest.raises(Exception):
            Mat2(1, 2, 2, 4, field=QQ)


class TestPowerClass:
    def test_examples(self):
        P, ok = power_class(Mat2(s, 0, 0, 1, field=SQRT2), 2)
        assert P == Mat2(2, 0, 0, 1, field=SQRT2) and ok
        P, ok = power_class(Mat2(1, s, 0, 1, field=SQRT2), 5)
        assert P == Mat2(1, 5 * s, 0, 1, field=SQRT2) and not ok
        P, ok = power_class(Mat2(1 + i, 0, 0, 1 - i), 2)
        assert P == Mat2(2 * i, 0, 0, -2 * i) and ok

    @given(st.integers(0, 10 ** 6), st.integers(1, 4), st.integers(1, 4))
    def test_homomorphism(self, seed, m, n):
        A = rand_invertible(SQRT2, random.Random(seed))
        assert ((A ** m) * (A ** n)).proj_equal(A ** (m + n))


class TestEigenData:
    def test_diagonal(self):
        ed = eigen_data(Mat2(2, 0, 0, 3, field=QQ))
        assert {ed.lambda1, ed.lambda2} == {QQ(2), QQ(3)} and ed.diagonalizable

    def test_unipotent(self):
        ed = eigen_data(Mat2(1, 1, 0, 1, field=QQ))
        assert ed.lambda1 == ed.lambda2 == 1 and not ed.diagonalizable

    def test_fibonacci(self):
        ed = eigen_data(FIB)
        assert ed.extension.degree == 2
        assert ed.lambda1 + ed.lambda2 == 1 and ed.lambda1 * ed.lambda2 == -1
        assert minimal_polynomial(ed.lambda1) == [-1, -1, 1]

    def test_scalar_is_diagonalizable(self):
        assert eigen_data(Mat2(3, 0, 0, 3, field=QQ)).diagonalizable


class TestNondiagonalizable:
    def test_examples(self):
        v = check_prop42(Mat2(1, s, 0, 1, field=SQRT2), 6)
        assert v.consistent and not v.trivial and v.rational_power is None
        v = check_prop42(Mat2(1, 1, 0, 1, field=QQ), 6)
        assert v.consistent and v.trivial
        assert check_prop42(Mat2(s, s, 0, s), 6).trivial

    def test_diagonalizable_rejected(self):
        with pytest.raises(DiagonalizableInput):
            nondiagonalizable_power_check(Mat2(2, 0, 0, 3, field=QQ), 3)

    @pytest.mark.parametrize("K", [SQRT2, QI], ids=["sqrt2", "i"])
    def test_random(self, K):
        for A in nondiagonalizable_samples(K, 25, seed=42 + K.degree):
            assert not eigen_data(A).diagonalizable
            assert not any(power_class(A, n)[1] for n in range(1, 7))
            assert nondiagonalizable_power_check(A, 6).consistent


class TestRatioPowerDegree:
    def test_examples(self):
        assert ratio_power_degree(Mat2(s, 0, 0, 1, field=SQRT2), 2) == 1
        assert ratio_power_degree(Mat2(1 + i, 0, 0, 1 - i), 2) == 1

    def test_fibonacci_root(self):
        A = pgl2_nth_root(FIB, 2)
        assert ratio_power_degree(A, 2) == 2

    def test_not_diagonalizable(self):
        with pytest.raises(NotDiagonalizable):
            ratio_power_degree(Mat2(1, 1, 0, 1, field=QQ), 2)


SAMPLES = constructed_samples(50, seed=2024)


class TestConstructedSamples:
    def test_ratio_power_degree_bound(self):
        for A, n in SAMPLES:
            assert power_class(A, n)[1]
            if A.is_scalar() or not eigen_data(A).diagonalizable:
                continue
            assert ratio_power_degree(A, n) <= 2

    def test_round_trip(self):
        checked = 0
        for A, n in SAMPLES:
            if proj_rational(A):
                assert isinstance(root_decompose(A, n), RationalAlready)
                continue
            if rational_representative(A ** n).is_scalar():
                continue
            dec = root_decompose(A, n)
            assert isinstance(dec, RootDecomposition)
            assert dec.M * dec.D * dec.M.inverse() == dec.A
            assert dec.D.is_diagonal()
            assert dec.Kprime.degree <= 2
            assert dec.F.degree <= n * dec.Kprime.degree
            assert all(dec.Kprime.contains(v) for v in dec.M.entries())
            checked += 1
        assert checked >= 30


class TestRootDecompose:
    def test_diag_sqrt2(self):
        A = Mat2(s, 0, 0, 1, field=SQRT2)
        dec = root_decompose(A, 2)
        assert dec.Kprime.degree == 1 and dec.F.degree == 2
        assert dec.M == Mat2.identity(dec.ambient)
        assert dec.D == dec.A

    def test_rational_conjugate(self):
        M0 = Mat2(1, 2, 3, 1, field=SQRT2)
        A = M0 * Mat2(s, 0, 0, 1, field=SQRT2) * M0.inverse()
        dec = root_decompose(A, 2)
        assert dec.Kprime.degree == 1
        assert dec.M * dec.D * dec.M.inverse() == dec.A
        d = sorted([dec.D.a, dec.D.d], key=lambda v: tuple(v.coords))
        assert {v ** 2 for v in d} == {dec.ambient(2), dec.ambient(1)}

    def test_fibonacci_root(self):
        A = pgl2_nth_root(FIB, 2)
        dec = root_decompose(A, 2)
        assert dec.Kprime.degree <= 2 and dec.F.degree <= 2 * dec.Kprime.degree
        assert dec.M * dec.D * dec.M.inverse() == dec.A

    def test_already_rational(self):
        dec = root_decompose(Mat2(s, s, 0, s), 2)
        assert isinstance(dec, RationalAlready)
        assert dec.representative == Mat2(1, 1, 0, 1, field=QQ)

    def test_not_rational_power(self):
        with pytest.raises(PreconditionError):
            root_decompose(Mat2(1, s, 0, 1, field=SQRT2), 3)


class TestNthRoot:
    def test_examples(self):
        assert pgl2_nth_root(Mat2(4, 0, 0, 1, field=QQ), 2) == Mat2(2, 0, 0, 1, field=QQ)
        assert pgl2_nth_root(Mat2(0, -1, 1, 0, field=QQ), 2) == Mat2(1, -1, 1, 1, field=QQ)
        assert pgl2_nth_root(Mat2(1, 1, 0, 1, field=QQ), 2) == Mat2(1, Fraction(1, 2), 0, 1, field=QQ)

    def test_rotation_square(self):
        A = pgl2_nth_root(Mat2(0, -1, 1, 0, field=QQ), 2)
        assert (A * A) == Mat2(0, -2, 2, 0, field=QQ)

    @pytest.mark.parametrize("entries, n", [
        ((2, 1, 1, 1), 2), ((3, 0, 0, 1), 3), ((1, 1, 1, 0), 2), ((0, 1, 3, 0), 2),
        ((2, 0, 0, 1), 4), ((1, 2, 0, 1), 3), ((5, 0, 0, 2), 2),
    ])
    def test_property(self, entries, n):
        B = Mat2(*entries, field=QQ)
        A = pgl2_nth_root(B, n)
        P, _ = power_class(A, n)
        assert P.proj_equal(lift(B, P.field))
        # determinant remark
        assert (A.det() ** (2 * n)).rational() is not None

    @given(st.tuples(*[st.integers(-5, 5)] * 4), st.sampled_from([2, 3]))
    def test_random_property(self, entries, n):
        B = Mat2(*entries, field=QQ, check=False)
        if B.det() == 0:
            return
        try:
            A = pgl2_nth_root(B, n)
        except NoConstructibleRoot:
            return
        P, ok = power_class(A, n)
        assert ok
        assert rational_representative(P) == rational_representative(B)
        assert (A.det() ** (2 * n)).rational() is not None

    def test_odd_root_over_extension_refused(self):
        with pytest.raises(NoConstructibleRoot):
            pgl2_nth_root(FIB, 3)
