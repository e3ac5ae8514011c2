"""2x2 matrices over number fields and projective rationality of their powers.

A matrix is projectively rational when it is a scalar multiple of a matrix
with rational entries, i.e. it defines an element of PGL_2(Q). The questions
here are when a power of a non-rational matrix becomes projectively rational,
how the eigenvalue ratio controls that, and how to build n-th roots.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import NamedTuple, Optional

from .errors import (
    DiagonalizableInput,
    FieldMismatch,
    InconsistentDecomposition,
    NoConstructibleRoot,
    NotDiagonalizable,
    PreconditionError,
    ScalarPower,
    SingularMatrix,
)
from .numfield import (
    QQ,
    Embedding,
    NFElem,
    Subfield,
    adjoin_quadratic_root,
    minimal_polynomial,
    radical_field,
    roots_in_field,
    subfield_generated,
)

__all__ = [
    "Mat2",
    "EigenData",
    "RootDecomposition",
    "RationalAlready",
    "PowerCheck",
    "proj_rational",
    "rational_representative",
    "eigen_data",
    "power_class",
    "nondiagonalizable_power_check",
    "check_prop42",
    "ratio_power_degree",
    "root_decompose",
    "pgl2_nth_root",
]


class Mat2:
    """[[a, b], [c, d]] with entries in one number field."""

    __slots__ = ("a", "b", "c", "d", "field")

    def __init__(self, a, b, c, d, field=None, check=True):
        if field is None:
            field = next((v.field for v in (a, b, c, d) if isinstance(v, NFElem)), QQ)
        for v in (a, b, c, d):
            if isinstance(v, NFElem) and v.field != field:
                raise FieldMismatch("matrix entries live in different fields")
        self.field = field
        self.a, self.b, self.c, self.d = (field(v) for v in (a, b, c, d))
        if check and self.det().is_zero():
            raise SingularMatrix("determinant is zero")

    @classmethod
    def from_rows(cls, rows, field=None):
        (a, b), (c, d) = rows
        return cls(a, b, c, d, field=field)

    @classmethod
    def identity(cls, field=QQ):
        return cls(1, 0, 0, 1, field=field)

    @classmethod
    def diag(cls, x, y, field=None):
        return cls(x, 0, 0, y, field=field)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def rows(self):
        return [[self.a, self.b], [self.c, self.d]]

    def det(self):
        return self.a * self.d - self.b * self.c

    def trace(self):
        return self.a + self.d

    def __mul__(self, other):
        if isinstance(other, Mat2):
            if other.field != self.field:
                raise FieldMismatch("matrices live in different fields")
            return Mat2(
                self.a * other.a + self.b * other.c,
                self.a * other.b + self.b * other.d,
                self.c * other.a + self.d * other.c,
                self.c * other.b + self.d * other.d,
                field=self.field,
                check=False,
            )
        s = self.field(other)
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s, field=self.field, check=False)

    __rmul__ = __mul__

    def inverse(self):
        D = self.det()
        if D.is_zero():
            raise SingularMatrix("determinant is zero")
        inv = D.inverse()
        return Mat2(self.d * inv, -self.b * inv, -self.c * inv, self.a * inv, field=self.field)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        result = Mat2.identity(self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __neg__(self):
        return self * -1

    def __eq__(self, other):
        if not isinstance(other, Mat2):
            return NotImplemented
        return self.field == other.field and self.entries() == other.entries()

    def __hash__(self):
        return hash(self.entries())

    def proj_equal(self, other):
        """Equality in PGL_2: all 2x2 cross products of entries agree."""
        u, v = self.entries(), other.entries()
        return all(u[i] * v[j] == u[j] * v[i] for i in range(4) for j in range(i + 1, 4))

    def is_scalar(self):
        return self.b.is_zero() and self.c.is_zero() and self.a == self.d

    def is_diagonal(self):
        return self.b.is_zero() and self.c.is_zero()

    def is_rational(self):
        return all(v.rational() is not None for v in self.entries())

    def map(self, emb):
        return Mat2(*(emb(v) for v in self.entries()), field=emb.dst, check=False)

    def __repr__(self):
        return f"Mat2([[{self.a}, {self.b}], [{self.c}, {self.d}]])"

    __str__ = __repr__


# -- projective rationality ------------------------------------------------------

def _pivot(A):
    return next(v for v in A.entries() if not v.is_zero())


def proj_rational(A):
    p = _pivot(A)
    return all((v / p).rational() is not None for v in A.entries())


def rational_representative(A):
    """Primitive integer matrix over Q in the class of A (first nonzero entry
    positive), or None when A is not projectively rational."""
    p = _pivot(A)
    vals = [(v / p).rational() for v in A.entries()]
    if any(v is None for v in vals):
        return None
    den = reduce(lcm, (v.denominator for v in vals), 1)
    ints = [int(v * den) for v in vals]
    g = reduce(gcd, ints, 0)
    ints = [v // g for v in ints]
    first = next(v for v in ints if v)
    if first < 0:
        ints = [-v for v in ints]
    return Mat2(*ints, field=QQ)


def power_class(A, n):
    if n < 1:
        raise ValueError("n must be positive")
    P = A ** n
    return P, proj_rational(P)


# -- eigenvalues --------------------------------------------------------------------

class EigenData(NamedTuple):
    lambda1: NFElem
    lambda2: NFElem
    ratio: NFElem
    diagonalizable: bool
    extension: object  # NumberField holding the eigenvalues
    embedding: Embedding  # input field -> extension


def eigen_data(A):
    K = A.field
    M, emb, root = adjoin_quadratic_root(K, -A.trace(), A.det(), name="e")
    other = emb(A.trace()) - root
    l1, l2 = sorted([root, other], key=lambda r: tuple(r.coords), reverse=True)
    diag = not (l1 == l2 and not A.is_scalar())
    return EigenData(l1, l2, l1 / l2, diag, M, emb)


class PowerCheck(NamedTuple):
    consistent: bool
    trivial: bool  # A itself is projectively rational
    rational_power: Optional[int]  # first n with A^n projectively rational


def nondiagonalizable_power_check(A, n_max):
    """For non-diagonalizable A: some power projectively rational forces A to be."""
    if eigen_data(A).diagonalizable:
        raise DiagonalizableInput("matrix is diagonalizable")
    if proj_rational(A):
        return PowerCheck(True, True, 1)
    P = A
    for n in range(1, n_max + 1):
        if n > 1:
            P = P * A
        if proj_rational(P):
            return PowerCheck(False, False, n)
    return PowerCheck(True, False, None)


check_prop42 = nondiagonalizable_power_check  # name used by the interface contract


def ratio_power_degree(A, n):
    """[Q((lambda1/lambda2)^n) : Q]."""
    ed = eigen_data(A)
    if not ed.diagonalizable:
        raise NotDiagonalizable("matrix is not diagonalizable")
    return len(minimal_polynomial(ed.ratio ** n)) - 1


# -- decomposition ----------------------------------------------------------------

class RationalAlready(NamedTuple):
    representative: Mat2


class RootDecomposition(NamedTuple):
    Kprime: Subfield
    F: Subfield
    M: Mat2  # entries in Kprime
    D: Mat2  # diagonal; D / D[1][1] has entries in F
    A: Mat2  # the input, embedded in the common ambient field
    ambient: object


def _eigenvector(B, mu):
    if not B.b.is_zero():
        return B.b, mu - B.a
    if not B.c.is_zero():
        return mu - B.d, B.c
    raise AssertionError("diagonal matrices are handled separately")


def root_decompose(A, n):
    """Write A = M D M^-1 with M over K' and D diagonal, given [A^n] rational.

    K' is the eigenvalue field of the rational matrix in the class of A^n; it
    contains (lambda1/lambda2)^n and has degree at most 2. F = K'(lambda1/lambda2)
    then has degree at most n over K'.
    """
    if proj_rational(A):
        return RationalAlready(rational_representative(A))
    P, ok = power_class(A, n)
    if not ok:
        raise PreconditionError(f"A^{n} is not projectively rational")
    ed = eigen_data(A)
    if not ed.diagonalizable:
        # a non-diagonalizable A with a rational power would be rational itself
        raise InconsistentDecomposition("non-diagonalizable A with rational power class")
    B0 = rational_representative(P)
    if B0.is_scalar():
        raise ScalarPower(f"A^{n} is scalar; its eigenvectors do not determine M")
    L = ed.extension
    A_L = A.map(ed.embedding)
    l1, l2 = ed.lambda1, ed.lambda2
    scale = _pivot(A_L ** n).inverse() * _pivot(B0).rational()
    mu1, mu2 = l1 ** n * scale, l2 ** n * scale
    B_L = Mat2(*(L(v.rational()) for v in B0.entries()), field=L)
    if B0.is_diagonal():
        # A commutes with A^n, whose eigenvalues are distinct: A is diagonal too
        M, D = Mat2.identity(L), A_L
    else:
        v1, v2 = _eigenvector(B_L, mu1), _eigenvector(B_L, mu2)
        M = Mat2(v1[0], v2[0], v1[1], v2[1], field=L)
        D = Mat2.diag(l1, l2, field=L)
    if M * D * M.inverse() != A_L:
        raise InconsistentDecomposition("A != M D M^-1")
    Kp = subfield_generated([mu1], ambient=L)
    F = subfield_generated([mu1, l1 / l2], ambient=L)
    if not all(Kp.contains(v) for v in M.entries()):
        raise InconsistentDecomposition("M is not defined over K'")
    if Kp.degree > 2 or F.degree > n * Kp.degree:
        raise InconsistentDecomposition("degree bounds violated")
    return RootDecomposition(Kp, F, M, D, A_L, L)


# -- n-th roots ----------------------------------------------------------------------

_MAX_ADJOIN = 2


def _nth_root(mu, n, L, budget):
    """(L', embedding L -> L', beta, budget') with beta^n = mu in L'."""
    poly = [L(-mu)] + [L.zero] * (n - 1) + [L.one]
    found = roots_in_field(poly, L)
    if found:
        beta = max(found, key=lambda r: tuple(r.coords))
        return L, Embedding.identity(L), beta, budget
    if n % 2 == 0:
        if budget == 0:
            raise NoConstructibleRoot("root needs more than two quadratic steps")
        M, emb, s = adjoin_quadratic_root(L, 0, -mu)
        M2, emb2, beta, budget = _nth_root(s, n // 2, M, budget - 1)
        return M2, emb2.compose(emb), beta, budget
    r = mu.rational()
    if r is not None and L.degree == 1:
        K, beta = radical_field(r, n)
        return K, Embedding(L, K, K.zero, check=False), beta, budget
    raise NoConstructibleRoot(f"no construction for an odd root of degree {n} here")


def pgl2_nth_root(B, n):
    """A with A^n equal to B up to a scalar.

    Diagonalizable B: A = M diag(beta1, beta2) M^-1 with beta_i^n the
    eigenvalues of B, so det(A)^n = det(B). Unipotent-type B: the rational
    root lambda (I + N/(n lambda)). Whenever the root found is projectively
    rational its primitive integer representative is returned instead.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not B.is_rational():
        raise PreconditionError("B must have rational entries")
    B = Mat2(*(v.rational() for v in B.entries()), field=QQ)
    if B.is_scalar():
        return Mat2.identity(QQ)
    ed = eigen_data(B)
    if not ed.diagonalizable:
        lam = ed.lambda1.rational()
        N = Mat2(B.a - lam, B.b, B.c, B.d - lam, field=QQ, check=False)
        k = Fraction(1, n) / lam
        return Mat2(1 + N.a * k, N.b * k, N.c * k, 1 + N.d * k, field=QQ)
    Kp = ed.extension
    mu1, mu2 = ed.lambda1, ed.lambda2
    L1, e1, beta1, budget = _nth_root(mu1, n, Kp, _MAX_ADJOIN)
    L2, e2, beta2, budget = _nth_root(e1(mu2), n, L1, budget)
    to_L2 = e2.compose(e1)
    beta1 = e2(beta1)
    BL = Mat2(*(L2(v.rational()) for v in B.entries()), field=L2)
    m1, m2 = to_L2(mu1), to_L2(mu2)
    if B.is_diagonal():
        M = Mat2.identity(L2) if m1 == BL.a else Mat2(0, 1, 1, 0, field=L2)
    else:
        v1, v2 = _eigenvector(BL, m1), _eigenvector(BL, m2)
        M = Mat2(v1[0], v2[0], v1[1], v2[1], field=L2)
    A = M * Mat2.diag(beta1, beta2, field=L2) * M.inverse()
    rep = rational_representative(A)
    return rep if rep is not None else A
