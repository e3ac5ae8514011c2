"""Example families: Chebyshev polynomials, circle-rotation maps, Lattès maps.

A rotation map is the action of (cos t, sin t) -> (cos(k t + phi), sin(k t + phi))
on the coordinate tan(t/2). Lattès maps come from multiplication on an
elliptic curve y^2 = x^3 + a x + b, read off on the x-line through division
polynomials, optionally followed by translation by a 2-torsion point.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import NotTwoTorsion, OffCurve, SingularCurve
from .numfield import QQ, Embedding, NumberField, cyclotomic_field, roots_in_field
from .polyrat import Poly, RatFunc, compose

__all__ = [
    "chebyshev",
    "RotationSpec",
    "rotation_map",
    "rotation_with_rational_iterate",
    "prop33_family",
    "Curve",
    "CurvePoint",
    "O",
    "ec_add",
    "ec_neg",
    "ec_mul",
    "division_polynomial",
    "lattes_phi",
    "translate_by_2torsion",
    "lattes_translated",
    "counterexample_map",
    "embeddings",
    "embed_ratfunc",
    "equal_under_some_embedding",
]


def chebyshev(kind, k):
    """T_k (kind "first") or U_k (kind "second") as a polynomial over Q."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    x = Poly.x(QQ)
    one = Poly.const(QQ, 1)
    if kind == "first":
        prev, cur = one, x
    elif kind == "second":
        prev, cur = one, x * 2
    else:
        raise ValueError("kind must be 'first' or 'second'")
    if k == 0:
        return prev
    for _ in range(k - 1):
        prev, cur = cur, x * cur * 2 - prev
    return cur


# -- rotations -----------------------------------------------------------------

@dataclass(frozen=True)
class RotationSpec:
    """Angle multiplier k and angle phi = p*pi/q."""

    k: int
    p: int
    q: int

    def __post_init__(self):
        if self.k < 1 or self.q < 1:
            raise ValueError("need k >= 1 and q >= 1")
        object.__setattr__(self, "p", self.p % (2 * self.q))

    @property
    def conductor(self):
        """N with e^{i phi} and i both in Q(zeta_N)."""
        return _lcm(2 * self.q, 4)


def _lcm(a, b):
    return a * b // gcd(a, b)


def _homogenized(p, k, field):
    """(1+t^2)^k * p((1-t^2)/(1+t^2)) for deg p <= k, over ``field``."""
    t = Poly.x(field)
    one = Poly.const(field, 1)
    u, v = one - t * t, one + t * t
    out = Poly(field, [])
    for i, c in enumerate(p.coeffs):
        if c:
            out = out + (u ** i) * (v ** (k - i)) * field(c.rational())
    return out


def rotation_map(spec, field=None):
    """tan((k*theta + phi)/2) as a rational function of tan(theta/2).

    Built over Q(zeta_N) with N = lcm(2q, 4) unless ``field`` (which must
    contain zeta_N as its generator) is given.
    """
    k, p, q = spec.k, spec.p, spec.q
    N = spec.conductor
    K = field if field is not None else cyclotomic_field(N)
    z = K.gen
    e = z ** (p * (N // (2 * q)))
    i = z ** (N // 4)
    cos_phi = (e + e.inverse()) / 2
    sin_phi = (e - e.inverse()) / (i * 2)
    t = Poly.x(K)
    one = Poly.const(K, 1)
    That = _homogenized(chebyshev("first", k), k, K)
    Uhat = _homogenized(chebyshev("second", k - 1), k - 1, K)
    num = t * Uhat * (sin_phi * 2) - That * cos_phi + (one + t * t) ** k
    den = t * Uhat * (cos_phi * 2) + That * sin_phi
    f = RatFunc(num, den)
    if f.degree != k:
        raise ArithmeticError(f"rotation map has degree {f.degree}, expected {k}")
    return f


def rotation_with_rational_iterate(n, k):
    """Rotation map with angle pi/S_n(k); its n-th iterate is defined over Q."""
    if n < 2 or k < 2:
        raise ValueError("need n >= 2 and k >= 2")
    S = (k ** n - 1) // (k - 1)
    return rotation_map(RotationSpec(k, 1, S))


prop33_family = rotation_with_rational_iterate  # name used by the interface contract


def counterexample_map():
    """(c x^2 - 2x - c)/(x^2 + 2c x - 1) with c = 2 - sqrt(3), over Q(sqrt 3)."""
    K = NumberField([Fraction(-3), 0, 1])
    c = 2 - K.gen
    x = Poly.x(K)
    one = Poly.const(K, 1)
    return RatFunc(x * x * c - x * 2 - one * c, x * x + x * (c * 2) - one)


# -- moving maps between fields ---------------------------------------------------

def embeddings(src, dst):
    """All embeddings src -> dst, one per root of src's modulus in dst."""
    if src.degree == 1:
        return [Embedding(src, dst, dst.zero, check=False)]
    roots = roots_in_field([dst(c) for c in src.modulus], dst)
    return [Embedding(src, dst, r) for r in sorted(roots, key=lambda r: r.coords)]


def embed_ratfunc(f, emb):
    return f.map_coeffs(emb, emb.dst)


def equal_under_some_embedding(f, g):
    """Embedding e of f's field into g's field with e(f) == g, or None."""
    for emb in embeddings(f.field, g.field):
        if embed_ratfunc(f, emb) == g:
            return emb
    return None


# -- elliptic curves -------------------------------------------------------------

class Curve:
    """Short Weierstrass curve y^2 = x^3 + a x + b over a number field."""

    def __init__(self, a, b, field=None):
        if field is None:
            field = next((v.field for v in (a, b) if hasattr(v, "field")), QQ)
        self.field = field
        self.a, self.b = field(a), field(b)
        if (self.a ** 3 * 4 + self.b ** 2 * 27).is_zero():
            raise SingularCurve("4a^3 + 27b^2 = 0")

    def rhs(self, x):
        return x ** 3 + self.a * x + self.b

    def cubic(self):
        K = self.field
        return Poly(K, [self.b, self.a, K.zero, K.one])

    def point(self, x, y):
        return CurvePoint(self, self.field(x), self.field(y))

    def __eq__(self, other):
        return isinstance(other, Curve) and (self.a, self.b, self.field) == (other.a, other.b, other.field)

    def __hash__(self):
        return hash((self.a, self.b))

    def __repr__(self):
        return f"Curve(y^2 = x^3 + ({self.a})*x + ({self.b}))"


class CurvePoint:
    """Affine point (x, y) on a curve, or the identity when x is None."""

    __slots__ = ("curve", "x", "y")

    def __init__(self, curve, x=None, y=None):
        self.curve, self.x, self.y = curve, x, y
        if x is not None and y * y != curve.rhs(x):
            raise OffCurve(f"({x}, {y}) is not on {curve}")

    @property
    def is_identity(self):
        return self.x is None

    def __eq__(self, other):
        if not isinstance(other, CurvePoint):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return hash((self.x, self.y))

    def __add__(self, other):
        return ec_add(self, other)

    def __neg__(self):
        return ec_neg(self)

    def __rmul__(self, d):
        return ec_mul(d, self)

    def __repr__(self):
        return "O" if self.is_identity else f"({self.x}, {self.y})"


def O(curve):
    return CurvePoint(curve)


def ec_neg(P):
    if P.is_identity:
        return P
    return CurvePoint(P.curve, P.x, -P.y)


def ec_add(P, Q):
    if P.curve != Q.curve:
        raise OffCurve("points lie on different curves")
    if P.is_identity:
        return Q
    if Q.is_identity:
        return P
    E = P.curve
    if P.x == Q.x:
        if P.y != Q.y or P.y.is_zero():
            return O(E)
        lam = (P.x * P.x * 3 + E.a) / (P.y * 2)
    else:
        lam = (Q.y - P.y) / (Q.x - P.x)
    x3 = lam * lam - P.x - Q.x
    y3 = lam * (P.x - x3) - P.y
    return CurvePoint(E, x3, y3)


def ec_mul(d, P):
    if d < 0:
        return ec_mul(-d, ec_neg(P))
    acc = O(P.curve)
    base = P
    while d:
        if d & 1:
            acc = ec_add(acc, base)
        base = ec_add(base, base)
        d >>= 1
    return acc


# division polynomials as (p, e) meaning p(x) * y^e with y^2 = x^3 + a x + b

class _DivPolys:
    def __init__(self, E):
        self.E = E
        self.R = E.cubic()
        K = E.field
        x = Poly.x(K)
        a, b = E.a, E.b
        c = lambda v: Poly.const(K, v)
        self.cache = {
            0: (Poly(K, []), 0),
            1: (c(1), 0),
            2: (c(2), 1),
            3: (x ** 4 * 3 + x * x * (a * 6) + x * (b * 12) - c(a * a), 0),
            4: (
                (x ** 6 + x ** 4 * (a * 5) + x ** 3 * (b * 20) - x * x * (a * a * 5)
                 - x * (a * b * 4) - c(b * b * 8 + a ** 3)) * 4,
                1,
            ),
        }

    def mul(self, u, v):
        p = u[0] * v[0]
        e = u[1] + v[1]
        if e == 2:
            p, e = p * self.R, 0
        return (p, e)

    def sub(self, u, v):
        if u[0].is_zero():
            return (-v[0], v[1])
        if v[0].is_zero():
            return u
        assert u[1] == v[1]
        return (u[0] - v[0], u[1])

    def div_2y(self, u):
        p, e = u
        if e == 1:
            return (p * self.E.field(Fraction(1, 2)), 0)
        q, r = divmod(p, self.R)
        assert r.is_zero()
        return (q * self.E.field(Fraction(1, 2)), 1)

    def __call__(self, m):
        if m < 0:
            p, e = self(-m)
            return (-p, e)
        if m in self.cache:
            return self.cache[m]
        h = m // 2
        if m % 2:
            # psi_{2h+1} = psi_{h+2} psi_h^3 - psi_{h-1} psi_{h+1}^3
            A = self.mul(self(h + 2), self.mul(self(h), self.mul(self(h), self(h))))
            B = self.mul(self(h - 1), self.mul(self(h + 1), self.mul(self(h + 1), self(h + 1))))
            val = self.sub(A, B)
        else:
            # psi_{2h} = psi_h (psi_{h+2} psi_{h-1}^2 - psi_{h-2} psi_{h+1}^2) / (2y)
            A = self.mul(self(h + 2), self.mul(self(h - 1), self(h - 1)))
            B = self.mul(self(h - 2), self.mul(self(h + 1), self(h + 1)))
            val = self.div_2y(self.mul(self(h), self.sub(A, B)))
        self.cache[m] = val
        return val

    def square(self, m):
        """psi_m^2 as a polynomial in x."""
        return self.mul(self(m), self(m))[0]


def division_polynomial(E, m):
    """(p, e) with psi_m = p(x) * y^e."""
    return _DivPolys(E)(m)


def lattes_phi(E, d):
    """x(dP) as a rational function of x(P): x - psi_{d-1} psi_{d+1} / psi_d^2."""
    if d < 1:
        raise ValueError("d must be positive")
    psi = _DivPolys(E)
    den = psi.square(d)
    x = Poly.x(E.field)
    cross = psi.mul(psi(d - 1), psi(d + 1))
    assert cross[1] == 0 or cross[0].is_zero()
    return RatFunc(x * den - cross[0], den)


def _check_two_torsion(E, xQ):
    xQ = E.field(xQ)
    if not E.rhs(xQ).is_zero():
        raise NotTwoTorsion(f"({xQ}, 0) is not on {E}")
    return xQ


def translate_by_2torsion(E, xQ):
    """The involution x(R) -> x(R + Q) for Q = (xQ, 0)."""
    xQ = _check_two_torsion(E, xQ)
    K = E.field
    x = Poly.x(K)
    num = x * xQ + Poly.const(K, xQ * xQ * 2 + E.a)
    den = x - Poly.const(K, xQ)
    return RatFunc(num, den)


def lattes_translated(E, d, xQ):
    """x-line map of P -> dP + Q for the 2-torsion point Q = (xQ, 0)."""
    A = translate_by_2torsion(E, xQ)
    if d == 1:
        return A
    return compose(A, lattes_phi(E, d))
