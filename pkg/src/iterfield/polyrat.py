"""Polynomials and rational functions with number-field coefficients.

``RatFunc`` values are always canonical: coprime numerator and denominator
with a monic denominator. Composition works on the homogenized numerator and
denominator, which keeps coprime inputs coprime, so no gcd is needed there.
"""

from fractions import Fraction
from numbers import Rational

from . import _qpoly
from .errors import BothZero, EqualPoints, FieldMismatch, ZeroDenominator
from .numfield import NFElem

__all__ = [
    "NEG_INF",
    "Poly",
    "RatFunc",
    "Mobius",
    "ProjPoint",
    "INF",
    "poly_gcd",
    "ratfunc_canonicalize",
    "compose",
    "iterate",
    "conjugate",
    "evaluate",
    "mobius_from_pair",
]

NEG_INF = float("-inf")


class Poly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of x^i."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs=()):
        self.field = field
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def _raw(cls, field, coeffs):
        p = cls.__new__(cls)
        p.field = field
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        p.coeffs = tuple(cs)
        return p

    @classmethod
    def x(cls, field):
        return cls._raw(field, [field.zero, field.one])

    @classmethod
    def const(cls, field, c):
        return cls._raw(field, [field(c)])

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else NEG_INF

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.field.zero

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def support(self):
        return [i for i, c in enumerate(self.coeffs) if not c.is_zero()]

    def _check(self, other):
        if isinstance(other, Poly):
            if other.field != self.field:
                raise FieldMismatch("polynomials over different fields")
            return other
        if isinstance(other, (int, Rational, NFElem)):
            return Poly.const(self.field, other)
        return NotImplemented

    def __add__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly._raw(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        o = self._check(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        if isinstance(other, (int, Rational, NFElem)):
            c = self.field(other)
            return Poly._raw(self.field, [a * c for a in self.coeffs])
        o = self._check(other)
        if o is NotImplemented:
            return o
        if not self.coeffs or not o.coeffs:
            return Poly._raw(self.field, [])
        return Poly._raw(self.field, _mul_coeffs(self.field, self.coeffs, o.coeffs))

    __rmul__ = __mul__

    def __pow__(self, n):
        result = Poly.const(self.field, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __divmod__(self, other):
        o = self._check(other)
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.coeffs)
        dq = len(o.coeffs) - 1
        if len(r) - 1 < dq:
            return Poly._raw(self.field, []), self
        inv = o.coeffs[-1].inverse()
        quo = [self.field.zero] * (len(r) - dq)
        for k in range(len(r) - 1 - dq, -1, -1):
            c = r[k + dq] * inv
            quo[k] = c
            if c:
                for j, b in enumerate(o.coeffs):
                    if b:
                        r[k + j] = r[k + j] - c * b
        return Poly._raw(self.field, quo), Poly._raw(self.field, r[:dq])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        if isinstance(other, (int, Rational, NFElem)):
            return self == Poly.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def monic(self):
        if not self.coeffs:
            return self
        inv = self.coeffs[-1].inverse()
        return Poly._raw(self.field, [c * inv for c in self.coeffs])

    def derivative(self):
        return Poly._raw(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation at a field element or another polynomial."""
        acc = Poly._raw(self.field, []) if isinstance(x, Poly) else self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def is_rational(self):
        return all(c.rational() is not None for c in self.coeffs)

    def coordinate_polys(self):
        """Rational polynomials q_j with self = sum_j a^j q_j(x)."""
        D = self.field.degree
        return [_qpoly.trim([c.coords[j] for c in self.coeffs]) for j in range(D)]

    def to_rational_list(self):
        return [c.rational() for c in self.coeffs]

    def map_coeffs(self, fn, field):
        return Poly._raw(field, [fn(c) for c in self.coeffs])

    def __repr__(self):
        return f"Poly({format_poly(self)})"

    def __str__(self):
        return format_poly(self)


def _mul_coeffs(field, a, b):
    if field.degree == 1:
        # plain rationals: avoid NFElem overhead
        av = [c.coords[0] for c in a]
        bv = [c.coords[0] for c in b]
        out = _qpoly.mul(av, bv)
        out += [Fraction(0)] * (len(a) + len(b) - 1 - len(out))
        return [field(c) for c in out]
    D = field.degree
    if min(len(a), len(b)) >= _qpoly._KRONECKER_MIN and field._integral_table is not None:
        return _mul_coeffs_packed(field, a, b)
    # multiply coordinate-wise as polynomials in (x, a), then reduce in a
    ca = [[c.coords[j] for c in a] for j in range(D)]
    cb = [[c.coords[j] for c in b] for j in range(D)]
    n = len(a) + len(b) - 1
    acc = [[Fraction(0)] * n for _ in range(2 * D - 1)]
    for i in range(D):
        if not any(ca[i]):
            continue
        for j in range(D):
            if not any(cb[j]):
                continue
            prod = _qpoly.mul(ca[i], cb[j])
            row = acc[i + j]
            for k, v in enumerate(prod):
                row[k] += v
    coords = acc[:D]
    for k in range(D, 2 * D - 1):
        red = field._reduce_table[k - D]
        src = acc[k]
        for i in range(D):
            if red[i]:
                r = red[i]
                dst = coords[i]
                for t, v in enumerate(src):
                    if v:
                        dst[t] += r * v
    return [NFElem(field, [coords[j][t] for j in range(D)]) for t in range(n)]


def _mul_coeffs_packed(field, a, b):
    """Same product with one big-integer multiplication.

    Both inputs become integer polynomials in (x, a) over a common
    denominator; the slot for x^i a^j is i*(2D-1) + j, so a-degrees of the
    product (at most 2D-2) never spill into the next x-slot.
    """
    D = field.degree
    W = 2 * D - 1
    ia, da = _qpoly._integer_form([v for c in a for v in c.coords])
    ib, db = _qpoly._integer_form([v for c in b for v in c.coords])

    def spread(ints, count):
        out = [0] * (count * W)
        for i in range(count):
            out[i * W:i * W + D] = ints[i * D:(i + 1) * D]
        return out

    sa, sb = spread(ia, len(a)), spread(ib, len(b))
    ma, mb = max(map(abs, ia)), max(map(abs, ib))
    bound = max(ma * mb * min(len(a), len(b)) * D, ma, mb)
    width = (bound.bit_length() + 2 + 7) // 8
    n = len(a) + len(b) - 1
    prod = _qpoly._unpack(_qpoly.bigmul(_qpoly._pack(sa, width), _qpoly._pack(sb, width)), width, n * W)
    table = field._integral_table
    den = da * db
    out = []
    for t in range(n):
        row = prod[t * W:(t + 1) * W]
        coords = row[:D]
        for k in range(D, W):
            v = row[k]
            if v:
                for i, r in enumerate(table[k - D]):
                    if r:
                        coords[i] += r * v
        out.append(NFElem(field, [Fraction(v, den) for v in coords]))
    return out


def poly_gcd(a, b):
    """Monic gcd by Euclid over the coefficient field."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd of two zero polynomials")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def format_coeff(c):
    s = str(c)
    if c.field.degree > 1 and len([x for x in c.coords if x]) > 1:
        return f"({s})"
    return s


def format_poly(p, var="x"):
    if p.is_zero():
        return "0"
    terms = []
    for i in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[i]
        if c.is_zero():
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        r = c.rational()
        nonzero = [x for x in c.coords if x]
        if r is not None:
            sign = "-" if r < 0 else "+"
            mag = abs(r)
            body = mono if (mono and mag == 1) else (f"{mag}*{mono}" if mono else str(mag))
        elif len(nonzero) == 1:
            # single generator term, e.g. -3*a^2
            neg = nonzero[0] < 0
            sign = "-" if neg else "+"
            s = str(-c if neg else c)
            body = f"{s}*{mono}" if mono else s
        else:
            sign = "+"
            body = f"({c})*{mono}" if mono else f"({c})"
        terms.append((sign, body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


class RatFunc:
    """A rational function num/den in canonical form (coprime, den monic)."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.const(num.field, 1)
        c = ratfunc_canonicalize(num, den)
        self.num, self.den = c.num, c.den

    @classmethod
    def _trusted(cls, num, den):
        """Wrap a pair already known to be coprime; only normalizes den."""
        if den.is_zero():
            raise ZeroDenominator("zero denominator")
        obj = cls.__new__(cls)
        if num.is_zero():
            obj.num, obj.den = num, Poly.const(num.field, 1)
            return obj
        lc = den.lc()
        if lc != 1:
            inv = lc.inverse()
            num, den = num * inv, den * inv
        obj.num, obj.den = num, den
        return obj

    @classmethod
    def from_poly(cls, p):
        return cls._trusted(p, Poly.const(p.field, 1))

    @classmethod
    def identity(cls, field):
        return cls.from_poly(Poly.x(field))

    @classmethod
    def constant(cls, field, c):
        return cls.from_poly(Poly.const(field, c))

    @property
    def field(self):
        return self.num.field

    @property
    def degree(self):
        if self.num.is_zero():
            return 0
        return max(self.num.degree, self.den.degree)

    def is_constant(self):
        return self.degree == 0

    def is_polynomial(self):
        return self.den.degree == 0

    def coefficients(self):
        return list(self.num.coeffs) + list(self.den.coeffs)

    def is_rational(self):
        return self.num.is_rational() and self.den.is_rational()

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __call__(self, P):
        return evaluate(self, P)

    def __mul__(self, other):
        if not isinstance(other, RatFunc):
            return NotImplemented
        return ratfunc_canonicalize(self.num * other.num, self.den * other.den)

    def map_coeffs(self, fn, field):
        return RatFunc(self.num.map_coeffs(fn, field), self.den.map_coeffs(fn, field))

    def __repr__(self):
        return f"RatFunc({self})"

    def __str__(self):
        return format_ratfunc(self)


def format_ratfunc(f):
    if f.den.degree == 0:
        return format_poly(f.num)
    return f"({format_poly(f.num)})/({format_poly(f.den)})"


def ratfunc_canonicalize(p, q):
    if q.is_zero():
        raise ZeroDenominator("zero denominator")
    if p.field != q.field:
        raise FieldMismatch("numerator and denominator over different fields")
    if p.is_zero():
        return RatFunc._trusted(p, Poly.const(p.field, 1))
    g = poly_gcd(p, q)
    if g.degree > 0:
        p, q = p // g, q // g
    return RatFunc._trusted(p, q)


def _homog_eval(F, D, p, q):
    """sum_i F[i] p^i q^(D-i) for polynomials p, q and coefficient list F."""
    field = p.field
    if q.degree == 0:
        # polynomial inner function: Horner keeps scalars off the large products
        c = q[0]
        acc = Poly._raw(field, [])
        cpow = field(1)
        coeffs = []
        for i in range(D, -1, -1):
            coeffs.append(F[i] * cpow)
            cpow = cpow * c
        for v in coeffs:
            acc = acc * p + Poly.const(field, v)
        return acc
    pp = [Poly.const(field, 1)]
    qp = [Poly.const(field, 1)]
    for _ in range(D):
        pp.append(pp[-1] * p)
        qp.append(qp[-1] * q)
    acc = Poly._raw(field, [])
    for i in range(D + 1):
        if not F[i].is_zero():
            acc = acc + pp[i] * qp[D - i] * F[i]
    return acc


def compose(f, g):
    """Canonical form of f(g(x)).

    Homogenizing f at degree D = deg f and substituting the coprime pair
    (g.num, g.den) yields a coprime pair again, so only den needs normalizing.
    """
    if f.field != g.field:
        raise FieldMismatch("functions over different fields")
    D = f.degree
    if D == 0:
        return f
    F = [f.num[i] for i in range(D + 1)]
    G = [f.den[i] for i in range(D + 1)]
    p, q = g.num, g.den
    num = _homog_eval(F, D, p, q)
    den = _homog_eval(G, D, p, q)
    if den.is_zero():
        # constant g sitting on a pole of f
        raise ZeroDenominator("constant inner function hits a pole of the outer one")
    return RatFunc._trusted(num, den)


def iterate(f, n):
    if n < 1:
        raise ValueError("n must be at least 1")
    result = f
    for _ in range(n - 1):
        result = compose(f, result)
    return result


class Mobius:
    """(a x + b)/(c x + d) up to scalars; equality is projective."""

    __slots__ = ("a", "b", "c", "d", "field")

    def __init__(self, a, b, c, d, field=None):
        if field is None:
            field = next(v.field for v in (a, b, c, d) if isinstance(v, NFElem))
        self.field = field
        self.a, self.b, self.c, self.d = (field(v) for v in (a, b, c, d))
        if (self.a * self.d - self.b * self.c).is_zero():
            raise ValueError("degenerate fractional linear transformation")

    @classmethod
    def identity(cls, field):
        return cls(1, 0, 0, 1, field=field)

    def det(self):
        return self.a * self.d - self.b * self.c

    def as_ratfunc(self):
        return RatFunc(Poly(self.field, [self.b, self.a]), Poly(self.field, [self.d, self.c]))

    def compose(self, other):
        """self after other."""
        return Mobius(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            field=self.field,
        )

    def inverse(self):
        return Mobius(self.d, -self.b, -self.c, self.a, field=self.field)

    def __call__(self, P):
        return evaluate(self.as_ratfunc(), P)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def __eq__(self, other):
        if not isinstance(other, Mobius):
            return NotImplemented
        x, y = self.entries(), other.entries()
        return all((x[i] * y[j] - x[j] * y[i]).is_zero() for i in range(4) for j in range(i + 1, 4))

    def __hash__(self):
        return 0

    def is_rational(self):
        k = next(i for i, v in enumerate(self.entries()) if not v.is_zero())
        piv = self.entries()[k]
        return all((v / piv).rational() is not None for v in self.entries())

    def normalized(self):
        """Scale so the first nonzero entry is 1."""
        ents = self.entries()
        piv = next(v for v in ents if not v.is_zero())
        return Mobius(*(v / piv for v in ents), field=self.field)

    def __repr__(self):
        return f"Mobius({self.as_ratfunc()})"


def mobius_compose(m1, m2):
    return m1.compose(m2)


def mobius_inverse(m):
    return m.inverse()


def conjugate(f, ell):
    """f^ell = ell^-1 o f o ell."""
    if isinstance(ell, Mobius):
        L, Linv = ell.as_ratfunc(), ell.inverse().as_ratfunc()
    else:
        raise TypeError("conjugate() expects a Mobius transformation")
    return compose(Linv, compose(f, L))


class ProjPoint:
    """A point of P^1: a finite field element or infinity (``value is None``)."""

    __slots__ = ("value",)

    def __init__(self, value=None):
        self.value = value

    @property
    def is_infinity(self):
        return self.value is None

    def rational(self):
        """Fraction for finite rational points, ``INF`` for infinity, else None."""
        if self.value is None:
            return INF
        return self.value.rational()

    def is_rational(self):
        return self.value is None or self.value.rational() is not None

    def __eq__(self, other):
        if not isinstance(other, ProjPoint):
            return NotImplemented
        if self.value is None or other.value is None:
            return self.value is None and other.value is None
        return self.value == other.value

    def __hash__(self):
        return hash(self.value) if self.value is not None else hash("inf")

    def sort_key(self):
        if self.value is None:
            return (1, ())
        return (0, self.value.coords)

    def __repr__(self):
        return "ProjPoint(inf)" if self.value is None else f"ProjPoint({self.value})"

    def __str__(self):
        return "inf" if self.value is None else str(self.value)


INF = ProjPoint(None)


def evaluate(f, P):
    if P.is_infinity:
        if f.num.is_zero():
            return ProjPoint(f.field.zero)
        dn, dd = f.num.degree, f.den.degree
        if dn > dd:
            return INF
        if dn < dd:
            return ProjPoint(f.field.zero)
        return ProjPoint(f.num.lc() / f.den.lc())
    v = f.field(P.value)
    q = f.den(v)
    if q.is_zero():
        return INF
    return ProjPoint(f.num(v) / q)


def mobius_from_pair(P, Q):
    """Some ell with ell(0) = P and ell(inf) = Q."""
    if P == Q:
        raise EqualPoints("the two points must differ")
    field = (Q.value if P.is_infinity else P.value).field
    if Q.is_infinity:
        return Mobius(1, P.value, 0, 1, field=field)
    if P.is_infinity:
        return Mobius(Q.value, 1, 1, 0, field=field)
    return Mobius(Q.value, P.value, 1, 1, field=field)
