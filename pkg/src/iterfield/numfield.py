"""Exact arithmetic in absolute number fields Q[a]/(m(a)).

Elements are stored by their coordinates in the power basis 1, a, ..., a^(D-1)
and are always fully reduced. Subfields are handled as Q-subspaces of the
ambient field, so membership and intersection questions become linear algebra
and no Galois conjugate is ever written down.
"""

from fractions import Fraction
from itertools import product
from numbers import Rational

from . import _linalg, _qpoly
from .errors import (
    DivisionByZero,
    FieldMismatch,
    NoRealRoot,
    NotMonic,
    Reducible,
    ZeroDegree,
    ZeroRadicand,
)

__all__ = [
    "NumberField",
    "NFElem",
    "Subfield",
    "Embedding",
    "QQ",
    "nf_create",
    "cyclotomic_field",
    "radical_field",
    "minimal_polynomial",
    "is_rational",
    "subfield_generated",
    "subfield_contains",
    "subfield_intersect",
    "adjoin_quadratic_root",
    "roots_in_field",
]


class NumberField:
    """The field Q[a]/(modulus) for a monic irreducible rational modulus.

    ``modulus`` is given lowest degree first, e.g. ``[-2, 0, 1]`` for a^2 - 2.
    Two fields compare equal when their moduli do.
    """

    def __init__(self, modulus, name="a", check=True):
        mod = _qpoly.trim(Fraction(c) for c in modulus)
        if len(mod) < 2:
            raise ZeroDegree("modulus must have degree at least 1")
        if mod[-1] != 1:
            raise NotMonic(f"modulus {_qpoly.to_str(mod, name)} is not monic")
        if check and not _qpoly.is_irreducible(mod):
            raise Reducible(f"modulus {_qpoly.to_str(mod, name)} factors over Q")
        self.modulus = tuple(mod)
        self.degree = len(mod) - 1
        self.name = name
        self._reduce_table = self._build_reduce_table()
        integral = all(v.denominator == 1 for row in self._reduce_table for v in row)
        self._integral_table = [[int(v) for v in row] for row in self._reduce_table] if integral else None

    def _build_reduce_table(self):
        # coordinates of a^k for k = D .. 2D-2
        D = self.degree
        table = []
        cur = [-c for c in self.modulus[:-1]]  # a^D
        for _ in range(max(D - 1, 0)):
            table.append(cur)
            # multiply by a
            top = cur[-1]
            nxt = [Fraction(0)] + cur[:-1]
            if top:
                nxt = [x - top * m for x, m in zip(nxt, self.modulus[:-1])]
            cur = nxt
        table.append(cur)
        return table

    def __eq__(self, other):
        return isinstance(other, NumberField) and self.modulus == other.modulus

    def __hash__(self):
        return hash(self.modulus)

    def __repr__(self):
        return f"NumberField({_qpoly.to_str(self.modulus, self.name)})"

    @property
    def is_rational_field(self):
        return self.degree == 1

    def __call__(self, value):
        """Coerce an int, Fraction or element of this field."""
        if isinstance(value, NFElem):
            if value.field != self:
                raise FieldMismatch(f"{value!r} is not in {self!r}")
            return value
        if isinstance(value, (int, Rational)):
            coords = [Fraction(value)] + [Fraction(0)] * (self.degree - 1)
            return NFElem(self, coords)
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def from_coords(self, coords):
        coords = [Fraction(c) for c in coords]
        if len(coords) != self.degree:
            raise ValueError("wrong number of coordinates")
        return NFElem(self, coords)

    def from_poly(self, coeffs):
        """Element represented by a rational polynomial in the generator."""
        coords = _qpoly.divmod_([Fraction(c) for c in coeffs], list(self.modulus))[1]
        coords = coords + [Fraction(0)] * (self.degree - len(coords))
        return NFElem(self, coords)

    @property
    def gen(self):
        if self.degree == 1:
            return self(-self.modulus[0])
        return self.from_coords([0, 1] + [0] * (self.degree - 2))

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def _mul_coords(self, x, y):
        D = self.degree
        if D == 1:
            return [x[0] * y[0]]
        prod = [Fraction(0)] * (2 * D - 1)
        for i, a in enumerate(x):
            if a:
                for j, b in enumerate(y):
                    if b:
                        prod[i + j] += a * b
        out = prod[:D]
        for k in range(D, 2 * D - 1):
            c = prod[k]
            if c:
                row = self._reduce_table[k - D]
                for i in range(D):
                    if row[i]:
                        out[i] += c * row[i]
        return out


class NFElem:
    """An element of a ``NumberField``; immutable, hashable."""

    __slots__ = ("field", "coords")

    def __init__(self, field, coords):
        self.field = field
        self.coords = tuple(coords)

    # -- coercion helpers
    def _other(self, other):
        if isinstance(other, NFElem):
            if other.field != self.field:
                raise FieldMismatch("elements of different number fields")
            return other
        if isinstance(other, (int, Rational)):
            return self.field(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return NFElem(self.field, [a + b for a, b in zip(self.coords, o.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return NFElem(self.field, [a - b for a, b in zip(self.coords, o.coords)])

    def __rsub__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o - self

    def __neg__(self):
        return NFElem(self.field, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, (int, Rational)) and not isinstance(other, bool):
            c = Fraction(other)
            return NFElem(self.field, [a * c for a in self.coords])
        o = self._other(other)
        if o is NotImplemented:
            return o
        return NFElem(self.field, self.field._mul_coords(self.coords, o.coords))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        D = self.field.degree
        if D == 1:
            return NFElem(self.field, [1 / self.coords[0]])
        # extended Euclid in Q[a]: s*self + t*m = 1
        r0, r1 = list(self.field.modulus), _qpoly.trim(self.coords)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _qpoly.divmod_(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _qpoly.sub(s0, _qpoly.mul(q, s1))
        inv = _qpoly.scale(s1, 1 / r1[0])
        return self.field.from_poly(inv)

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        if isinstance(other, (int, Rational)):
            if other == 0:
                raise DivisionByZero("division by zero")
            c = 1 / Fraction(other)
            return NFElem(self.field, [a * c for a in self.coords])
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return o * self.inverse()

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, NFElem):
            return self.field == other.field and self.coords == other.coords
        if isinstance(other, (int, Rational)):
            return self.coords[0] == other and not any(self.coords[1:])
        return NotImplemented

    def __hash__(self):
        if not any(self.coords[1:]):
            return hash(self.coords[0])
        return hash((self.field, self.coords))

    def is_zero(self):
        return not any(self.coords)

    def __bool__(self):
        return not self.is_zero()

    def rational(self):
        """The value as a ``Fraction`` when the element lies in Q, else ``None``."""
        if any(self.coords[1:]):
            return None
        return self.coords[0]

    def to_poly(self):
        return _qpoly.trim(self.coords)

    def multiplication_matrix(self):
        """Matrix (rows = images of basis vectors) of y -> self*y."""
        D = self.field.degree
        rows = []
        basis = [0] * D
        for i in range(D):
            e = list(basis)
            e[i] = Fraction(1)
            rows.append(self.field._mul_coords(e, self.coords))
        return rows

    def norm(self):
        return _linalg.det(self.multiplication_matrix())

    def __repr__(self):
        return f"NFElem({self})"

    def __str__(self):
        return _qpoly.to_str(self.coords, self.field.name) if self.field.degree > 1 else str(self.coords[0])


QQ = NumberField([0, 1], check=False)


# -- constructors ----------------------------------------------------------

def nf_create(modulus, name="a"):
    return NumberField(modulus, name=name)


def cyclotomic_field(n, name="a"):
    if n < 1:
        raise ValueError("n must be positive")
    return NumberField(_qpoly.cyclotomic(n), name=name, check=False)


def _exact_root(q: Fraction, k: int):
    """Positive rational k-th root of positive q, or None."""
    n = _qpoly.integer_nthroot(q.numerator, k)
    d = _qpoly.integer_nthroot(q.denominator, k)
    if n is None or d is None:
        return None
    return Fraction(n, d)


def radical_field(c, t, name="a"):
    """Field generated by the real t-th root r of c, together with r.

    The minimal polynomial of r is x^m - c^(m/t) (sign-adjusted for negative c),
    where m is the least divisor of t making c^(m/t) rational; such binomials
    are irreducible by the Capelli criterion, so nothing is factored.
    """
    c = Fraction(c)
    if c == 0:
        raise ZeroRadicand("radicand must be nonzero")
    if t < 1:
        raise ValueError("t must be positive")
    if c < 0 and t % 2 == 0:
        raise NoRealRoot(f"{c} has no real {t}-th root")
    mag = abs(c)
    for m in sorted(d for d in range(1, t + 1) if t % d == 0):
        b = _exact_root(mag, t // m)
        if b is not None:
            break
    if m == 1:
        r = b if c > 0 else -b
        return QQ, QQ(r)
    if c > 0:
        mod = [-b] + [0] * (m - 1) + [1]
    else:
        # r = -|c|^(1/t), m odd
        mod = [b] + [0] * (m - 1) + [1]
    field = NumberField(mod, name=name, check=False)
    return field, field.gen


# -- element queries ---------------------------------------------------------

def minimal_polynomial(e):
    """Monic minimal polynomial over Q, as a Fraction list lowest degree first."""
    tracker = _linalg.DependencyTracker(e.field.degree)
    power = e.field.one
    while True:
        dep = tracker.add(power.coords)
        if dep is not None:
            return [-c for c in dep] + [Fraction(1)]
        power = power * e


def is_rational(e):
    return e.rational()


# -- subfields ---------------------------------------------------------------

class Subfield:
    """A subfield of ``ambient`` presented by an echelon Q-basis.

    ``basis`` holds NFElems whose coordinate vectors are in reduced row echelon
    form, so equal subfields have identical bases.
    """

    def __init__(self, ambient, basis_rows, primitive=None, minpoly=None, hints=()):
        self.ambient = ambient
        self._rows = [list(r) for r in basis_rows]
        self.basis = tuple(ambient.from_coords(r) for r in self._rows)
        if primitive is None:
            primitive, minpoly = _find_primitive(ambient, self.basis, hints)
        self.primitive = primitive
        self.minpoly = minpoly

    @property
    def degree(self):
        return len(self._rows)

    def __eq__(self, other):
        return (
            isinstance(other, Subfield)
            and self.ambient == other.ambient
            and self._rows == other._rows
        )

    def __hash__(self):
        return hash((self.ambient, tuple(tuple(r) for r in self._rows)))

    def __repr__(self):
        return f"Subfield(degree={self.degree}, minpoly={_qpoly.to_str(self.minpoly)})"

    def contains(self, e):
        return subfield_contains(self, e)

    def is_subfield_of(self, other):
        return all(other.contains(b) for b in self.basis)

    def coordinates(self, e):
        """Coordinates of ``e`` with respect to primitive^0..primitive^(deg-1)."""
        powers = [self.ambient.one]
        for _ in range(self.degree - 1):
            powers.append(powers[-1] * self.primitive)
        A = [[p.coords[i] for p in powers] for i in range(self.ambient.degree)]
        return _linalg.solve(A, list(e.coords))

    def as_field(self, name="a"):
        """An abstract copy of this subfield and its embedding into the ambient."""
        if self.degree == 1:
            return QQ, Embedding(QQ, self.ambient, self.ambient.zero)
        F = NumberField(self.minpoly, name=name, check=False)
        return F, Embedding(F, self.ambient, self.primitive)

    def pull_back(self, e, field=None):
        """Express ``e`` (an ambient element inside this subfield) in ``as_field()``."""
        F = field if field is not None else self.as_field()[0]
        coeffs = self.coordinates(e)
        if coeffs is None:
            raise ValueError("element is not in the subfield")
        return F.from_poly(coeffs) if F.degree > 1 else F(coeffs[0])


def _span_rows(ambient, rows):
    red, _ = _linalg.rref(rows)
    return red


def _find_primitive(ambient, basis, hints=()):
    dim = len(basis)
    if dim == 1:
        return ambient.zero, [Fraction(0), Fraction(1)]
    # a generator that already does the job reads better than a combination
    for h in hints:
        mp = minimal_polynomial(h)
        if len(mp) - 1 == dim:
            return h, mp
    # small integer combinations ordered by max-norm
    bound = 1
    while True:
        for combo in product(range(-bound, bound + 1), repeat=dim):
            if max(abs(c) for c in combo) != bound:
                continue
            gamma = ambient.zero
            for c, b in zip(combo, basis):
                if c:
                    gamma = gamma + b * c
            mp = minimal_polynomial(gamma)
            if len(mp) - 1 == dim:
                return gamma, mp
        bound += 1


def _closure(ambient, vectors):
    rows = _span_rows(ambient, [ambient.one.coords] + [list(v) for v in vectors])
    while True:
        elems = [ambient.from_coords(r) for r in rows]
        new = list(rows)
        for i in range(len(elems)):
            for j in range(i, len(elems)):
                new.append(list((elems[i] * elems[j]).coords))
        red = _span_rows(ambient, new)
        if len(red) == len(rows):
            return red
        rows = red


def subfield_generated(elems, ambient=None):
    elems = list(elems)
    if ambient is None:
        if not elems:
            raise ValueError("ambient field needed for an empty generator list")
        ambient = elems[0].field
    for e in elems:
        if e.field != ambient:
            raise FieldMismatch("generators live in different fields")
    rows = _closure(ambient, [e.coords for e in elems])
    return Subfield(ambient, rows, hints=elems[:8])


def subfield_contains(S, e):
    if e.field != S.ambient:
        raise FieldMismatch("element and subfield have different ambients")
    return _linalg.rank(S._rows + [list(e.coords)]) == S.degree


def subfield_intersect(S1, S2):
    if S1.ambient != S2.ambient:
        raise FieldMismatch("subfields of different ambients")
    # solve sum u_i x_i = sum w_j y_j
    n1, n2 = S1.degree, S2.degree
    D = S1.ambient.degree
    cols = [r for r in S1._rows] + [[-v for v in r] for r in S2._rows]
    A = [[cols[c][i] for c in range(n1 + n2)] for i in range(D)]
    null = _linalg.nullspace(A)
    vecs = []
    for v in null:
        w = [Fraction(0)] * D
        for i in range(n1):
            if v[i]:
                w = [a + v[i] * b for a, b in zip(w, S1._rows[i])]
        vecs.append(w)
    rows = _span_rows(S1.ambient, vecs)
    return Subfield(S1.ambient, rows)


def rational_subfield(ambient):
    return subfield_generated([], ambient=ambient)


# -- embeddings --------------------------------------------------------------

class Embedding:
    """Field homomorphism src -> dst determined by the image of src.gen."""

    def __init__(self, src, dst, image, check=True):
        self.src, self.dst = src, dst
        self.image = dst(image)
        if check and src.degree > 1:
            val = dst.zero
            for c in reversed(src.modulus):
                val = val * self.image + c
            if not val.is_zero():
                raise ValueError("image does not satisfy the source modulus")
        self._powers = [dst.one]
        for _ in range(src.degree - 1):
            self._powers.append(self._powers[-1] * self.image)

    def __call__(self, e):
        if isinstance(e, (int, Rational)):
            return self.dst(e)
        if e.field != self.src:
            raise FieldMismatch("element is not in the embedding's source")
        out = self.dst.zero
        for c, p in zip(e.coords, self._powers):
            if c:
                out = out + p * c
        return out

    def compose(self, inner):
        """self after inner."""
        return Embedding(inner.src, self.dst, self(inner.image), check=False)

    @classmethod
    def identity(cls, field):
        return cls(field, field, field.gen, check=False)

    def __repr__(self):
        return f"Embedding({self.src!r} -> {self.dst!r}, gen -> {self.image})"


# -- polynomial roots in a field ----------------------------------------------

def _alg_mul(P, u, v, L):
    """Product in L[y]/(P) for monic P (list of NFElem, lowest first)."""
    n = len(P) - 1
    prod = [L.zero] * (2 * n - 1)
    for i, a in enumerate(u):
        if a:
            for j, b in enumerate(v):
                if b:
                    prod[i + j] = prod[i + j] + a * b
    for k in range(2 * n - 2, n - 1, -1):
        c = prod[k]
        if c:
            for j in range(n):
                prod[k - n + j] = prod[k - n + j] - c * P[j]
    return prod[:n]


def _alg_flatten(u):
    out = []
    for a in u:
        out.extend(a.coords)
    return out


def _alg_minpoly(gamma, P, L):
    n = len(P) - 1
    tracker = _linalg.DependencyTracker(n * L.degree)
    power = [L.one] + [L.zero] * (n - 1)
    powers = []
    while True:
        dep = tracker.add(_alg_flatten(power))
        if dep is not None:
            return [-c for c in dep] + [Fraction(1)], powers
        powers.append(power)
        power = _alg_mul(P, power, gamma, L)


def _shift_values():
    yield 1
    k = 1
    while True:
        yield -k
        k += 1
        yield k


def _primitive_of_algebra(P, L):
    """gamma = y + c*a generating Q-algebra L[y]/(P); returns (c, minpoly, powers)."""
    n = len(P) - 1
    target = n * L.degree
    for c in _shift_values():
        gamma = [L.gen * c, L.one] + [L.zero] * (n - 2)
        mp, powers = _alg_minpoly(gamma, P, L)
        if len(mp) - 1 == target:
            return c, gamma, mp, powers
        if c > 50:
            raise RuntimeError("no primitive element found")


def _poly_gcd_L(a, b, L):
    def trim(p):
        p = list(p)
        while p and p[-1].is_zero():
            p.pop()
        return p

    a, b = trim(a), trim(b)
    while b:
        inv = b[-1].inverse()
        r = list(a)
        while len(r) >= len(b):
            coef = r[-1] * inv
            shift = len(r) - len(b)
            for j in range(len(b)):
                r[shift + j] = r[shift + j] - coef * b[j]
            r = trim(r)
            if not r:
                break
        a, b = b, r
    inv = a[-1].inverse()
    return [c * inv for c in a]


def roots_in_field(P, L):
    """Distinct roots in L of a polynomial P over L (list of NFElem, lowest first).

    Uses Trager's norm method: factor the minimal polynomial of y + c*a in
    L[y]/(P) over Q and take gcds with P; linear gcds are the roots.
    """
    P = [L(c) for c in P]
    while P and P[-1].is_zero():
        P.pop()
    if len(P) <= 1:
        return []
    lead = P[-1].inverse()
    P = [c * lead for c in P]
    # square-free part
    dP = [P[i] * i for i in range(1, len(P))]
    g = _poly_gcd_L(P, dP, L)
    if len(g) > 1:
        P = _poly_divexact_L(P, g, L)
    if len(P) == 2:
        return [-P[0]]
    if L.degree == 1:
        qp = [c.coords[0] for c in P]
        return [L(r) for r in _qpoly.rational_roots(qp)]
    c, _, mp, _ = _primitive_of_algebra(P, L)
    roots = []
    for fac, _ in _qpoly.factor(mp):
        if len(fac) - 1 > L.degree:
            continue
        # h(y + c*a) as a polynomial in y over L
        shift = [L.gen * c, L.one]
        h = [L.zero]
        for coef in reversed(fac):
            h = _poly_mul_L(h, shift, L)
            h[0] = h[0] + coef
        gg = _poly_gcd_L(P, h, L)
        if len(gg) == 2:
            roots.append(-gg[0])
    return roots


def _poly_mul_L(p, q, L):
    out = [L.zero] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
    return out


def _poly_divexact_L(p, q, L):
    r = list(p)
    dq = len(q) - 1
    inv = q[-1].inverse()
    quo = [L.zero] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        coef = r[k + dq] * inv
        quo[k] = coef
        for j in range(dq + 1):
            r[k + j] = r[k + j] - coef * q[j]
    return quo


def adjoin_quadratic_root(L, p, q, name="a"):
    """Extend L by a root of y^2 + p*y + q.

    Returns ``(M, embedding L -> M, root)``. When the quadratic already has a
    root in L (double roots included) M is L itself.
    """
    p, q = L(p), L(q)
    disc = p * p - q * 4
    if disc.is_zero():
        return L, Embedding.identity(L), -p / 2
    roots = roots_in_field([q, p, L.one], L)
    if roots:
        return L, Embedding.identity(L), _canonical_choice(roots)
    P = [q, p, L.one]
    c, gamma, mp, powers = _primitive_of_algebra(P, L)
    M = NumberField(mp, name=name, check=False)
    # express a (= L.gen) and y in the power basis of gamma
    A = [[v for v in _alg_flatten(pw)] for pw in powers]
    At = [list(col) for col in zip(*A)]
    gen_in_alg = [L.gen, L.zero]
    a_coeffs = _linalg.solve(At, _alg_flatten(gen_in_alg))
    image = M.from_poly(a_coeffs) if M.degree > 1 else M(a_coeffs[0])
    emb = Embedding(L, M, image)
    root = M.gen - emb(L.gen) * c
    return M, emb, root


def _canonical_choice(roots):
    # largest power-basis coordinates: picks +2 over -2 for y^2 - 4
    return max(roots, key=lambda r: tuple(r.coords))
