"""Decision procedures for fields of definition under iteration.

The base field is always Q. For polynomials the verdicts follow the normal
form a*x^k*g(x^t) (g over Q, a^t rational): membership in A_n needs
t | S_n(k), membership in A needs gcd(k, t) = 1. For rational functions the
B(Q) test searches PGL_2(Q)-conjugates that put an invariant rational pair at
{0, inf} and then looks for the same shape.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from math import gcd
from typing import NamedTuple, Optional

from . import _qpoly
from .errors import ConstantInput, PreconditionError
from .numfield import QQ, Subfield, subfield_generated, subfield_intersect
from .polyrat import (
    INF,
    Mobius,
    Poly,
    ProjPoint,
    RatFunc,
    compose,
    conjugate,
    evaluate,
    iterate,
    mobius_from_pair,
)

__all__ = [
    "sn",
    "min_n_divisibility",
    "field_of_definition",
    "field_of_iterates",
    "ratfunc_in_An_direct",
    "rational_power_order",
    "ShapeWitness",
    "Verdict",
    "poly_classify_An",
    "poly_classify_A",
    "shape_detect",
    "PeriodicData",
    "rational_periodic_points",
    "rational_graph_points",
    "classify_B",
    "ClassificationReport",
    "report",
]


def sn(k, n):
    """1 + k + ... + k^(n-1)."""
    if k < 0 or n < 1:
        raise ValueError("need k >= 0 and n >= 1")
    if k == 1:
        return n
    return (k ** n - 1) // (k - 1)


def min_n_divisibility(t, k, bound):
    """Least n <= bound with t | S_n(k), or None."""
    s = 0
    p = 1
    for n in range(1, bound + 1):
        s = (s + p) % t
        p = (p * k) % t
        if s == 0:
            return n
    return None


# -- fields -------------------------------------------------------------------

def field_of_definition(f):
    if isinstance(f, Poly):
        coeffs = list(f.coeffs)
        ambient = f.field
    else:
        coeffs = f.coefficients()
        ambient = f.field
    return subfield_generated(coeffs, ambient=ambient)


class FieldOfIterates(NamedTuple):
    subfield: Subfield
    stabilized_at: int
    degrees: list  # (n, [Q(f^n):Q])
    bounded: bool  # True when the result is only an upper bound


def field_of_iterates(f, max_n=6):
    """Running intersection of Q(f), Q(f^2), ..., Q(f^max_n).

    ``bounded`` is False once the intersection is Q or has been observed not
    to shrink over two consecutive steps.
    """
    if max_n < 1:
        raise ValueError("max_n must be positive")
    running = None
    history = []
    degrees = []
    g = f
    for n in range(1, max_n + 1):
        if n > 1:
            g = compose(f, g)
        K = field_of_definition(g)
        degrees.append((n, K.degree))
        running = K if running is None else subfield_intersect(running, K)
        history.append(running)
    final = history[-1]
    stabilized_at = next(i + 1 for i, S in enumerate(history) if S == final)
    confirmed = final.degree == 1 or stabilized_at < max_n
    return FieldOfIterates(final, stabilized_at, degrees, not confirmed)


def ratfunc_in_An_direct(f, n):
    if isinstance(f, Poly):
        f = RatFunc.from_poly(f)
    return iterate(f, n).is_rational()


def rational_power_order(a):
    """Least s >= 1 with a^s in Q, or None when no power of ``a`` is rational.

    With D the ambient degree, u = a^D / N(a) satisfies u^s = 1, so u is a root
    of unity of some order w and s divides D*w.
    """
    if a.is_zero():
        raise ValueError("zero has no multiplicative order")
    if a.rational() is not None:
        return 1
    D = a.field.degree
    u = a ** D / a.norm()
    w = None
    p = u
    for m in range(1, 2 * D * D + 3):
        if p == 1:
            w = m
            break
        p = p * u
    if w is None:
        return None
    N = D * w
    for s in sorted(d for d in range(1, N + 1) if N % d == 0):
        if (a ** s).rational() is not None:
            return s
    return None  # unreachable in exact arithmetic


# -- witnesses ----------------------------------------------------------------

def _lift(g, K):
    """A rational function over Q viewed over K."""
    return g.map_coeffs(lambda c: K(c.rational()), K)


@dataclass
class ShapeWitness:
    """conjugate(f, ell) == a * x^k * g(x^t) with g over Q and a^t rational."""

    ell: Mobius
    a: object
    k: int
    t: int
    g: RatFunc  # over QQ

    def shape(self):
        K = self.a.field
        x = Poly.x(K)
        xt = RatFunc.from_poly(x ** self.t)
        inner = compose(_lift(self.g, K), xt)
        mono = RatFunc.from_poly(x ** self.k * self.a)
        return mono * inner

    def verify(self, f):
        if isinstance(f, Poly):
            f = RatFunc.from_poly(f)
        if not self.ell.is_rational():
            return False
        if (self.a ** self.t).rational() is None or not self.g.is_rational():
            return False
        return conjugate(f, self.ell) == self.shape()

    def as_dict(self):
        e = self.ell.normalized()
        return {
            "ell": [str(v) for v in e.entries()],
            "a": str(self.a),
            "k": self.k,
            "t": self.t,
            "g": str(self.g),
        }


class Verdict(NamedTuple):
    member: bool
    witness: Optional[ShapeWitness] = None
    note: Optional[str] = None


def _as_poly(f):
    if isinstance(f, RatFunc):
        if not f.is_polynomial():
            raise TypeError("expected a polynomial")
        return f.num
    return f


def _over_q_witness(f):
    """t = 1 witness for a map already defined over Q: f = 1 * x * (f/x)."""
    K = f.field
    g = f * RatFunc(Poly.const(K, 1), Poly.x(K))
    gq = g.map_coeffs(lambda c: QQ(c.rational()), QQ)
    return ShapeWitness(Mobius.identity(K), K.one, 1, 1, gq)


def _poly_q(coeffs):
    return RatFunc.from_poly(Poly(QQ, coeffs))


class _Depressed(NamedTuple):
    ell: Mobius
    b: object  # reference (leading) coefficient
    k0: int
    g0: int  # gcd of exponent differences; 0 for a monomial
    coeffs: dict  # exponent -> rational ratio to b
    s: Optional[int]


def _depress(f):
    """Shared front end of the polynomial classifiers for deg >= 2, f not over Q.

    Returns (_Depressed, None) or (None, reason).
    """
    K = f.field
    d = f.degree
    ratio = (f[d - 1] / f[d]).rational()
    if ratio is None:
        return None, "a_{d-1}/a_d is irrational"
    beta = -ratio / d
    ell = Mobius(1, beta, 0, 1, field=K)
    f1 = conjugate(RatFunc.from_poly(f), ell).num
    supp = f1.support()
    b = f1.lc()
    coeffs = {}
    for i in supp:
        r = (f1[i] / b).rational()
        if r is None:
            return None, "depressed form has an irrational coefficient ratio"
        coeffs[i] = r
    k0 = supp[0]
    g0 = 0
    for i in supp:
        g0 = gcd(g0, i - k0)
    s = rational_power_order(b)
    if s is None:
        return None, "no power of the leading coefficient is rational"
    return _Depressed(ell, b, k0, g0, coeffs, s), None


def _witness_from(dep, t):
    g = [Fraction(0)] * ((max(dep.coeffs) - dep.k0) // t + 1)
    for i, c in dep.coeffs.items():
        g[(i - dep.k0) // t] = c
    return ShapeWitness(dep.ell, dep.b, dep.k0, t, _poly_q(g))


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _degree_one_An(f, n):
    alpha, beta = f[1], f[0]
    if alpha == 1:
        if beta.rational() is not None:
            return Verdict(True, _over_q_witness(RatFunc.from_poly(f)))
        return Verdict(False, note="translation by an irrational amount")
    an = alpha ** n
    if an == 1:
        return Verdict(True, _degree_one_witness(f), note="alpha^n = 1")
    if an.rational() is None:
        return Verdict(False, note="alpha^n is irrational")
    shift = (beta / (alpha - 1)).rational()
    if shift is None:
        return Verdict(False, note="fixed point -beta/(alpha-1) is irrational")
    return Verdict(True, _degree_one_witness(f))


def _degree_one_witness(f):
    alpha, beta = f[1], f[0]
    K = f.field
    shift = (beta / (alpha - 1)).rational()
    if shift is None:
        return None  # Q-conjugate to no monomial, yet alpha^n = 1 puts it in A_n
    s = rational_power_order(alpha)
    ell = Mobius(1, -shift, 0, 1, field=K)
    return ShapeWitness(ell, alpha, 1, s, _poly_q([1]))


def poly_classify_An(f, n):
    f = _as_poly(f)
    if f.degree < 1:
        raise ConstantInput("constant polynomial")
    if f.degree == 1:
        return _degree_one_An(f, n)
    if f.is_rational():
        return Verdict(True, _over_q_witness(RatFunc.from_poly(f)), "defined over Q")
    dep, why = _depress(f)
    if dep is None:
        return Verdict(False, note=why)
    k0 = dep.k0
    if k0 == 0:
        return Verdict(False, note="depressed form has nonzero constant term")
    target = sn(k0, n)
    if dep.g0 == 0:
        cands = [dep.s]
    else:
        cands = sorted(_divisors(dep.g0), reverse=True)
    for t in cands:
        if t % dep.s == 0 and target % t == 0:
            return Verdict(True, _witness_from(dep, t))
    return Verdict(False, note=f"no t with {dep.s} | t | {dep.g0 or 'any'} dividing S_{n}({k0})")


def poly_classify_A(f):
    f = _as_poly(f)
    if f.degree < 1:
        raise ConstantInput("constant polynomial")
    if f.degree == 1:
        alpha, beta = f[1], f[0]
        if alpha == 1:
            return _degree_one_An(f, 1)
        s = rational_power_order(alpha)
        if s is None:
            return Verdict(False, note="no power of alpha is rational")
        if (alpha ** (2 * s)) == 1:
            # alpha^s is rational, so alpha is a root of unity iff alpha^s = +-1
            return Verdict(True, _degree_one_witness(f), note="alpha is a root of unity")
        if (beta / (alpha - 1)).rational() is None:
            return Verdict(False, note="fixed point -beta/(alpha-1) is irrational")
        return Verdict(True, _degree_one_witness(f))
    if f.is_rational():
        return Verdict(True, _over_q_witness(RatFunc.from_poly(f)), "defined over Q")
    dep, why = _depress(f)
    if dep is None:
        return Verdict(False, note=why)
    if dep.k0 == 0:
        return Verdict(False, note="depressed form has nonzero constant term")
    cands = [dep.s] if dep.g0 == 0 else sorted(_divisors(dep.g0), reverse=True)
    for t in cands:
        if t % dep.s == 0 and gcd(t, dep.k0) == 1:
            return Verdict(True, _witness_from(dep, t))
    return Verdict(False, note="no admissible t is coprime to k")


# -- shape detection for rational functions -----------------------------------

def _mode_ok(mode, k, t):
    if mode == "coprime":
        return gcd(k, t) == 1
    kind, n = mode
    assert kind == "divides"
    return sn(k % t if k % t else t, n) % t == 0 if t > 1 else True


def shape_detect(f, mode="coprime"):
    """Find (a, k, t, g) with f == a*x^k*g(x^t) exactly, or None.

    ``mode`` is ``"coprime"`` or ``("divides", n)``. The largest admissible t
    is returned and k is the least positive representative of its class.
    """
    if isinstance(f, Poly):
        f = RatFunc.from_poly(f)
    if f.degree < 1:
        raise ConstantInput("constant function")
    num, den = f.num, f.den
    a = num.lc()
    pnum = {}
    for i in num.support():
        r = (num[i] / a).rational()
        if r is None:
            return None
        pnum[i] = r
    pden = {}
    for j in den.support():
        r = den[j].rational()
        if r is None:
            return None
        pden[j] = r
    rp, rq = min(pnum), min(pden)
    G = 0
    for i in pnum:
        G = gcd(G, i - rp)
    for j in pden:
        G = gcd(G, j - rq)
    s = rational_power_order(a)
    if s is None:
        return None
    e = rp - rq
    cands = [s] if G == 0 else sorted(_divisors(G), reverse=True)
    for t in cands:
        if t % s:
            continue
        k = e % t or t
        if not _mode_ok(mode, k, t):
            continue
        m = (e - k) // t  # f = a x^k * y^m P(y)/Q(y) with y = x^t
        P = [Fraction(0)] * ((max(pnum) - rp) // t + 1)
        for i, c in pnum.items():
            P[(i - rp) // t] = c
        Q = [Fraction(0)] * ((max(pden) - rq) // t + 1)
        for j, c in pden.items():
            Q[(j - rq) // t] = c
        if m >= 0:
            P = [Fraction(0)] * m + P
        else:
            Q = [Fraction(0)] * (-m) + Q
        g = RatFunc(Poly(QQ, P), Poly(QQ, Q))
        return a, k, t, g
    return None


# -- periodic points ------------------------------------------------------------

def _common_rational_roots(polys):
    polys = [p for p in polys if p]
    if not polys:
        return None  # every point
    g = polys[0]
    for p in polys[1:]:
        g = _qpoly.gcd_(g, p)
        if len(g) <= 1:
            return []
    return _qpoly.rational_roots(g)


def _fixed_equation_roots(f):
    """Rational finite x with num(x) - x*den(x) = 0 (None if identically zero)."""
    h = f.num - f.den * Poly.x(f.field)
    if h.is_zero():
        return None
    return _common_rational_roots(h.coordinate_polys())


def _is_rational_point(P):
    return P.is_rational()


def rational_graph_points(f):
    """Points P of P^1(Q) whose image f(P) is also in P^1(Q).

    P qualifies iff the 2 x D matrix of power-basis coordinates of
    (num(P), den(P)) has rank one, i.e. all its 2 x 2 minors vanish.
    Returns None when f is defined over Q (every point qualifies).
    """
    if f.is_rational():
        return None
    N = f.num.coordinate_polys()
    M = f.den.coordinate_polys()
    D = f.field.degree
    minors = []
    for j in range(D):
        for l in range(j + 1, D):
            minors.append(_qpoly.sub(_qpoly.mul(N[j], M[l]), _qpoly.mul(N[l], M[j])))
    roots = _common_rational_roots(minors)
    pts = [ProjPoint(f.field(r)) for r in (roots or [])]
    if evaluate(f, INF).is_rational():
        pts.append(INF)
    return [P for P in pts if evaluate(f, P).is_rational()]


@dataclass
class PeriodicData:
    rational_fixed: list
    rational_two_cycles: list  # ordered pairs (P, f(P)) with P sorted first
    rational_period_two: list = dc_field(default_factory=list)  # all rational points of exact period 2
    irrational_partner: list = dc_field(default_factory=list)  # (P, f(P)) with f(P) irrational


def _sorted_points(pts):
    return sorted(set(pts), key=lambda P: P.sort_key())


def rational_periodic_points(f, with_period_two=True):
    """Rational fixed points and rational 2-cycles of f.

    With ``with_period_two`` the second iterate is formed to list every
    rational point of exact period 2, including those whose partner is not
    rational (those never form a rational 2-cycle).
    """
    if f.degree < 1:
        raise ConstantInput("constant function")
    roots = _fixed_equation_roots(f)
    if roots is None:
        raise PreconditionError("the identity map fixes every point")
    fixed = [ProjPoint(f.field(r)) for r in roots]
    if evaluate(f, INF) == INF:
        fixed.append(INF)
    fixed = _sorted_points(fixed)

    cycles = []
    period_two = []
    partners = []
    if with_period_two:
        f2 = compose(f, f)
        r2 = _fixed_equation_roots(f2)
        if r2 is None:
            # f is an involution: period-two points are exactly the
            # non-fixed ones, so only pairs of rational points can be listed
            cand = rational_graph_points(f) or []
        else:
            cand = [ProjPoint(f.field(r)) for r in r2]
            if evaluate(f2, INF) == INF:
                cand.append(INF)
        for P in _sorted_points(cand):
            if P in fixed:
                continue
            Q = evaluate(f, P)
            if evaluate(f, Q) != P:
                continue
            period_two.append(P)
            if Q.is_rational():
                pair = tuple(sorted((P, Q), key=lambda R: R.sort_key()))
                if pair not in cycles:
                    cycles.append(pair)
            else:
                partners.append((P, Q))
    else:
        graph = rational_graph_points(f) or []
        for P in _sorted_points(graph):
            Q = evaluate(f, P)
            if Q != P and evaluate(f, Q) == P:
                period_two.append(P)
                pair = tuple(sorted((P, Q), key=lambda R: R.sort_key()))
                if pair not in cycles:
                    cycles.append(pair)
    return PeriodicData(fixed, cycles, period_two, partners)


# -- B(Q) ----------------------------------------------------------------------------

class BVerdict(NamedTuple):
    member: bool
    witness: Optional[ShapeWitness] = None
    obstruction: Optional[str] = None


def invariant_rational_pairs(f):
    """Ordered pairs (P, Q) of distinct rational points with f({P, Q}) within {P, Q}."""
    pts = _sorted_points(rational_graph_points(f) or [])
    pairs = []
    for P in pts:
        fP = evaluate(f, P)
        for Q in pts:
            if Q == P:
                continue
            fQ = evaluate(f, Q)
            if fP in (P, Q) and fQ in (P, Q):
                pairs.append((P, Q))
    return pairs


def _rationalize_point(P):
    if P.is_infinity:
        return INF
    return ProjPoint(QQ(P.value.rational()))


def classify_B(f):
    """Decide whether f is PGL_2(Q)-conjugate to a*x^k*g(x^t), gcd(k,t)=1."""
    if isinstance(f, Poly):
        f = RatFunc.from_poly(f)
    if f.degree < 1:
        raise ConstantInput("constant function")
    if f.is_rational():
        return BVerdict(True, _over_q_witness(f))
    pairs = invariant_rational_pairs(f)
    if not pairs:
        return BVerdict(False, obstruction="no invariant rational pair")
    for P, Q in pairs:
        ell = mobius_from_pair(P, Q)
        fl = conjugate(f, ell)
        hit = shape_detect(fl, "coprime")
        if hit is not None:
            a, k, t, g = hit
            return BVerdict(True, ShapeWitness(ell, a, k, t, g))
    return BVerdict(False, obstruction="no pair yields the shape")


# -- aggregate report ---------------------------------------------------------------

@dataclass
class ClassificationReport:
    function: RatFunc
    field_of_definition: Subfield
    iterates: FieldOfIterates
    direct: list  # (n, bool) for n = 1..max_n
    An: Optional[Verdict]
    A: Optional[Verdict]
    B: BVerdict
    n: int
    periodic: Optional[PeriodicData] = None

    @property
    def degrees(self):
        return [d for _, d in self.iterates.degrees]


def report(f, n=2, max_n=6, periodic=True):
    if isinstance(f, Poly):
        f = RatFunc.from_poly(f)
    foi = field_of_iterates(f, max_n)
    direct = [(m, deg == 1) for m, deg in foi.degrees]
    if f.is_polynomial() and f.degree >= 1:
        An = poly_classify_An(f.num, n)
        A = poly_classify_A(f.num)
    else:
        An = Verdict(ratfunc_in_An_direct(f, n), note="direct iterate check")
        A = None
    B = classify_B(f) if f.degree >= 1 else BVerdict(False, obstruction="constant")
    per = rational_periodic_points(f) if (periodic and f.degree >= 1 and not f.is_rational()) else None
    return ClassificationReport(f, field_of_definition(f), foi, direct, An, A, B, n, per)
