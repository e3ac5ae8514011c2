"""Univariate polynomials over Q as coefficient lists (lowest degree first).

Factorization over Q is delegated to sympy. Rational roots are found with a
small p-adic lift instead, because the integer polynomials that come out of
iterating degree-9 maps have constant terms far too large to factor.
"""

from fractions import Fraction
from functools import reduce
from math import gcd, lcm

import sympy

try:  # GMP multiplication is much faster than CPython's on huge operands
    from gmpy2 import mpz as _mpz
except ImportError:  # pragma: no cover
    _mpz = int

ZERO = Fraction(0)
ONE = Fraction(1)


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(p) - 1 if p else float("-inf")


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


_KRONECKER_MIN = 24


def _integer_form(p):
    den = reduce(lcm, (c.denominator for c in p), 1)
    return [c.numerator * (den // c.denominator) for c in p], den


def _pack(ints, width):
    """Signed integers as base-2^(8*width) digits of one big integer."""
    half = 1 << (8 * width - 1)
    raw = b"".join((c + half).to_bytes(width, "little") for c in ints)
    offset = int.from_bytes(half.to_bytes(width, "little") * len(ints), "little")
    return int.from_bytes(raw, "little") - offset


def bigmul(x, y):
    return int(_mpz(x) * _mpz(y))


def _unpack(N, width, count):
    half = 1 << (8 * width - 1)
    offset = int.from_bytes(half.to_bytes(width, "little") * count, "little")
    raw = (N + offset).to_bytes(width * count, "little")
    return [int.from_bytes(raw[i * width:(i + 1) * width], "little") - half for i in range(count)]


def _mul_kronecker(p, q):
    # exact: every product coefficient fits strictly inside one digit
    ip, dp = _integer_form(p)
    iq, dq = _integer_form(q)
    ma, mb = max(map(abs, ip)), max(map(abs, iq))
    bound = max(ma * mb * min(len(ip), len(iq)), ma, mb)
    width = (bound.bit_length() + 2 + 7) // 8
    count = len(ip) + len(iq) - 1
    prod = _unpack(bigmul(_pack(ip, width), _pack(iq, width)), width, count)
    den = dp * dq
    return [Fraction(c, den) for c in prod]


def mul(p, q):
    if not p or not q:
        return []
    if min(len(p), len(q)) >= _KRONECKER_MIN:
        return trim(_mul_kronecker(p, q))
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p, c):
    return trim([c * a for a in p])


def divmod_(p, q):
    q = trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    r = [Fraction(a) for a in p]
    r = trim(r)
    dq = len(q) - 1
    inv = 1 / Fraction(q[-1])
    if len(r) - 1 < dq:
        return [], r
    quo = [ZERO] * (len(r) - dq)
    for k in range(len(r) - 1 - dq, -1, -1):
        c = r[k + dq] * inv
        quo[k] = c
        if c:
            for j in range(dq + 1):
                r[k + j] -= c * q[j]
    return trim(quo), trim(r[:dq])


def monic(p):
    p = trim(p)
    if not p:
        return p
    inv = 1 / Fraction(p[-1])
    return [a * inv for a in p]


def gcd_(p, q):
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_(p, q)[1]
    return monic(p)


def deriv(p):
    return trim([i * p[i] for i in range(1, len(p))])


def evaluate(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def primitive_int(p):
    """Scale ``p`` to a primitive integer polynomial with positive leading term."""
    p = trim(p)
    if not p:
        return []
    den = reduce(lcm, (Fraction(a).denominator for a in p), 1)
    ints = [int(Fraction(a) * den) for a in p]
    g = reduce(gcd, ints, 0)
    ints = [a // g for a in ints]
    if ints[-1] < 0:
        ints = [-a for a in ints]
    return ints


def squarefree_part(p):
    p = trim(p)
    if len(p) <= 2:
        return monic(p)
    g = gcd_(p, deriv(p))
    return monic(divmod_(p, g)[0])


# -- rational roots ---------------------------------------------------------

def _small_primes():
    n = 3
    while True:
        if all(n % d for d in range(3, int(n ** 0.5) + 1, 2)):
            yield n
        n += 2


def _ieval_mod(coeffs, x, m):
    acc = 0
    for c in reversed(coeffs):
        acc = (acc * x + c) % m
    return acc


def _ratrecon(r, m, A, B):
    """Find a/b with a = b*r (mod m), |a| <= A, 0 < b <= B, or None."""
    r0, r1 = m, r % m
    t0, t1 = 0, 1
    while r1 > A:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > B:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    if (r1 - t1 * r) % m:
        return None
    return Fraction(r1, t1)


def rational_roots(p):
    """Sorted list of the distinct rational roots of a nonzero polynomial."""
    p = trim(p)
    if not p:
        raise ValueError("the zero polynomial has every root")
    roots = []
    # strip x^k
    k = 0
    while p[k] == 0:
        k += 1
    if k:
        roots.append(ZERO)
        p = p[k:]
    if len(p) == 1:
        return sorted(roots)
    f = primitive_int(squarefree_part(p))
    if len(f) == 2:
        roots.append(Fraction(-f[0], f[1]))
        return sorted(roots)
    lc, c0 = f[-1], f[0]
    df = [i * f[i] for i in range(1, len(f))]
    for prime in _small_primes():
        if lc % prime == 0:
            continue
        # need f squarefree mod prime: resultant-free check via gcd mod p
        fm = [c % prime for c in f]
        dm = [c % prime for c in df]
        if _gcd_degree_mod(fm, dm, prime) > 0:
            continue
        break
    bound_a, bound_b = abs(c0), abs(lc)
    modulus_needed = 2 * bound_a * bound_b + 1
    for r in range(prime):
        if _ieval_mod(f, r, prime):
            continue
        # Newton/Hensel lift of a simple root
        m = prime
        x = r
        while m < modulus_needed:
            m2 = m * m
            fx = _ieval_mod(f, x, m2)
            dfx = _ieval_mod(df, x, m2)
            x = (x - fx * pow(dfx, -1, m2)) % m2
            m = m2
        cand = _ratrecon(x, m, bound_a, bound_b)
        if cand is not None and evaluate(f, cand) == 0:
            roots.append(cand)
    return sorted(set(roots))


def _gcd_degree_mod(a, b, p):
    def tr(v):
        v = list(v)
        while v and v[-1] % p == 0:
            v.pop()
        return [x % p for x in v]

    a, b = tr(a), tr(b)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            shift = len(a) - len(b)
            for j in range(len(b)):
                a[shift + j] = (a[shift + j] - c * b[j]) % p
            a = tr(a)
            if not a:
                break
        a, b = b, a
    return len(a) - 1


# -- sympy bridge -----------------------------------------------------------

_X = sympy.Symbol("x")


def _to_sympy(p):
    return sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(p)], _X, domain="QQ")


def _from_sympy(sp):
    return [Fraction(int(c.p), int(c.q)) for c in reversed(sp.all_coeffs())]


def factor(p):
    """Monic irreducible factors over Q with multiplicities."""
    _, facs = _to_sympy(trim(p)).factor_list()
    return [(monic(_from_sympy(f)), e) for f, e in facs]


def is_irreducible(p):
    p = trim(p)
    if len(p) <= 2:
        return len(p) == 2
    return _to_sympy(p).is_irreducible


def cyclotomic(n):
    """Coefficients of the n-th cyclotomic polynomial, by exact division."""
    num = [-ONE] + [ZERO] * (n - 1) + [ONE]
    for d in range(1, n):
        if n % d == 0:
            num = divmod_(num, cyclotomic(d))[0]
    return num


def integer_nthroot(a, n):
    """Exact integer n-th root of a nonnegative int, or None."""
    r, exact = sympy.integer_nthroot(a, n)
    return int(r) if exact else None


def to_str(p, var="x"):
    p = trim(p)
    if not p:
        return "0"
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = Fraction(p[i])
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        mag = abs(c)
        if mono and mag == 1:
            body = mono
        elif mono:
            body = f"{mag}*{mono}"
        else:
            body = str(mag)
        terms.append(("-" if c < 0 else "+", body))
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out
