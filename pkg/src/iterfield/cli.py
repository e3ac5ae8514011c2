"""Command-line front end.

Expressions use the variable ``x`` and the field generator ``a`` bound by
``--field`` (a monic modulus in ``a``, or ``Q``). Exit codes: 0 success,
2 parse or validation error, 3 failed mathematical precondition, 4 resource
cap exceeded.
"""

import argparse
import json
import os
import re
import sys

from . import _qpoly
from .classify import (
    classify_B,
    min_n_divisibility,
    poly_classify_A,
    poly_classify_An,
    ratfunc_in_An_direct,
    report,
)
from .errors import (
    FieldMismatch,
    InconsistentDecomposition,
    IterFieldError,
    NotMonic,
    PreconditionError,
    ZeroDenominator,
)
from .families import (
    Curve,
    RotationSpec,
    counterexample_map,
    lattes_translated,
    rotation_map,
    rotation_with_rational_iterate,
)
from .numfield import QQ, NumberField
from .pgl2 import Mat2, RationalAlready, power_class, root_decompose
from .polyrat import Mobius, Poly, RatFunc, conjugate, iterate

DEFAULT_MAX_DEGREE = 10_000
DEFAULT_MAX_ITER = 6


class ExprSyntaxError(IterFieldError, SyntaxError):
    """Malformed expression; ``offset`` is a byte offset into the input."""

    def __init__(self, message, text="", pos=0):
        self.byte_offset = len(text[:pos].encode("utf-8"))
        super().__init__(f"{message} at byte {self.byte_offset}")
        self.offset = self.byte_offset


class UnknownSymbol(ExprSyntaxError):
    pass


class ResourceCap(IterFieldError):
    pass


# -- expressions ----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(.))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m.end() == pos or (m.group(0).strip() == "" and m.end() == len(text)):
            break
        start = m.start(1) if m.group(1) else m.start(2) if m.group(2) else m.start(3)
        if m.group(1):
            tokens.append(("num", int(m.group(1)), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ExprSyntaxError(f"unexpected character {ch!r}", text, start)
            tokens.append(("op", ch, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Frac:
    """num/den pair of polynomials, reduced only at the end."""

    __slots__ = ("num", "den")

    def __init__(self, num, den):
        self.num, self.den = num, den

    def __add__(self, o):
        if self.den == o.den:
            return _Frac(self.num + o.num, self.den)
        return _Frac(self.num * o.den + o.num * self.den, self.den * o.den)

    def __sub__(self, o):
        return self + _Frac(-o.num, o.den)

    def __mul__(self, o):
        return _Frac(self.num * o.num, self.den * o.den)

    def inverse(self, text, pos):
        if self.num.is_zero():
            raise ZeroDenominator(f"division by zero at byte {len(text[:pos].encode())}")
        return _Frac(self.den, self.num)


class _Parser:
    def __init__(self, text, field, symbols):
        self.text = text
        self.field = field
        self.symbols = symbols
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ExprSyntaxError(msg, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        v = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            w = self.unary()
            v = v * w if tok[1] == "*" else v * w.inverse(self.text, tok[2])
        return v

    def unary(self):
        tok = self.peek()
        if tok[:2] == ("op", "-"):
            self.take()
            v = self.unary()
            return _Frac(-v.num, v.den)
        if tok[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] != ("op", "^"):
            return base
        self.take()
        neg = False
        if self.peek()[:2] == ("op", "-"):
            self.take()
            neg = True
        tok = self.take()
        if tok[0] != "num":
            raise self.error("exponent must be an integer literal", tok)
        e = tok[1]
        if neg:
            base = base.inverse(self.text, tok[2])
        return _Frac(base.num ** e, base.den ** e)

    def atom(self):
        tok = self.take()
        kind, val, pos = tok
        if kind == "num":
            return _Frac(Poly.const(self.field, val), Poly.const(self.field, 1))
        if kind == "name":
            if val not in self.symbols:
                raise UnknownSymbol(f"unknown symbol {val!r}", self.text, pos)
            return self.symbols[val]
        if (kind, val) == ("op", "("):
            v = self.expr()
            if self.peek()[:2] != ("op", ")"):
                raise self.error("expected ')'")
            self.take()
            return v
        raise ExprSyntaxError(f"unexpected {val!r}" if val else "unexpected end of input", self.text, pos)


def _one(field):
    return Poly.const(field, 1)


def parse_field(text):
    """``Q`` or a monic polynomial in ``a`` of degree >= 2."""
    if text.strip() == "Q":
        return QQ
    v = _Parser(text, QQ, {"a": _Frac(Poly.x(QQ), _one(QQ))}).parse()
    f = RatFunc(v.num, v.den)
    if not f.is_polynomial():
        raise ExprSyntaxError("modulus must be a polynomial in a", text, 0)
    p = f.num
    if p.degree < 2:
        raise ExprSyntaxError("modulus must have degree >= 2 (use Q for the rationals)", text, 0)
    if p.lc() != 1:
        raise NotMonic("modulus must be monic")
    return NumberField([c.rational() for c in p.coeffs])


def parse_element(text, field):
    symbols = {}
    if field.degree > 1:
        symbols["a"] = _Frac(Poly.const(field, field.gen), _one(field))
    v = _Parser(text, field, symbols).parse()
    if v.num.degree > 0 or v.den.degree > 0:
        raise ExprSyntaxError("expected a constant", text, 0)
    if v.num.is_zero():
        return field.zero
    return v.num[0] / v.den[0]


def parse_ratfunc(text, field):
    symbols = {"x": _Frac(Poly.x(field), _one(field))}
    if field.degree > 1:
        symbols["a"] = _Frac(Poly.const(field, field.gen), _one(field))
    v = _Parser(text, field, symbols).parse()
    return RatFunc(v.num, v.den)


def parse_matrix(text, field):
    s = re.sub(r"\s+", "", text)
    if not (s.startswith("[[") and s.endswith("]]")):
        raise ExprSyntaxError("matrix must look like [[p,q],[r,s]]", text, 0)
    rows = s[2:-2].split("],[")
    if len(rows) != 2 or any(len(r.split(",")) != 2 for r in rows):
        raise ExprSyntaxError("matrix must be 2x2", text, 0)
    entries = [parse_element(e, field) for r in rows for e in r.split(",")]
    return entries


def field_str(K):
    return "Q" if K.degree == 1 else _qpoly.to_str(K.modulus, K.name)


# -- commands -------------------------------------------------------------------

def _caps(args):
    env = os.environ.get("ITERFIELD_MAX_DEGREE")
    if args.max_degree is not None:
        max_degree = args.max_degree
    elif env:
        try:
            max_degree = int(env)
        except ValueError:
            raise ExprSyntaxError(f"ITERFIELD_MAX_DEGREE is not an integer: {env!r}")
    else:
        max_degree = DEFAULT_MAX_DEGREE
    max_iter = args.max_iter if args.max_iter is not None else DEFAULT_MAX_ITER
    return max_degree, max_iter


def _guard(f, n, args):
    max_degree, max_iter = _caps(args)
    if n > max_iter:
        raise ResourceCap(f"{n} iterations exceed --max-iter {max_iter}")
    if f.degree ** n + 1 > max_degree:
        raise ResourceCap(
            f"iterate {n} of a degree-{f.degree} map has {f.degree ** n + 1} coefficients, "
            f"above the cap {max_degree}"
        )


def _checked(w, f):
    if w is None:
        return None
    if not w.verify(f):
        raise InconsistentDecomposition("witness failed re-verification")
    return w.as_dict()


def _verdict_dict(v, f, **extra):
    out = dict(extra)
    out["member"] = v.member
    w = _checked(v.witness, f)
    if w is not None:
        out["witness"] = w
    note = getattr(v, "note", None) or getattr(v, "obstruction", None)
    if note:
        out["obstruction" if hasattr(v, "obstruction") else "note"] = note
    return out


def _points(ps):
    return [str(p) for p in ps]


def _report_dict(f, n, max_n):
    rep = report(f, n=n, max_n=max_n)
    foi = rep.iterates
    cls = {"A_n": _verdict_dict(rep.An, f, n=n)}
    if rep.A is not None:
        cls["A"] = _verdict_dict(rep.A, f)
    else:
        member = True if (rep.B.member or any(ok for _, ok in rep.direct)) else None
        cls["A"] = {"member": member}
        if member is None:
            cls["A"]["note"] = f"undecided: no iterate up to {max_n} is over Q"
    cls["B"] = _verdict_dict(rep.B, f)
    per = rep.periodic
    periodic = None
    if per is not None:
        periodic = {
            "rational_fixed": _points(per.rational_fixed),
            "rational_two_cycles": [_points(c) for c in per.rational_two_cycles],
            "rational_period_two": _points(per.rational_period_two),
            "irrational_partner": [_points(c) for c in per.irrational_partner],
        }
    return {
        "field": field_str(f.field),
        "function": str(f),
        "iterates": [{"n": m, "degree_over_Q": d} for m, d in foi.degrees],
        "field_of_iterates": {
            "degree": foi.subfield.degree,
            "minpoly": _qpoly.to_str(foi.subfield.minpoly),
            "stabilized_at": foi.stabilized_at,
            "bounded": foi.bounded,
        },
        "classification": cls,
        "periodic_points": periodic,
    }


def _print_report(d, out):
    print(f"field: {d['field']}", file=out)
    print(f"function: {d['function']}", file=out)
    degs = ", ".join(f"n={e['n']}: {e['degree_over_Q']}" for e in d["iterates"])
    print(f"degree over Q of the field of f^n: {degs}", file=out)
    fi = d["field_of_iterates"]
    tail = " (upper bound: not yet stable)" if fi["bounded"] else ""
    print(
        f"field of iterates: degree {fi['degree']}, minpoly {fi['minpoly']}, "
        f"stable from n={fi['stabilized_at']}{tail}",
        file=out,
    )
    for key, v in d["classification"].items():
        label = f"A_{v['n']}(Q)" if key == "A_n" else f"{key}(Q)"
        _print_verdict(label, v, out)
    per = d.get("periodic_points")
    if per is not None:
        print(f"rational fixed points: {_fmt_set(per['rational_fixed'])}", file=out)
        cycles = ", ".join("{" + ", ".join(c) + "}" for c in per["rational_two_cycles"]) or "none"
        print(f"rational 2-cycles: {cycles}", file=out)
        for p, q in per["irrational_partner"]:
            print(f"rational point {p} lies on a 2-cycle with {q}", file=out)


def _fmt_set(xs):
    return "{" + ", ".join(xs) + "}" if xs else "none"


def _print_verdict(label, v, out):
    m = v["member"]
    word = "member" if m else ("undecided" if m is None else "not a member")
    line = f"{label}: {word}"
    if "witness" in v:
        w = v["witness"]
        line += f" (ell = [[{w['ell'][0]}, {w['ell'][1]}], [{w['ell'][2]}, {w['ell'][3]}]], a = {w['a']}, k = {w['k']}, t = {w['t']}, g = {w['g']})"
    for key in ("obstruction", "note"):
        if key in v:
            line += f" [{v[key]}]"
    print(line, file=out)


def _emit(args, payload, text_fn, out):
    if args.json:
        json.dump(payload, out, indent=2)
        out.write("\n")
    else:
        text_fn(payload, out)


def _field(args):
    return parse_field(args.field) if args.field is not None else QQ


def cmd_analyze(args, out):
    K = _field(args)
    f = parse_ratfunc(args.fn, K)
    _, max_iter = _caps(args)
    _guard(f, max(max_iter, args.n), args)
    _emit(args, _report_dict(f, args.n, max_iter), _print_report, out)


def cmd_classify(args, out):
    K = _field(args)
    f = parse_ratfunc(args.fn, K)
    mode = args.mode
    payload = {"field": field_str(K), "function": str(f), "mode": mode}
    if mode in ("poly-an", "poly-a"):
        if not f.is_polynomial():
            raise PreconditionError("poly modes need a polynomial")
        v = poly_classify_An(f.num, args.n) if mode == "poly-an" else poly_classify_A(f.num)
        payload["result"] = _verdict_dict(v, f, **({"n": args.n} if mode == "poly-an" else {}))
    elif mode == "b":
        v = classify_B(f)
        res = _verdict_dict(v, f)
        if v.witness is not None:
            res["n_with_rational_iterate"] = min_n_divisibility(v.witness.t, v.witness.k, 10 ** 4)
        payload["result"] = res
    else:
        _guard(f, args.n, args)
        payload["result"] = {"n": args.n, "member": ratfunc_in_An_direct(f, args.n)}

    def text(d, o):
        label = {"poly-an": f"A_{args.n}(Q)", "poly-a": "A(Q)", "b": "B(Q)", "direct": f"A_{args.n}(Q) by direct iteration"}[mode]
        print(f"function: {d['function']}", file=o)
        _print_verdict(label, d["result"], o)

    _emit(args, payload, text, out)


def cmd_iterate(args, out):
    K = _field(args)
    f = parse_ratfunc(args.fn, K)
    _guard(f, args.n, args)
    g = iterate(f, args.n)
    payload = {"field": field_str(K), "function": str(f), "n": args.n, "iterate": str(g),
               "degree": g.degree, "over_Q": g.is_rational()}
    _emit(args, payload, lambda d, o: print(d["iterate"], file=o), out)


def cmd_conjugate(args, out):
    K = _field(args)
    f = parse_ratfunc(args.fn, K)
    ell = Mobius(*parse_matrix(args.mobius, K), field=K)
    g = conjugate(f, ell)
    payload = {"field": field_str(K), "function": str(f), "mobius": str(ell.as_ratfunc()), "conjugate": str(g)}
    _emit(args, payload, lambda d, o: print(d["conjugate"], file=o), out)


def cmd_family(args, out):
    kind = args.kind
    if kind == "rotation":
        if args.phi is not None:
            try:
                p, q = (int(s) for s in args.phi.split("/"))
            except ValueError:
                raise ExprSyntaxError(f"--phi must look like p/q: {args.phi!r}")
            f = rotation_map(RotationSpec(args.k, p, q))
        elif args.n is not None:
            f = rotation_with_rational_iterate(args.n, args.k)
        else:
            raise ExprSyntaxError("rotation needs --n or --phi")
    elif kind == "lattes":
        K = _field(args)
        a = parse_element(args.a, K)
        b = parse_element(args.b, K)
        E = Curve(a, b, K)
        xq = parse_element(args.torsion_x, K)
        f = lattes_translated(E, args.d, xq)
    else:
        f = counterexample_map()
    n = args.n if args.n is not None else 2
    # the built-in maps can be large, so only an explicit --max-iter widens the report
    max_n = args.max_iter if args.max_iter is not None else max(n, 2)
    _guard(f, max(max_n, n), args)
    _emit(args, _report_dict(f, n, max_n), _print_report, out)


def cmd_pgl2(args, out):
    K = _field(args)
    A = Mat2(*parse_matrix(args.matrix, K), field=K)
    n = args.n
    first = None
    for m in range(1, n + 1):
        if power_class(A, m)[1]:
            first = m
            break
    P, ok = power_class(A, n)
    payload = {
        "field": field_str(K),
        "matrix": [[str(v) for v in r] for r in A.rows()],
        "n": n,
        "power": [[str(v) for v in r] for r in P.rows()],
        "power_projectively_rational": ok,
        "first_rational_power": first,
    }
    if args.decompose:
        if not ok:
            raise PreconditionError(f"A^{n} is not projectively rational")
        rd = root_decompose(A, n)
        if isinstance(rd, RationalAlready):
            payload["decomposition"] = {"rational": [[str(v) for v in r] for r in rd.representative.rows()]}
        else:
            payload["decomposition"] = {
                "ambient": field_str(rd.ambient),
                "Kprime_degree": rd.Kprime.degree,
                "F_degree": rd.F.degree,
                "M": [[str(v) for v in r] for r in rd.M.rows()],
                "D": [[str(v) for v in r] for r in rd.D.rows()],
            }

    def text(d, o):
        if d["first_rational_power"] is None:
            print(f"no power projectively rational (checked n <= {d['n']})", file=o)
        else:
            print(f"first projectively rational power: n = {d['first_rational_power']}", file=o)
        print(f"A^{d['n']} = {d['power']}", file=o)
        if "decomposition" in d:
            print(f"decomposition: {d['decomposition']}", file=o)

    _emit(args, payload, text, out)


# -- argument parsing ---------------------------------------------------------------

def _common(default):
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--field", default=default, help='modulus in a, e.g. "a^2-3", or Q')
    p.add_argument("--json", action="store_true", default=default)
    p.add_argument("--max-iter", type=int, default=default)
    p.add_argument("--max-degree", type=int, default=default)
    return p


def _positive(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def build_parser():
    top = _common(None)
    parser = argparse.ArgumentParser(prog="iterfield", parents=[top], description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common(argparse.SUPPRESS)

    p = sub.add_parser("analyze", parents=[common], help="full report for one map")
    p.add_argument("--fn", required=True)
    p.add_argument("--n", type=_positive, default=2)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("classify", parents=[common], help="one membership test")
    p.add_argument("--fn", required=True)
    p.add_argument("--n", type=_positive, default=2)
    p.add_argument("--mode", choices=["poly-an", "poly-a", "b", "direct"], default="direct")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("iterate", parents=[common], help="n-th iterate")
    p.add_argument("--fn", required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_iterate)

    p = sub.add_parser("conjugate", parents=[common], help="ell^-1 o f o ell")
    p.add_argument("--fn", required=True)
    p.add_argument("--mobius", required=True)
    p.set_defaults(func=cmd_conjugate)

    p = sub.add_parser("family", parents=[common], help="built-in example maps")
    p.add_argument("kind", choices=["rotation", "lattes", "counterexample"])
    p.add_argument("--k", type=_positive, default=2)
    p.add_argument("--n", type=_positive)
    p.add_argument("--phi")
    p.add_argument("--a", default="0")
    p.add_argument("--b", default="0")
    p.add_argument("--d", type=_positive, default=3)
    p.add_argument("--torsion-x", default="0")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("pgl2", parents=[common], help="powers and roots of 2x2 matrices")
    p.add_argument("--matrix", required=True)
    p.add_argument("--n", type=_positive, default=2)
    p.add_argument("--decompose", action="store_true")
    p.set_defaults(func=cmd_pgl2)
    return parser


def run(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    if args.json is None:
        args.json = False
    try:
        args.func(args, out)
    except ResourceCap as e:
        print(f"error: {e}", file=err)
        return 4
    except (ExprSyntaxError, FieldMismatch) as e:
        print(f"error: {e}", file=err)
        return 2
    except PreconditionError as e:
        print(f"error: {type(e).__name__}: {e}", file=err)
        return 3
    except (ValueError, ZeroDivisionError) as e:
        # invalid mathematical input caught below the CLI layer, e.g. a singular Mobius matrix
        print(f"error: {type(e).__name__}: {e}", file=err)
        return 3
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
