"""Exact coefficient arithmetic.

LaurentPoly is Z[v,v^-1] stored as {exponent: nonzero int}.  RationalFn is
Q(v) as a reduced fraction of two LaurentPoly with a canonical
normalization, so equality and hashing are structural.  Everything here is
immutable in practice: operations return fresh values.
"""

from fractions import Fraction
from math import gcd as _int_gcd
import re


class LaurentPoly:
    """An element of Z[v, v^-1].

    terms maps integer exponents to nonzero integer coefficients.
    """

    __slots__ = ("terms", "_hash")

    def __init__(self, terms=None):
        t = {}
        if terms:
            for e, c in terms.items():
                if c:
                    t[int(e)] = int(c)
        self.terms = t
        self._hash = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_int(n):
        return LaurentPoly({0: n}) if n else ZERO

    @staticmethod
    def monomial(exp, coeff=1):
        return LaurentPoly({exp: coeff})

    # -- basic queries -----------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def is_one(self):
        return self.terms == {0: 1}

    def degree(self):
        """Max exponent; None for 0."""
        return max(self.terms) if self.terms else None

    def valuation(self):
        """Min exponent; None for 0."""
        return min(self.terms) if self.terms else None

    def coeff(self, exp):
        return self.terms.get(exp, 0)

    def as_int(self):
        """The integer value if constant, else None."""
        if not self.terms:
            return 0
        if set(self.terms) == {0}:
            return self.terms[0]
        return None

    def content(self):
        """gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for c in self.terms.values():
            g = _int_gcd(g, abs(c))
        return g

    # -- ring structure ----------------------------------------------------

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        t = dict(self.terms)
        for e, c in other.terms.items():
            s = t.get(e, 0) + c
            if s:
                t[e] = s
            else:
                t.pop(e, None)
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = t
        r._hash = None
        return r

    __radd__ = __add__

    def __neg__(self):
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e: -c for e, c in self.terms.items()}
        r._hash = None
        return r

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.terms, other.terms
        if not a or not b:
            return ZERO
        if len(a) > len(b):
            a, b = b, a
        t = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                s = t.get(e, 0) + c1 * c2
                if s:
                    t[e] = s
                else:
                    del t[e]
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = t
        r._hash = None
        return r

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power of a LaurentPoly; use RationalFn")
        r = ONE
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def shift(self, k):
        """Multiply by v^k."""
        if not k or not self.terms:
            return self
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e + k: c for e, c in self.terms.items()}
        r._hash = None
        return r

    def scale(self, n):
        if not n:
            return ZERO
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {e: c * n for e, c in self.terms.items()}
        r._hash = None
        return r

    def bar(self):
        """The involution v -> v^-1."""
        r = LaurentPoly.__new__(LaurentPoly)
        r.terms = {-e: c for e, c in self.terms.items()}
        r._hash = None
        return r

    def exact_div(self, other):
        """Exact quotient self/other in Z[v,v^-1]; None if not divisible."""
        other = _as_laurent(other)
        if not other:
            raise ZeroDivisionError("division by zero polynomial")
        if not self:
            return ZERO
        rem = dict(self.terms)
        de = other.degree()
        dc = other.terms[de]
        q = {}
        while rem:
            e = max(rem)
            c = rem[e]
            if c % dc:
                return None
            qe, qc = e - de, c // dc
            q[qe] = qc
            for e2, c2 in other.terms.items():
                ee = e2 + qe
                s = rem.get(ee, 0) - qc * c2
                if s:
                    rem[ee] = s
                else:
                    rem.pop(ee, None)
        return LaurentPoly(q)

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly.from_int(other)
        if isinstance(other, LaurentPoly):
            return self.terms == other.terms
        if isinstance(other, RationalFn):
            return RationalFn.from_laurent(self) == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # -- printing ----------------------------------------------------------

    def __str__(self):
        return format_laurent(self)

    def __repr__(self):
        return "LaurentPoly(%s)" % format_laurent(self)


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, int):
        return LaurentPoly.from_int(x)
    return NotImplemented


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
v = LaurentPoly({1: 1})
vinv = LaurentPoly({-1: 1})


# -- ordinary-polynomial helpers (dicts with exponents >= 0) ---------------

def _primitive(p):
    """(content, primitive part) of an ordinary poly given as a dict."""
    c = 0
    for cc in p.values():
        c = _int_gcd(c, abs(cc))
    if c in (0, 1):
        return (c or 1), dict(p)
    return c, {e: cc // c for e, cc in p.items()}


def _poly_mul(a, b):
    t = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = e1 + e2
            s = t.get(e, 0) + c1 * c2
            if s:
                t[e] = s
            else:
                del t[e]
    return t


def _poly_scale(a, n):
    return {e: c * n for e, c in a.items()} if n else {}


def _pseudo_rem(a, b):
    """Pseudo-remainder of ordinary polys a, b (b nonzero)."""
    db = max(b)
    lb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        r = _poly_scale(r, lb)
        for e, c in b.items():
            ee = e + dr - db
            s = r.get(ee, 0) - lr * c
            if s:
                r[ee] = s
            else:
                r.pop(ee, None)
    return r


def _poly_gcd_z(a, b):
    """gcd in Z[v] of ordinary polys (primitive PRS), positive leading coeff."""
    ca, pa = _primitive(a)
    cb, pb = _primitive(b)
    if not a:
        g = dict(b)
    elif not b:
        g = dict(a)
    else:
        while pb:
            r = _pseudo_rem(pa, pb)
            _, r = _primitive(r)
            pa, pb = pb, r
        cg = _int_gcd(ca, cb)
        g = _poly_scale(pa, cg)
    if g and g[max(g)] < 0:
        g = _poly_scale(g, -1)
    return g


class RationalFn:
    """An element of Q(v), reduced.

    num is a LaurentPoly (it absorbs the v-power unit), den an ordinary
    polynomial in v with nonzero constant term, positive leading
    coefficient, and no common factor (polynomial or integer) with num.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=ONE):
        num = _as_laurent(num)
        den = _as_laurent(den)
        if not den:
            raise ZeroDivisionError("RationalFn with zero denominator")
        if not num:
            self.num, self.den = ZERO, ONE
            self._hash = None
            return
        # clear v-powers out of the denominator
        shift = den.valuation()
        den = den.shift(-shift)
        num = num.shift(-shift)
        nval = num.valuation()
        n0 = {e - nval: c for e, c in num.terms.items()}
        d0 = dict(den.terms)
        g = _poly_gcd_z(n0, d0)
        if g != {0: 1}:
            gl = LaurentPoly(g)
            num2 = LaurentPoly(n0).exact_div(gl)
            den2 = LaurentPoly(d0).exact_div(gl)
            n0 = num2.terms
            d0 = den2.terms
        dd = LaurentPoly(d0)
        nn = LaurentPoly(n0).shift(nval)
        if dd.terms[dd.degree()] < 0:
            nn = -nn
            dd = -dd
        self.num, self.den = nn, dd
        self._hash = None

    @staticmethod
    def from_laurent(p):
        r = RationalFn.__new__(RationalFn)
        r.num, r.den, r._hash = _as_laurent(p), ONE, None
        return r

    @staticmethod
    def from_int(n):
        return RationalFn.from_laurent(LaurentPoly.from_int(n))

    # -- queries -----------------------------------------------------------

    def __bool__(self):
        return bool(self.num)

    def is_zero(self):
        return not self.num

    def is_one(self):
        return self.num.is_one() and self.den.is_one()

    def as_laurent(self):
        """The LaurentPoly value if the denominator is 1, else None."""
        return self.num if self.den.is_one() else None

    # -- field structure ---------------------------------------------------

    def __add__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den.is_one() and other.den.is_one():
            return RationalFn.from_laurent(self.num + other.num)
        return RationalFn(self.num * other.den + other.num * self.den,
                          self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        r = RationalFn.__new__(RationalFn)
        r.num, r.den, r._hash = -self.num, self.den, None
        return r

    def __sub__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        if not self.num or not other.num:
            return R_ZERO
        if self.den.is_one() and other.den.is_one():
            return RationalFn.from_laurent(self.num * other.num)
        return RationalFn(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of 0")
        return RationalFn(self.den, self.num)

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = R_ONE
        b = self
        while n:
            if n & 1:
                r = r * b
            b = b * b
            n >>= 1
        return r

    def bar(self):
        """v -> v^-1, renormalized."""
        return RationalFn(self.num.bar(), self.den.bar())

    # -- series expansion in v^-1 ------------------------------------------

    def series(self, count):
        """First `count` coefficients of the v^-1-expansion.

        Returns a list of (exponent, Fraction) pairs with strictly
        decreasing exponents starting at degree(num) - degree(den);
        requires deg(num) <= deg(den) + anything -- the expansion always
        exists as a formal Laurent series in v^-1.  Zero coefficients are
        included so the window is contiguous.
        """
        if not self.num:
            return []
        dn = self.num.degree()
        dd = self.den.degree()
        lead = self.den.terms[dd]
        rem = {e: Fraction(c) for e, c in self.num.terms.items()}
        out = []
        e_next = dn - dd
        while len(out) < count:
            if rem:
                top = max(rem)
            else:
                break
            e = top - dd
            while e_next > e and len(out) < count:
                out.append((e_next, Fraction(0)))
                e_next -= 1
            if len(out) >= count:
                break
            coef = rem[top] / lead
            out.append((e, coef))
            e_next = e - 1
            for e2, c2 in self.den.terms.items():
                ee = e2 + e
                s = rem.get(ee, Fraction(0)) - coef * c2
                if s:
                    rem[ee] = s
                else:
                    rem.pop(ee, None)
        return out

    def series_upper(self):
        """Exact list of (exponent, Fraction) for all exponents >= 0.

        Finite because exponents strictly decrease; raises if called on
        something whose expansion in v^-1 does not exist (cannot happen:
        it always does).
        """
        if not self.num:
            return []
        top = self.num.degree() - self.den.degree()
        if top < 0:
            return []
        return [(e, c) for e, c in self.series(top + 1) if e >= 0]

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        other = _as_rational(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __str__(self):
        if self.den.is_one():
            return format_laurent(self.num)
        return "(%s)/(%s)" % (format_laurent(self.num), format_laurent(self.den))

    def __repr__(self):
        return "RationalFn(%s)" % self


def _as_rational(x):
    if isinstance(x, RationalFn):
        return x
    if isinstance(x, LaurentPoly):
        return RationalFn.from_laurent(x)
    if isinstance(x, int):
        return RationalFn.from_int(x)
    return NotImplemented


R_ZERO = RationalFn.from_laurent(ZERO)
R_ONE = RationalFn.from_laurent(ONE)


# -- quantum combinatorics -------------------------------------------------

def quantum_int(n):
    """[n] = (v^n - v^-n)/(v - v^-1) = v^(n-1) + v^(n-3) + ... + v^(1-n)."""
    if n == 0:
        return ZERO
    if n < 0:
        return -quantum_int(-n)
    return LaurentPoly({n - 1 - 2 * k: 1 for k in range(n)})


_qfact_cache = [ONE]


def quantum_factorial(m):
    """[m]! = [1][2]...[m]."""
    if m < 0:
        raise ValueError("negative quantum factorial")
    while len(_qfact_cache) <= m:
        k = len(_qfact_cache)
        _qfact_cache.append(_qfact_cache[-1] * quantum_int(k))
    return _qfact_cache[m]


def quantum_binomial(n, k):
    """Quantum binomial [n choose k], a LaurentPoly for any integer n, k >= 0."""
    if k < 0:
        raise ValueError("negative lower index")
    if k == 0:
        return ONE
    if 0 <= n < k:
        return ZERO
    num = ONE
    for s in range(k):
        num = num * quantum_int(n - s)
    q = num.exact_div(quantum_factorial(k))
    if q is None:
        raise ArithmeticError("quantum binomial division not exact (bug)")
    return q


def bar(x):
    """Bar involution on LaurentPoly or RationalFn."""
    return x.bar()


def laurent_gcd(a, b):
    """gcd of two Laurent polynomials up to units: the result is an
    ordinary polynomial with nonzero constant term and positive leading
    coefficient (0 if both inputs are 0)."""
    a, b = _as_laurent(a), _as_laurent(b)
    pa = a.shift(-a.valuation()).terms if a else {}
    pb = b.shift(-b.valuation()).terms if b else {}
    if not pa and not pb:
        return ZERO
    return LaurentPoly(_poly_gcd_z(pa, pb))


def laurent_lcm(a, b):
    """lcm up to units; 0 if either input is 0."""
    a, b = _as_laurent(a), _as_laurent(b)
    if not a or not b:
        return ZERO
    g = laurent_gcd(a, b)
    q = b.exact_div(g)
    return a * q


# -- lattice membership ----------------------------------------------------

LATTICE_KINDS = ("in_A", "in_Zvinv", "in_vinvZvinv", "in_Nvv", "in_Nvinv")


def _default_trunc(x):
    span = 0
    for p in (x.num, x.den):
        if p:
            span += p.degree() - p.valuation()
    return max(8, 2 * span)


def lattice_test(x, kind, trunc=None):
    """Membership of x in one of the standard coefficient lattices.

    kind: 'in_A' (the ring A = Q(v) with v^-1-integral expansion, checked
    exactly in degree and to order `trunc` in integrality), or one of the
    exact polynomial kinds 'in_Zvinv', 'in_vinvZvinv', 'in_Nvv',
    'in_Nvinv'.  Non-polynomial input under a polynomial kind is False,
    not an error.
    """
    if kind not in LATTICE_KINDS:
        raise ValueError("unknown lattice kind %r" % (kind,))
    x = _as_rational(x)
    if x is NotImplemented:
        raise TypeError("not a coefficient")
    if kind == "in_A":
        if not x.num:
            return True
        if x.num.degree() > x.den.degree():
            return False
        if trunc is None:
            trunc = _default_trunc(x)
        for _, c in x.series(trunc):
            if c.denominator != 1:
                return False
        return True
    p = x.as_laurent()
    if p is None:
        return False
    if not p:
        return True
    if kind == "in_Zvinv":
        return p.degree() <= 0
    if kind == "in_vinvZvinv":
        return p.degree() <= -1
    if kind == "in_Nvv":
        return all(c > 0 for c in p.terms.values())
    if kind == "in_Nvinv":
        return p.degree() <= 0 and all(c > 0 for c in p.terms.values())
    raise AssertionError


# -- text format -----------------------------------------------------------
#
# Canonical form: terms in decreasing exponent order, " + "/" - "
# separators, "v^k" exponents with v^1 -> "v" and v^0 omitted, unit
# coefficients omitted except on the constant term.  Round-trips exactly.

def format_laurent(p):
    p = _as_laurent(p)
    if not p.terms:
        return "0"
    parts = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        mag = abs(c)
        if e == 0:
            body = str(mag)
        else:
            va = "v" if e == 1 else "v^%d" % e
            body = va if mag == 1 else "%d*%s" % (mag, va)
        if not parts:
            parts.append(body if c > 0 else "-" + body)
        else:
            parts.append(("+ " if c > 0 else "- ") + body)
    return " ".join(parts)


_TERM_RE = re.compile(
    r"^(?:(?P<coeff>\d+)\*?)?(?:(?P<var>v)(?:\^(?P<exp>-?\d+))?)?$"
)


def parse_laurent(s):
    """Inverse of format_laurent; raises ValueError on malformed input."""
    text = s.strip()
    if not text:
        raise ValueError("empty Laurent polynomial")
    if text == "0":
        return ZERO
    toks = text.replace("+", " + ").replace("-", " - ").split()
    # recombine exponent minus signs: "v^ - 1" came from "v^-1"
    merged = []
    i = 0
    while i < len(toks):
        t = toks[i]
        if t.endswith("^") and i + 2 < len(toks) and toks[i + 1] == "-":
            merged.append(t + "-" + toks[i + 2])
            i += 3
        else:
            merged.append(t)
            i += 1
    terms = {}
    sign = 1
    expect_term = True
    for t in merged:
        if t == "+":
            sign = 1
            expect_term = True
            continue
        if t == "-":
            sign = -1
            expect_term = True
            continue
        if not expect_term:
            raise ValueError("missing operator in %r" % s)
        m = _TERM_RE.match(t)
        if not m or (m.group("coeff") is None and m.group("var") is None):
            raise ValueError("bad term %r in %r" % (t, s))
        coeff = int(m.group("coeff")) if m.group("coeff") else 1
        if m.group("var"):
            exp = int(m.group("exp")) if m.group("exp") is not None else 1
        else:
            exp = 0
        terms[exp] = terms.get(exp, 0) + sign * coeff
        sign = 1
        expect_term = False
    if expect_term:
        raise ValueError("dangling operator in %r" % s)
    return LaurentPoly(terms)
