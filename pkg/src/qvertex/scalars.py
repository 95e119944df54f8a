"""Exact arithmetic in Q(zeta_N)(q).

A value is a reduced fraction num/den where num is a Laurent polynomial in q
and den an ordinary polynomial with nonzero constant term and leading
coefficient 1.  Coefficients live in Q(zeta_N) and are stored as tuples of
``mpq`` of length phi(N), i.e. reduced modulo the cyclotomic polynomial.
Rational values skip all of that and keep a single ``mpq``.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

from gmpy2 import mpq

ZERO_Q = mpq(0)
ONE_Q = mpq(1)


# ---------------------------------------------------------------- cyclotomics

@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Integer coefficients of Phi_n, constant term first."""
    if n < 1:
        raise ValueError("cyclotomic order must be positive")
    # x^n - 1 divided by Phi_d for every proper divisor d
    p = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            p = _int_exact_div(p, list(cyclotomic_poly(d)))
    return tuple(p)


def _int_exact_div(p, d):
    p = list(p)
    out = [0] * (len(p) - len(d) + 1)
    for i in range(len(out) - 1, -1, -1):
        c = p[i + len(d) - 1]  # d is monic
        out[i] = c
        if c:
            for j, dj in enumerate(d):
                p[i + j] -= c * dj
    return out


def phi(n: int) -> int:
    return len(cyclotomic_poly(n)) - 1


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def _creduce(coeffs, n):
    """Reduce a list of coefficients (in powers of zeta) modulo Phi_n."""
    ph = cyclotomic_poly(n)
    k = len(ph) - 1
    c = list(coeffs)
    for i in range(len(c) - 1, k - 1, -1):
        t = c[i]
        if t:
            for j in range(k):
                if ph[j]:
                    c[i - k + j] -= t * ph[j]
    c = c[:k] + [ZERO_Q] * (k - len(c))
    return tuple(mpq(x) for x in c)


def _cmul(a, b, n):
    if len(a) == 1:
        s = a[0]
        return tuple(s * y for y in b)
    if len(b) == 1:
        s = b[0]
        return tuple(x * s for x in a)
    out = [ZERO_Q] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _creduce(out, n)


def _cadd(a, b):
    if len(a) == 1:
        return (a[0] + b[0],)
    return tuple(x + y for x, y in zip(a, b))


def _csub(a, b):
    if len(a) == 1:
        return (a[0] - b[0],)
    return tuple(x - y for x, y in zip(a, b))


def _cneg(a):
    return tuple(-x for x in a)


def _cis_zero(a):
    return not any(a)


def _cinv(a, n):
    """Inverse in Q(zeta_n) through a Bezout identity with Phi_n over Q."""
    if len(a) == 1:
        return (ONE_Q / a[0],)
    f = _qtrim(list(a))
    g = [mpq(c) for c in cyclotomic_poly(n)]
    _, u, _ = _qpoly_xgcd(f, g)
    return _creduce(u, n)


def _qtrim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _qpoly_divmod(f, g):
    f = list(f)
    q = [ZERO_Q] * max(len(f) - len(g) + 1, 1)
    lc = g[-1]
    while len(f) >= len(g) and f:
        c = f[-1] / lc
        k = len(f) - len(g)
        q[k] = c
        for j, gj in enumerate(g):
            f[k + j] -= c * gj
        f.pop()
        _qtrim(f)
    return _qtrim(q), f


def _qpoly_xgcd(f, g):
    """Extended Euclid over Q for coefficient lists; gcd is monic."""
    r0, r1 = _qtrim(list(f)), _qtrim(list(g))
    s0, s1 = [ONE_Q], []
    t0, t1 = [], [ONE_Q]
    while r1:
        q, r = _qpoly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _qsub(s0, _qmul(q, s1))
        t0, t1 = t1, _qsub(t0, _qmul(q, t1))
    lc = r0[-1]
    return [c / lc for c in r0], [c / lc for c in s0], [c / lc for c in t0]


def _qmul(a, b):
    if not a or not b:
        return []
    out = [ZERO_Q] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _qsub(a, b):
    n = max(len(a), len(b))
    out = [(a[i] if i < len(a) else ZERO_Q) - (b[i] if i < len(b) else ZERO_Q) for i in range(n)]
    return _qtrim(out)


def _clift(a, n, big):
    """Embed an element of Q(zeta_n) into Q(zeta_big) (n divides big)."""
    if n == big or len(a) == 1 and phi(big) == 1:
        return a
    if len(a) == 1:
        return (a[0],) + (ZERO_Q,) * (phi(big) - 1)
    step = big // n
    out = [ZERO_Q] * ((len(a) - 1) * step + 1)
    for i, c in enumerate(a):
        out[i * step] = c
    return _creduce(out, big)


# ------------------------------------------------------ polynomials in q

# A q-polynomial is a dict {exponent: coefficient tuple}; stored frozen as a
# tuple of pairs sorted by exponent.

def _padd(p, r, sign=1):
    if p and len(p[0][1]) == 1:
        return _padd_rat(p, r, sign)
    out = dict(p)
    for e, c in r:
        if e in out:
            s = _cadd(out[e], c) if sign > 0 else _csub(out[e], c)
            if _cis_zero(s):
                del out[e]
            else:
                out[e] = s
        else:
            out[e] = c if sign > 0 else _cneg(c)
    return tuple(sorted(out.items()))


def _padd_rat(p, r, sign):
    """_padd for rational coefficient tuples."""
    out = {e: c[0] for e, c in p}
    for e, c in r:
        x = c[0] if sign > 0 else -c[0]
        y = out.get(e)
        if y is None:
            out[e] = x
        else:
            y = y + x
            if y:
                out[e] = y
            else:
                del out[e]
    return tuple((e, (out[e],)) for e in sorted(out))


def _pmul(p, r, n):
    if n == 1:
        if len(p) == 1 and len(r) == 1:
            (e1, c1), = p
            (e2, c2), = r
            return ((e1 + e2, (c1[0] * c2[0],)),)
        acc = {}
        for e1, c1 in p:
            x = c1[0]
            for e2, c2 in r:
                e = e1 + e2
                acc[e] = acc.get(e, ZERO_Q) + x * c2[0]
        return tuple((e, (acc[e],)) for e in sorted(acc) if acc[e])
    out = {}
    for e1, c1 in p:
        for e2, c2 in r:
            e = e1 + e2
            c = _cmul(c1, c2, n)
            if e in out:
                out[e] = _cadd(out[e], c)
            else:
                out[e] = c
    return tuple(sorted((e, c) for e, c in out.items() if not _cis_zero(c)))


def _pscale(p, c, n):
    return tuple((e, _cmul(x, c, n)) for e, x in p)


def _pshift(p, k):
    return tuple((e + k, c) for e, c in p)


def _pdivmod(f, g, n):
    """Division of ordinary polynomials (exponents >= 0) over Q(zeta_n)."""
    if n == 1:
        return _pdivmod_rat(f, g)
    f = dict(f)
    dg, lc = g[-1]
    inv = _cinv(lc, n)
    quo = {}
    while f:
        df = max(f)
        if df < dg:
            break
        c = _cmul(f[df], inv, n)
        k = df - dg
        quo[k] = c
        for e, x in g:
            t = f.get(e + k)
            s = _cmul(c, x, n)
            s = _cneg(s) if t is None else _csub(t, s)
            if _cis_zero(s):
                f.pop(e + k, None)
            else:
                f[e + k] = s
    return tuple(sorted(quo.items())), tuple(sorted(f.items()))


def _pdivmod_rat(f, g):
    f = {e: c[0] for e, c in f}
    dg, lc = g[-1]
    inv = 1 / lc[0]
    gl = [(e, c[0]) for e, c in g]
    quo = {}
    while f:
        df = max(f)
        if df < dg:
            break
        c = f[df] * inv
        k = df - dg
        quo[k] = c
        for e, x in gl:
            s = f.get(e + k, ZERO_Q) - c * x
            if s:
                f[e + k] = s
            else:
                f.pop(e + k, None)
    return (tuple((e, (quo[e],)) for e in sorted(quo)), tuple((e, (f[e],)) for e in sorted(f)))


def _pmonic(p, n):
    inv = _cinv(p[-1][1], n)
    return _pscale(p, inv, n)


def _pgcd(f, g, n):
    while g:
        _, r = _pdivmod(f, g, n)
        f, g = g, r
    return _pmonic(f, n)


def _is_one(p, n):
    return len(p) == 1 and p[0][0] == 0 and p[0][1][0] == 1 and not any(p[0][1][1:])


# ------------------------------------------------------------------ Scalar

class Scalar:
    """An exact element of Q(zeta_N)(q); immutable."""

    __slots__ = ("n", "r", "num", "den")

    def __init__(self, value=0):
        if isinstance(value, Scalar):
            self.n, self.r, self.num, self.den = value.n, value.r, value.num, value.den
            return
        self.n = 1
        self.r = mpq(value)
        self.num = self.den = None

    # construction helpers
    @staticmethod
    def _rat(r) -> "Scalar":
        s = object.__new__(Scalar)
        s.n = 1
        s.r = r
        s.num = s.den = None
        return s

    @staticmethod
    def zeta(n: int, k: int = 1) -> "Scalar":
        """zeta_n ** k, with zeta_n = exp(2 pi i / n)."""
        k %= n
        if n <= 2:
            return Scalar._rat(mpq(-1) if (n == 2 and k == 1) else ONE_Q)
        c = [ZERO_Q] * k + [ONE_Q]
        return Scalar._build(n, ((0, _creduce(c, n)),), None)

    @staticmethod
    def q(k: int = 1) -> "Scalar":
        return Scalar._build(1, ((k, (ONE_Q,)),), None)

    @staticmethod
    def _build(n, num, den):
        """Canonicalize a fraction num/den (den None means 1)."""
        if not num:
            return Scalar._rat(ZERO_Q)
        if den is not None:
            if len(den) == 1:
                e, c = den[0]
                inv = _cinv(c, n)
                num = _pshift(_pscale(num, inv, n), -e)
                den = None
            else:
                low = den[0][0]
                if low:
                    den = _pshift(den, -low)
                    num = _pshift(num, -low)
                lcinv = _cinv(den[-1][1], n)
                if not _is_one(((0, den[-1][1]),), n):
                    den = _pscale(den, lcinv, n)
                    num = _pscale(num, lcinv, n)
                shift = num[0][0]
                g = _pgcd(_pshift(num, -shift), den, n)
                if g[-1][0] > 0:
                    num = _pshift(_pdivmod(_pshift(num, -shift), g, n)[0], shift)
                    den = _pdivmod(den, g, n)[0]
                if len(den) == 1:
                    den = None
        if den is None and len(num) == 1 and num[0][0] == 0 and not any(num[0][1][1:]):
            return Scalar._rat(num[0][1][0])
        s = object.__new__(Scalar)
        s.n = n
        s.r = None
        s.num = num
        s.den = den
        return s

    def _parts(self, n):
        """(num, den) lifted into Q(zeta_n)."""
        if self.r is not None:
            c = (self.r,) + (ZERO_Q,) * (phi(n) - 1)
            return ((0, c),) if self.r else (), None
        if self.n == n:
            return self.num, self.den
        num = tuple((e, _clift(c, self.n, n)) for e, c in self.num)
        den = None if self.den is None else tuple((e, _clift(c, self.n, n)) for e, c in self.den)
        return num, den

    # predicates
    def is_rational(self) -> bool:
        return self.r is not None

    def is_zero(self) -> bool:
        return self.r is not None and not self.r

    def __bool__(self):
        return not (self.r is not None and not self.r)

    def is_constant(self) -> bool:
        """True when the value does not involve q."""
        return self.r is not None or (self.den is None and len(self.num) == 1 and self.num[0][0] == 0)

    def is_monomial(self) -> bool:
        """True for c*q^k with c in Q(zeta_N)."""
        return self.r is not None or (self.den is None and len(self.num) == 1)

    # arithmetic
    def __add__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if self.r is not None and other.r is not None:
            return Scalar._rat(self.r + other.r)
        return _combine(self, other, 1)

    __radd__ = __add__

    def __sub__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if self.r is not None and other.r is not None:
            return Scalar._rat(self.r - other.r)
        return _combine(self, other, -1)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __neg__(self):
        if self.r is not None:
            return Scalar._rat(-self.r)
        s = object.__new__(Scalar)
        s.n, s.r, s.den = self.n, None, self.den
        s.num = tuple((e, _cneg(c)) for e, c in self.num)
        return s

    def __pos__(self):
        return self

    def __mul__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if self.r is not None:
            if other.r is not None:
                return Scalar._rat(self.r * other.r)
            if not self.r:
                return self
            if self.r == 1:
                return other
            return other._scale_rat(self.r)
        if other.r is not None:
            if not other.r:
                return other
            if other.r == 1:
                return self
            return self._scale_rat(other.r)
        n = _lcm(self.n, other.n)
        a, ad = self._parts(n)
        b, bd = other._parts(n)
        num = _pmul(a, b, n)
        if ad is None and bd is None:
            return Scalar._build(n, num, None)
        if ad is None:
            den = bd
        elif bd is None:
            den = ad
        else:
            den = _pmul(ad, bd, n)
        return Scalar._build(n, num, den)

    __rmul__ = __mul__

    def _scale_rat(self, r):
        s = object.__new__(Scalar)
        s.n, s.r, s.den = self.n, None, self.den
        s.num = tuple((e, tuple(x * r for x in c)) for e, c in self.num)
        return s

    def inverse(self) -> "Scalar":
        if self.r is not None:
            if not self.r:
                raise ZeroDivisionError("division by the zero scalar")
            return Scalar._rat(ONE_Q / self.r)
        n = self.n
        if self.den is None and len(self.num) == 1:
            e, c = self.num[0]
            return Scalar._build(n, ((-e, _cinv(c, n)),), None)
        den = self.den if self.den is not None else ((0, (ONE_Q,) + (ZERO_Q,) * (phi(n) - 1)),)
        return Scalar._build(n, den, self.num)

    def __truediv__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if other.r is not None and self.r is not None:
            if not other.r:
                raise ZeroDivisionError("division by the zero scalar")
            return Scalar._rat(self.r / other.r)
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = Scalar._rat(ONE_Q)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # comparison
    def __eq__(self, other):
        if not isinstance(other, Scalar):
            other = _coerce(other)
            if other is None:
                return NotImplemented
        if self.r is not None or other.r is not None:
            return self.r is not None and other.r is not None and self.r == other.r
        if self.n == other.n:
            return self.num == other.num and self.den == other.den
        n = _lcm(self.n, other.n)
        return self._parts(n) == other._parts(n)

    def __ne__(self, other):
        res = self.__eq__(other)
        return res if res is NotImplemented else not res

    def __hash__(self):
        if self.r is not None:
            return hash(self.r)
        return hash((tuple(e for e, _ in self.num), None if self.den is None else tuple(e for e, _ in self.den)))

    def __repr__(self):
        return f"Scalar({self.to_text()!r})"

    def __str__(self):
        return self.to_text()

    # serialization
    def to_text(self) -> str:
        if self.r is not None:
            return _rat_text(self.r)
        num = _poly_text(self.num, self.n)
        if self.den is None:
            return num
        return f"({num})/({_poly_text(self.den, self.n)})"

    def to_fraction(self):
        """The value as an mpq; only valid for rational scalars."""
        if self.r is None:
            raise ValueError(f"{self} is not rational")
        return self.r

    def substitute_q(self, q_value: "Scalar") -> "Scalar":
        """Evaluate with q replaced by another scalar."""
        if self.r is not None:
            return self
        return _eval_poly(self.num, self.n, q_value) / (
            _eval_poly(self.den, self.n, q_value) if self.den is not None else ONE)


def _eval_poly(p, n, x):
    total = ZERO
    for e, c in p:
        total = total + _cyc_scalar(c, n) * x ** e
    return total


def _cyc_scalar(c, n):
    return Scalar._build(n, ((0, c),), None)


def _combine(a, b, sign):
    n = _lcm(a.n, b.n)
    an, ad = a._parts(n)
    bn, bd = b._parts(n)
    if ad is None and bd is None:
        return Scalar._build(n, _padd(an, bn, sign), None)
    if ad == bd:
        return Scalar._build(n, _padd(an, bn, sign), ad)
    one = ((0, (ONE_Q,) + (ZERO_Q,) * (phi(n) - 1)),)
    ad1 = ad if ad is not None else one
    bd1 = bd if bd is not None else one
    num = _padd(_pmul(an, bd1, n), _pmul(bn, ad1, n), sign)
    return Scalar._build(n, num, _pmul(ad1, bd1, n))


def _coerce(x):
    if isinstance(x, Scalar):
        return x
    if isinstance(x, int) or type(x) is type(ONE_Q):
        return Scalar._rat(mpq(x))
    try:
        from fractions import Fraction
        if isinstance(x, Fraction):
            return Scalar._rat(mpq(x.numerator, x.denominator))
    except ImportError:  # pragma: no cover
        pass
    return None


def as_scalar(x) -> Scalar:
    s = _coerce(x)
    if s is None:
        if isinstance(x, str):
            return parse_scalar(x)
        raise TypeError(f"cannot interpret {x!r} as a scalar")
    return s


ZERO = Scalar._rat(ZERO_Q)
ONE = Scalar._rat(ONE_Q)


def _rat_text(r) -> str:
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def _cyc_text(c) -> str:
    terms = []
    for k, x in enumerate(c):
        if not x:
            continue
        mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
        terms.append((x, mono))
    return _join_terms(terms)


def _join_terms(terms) -> str:
    out = ""
    for x, mono in terms:
        neg = x < 0
        ax = -x if neg else x
        if mono:
            body = mono if ax == 1 else f"{_rat_text(ax)}*{mono}"
        else:
            body = _rat_text(ax)
        if not out:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out or "0"


def _poly_text(p, n) -> str:
    parts = []
    for e, c in p:
        qm = "" if e == 0 else ("q" if e == 1 else f"q^{e}" if e > 0 else f"q^({e})")
        nz = [x for x in c if x]
        if len(nz) == 1:
            k = next(i for i, x in enumerate(c) if x)
            zm = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
            mono = "*".join(m for m in (zm, qm) if m)
            parts.append((c[k], mono))
        else:
            inner = _cyc_text(c)
            parts.append((ONE_Q, f"({inner})" + (f"*{qm}" if qm else "")))
    return _join_terms(parts)


# ------------------------------------------------------------------ parsing

def parse_scalar(text: str, n: int = 1) -> Scalar:
    """Parse the text grammar: integers, z (= zeta_n), q, + - * / ^ and parentheses."""
    return _Parser(text, n).parse()


class _Parser:
    def __init__(self, text, n):
        self.toks = _tokenize(text)
        self.i = 0
        self.n = n

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, tok=None):
        t = self.peek()
        if t is None or (tok is not None and t != tok):
            raise ValueError(f"expected {tok or 'token'} at position {self.i}, got {t!r}")
        self.i += 1
        return t

    def parse(self):
        v = self.expr()
        if self.peek() is not None:
            raise ValueError(f"unexpected token {self.peek()!r}")
        return v

    def expr(self):
        v = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            v = v + rhs if op == "+" else v - rhs
        return v

    def term(self):
        v = self.unary()
        while self.peek() in ("*", "/"):
            op = self.take()
            rhs = self.unary()
            v = v * rhs if op == "*" else v / rhs
        return v

    def unary(self):
        if self.peek() == "-":
            self.take()
            return -self.unary()
        if self.peek() == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.take()
            sign = 1
            if self.peek() == "-":
                self.take()
                sign = -1
            if self.peek() == "(":
                self.take()
                e = self.expr()
                self.take(")")
                if not e.is_rational() or e.r.denominator != 1:
                    raise ValueError("exponent must be an integer")
                k = int(e.r)
            else:
                t = self.take()
                if not t.isdigit():
                    raise ValueError(f"bad exponent {t!r}")
                k = int(t)
            return base ** (sign * k)
        return base

    def atom(self):
        t = self.take()
        if t == "(":
            v = self.expr()
            self.take(")")
            return v
        if t == "z":
            return Scalar.zeta(self.n)
        if t == "q":
            return Scalar.q()
        if t.isdigit():
            return Scalar._rat(mpq(int(t)))
        raise ValueError(f"unexpected token {t!r}")


def _tokenize(text):
    toks = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(text[i:j])
            i = j
        elif ch in "+-*/^()zq":
            toks.append(ch)
            i += 1
        else:
            raise ValueError(f"unexpected character {ch!r} in scalar text")
    return toks


# ------------------------------------------------------------ group elements

class GroupElement:
    """An element zeta_N^k * q^m of the multiplicative group acting on fields."""

    __slots__ = ("root", "order", "qpow")

    def __init__(self, root: int = 0, order: int = 1, qpow: int = 0):
        order = max(order, 1)
        root %= order
        g = gcd(root, order) if root else order
        # store in lowest terms so equal elements compare equal
        self.root = root // g if root else 0
        self.order = order // g if root else 1
        self.qpow = qpow

    @staticmethod
    def one() -> "GroupElement":
        return GroupElement()

    def value(self) -> Scalar:
        v = Scalar.zeta(self.order, self.root) if self.root else ONE
        if self.qpow:
            v = v * Scalar.q(self.qpow)
        return v

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        n = _lcm(self.order, other.order)
        k = self.root * (n // self.order) + other.root * (n // other.order)
        return GroupElement(k, n, self.qpow + other.qpow)

    def inverse(self) -> "GroupElement":
        return GroupElement(-self.root, self.order, -self.qpow)

    def __truediv__(self, other: "GroupElement") -> "GroupElement":
        return self * other.inverse()

    def __pow__(self, k: int) -> "GroupElement":
        return GroupElement(self.root * k, self.order, self.qpow * k)

    def is_one(self) -> bool:
        return self.root == 0 and self.qpow == 0

    def _key(self):
        return (self.root, self.order, self.qpow)

    def __eq__(self, other):
        return isinstance(other, GroupElement) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __lt__(self, other):
        return (self.qpow, self.root * 10**6 // self.order) < (other.qpow, other.root * 10**6 // other.order)

    def __repr__(self):
        return f"GroupElement({self.to_text()})"

    def to_text(self) -> str:
        parts = []
        if self.root and self.order == 2:
            parts.append("-1")
        elif self.root:
            parts.append(f"zeta{self.order}" + (f"^{self.root}" if self.root != 1 else ""))
        if self.qpow:
            parts.append("q" + (f"^{self.qpow}" if self.qpow != 1 else ""))
        return "*".join(parts) or "1"


def parse_group_element(text: str) -> GroupElement:
    """Parse forms like ``1``, ``-1``, ``zeta3^2``, ``q^-1``, ``zeta4*q^2``."""
    text = text.strip().replace(" ", "")
    if text in ("1", ""):
        return GroupElement()
    if text == "-1":
        return GroupElement(1, 2)
    g = GroupElement()
    for part in text.split("*"):
        base, _, exp = part.partition("^")
        k = int(exp) if exp else 1
        if base == "q":
            g = g * GroupElement(0, 1, k)
        elif base.startswith("zeta"):
            g = g * GroupElement(k, int(base[4:]))
        elif base == "-1":
            g = g * GroupElement(k, 2)
        else:
            raise ValueError(f"cannot parse group element {text!r}")
    return g


def roots_of_unity(t: int) -> list:
    """The cyclic group of t-th roots of unity, generator powers in order."""
    return [GroupElement(k, t) for k in range(t)]
