"""Sparse Laurent data in named variables with explicit authoritative windows."""

from __future__ import annotations

from itertools import product as cartesian
from math import comb, factorial

from .scalars import ONE, ZERO, Scalar, as_scalar, parse_scalar


def binom(n: int, k: int) -> int:
    """Generalized binomial coefficient C(n, k) for any integer n and k >= 0."""
    if k < 0:
        return 0
    if n >= 0:
        return comb(n, k)
    # C(-m, k) = (-1)^k C(m + k - 1, k)
    return (-1) ** k * comb(-n + k - 1, k)


def falling(m: int, j: int) -> int:
    """m (m-1) ... (m-j+1)."""
    out = 1
    for i in range(j):
        out *= m - i
    return out


class LaurentData:
    """Finitely many coefficients of a Laurent series, authoritative on a box.

    ``window`` holds one (lo, hi) pair per variable; ``None`` bounds mean the
    data is exact in that direction (a polynomial has all bounds None).
    Stored exponents always lie inside the window.
    """

    __slots__ = ("vars", "terms", "window")

    def __init__(self, variables, terms=None, window=None):
        self.vars = tuple(variables)
        w = tuple(window) if window is not None else tuple((None, None) for _ in self.vars)
        if len(w) != len(self.vars):
            raise ValueError("window needs one (lo, hi) pair per variable")
        self.window = tuple((lo, hi) for lo, hi in w)
        t = {}
        for e, v in (terms or {}).items():
            e = tuple(e)
            v = as_scalar(v)
            if v and self._inside(e):
                t[e] = v
        self.terms = t

    # construction
    @staticmethod
    def polynomial(variables, terms) -> "LaurentData":
        return LaurentData(variables, terms)

    @staticmethod
    def monomial(variables, exps, coeff=ONE) -> "LaurentData":
        return LaurentData(variables, {tuple(exps): coeff})

    def _inside(self, e) -> bool:
        for x, (lo, hi) in zip(e, self.window):
            if lo is not None and x < lo:
                return False
            if hi is not None and x > hi:
                return False
        return True

    def is_exact(self) -> bool:
        return all(lo is None and hi is None for lo, hi in self.window)

    def coefficient(self, exps) -> Scalar:
        exps = tuple(exps)
        if not self._inside(exps):
            raise KeyError(f"exponent {exps} outside the authoritative window")
        return self.terms.get(exps, ZERO)

    def restrict(self, window) -> "LaurentData":
        w = tuple(_intersect(a, b) for a, b in zip(self.window, window))
        return LaurentData(self.vars, self.terms, w)

    def min_exponent(self, var) -> int:
        i = self.vars.index(var)
        return min(e[i] for e in self.terms)

    def max_exponent(self, var) -> int:
        i = self.vars.index(var)
        return max(e[i] for e in self.terms)

    # arithmetic
    def _aligned(self, other):
        if self.vars != other.vars:
            raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")

    def __add__(self, other):
        self._aligned(other)
        w = tuple(_intersect(a, b) for a, b in zip(self.window, other.window))
        t = dict(self.terms)
        for e, v in other.terms.items():
            t[e] = t.get(e, ZERO) + v
        return LaurentData(self.vars, t, w)

    def __neg__(self):
        return LaurentData(self.vars, {e: -v for e, v in self.terms.items()}, self.window)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "LaurentData":
        c = as_scalar(c)
        return LaurentData(self.vars, {e: v * c for e, v in self.terms.items()}, self.window)

    def __mul__(self, other):
        if not isinstance(other, LaurentData):
            return self.scale(other)
        self._aligned(other)
        w = _product_window(self, other)
        out = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, ZERO) + v1 * v2
        return LaurentData(self.vars, out, w)

    __rmul__ = scale

    def derivative(self, var, times: int = 1) -> "LaurentData":
        i = self.vars.index(var)
        out = {}
        for e, v in self.terms.items():
            c = falling(e[i], times)
            if c:
                ne = list(e)
                ne[i] -= times
                out[tuple(ne)] = v * c
        w = list(self.window)
        lo, hi = w[i]
        w[i] = (None if lo is None else lo - times, None if hi is None else hi - times)
        return LaurentData(self.vars, out, w)

    def shift(self, exps) -> "LaurentData":
        """Multiply by a monomial."""
        out = {tuple(a + b for a, b in zip(e, exps)): v for e, v in self.terms.items()}
        w = [(None if lo is None else lo + s, None if hi is None else hi + s)
             for (lo, hi), s in zip(self.window, exps)]
        return LaurentData(self.vars, out, w)

    def compare(self, other, window=None):
        """First exponent (in sorted order) where the two disagree, or None.

        Only exponents inside both windows and ``window`` are compared.
        Returns (mismatch, count compared).
        """
        self._aligned(other)
        w = tuple(_intersect(a, b) for a, b in zip(self.window, other.window))
        if window is not None:
            w = tuple(_intersect(a, b) for a, b in zip(w, window))
        keys = set(self.terms) | set(other.terms)
        inside = sorted(e for e in keys if _in_box(e, w))
        for e in inside:
            if self.terms.get(e, ZERO) != other.terms.get(e, ZERO):
                return e, len(inside)
        count = 1
        for lo, hi in w:
            if lo is None or hi is None:
                count = len(inside)
                break
            count *= max(hi - lo + 1, 0)
        return None, count

    def __eq__(self, other):
        if not isinstance(other, LaurentData):
            return NotImplemented
        return self.vars == other.vars and self.window == other.window and self.terms == other.terms

    def __repr__(self):
        return f"LaurentData({self.vars}, {len(self.terms)} terms, window={self.window})"

    # serialization
    def to_json(self) -> dict:
        return {
            "variables": list(self.vars),
            "terms": [[list(e), self.terms[e].to_text()] for e in sorted(self.terms)],
            "window": [list(w) for w in self.window],
        }

    @staticmethod
    def from_json(data: dict, n: int = 1) -> "LaurentData":
        terms = {tuple(e): parse_scalar(s, n) for e, s in data["terms"]}
        return LaurentData(data["variables"], terms, [tuple(w) for w in data["window"]])


def _intersect(a, b):
    lo = a[0] if b[0] is None else b[0] if a[0] is None else max(a[0], b[0])
    hi = a[1] if b[1] is None else b[1] if a[1] is None else min(a[1], b[1])
    return (lo, hi)


def _in_box(e, w) -> bool:
    return all((lo is None or x >= lo) and (hi is None or x <= hi) for x, (lo, hi) in zip(e, w))


def _product_window(a: LaurentData, b: LaurentData):
    if a.is_exact() and b.is_exact():
        return a.window
    if a.is_exact() or b.is_exact():
        poly, ser = (a, b) if a.is_exact() else (b, a)
        if not poly.terms:
            return tuple((None, None) for _ in a.vars)
        out = []
        for i, (lo, hi) in enumerate(ser.window):
            smin = min(e[i] for e in poly.terms)
            smax = max(e[i] for e in poly.terms)
            out.append((None if lo is None else lo + smax, None if hi is None else hi + smin))
        return tuple(out)
    # both truncated: only supported when both vanish below their lower bounds
    out = []
    for (la, ha), (lb, hb) in zip(a.window, b.window):
        if la is None or lb is None:
            raise ValueError("product of two truncated series needs lower bounds in every variable")
        his = [h for h in ((ha + lb) if ha is not None else None, (hb + la) if hb is not None else None)
               if h is not None]
        out.append((la + lb, min(his) if his else None))
    return tuple(out)


# ------------------------------------------------------------ iota maps

class IotaDirection:
    """An ordering of variables: later ones expand in nonnegative powers."""

    def __init__(self, order):
        self.order = tuple(order)
        if len(set(self.order)) != len(self.order):
            raise ValueError("iota direction must be a permutation")

    def earlier(self, a, b) -> bool:
        return self.order.index(a) < self.order.index(b)


class Binomial:
    """The factor (c1*x_a + c2*x_b)^n."""

    def __init__(self, c1, var_a, c2, var_b, n: int):
        self.c1, self.c2 = as_scalar(c1), as_scalar(c2)
        self.a, self.b, self.n = var_a, var_b, int(n)
        if self.n < 0 and (not self.c1 or not self.c2):
            raise ValueError("binomial base with a zero coefficient cannot take a negative power")


def iota_expand(factors, direction, window, variables=None, base: LaurentData | None = None) -> LaurentData:
    """Expand a product of binomial powers (times optional Laurent polynomial data).

    Within each factor the variable that comes later in ``direction`` is
    expanded in nonnegative powers.  The result is exact on ``window``.
    """
    if not isinstance(direction, IotaDirection):
        direction = IotaDirection(direction)
    variables = tuple(variables or direction.order)
    idx = {v: i for i, v in enumerate(variables)}
    window = tuple(window)
    if base is None:
        base = LaurentData(variables, {tuple(0 for _ in variables): ONE})
    if not base.is_exact():
        raise ValueError("base data must be an exact Laurent polynomial")
    # lower bound on each variable's exponent coming from every piece
    lows = []
    plan = []
    for f in factors:
        if f.n >= 0:
            later, earlier, cl, ce = f.b, f.a, f.c2, f.c1
            plan.append((f, later, earlier, cl, ce, f.n))
            lows.append({later: 0, earlier: 0})
            continue
        if direction.earlier(f.a, f.b):
            later, earlier, cl, ce = f.b, f.a, f.c2, f.c1
        else:
            later, earlier, cl, ce = f.a, f.b, f.c1, f.c2
        plan.append((f, later, earlier, cl, ce, None))
        lows.append({later: 0, earlier: None})
    base_low = {v: (min(e[idx[v]] for e in base.terms) if base.terms else 0) for v in variables}
    pieces = []
    for k, (f, later, earlier, cl, ce, top) in enumerate(plan):
        if top is None:
            hi = window[idx[later]][1]
            if hi is None:
                raise ValueError(f"window must bound {later} from above")
            slack = base_low[later]
            for j, lw in enumerate(lows):
                if j == k or later not in lw:
                    continue
                if lw[later] is None:
                    raise ValueError(f"{later} is expanded in one factor and unbounded below in another")
                slack += lw[later]
            top = hi - slack
        terms = {}
        cl_pow = ONE
        for i in range(0, max(top, -1) + 1):
            e = [0] * len(variables)
            e[idx[later]] += i
            e[idx[earlier]] += f.n - i
            c = binom(f.n, i) * cl_pow * ce ** (f.n - i)
            key = tuple(e)
            terms[key] = terms.get(key, ZERO) + c
            cl_pow = cl_pow * cl
        pieces.append(terms)
    acc = dict(base.terms)
    for terms in pieces:
        out = {}
        for e1, v1 in acc.items():
            for e2, v2 in terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                out[e] = out.get(e, ZERO) + v1 * v2
        acc = {e: v for e, v in out.items() if v}
    return LaurentData(variables, acc, window)


def series_invert(f: LaurentData, outer: str, inner: str, window) -> LaurentData:
    """Inverse of a nonzero polynomial f(outer, inner) in C((outer))((inner)).

    Write f = inner^s (u(outer) + inner R); u is inverted as a Laurent series
    in ``outer`` and the geometric series in ``inner`` is summed.  The result
    is exact on the returned window, which is ``window`` (given in the order
    of f.vars) possibly shrunk in ``outer``.
    """
    if not f.terms:
        raise ValueError("cannot invert the zero polynomial")
    if not f.is_exact():
        raise ValueError("series_invert expects an exact polynomial")
    io, ii = f.vars.index(outer), f.vars.index(inner)
    wo, wi = window[io], window[ii]
    if wo[1] is None or wi[1] is None:
        raise ValueError("window must bound both variables from above")
    s = min(e[ii] for e in f.terms)
    rows = {}
    for e, v in f.terms.items():
        row = rows.setdefault(e[ii] - s, {})
        row[e[io]] = row.get(e[io], ZERO) + v
    kmax = max(wi[1] + s, 0)
    t = min(rows[0])
    tmin = min(min(r) for r in rows.values())
    drop = t - tmin  # how far each geometric step can lower the outer valuation
    target = wo[1] + kmax * drop + 1
    # u^-1 as a truncated Laurent series: outer^-t * (u / outer^t)^-1
    prec = target + t + 1
    base = [ZERO] * (prec + 1)
    for e, v in rows[0].items():
        if e - t <= prec:
            base[e - t] = v
    inv = _ps_inverse(base, prec)
    uinv = _Trunc({j - t: v for j, v in enumerate(inv) if v}, prec - t)
    h = [uinv]
    for m in range(1, kmax + 1):
        acc = None
        for k in range(1, m + 1):
            if k in rows:
                term = _Trunc(rows[k], None).mul(h[m - k])
                acc = term if acc is None else acc.add(term)
        if acc is None:
            h.append(_Trunc({}, None))
        else:
            h.append(uinv.mul(acc).neg())
    exact_hi = min((x.prec for x in h if x.prec is not None), default=wo[1])
    terms = {}
    for m, hm in enumerate(h):
        for j, v in hm.terms.items():
            e = [0] * len(f.vars)
            e[ii] = m - s
            e[io] = j
            terms[tuple(e)] = v
    out_window = list(window)
    out_window[io] = (wo[0], min(wo[1], exact_hi))
    return LaurentData(f.vars, terms, out_window)


class _Trunc:
    """Laurent series in one variable known exactly up to exponent ``prec`` (None: exact)."""

    def __init__(self, terms, prec):
        self.prec = prec
        self.terms = {e: v for e, v in terms.items() if v and (prec is None or e <= prec)}

    def val(self):
        return min(self.terms) if self.terms else None

    def mul(self, other):
        va, vb = self.val(), other.val()
        if va is None or vb is None:
            precs = [p for p in (self.prec, other.prec) if p is not None]
            return _Trunc({}, min(precs) if precs else None)
        precs = []
        if self.prec is not None:
            precs.append(self.prec + vb)
        if other.prec is not None:
            precs.append(other.prec + va)
        prec = min(precs) if precs else None
        out = {}
        for e1, v1 in self.terms.items():
            for e2, v2 in other.terms.items():
                e = e1 + e2
                if prec is None or e <= prec:
                    out[e] = out.get(e, ZERO) + v1 * v2
        return _Trunc(out, prec)

    def add(self, other):
        precs = [p for p in (self.prec, other.prec) if p is not None]
        out = dict(self.terms)
        for e, v in other.terms.items():
            out[e] = out.get(e, ZERO) + v
        return _Trunc(out, min(precs) if precs else None)

    def neg(self):
        return _Trunc({e: -v for e, v in self.terms.items()}, self.prec)


def _ps_mul(a, b, prec):
    out = [ZERO] * (prec + 1)
    for i, x in enumerate(a):
        if x:
            for j in range(0, prec + 1 - i):
                y = b[j]
                if y:
                    out[i + j] = out[i + j] + x * y
    return out


def _ps_inverse(a, prec):
    inv0 = a[0].inverse()
    out = [inv0] + [ZERO] * prec
    for n in range(1, prec + 1):
        acc = ZERO
        for k in range(1, n + 1):
            if a[k]:
                acc = acc + a[k] * out[n - k]
        out[n] = -acc * inv0
    return out


def taylor_shift(s: LaurentData, var: str, new_var: str, c=ONE, window=None) -> LaurentData:
    """s(var + c*new_var) = exp(c*new_var d/dvar) s, in nonnegative powers of new_var.

    ``s`` is Laurent data in ``var`` alone; the result lives in (var, new_var).
    """
    c = as_scalar(c)
    if window is None:
        raise ValueError("taylor_shift needs a window for (var, new_var)")
    (lo, hi), (lo2, hi2) = window
    if hi2 is None:
        raise ValueError("window must bound the new variable")
    out = {}
    for (e,), v in s.terms.items():
        cpow = ONE
        for k in range(0, hi2 + 1):
            key = (e - k, k)
            out[key] = out.get(key, ZERO) + v * binom(e, k) * cpow
            cpow = cpow * c
            if e >= 0 and k >= e:
                break
    # the coefficient of var^a new_var^k needs s at var^(a+k)
    slo, shi = s.window[0]
    wlo = lo if slo is None else (slo if lo is None else max(lo, slo))
    whi = hi if shi is None else (shi - hi2 if hi is None else min(hi, shi - hi2))
    return LaurentData((var, new_var), out, ((wlo, whi), (0 if lo2 is None else max(lo2, 0), hi2)))


def exponent_box(window):
    """Iterate over all exponent vectors of a finite box."""
    return cartesian(*[range(lo, hi + 1) for lo, hi in window])


def factorial_inv(j: int) -> Scalar:
    return ONE / factorial(j)
