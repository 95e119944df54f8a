"""Fields on truncated modules and their alpha-shifted products.

A field is evaluated lazily: ``act(m, label)`` returns the vector a(m)label
together with an exactness flag.  The flag is False when the answer would
need module components above the degree cutoff; callers skip such entries
instead of asserting anything about them.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .laurent import binom
from .linalg import row_reduce
from .module import GradedModule, vadd
from .polys import BiPoly, Poly
from .scalars import ONE, ZERO, GroupElement, Scalar, as_scalar


def gvalue(alpha) -> Scalar:
    return alpha.value() if isinstance(alpha, GroupElement) else as_scalar(alpha)


def gtext(alpha) -> str:
    return alpha.to_text() if hasattr(alpha, "to_text") else str(alpha)


class Field:
    """Family of mode operators a(m) of fixed weight on a GradedModule."""

    def __init__(self, module: GradedModule, weight: int, name: str = "a"):
        self.module = module
        self.weight = weight
        self.name = name
        self._cache = {}

    def act(self, m: int, label):
        key = (m, label)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        r = self.module.degree(label) + self.weight - m - 1
        if r < 0:
            res = ({}, True)
        elif r > self.module.cutoff:
            res = ({}, False)
        else:
            res = self._compute(m, label)
        self._cache[key] = res
        return res

    def _compute(self, m, label):
        raise NotImplementedError

    def act_vector(self, m: int, vec: dict):
        out, ok = {}, True
        for lab, c in vec.items():
            v, e = self.act(m, lab)
            ok = ok and e
            vadd(out, v, c)
        return out, ok

    def mode_range(self, d: int) -> range:
        """Modes whose output from degree d lands inside [0, D]."""
        top = d + self.weight - 1
        return range(top - self.module.cutoff, top + 1)

    def __repr__(self):
        return f"<{type(self).__name__} {self.name} wt={self.weight}>"


class IdentityField(Field):
    def __init__(self, module):
        super().__init__(module, 0, "1_W")

    def _compute(self, m, label):
        return ({label: ONE} if m == -1 else {}), True


class ZeroField(Field):
    def __init__(self, module, weight=0, name="0"):
        super().__init__(module, weight, name)

    def _compute(self, m, label):
        return {}, True


class GeneratorField(Field):
    """a(m) = sum of mode-algebra keys, given by ``modes(m) -> {key: coeff}``."""

    def __init__(self, module, modes, weight: int = 1, name: str = "a"):
        super().__init__(module, weight, name)
        self.modes = modes

    def _compute(self, m, label):
        out = {}
        for key, c in self.modes(m).items():
            vadd(out, self.module.act_key(key, label), c)
        return out, True


class LinearCombination(Field):
    def __init__(self, terms, name=None, weight=None):
        terms = [(as_scalar(c), f) for c, f in terms if c]
        if not terms and weight is None:
            raise ValueError("empty combination needs a weight")
        module = terms[0][1].module if terms else None
        super().__init__(module, terms[0][1].weight if weight is None else weight,
                         name or " + ".join(f"({c.to_text()}){f.name}" for c, f in terms))
        self.terms = terms

    def _compute(self, m, label):
        out, ok = {}, True
        for c, f in self.terms:
            v, e = f.act(m, label)
            ok = ok and e
            vadd(out, v, c)
        return out, ok


class RAlpha(Field):
    """(R_alpha a)(m) = alpha^(-m-1) a(m), i.e. a(alpha x)."""

    def __init__(self, a: Field, alpha):
        super().__init__(a.module, a.weight, f"R[{gtext(alpha)}]{a.name}")
        self.a = a
        self.alpha = alpha
        self._val = gvalue(alpha)

    def _compute(self, m, label):
        v, ok = self.a.act(m, label)
        c = self._val ** (-m - 1)
        return {k: x * c for k, x in v.items()}, ok


class DField(Field):
    """(Da)(m) = -m a(m-1)."""

    def __init__(self, a: Field):
        super().__init__(a.module, a.weight + 1, f"D{a.name}")
        self.a = a

    def _compute(self, m, label):
        if m == 0:
            return {}, True
        v, ok = self.a.act(m - 1, label)
        return {k: x * (-m) for k, x in v.items()}, ok


class Perturbed(Field):
    """A field with one matrix entry shifted; used as a negative control."""

    def __init__(self, a: Field, m: int, label, target, delta=ONE):
        super().__init__(a.module, a.weight, f"{a.name}~")
        self.a, self.m, self.label, self.target = a, m, label, target
        self.delta = as_scalar(delta)

    def _compute(self, m, label):
        v, ok = self.a.act(m, label)
        if m == self.m and label == self.label:
            v = vadd(dict(v), {self.target: self.delta})
        return v, ok


def r_alpha(a: Field, alpha) -> Field:
    if isinstance(a, IdentityField) or gvalue(alpha) == ONE:
        return a
    return RAlpha(a, alpha)


def d_derivative(a: Field) -> Field:
    if isinstance(a, (IdentityField, ZeroField)):
        return ZeroField(a.module, a.weight + 1, f"D{a.name}")
    return DField(a)


# ------------------------------------------------------------ comparisons

def fields_equal(a: Field, b: Field, max_degree: int | None = None, labels=None):
    """Compare two fields entrywise where both are exact.

    Returns (equal, counterexample or None, number of compared entries).
    """
    mod = a.module
    if labels is None:
        top = mod.cutoff if max_degree is None else max_degree
        labels = mod.basis_upto(top)
    compared = 0
    for lab in labels:
        d = mod.degree(lab)
        modes = sorted(set(a.mode_range(d)) | set(b.mode_range(d)))
        for m in modes:
            va, ea = a.act(m, lab)
            vb, eb = b.act(m, lab)
            if not (ea and eb):
                continue
            compared += 1
            if va != vb:
                diff = vadd(dict(va), vb, -ONE)
                out = min(diff, key=lambda k: mod.sort_label(k))
                return False, {
                    "mode": m,
                    "basis": mod.label_text(lab),
                    "component": mod.label_text(out),
                    "left": va.get(out, ZERO).to_text(),
                    "right": vb.get(out, ZERO).to_text(),
                }, compared
    return True, None, compared


def is_zero_field(a: Field, max_degree=None):
    return fields_equal(a, ZeroField(a.module, a.weight), max_degree)


# ------------------------------------------------------------ generating data

def field_apply(a: Field, vec: dict, window=None):
    """a(x)v as {exponent of x: vector}, plus the exponents that were cut off."""
    mod = a.module
    degs = [mod.degree(k) for k in vec] or [0]
    if window is None:
        lo, hi = -(max(degs) + a.weight), mod.cutoff
    else:
        lo, hi = window
    out, lost = {}, []
    for e in range(lo, hi + 1):
        v, ok = a.act_vector(-e - 1, vec)
        if not ok:
            lost.append(e)
            continue
        if v:
            out[e] = v
    return out, lost


def compose_data(a: Field, b: Field, vec: dict, order: str = "ab", window=None):
    """a(x1)b(x2)v (order "ab") or b(x2)a(x1)v (order "ba") on an exponent box."""
    mod = a.module
    d = max((mod.degree(k) for k in vec), default=0)
    D = mod.cutoff
    if window is None:
        window = ((-(d + a.weight), D - d - a.weight), (-(d + b.weight), D - d - b.weight))
    (lo1, hi1), (lo2, hi2) = window
    out, lost = {}, []
    for e1 in range(lo1, hi1 + 1):
        for e2 in range(lo2, hi2 + 1):
            if order == "ab":
                u, ok1 = b.act_vector(-e2 - 1, vec)
                w, ok2 = a.act_vector(-e1 - 1, u)
            else:
                u, ok1 = a.act_vector(-e1 - 1, vec)
                w, ok2 = b.act_vector(-e2 - 1, u)
            if not (ok1 and ok2):
                lost.append((e1, e2))
            elif w:
                out[(e1, e2)] = w
    return out, lost


class CommutatorData:
    """Cached [a(p), b(r)] on basis labels, indexed by exponents c1 = -p-1, c2 = -r-1."""

    def __init__(self, a: Field, b: Field):
        self.a, self.b = a, b
        self._cache = {}

    def box(self, label):
        mod = self.a.module
        d, D = mod.degree(label), mod.cutoff
        wa, wb = self.a.weight, self.b.weight
        return (-(d + wa), D - d - wa), (-(d + wb), D - d - wb)

    def get(self, label, c1, c2):
        key = (label, c1, c2)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        (lo1, hi1), (lo2, hi2) = self.box(label)
        if c1 < lo1 and c2 < lo2:
            res = ({}, True)
        else:
            u, ok1 = self.b.act(-c2 - 1, label)
            left, ok2 = self.a.act_vector(-c1 - 1, u)
            u, ok3 = self.a.act(-c1 - 1, label)
            right, ok4 = self.b.act_vector(-c2 - 1, u)
            res = (vadd(left, right, -ONE), ok1 and ok2 and ok3 and ok4)
        self._cache[key] = res
        return res

    def annihilates(self, f: BiPoly, labels):
        """Does f(x1,x2)[a(x1),b(x2)] vanish on the exact part of the window?

        Returns (ok, counterexample, compared).
        """
        terms = list(f.terms.items())
        compared = 0
        for label in labels:
            (lo1, hi1), (lo2, hi2) = self.box(label)
            imin = min((i for (i, j) in f.terms), default=0)
            jmin = min((j for (i, j) in f.terms), default=0)
            imax = max((i for (i, j) in f.terms), default=0)
            jmax = max((j for (i, j) in f.terms), default=0)
            for e1 in range(lo1 + imin, hi1 + imax + 1):
                for e2 in range(lo2 + jmin, hi2 + jmax + 1):
                    acc, ok = {}, True
                    for (i, j), c in terms:
                        v, e = self.get(label, e1 - i, e2 - j)
                        if not e:
                            ok = False
                            break
                        vadd(acc, v, c)
                    if not ok:
                        continue
                    compared += 1
                    if acc:
                        mod = self.a.module
                        return False, {"basis": mod.label_text(label), "exponent": [e1, e2]}, compared
        return True, None, compared


# ------------------------------------------------------------ witnesses

@dataclass
class CompatibilityWitness:
    f: BiPoly
    kind: str = "quasi-locality"          # or "regularity" / "gamma-locality"
    factors: list = dc_field(default_factory=list)   # [(GroupElement, multiplicity)]

    def __post_init__(self):
        if self.f.is_zero():
            raise ValueError("a witness must be a nonzero polynomial")

    @staticmethod
    def one() -> "CompatibilityWitness":
        return CompatibilityWitness(BiPoly.one(), "gamma-locality", [])

    @staticmethod
    def from_factors(factors, kind="gamma-locality") -> "CompatibilityWitness":
        factors = [(g, k) for g, k in factors if k]
        return CompatibilityWitness(BiPoly.from_factors([(gvalue(g), k) for g, k in factors]), kind, factors)

    def multiplicity(self, alpha) -> int:
        return vanishing_bound(self, alpha)

    def to_text(self) -> str:
        if self.factors:
            parts = []
            for g, k in self.factors:
                base = "(x1 - x2)" if g.is_one() else f"(x1 - {g.to_text()}*x2)"
                parts.append(base + (f"^{k}" if k > 1 else ""))
            return "*".join(parts)
        return self.f.to_text()


def _leading_zeros(p: Poly) -> int:
    k = 0
    while k < len(p.c) and not p.c[k]:
        k += 1
    return k


class WindowTooSmall(Exception):
    pass


class NoWitness(Exception):
    pass


def _factor_over(p: Poly, candidates):
    """Write monic p as a product of (x - alpha) over candidates, or None."""
    rest = p.monic()
    factors = []
    for g in candidates:
        k = rest.multiplicity(gvalue(g))
        if k:
            rest = rest // (Poly.linear_root(gvalue(g)) ** k)
            factors.append((g, k))
    return factors if rest.degree == 0 else None


def find_annihilator(a: Field, b: Field, mode: str = "quasi-locality", candidates=(),
                     degree_bound: int = 8, labels=None, data: CommutatorData | None = None):
    """Least-degree homogeneous f with f(x1,x2)[a(x1),b(x2)] = 0 on the window.

    Homogeneous parts of a witness are witnesses themselves, so the search
    runs over homogeneous f by increasing degree with a linear solve; the
    first nontrivial kernel is one-dimensional and is then factored over the
    candidate group elements when possible.
    """
    if mode not in ("quasi-locality", "regularity"):
        raise ValueError(f"unknown mode {mode!r}")
    mod = a.module
    data = data or CommutatorData(a, b)
    if labels is None:
        labels = mod.basis_upto(mod.cutoff)
    for N in range(degree_bound + 1):
        rows = []
        compared = 0
        rank_now = 0
        for label in labels:
            (lo1, hi1), (lo2, hi2) = data.box(label)
            for e1 in range(lo1, hi1 + N + 1):
                for e2 in range(lo2, hi2 + N + 1):
                    comps, ok = {}, True
                    for i in range(N + 1):
                        v, e = data.get(label, e1 - i, e2 - (N - i))
                        if not e:
                            ok = False
                            break
                        for w, c in v.items():
                            comps.setdefault(w, {})[i] = c
                    if not ok:
                        continue
                    compared += 1
                    rows.extend(comps.values())
            if len(rows) > 4 * (N + 1):
                rank_now = len(row_reduce(rows)[1])
                rows = row_reduce(rows)[0]
                if rank_now == N + 1:
                    break
        if not compared:
            raise WindowTooSmall(f"no exact coefficients for degree {N}")
        reduced, pivots = row_reduce(rows)
        if len(pivots) == N + 1:
            continue
        free = [c for c in range(N + 1) if c not in pivots]
        if len(free) > 1:
            raise WindowTooSmall(f"witness of degree {N} not determined by the window")
        vec = {free[0]: ONE}
        for r, p in zip(reduced, pivots):
            c = r.get(free[0])
            if c:
                vec[p] = -c
        f = BiPoly({(i, N - i): c for i, c in vec.items()})
        p = f.dehomogenize()
        factors = _factor_over(p, candidates) if candidates else None
        if factors is not None:
            # trailing x2 powers cannot occur in a least-degree witness
            w = CompatibilityWitness.from_factors(factors)
            if w.f.degree() == N:
                w.kind = "gamma-locality" if mode == "quasi-locality" else "regularity"
                return w
        lead = p.lead().inverse()
        return CompatibilityWitness(f * lead, "quasi-locality" if mode == "quasi-locality" else "regularity")
    raise NoWitness(f"no witness of degree <= {degree_bound}")


# ------------------------------------------------------------ alpha-products

class YData:
    """Shared tables for all products a_(alpha,n) b with a fixed witness."""

    def __init__(self, a: Field, b: Field, alpha, witness, use_ba: bool = True):
        if isinstance(witness, CompatibilityWitness):
            witness = witness.f
        f = witness.lowest_part()
        if f.is_zero():
            raise ValueError("zero witness")
        self.a, self.b, self.alpha, self.f = a, b, alpha, f
        self.val = gvalue(alpha)
        self.N = f.degree()
        self.use_ba = use_ba
        self.terms = list(f.terms.items())
        self.imin = min(i for i, _ in f.terms)
        self.jmin = min(j for _, j in f.terms)
        c = f.shifted(self.val)
        self.s = _leading_zeros(c)
        self.c = list(c.c[self.s:])
        self._gamma = []
        self._A = {}
        self._P = {}
        self._pow = {}

    def gamma(self, k: int) -> list:
        """Coefficients of 1/(c_s + c_(s+1) t + ...) up to t^k."""
        g = self._gamma
        inv = self.c[0].inverse()
        while len(g) <= k:
            i = len(g)
            if i == 0:
                g.append(inv)
                continue
            acc = ZERO
            for t in range(1, min(i, len(self.c) - 1) + 1):
                acc = acc + self.c[t] * g[i - t]
            g.append(-acc * inv)
        return g

    def apow(self, e: int) -> Scalar:
        v = self._pow.get(e)
        if v is None:
            v = self.val ** e
            self._pow[e] = v
        return v

    def _A_ab(self, label, c1, c2):
        key = ("ab", label, c1, c2)
        if key not in self._A:
            u, ok = self.b.act(-c2 - 1, label)
            w, ok2 = self.a.act_vector(-c1 - 1, u) if ok else ({}, False)
            self._A[key] = w if ok2 else None
        return self._A[key]

    def _A_ba(self, label, c1, c2):
        key = ("ba", label, c1, c2)
        if key not in self._A:
            u, ok = self.a.act(-c1 - 1, label)
            w, ok2 = self.b.act_vector(-c2 - 1, u) if ok else ({}, False)
            self._A[key] = w if ok2 else None
        return self._A[key]

    def G(self, label, e1, e2):
        """(f a(x1) b(x2) v) at x1^e1 x2^e2, or None if cut off."""
        key = ("G", label, e1, e2)
        if key in self._A:
            return self._A[key]
        out = None
        for order in ("ab", "ba") if self.use_ba else ("ab",):
            fn = self._A_ab if order == "ab" else self._A_ba
            out = {}
            for (i, j), c in self.terms:
                w = fn(label, e1 - i, e2 - j)
                if w is None:
                    out = None
                    break
                vadd(out, w, c)
            if out is not None:
                break
        res = out
        self._A[key] = res
        return res

    def P(self, label, E: int, kmax: int):
        """[P_0 .. P_kmax] at total exponent E, or None when cut off."""
        key = (label, E)
        hit = self._P.get(key)
        if hit is not None and (hit == "lost" or len(hit) > kmax):
            return None if hit == "lost" else hit
        mod = self.a.module
        d, D = mod.degree(label), mod.cutoff
        wa, wb = self.a.weight, self.b.weight
        lo = self.imin - (d if self.use_ba else D) - wa
        hi = E + d + wb - self.jmin
        P = [dict() for _ in range(kmax + 1)]
        for e1 in range(lo, hi + 1):
            g = self.G(label, e1, E - e1)
            if g is None:
                self._P[key] = "lost"
                return None
            if not g:
                continue
            for k in range(kmax + 1):
                bc = binom(e1, k)
                if bc:
                    vadd(P[k], g, self.apow(e1 - k) * bc)
        self._P[key] = P
        return P

    def product(self, n: int, m: int, label):
        """(a_(alpha,n) b)(m) label."""
        if n >= self.s:
            return {}, True
        K = self.s - n - 1
        E = self.N - n - m - 2
        P = self.P(label, E, K)
        if P is None:
            return {}, False
        g = self.gamma(K)
        out = {}
        for i in range(K + 1):
            vadd(out, P[K - i], g[i])
        return out, True


def ydata(a, b, alpha, witness, use_ba=True) -> YData:
    """Shared product tables, cached on the left field so they die with it."""
    f = witness.f if isinstance(witness, CompatibilityWitness) else witness
    cache = a.__dict__.setdefault("_ydata", {})
    key = (id(b), alpha, f.lowest_part(), use_ba)
    y = cache.get(key)
    if y is None or y.b is not b:
        y = YData(a, b, alpha, f, use_ba)
        cache[key] = y
    return y


class ProductField(Field):
    """a_(alpha,n) b, the coefficient of x0^(-n-1) in Y_alpha(a, x0) b."""

    def __init__(self, a: Field, b: Field, alpha, witness, n: int, use_ba: bool = True):
        super().__init__(a.module, a.weight + b.weight - n - 1,
                         f"{a.name}_({gtext(alpha)},{n}){b.name}")
        self.a, self.b, self.alpha, self.n = a, b, alpha, n
        self.data = ydata(a, b, alpha, witness, use_ba)

    def _compute(self, m, label):
        return self.data.product(self.n, m, label)


def y_alpha_product(a: Field, b: Field, alpha, witness, n: int, use_ba: bool = True) -> Field:
    if witness is None:
        witness = BiPoly.one()
    y = ydata(a, b, alpha, witness, use_ba)
    if n >= y.s:
        return ZeroField(a.module, a.weight + b.weight - n - 1, f"{a.name}_({gtext(alpha)},{n}){b.name}")
    return ProductField(a, b, alpha, witness, n, use_ba)


def vanishing_bound(witness, alpha) -> int:
    f = witness.f if isinstance(witness, CompatibilityWitness) else witness
    return _leading_zeros(f.lowest_part().shifted(gvalue(alpha)))


# ------------------------------------------------------------ delta expansions of fields

@dataclass
class FieldDelta:
    """sum over (alpha, j) of c(x2) (alpha^-1 d/dx2)^j / j! x1^-1 delta(alpha x2/x1)."""

    terms: list = dc_field(default_factory=list)   # [(alpha, j, Field)]

    def coefficient(self, e1: int, e2: int, label):
        m = -e1 - 1
        out, ok = {}, True
        for alpha, j, c in self.terms:
            val = gvalue(alpha)
            k = binom(m, j)
            if not k:
                continue
            n = e2 - m + j          # x2 exponent inside c(x2)
            v, e = c.act(-n - 1, label)
            ok = ok and e
            vadd(out, v, val ** (m - j) * k)
        return out, ok


def commutator_expansion(a: Field, b: Field, witness: CompatibilityWitness, roots=None) -> FieldDelta:
    """The delta expansion of [a(x1), b(x2)] read off from alpha-products."""
    out = FieldDelta()
    roots = roots if roots is not None else [g for g, _ in witness.factors]
    for g in roots:
        s = vanishing_bound(witness, g)
        for j in range(s):
            out.terms.append((g, j, y_alpha_product(a, b, g, witness, j)))
    return out


def commutator_formula_check(a: Field, b: Field, witness: CompatibilityWitness, labels=None, report=None,
                             expansion: FieldDelta | None = None):
    """[a(x1), b(x2)]v against the sum over witness roots of the products.

    With ``expansion`` given, that delta expansion is compared instead.
    """
    from .report import Report
    rep = report or Report("commutator-formula", {"a": a.name, "b": b.name,
                                                  "witness": witness.to_text() if witness else None})
    mod = a.module
    if expansion is None:
        expansion = commutator_expansion(a, b, witness)
    data = CommutatorData(a, b)
    for label in labels if labels is not None else mod.basis_upto(mod.cutoff):
        (lo1, hi1), (lo2, hi2) = data.box(label)
        for e1 in range(lo1, hi1 + 1):
            for e2 in range(lo2, hi2 + 1):
                lhs, ok = data.get(label, e1, e2)
                if not ok:
                    continue
                rhs, ok = expansion.coefficient(e1, e2, label)
                if not ok:
                    continue
                rep.compared += 1
                if lhs != rhs:
                    return rep.fail(basis=mod.label_text(label), exponent=[e1, e2])
    return rep


def mode_products_from_delta(d: FieldDelta) -> dict:
    """(alpha, n) -> Field read from a delta expansion; n beyond the top is zero."""
    out = {}
    for alpha, j, c in d.terms:
        if (alpha, j) in out:
            out[(alpha, j)] = LinearCombination([(ONE, out[(alpha, j)]), (ONE, c)])
        else:
            out[(alpha, j)] = c
    return out


# ------------------------------------------------------------ weak associativity

def weak_associativity_check(a: Field, b: Field, alpha, witness: CompatibilityWitness, label,
                             kmax: int = 3, report=None):
    """(x0+ax2)^l f(x0+ax2,x2) Y_alpha(a,x0)b(x2)v against the same factor times a(x0+ax2)b(x2)v."""
    from .report import Report
    rep = report or Report("weak-associativity", {"a": a.name, "b": b.name, "alpha": gtext(alpha)})
    mod = a.module
    d, D = mod.degree(label), mod.cutoff
    wa, wb = a.weight, b.weight
    f = witness.f.lowest_part()
    val = gvalue(alpha)
    imin = min(i for i, _ in f.terms)
    jmin = min(j for _, j in f.terms)
    l = max(0, d + wa - imin)
    y = ydata(a, b, alpha, f)
    # P(x0, x2) = (x0 + alpha x2)^l f(x0 + alpha x2, x2)
    g = BiPoly({(l, 0): ONE}) * f
    P = {}
    for (i, j), c in g.terms.items():
        for k in range(i + 1):
            key = (k, i - k + j)
            P[key] = P.get(key, ZERO) + c * binom(i, k) * val ** (i - k)
    P = {k: v for k, v in P.items() if v}
    e2lo = -(d + wb) + jmin
    for k in range(0, kmax + 1):
        for e in range(e2lo - 2, D - d + 2):
            # right side: sum over x1 exponents e1 >= k of C(e1,k) alpha^(e1-k) H_{e1, e-e1+k}
            rhs, ok = {}, True
            E = e + k
            for e1 in range(max(k, 0), E - e2lo + l + 1):
                h = y.G(label, e1 - l, E - e1)
                if h is None:
                    ok = False
                    break
                if h:
                    vadd(rhs, h, val ** (e1 - k) * binom(e1, k))
            if not ok:
                continue
            lhs = {}
            for (u, w), c in P.items():
                n = u - k - 1
                m = w - e - 1
                v, ok2 = y_alpha_product(a, b, alpha, f, n).act(m, label)
                if not ok2:
                    ok = False
                    break
                vadd(lhs, v, c)
            if not ok:
                continue
            rep.compared += 1
            if lhs != rhs:
                return rep.fail(basis=mod.label_text(label), exponent=[k, e])
    return rep


# ------------------------------------------------------------ adjoint locality

def adjoint_locality_check(a: Field, b: Field, c: Field, alpha, beta, witness_ab, witness, max_degree=None,
                           box: int = 3, report=None):
    """(x1 - alpha beta^-1 x2)^s [Y_alpha(a,x1), Y_beta(b,x2)] c = 0 on a mode box.

    ``witness`` maps a pair of fields to a CompatibilityWitness.
    """
    from .report import Report
    ga, gb = alpha, beta
    gamma = ga / gb if isinstance(ga, GroupElement) else gvalue(ga) * gvalue(gb).inverse()
    s = witness_ab.f.lowest_part().diagonal_order(gvalue(gamma))
    rep = report or Report("adjoint-locality", {"a": a.name, "b": b.name, "c": c.name,
                                                "alpha": gtext(alpha), "beta": gtext(beta), "s": s})
    gv = gvalue(gamma)
    # coefficient of x1^(-p-1) x2^(-r-1) in (x1 - g x2)^s [..] is
    # sum_t C(s,t)(-g)^t ( a_(p+s-t) b_(r+t) c - b_(r+t) a_(p+s-t) c )
    inner = {}

    def prod(x, y, grp, n):
        key = (id(x), id(y), grp, n)
        if key not in inner:
            inner[key] = y_alpha_product(x, y, grp, witness(x, y), n)
        return inner[key]

    mod = a.module
    for p in range(-box, box + 1):
        for r in range(-box, box + 1):
            terms = []
            for t in range(s + 1):
                coef = as_scalar(binom(s, t)) * (-gv) ** t
                bc = prod(b, c, beta, r + t)
                ac = prod(a, c, alpha, p + s - t)
                terms.append((coef, prod(a, bc, alpha, p + s - t)))
                terms.append((-coef, prod(b, ac, beta, r + t)))
            total = LinearCombination(terms, weight=terms[0][1].weight)
            ok, where, n = is_zero_field(total, max_degree)
            rep.compared += n
            if not ok:
                return rep.fail(modes=[p, r], **where)
    return rep
