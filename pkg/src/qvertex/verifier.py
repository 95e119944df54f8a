"""Closures of quasi-local fields and the identities they must satisfy.

Witnesses for derived fields are not searched for: they are assembled from
the witnesses of the ingredients, following how each field was built
(products, R_alpha, D, linear combinations).  Only pairs of atomic fields go
through ``find_annihilator``.
"""

from __future__ import annotations

from .fields import (CommutatorData, CompatibilityWitness, DField, Field, IdentityField, LinearCombination,
                     NoWitness, Perturbed, ProductField, RAlpha, WindowTooSmall, ZeroField, _factor_over,
                     find_annihilator, fields_equal, gtext, gvalue, vanishing_bound, weak_associativity_check,
                     y_alpha_product)
from .laurent import binom
from .linalg import row_reduce
from .module import vadd
from .polys import BiPoly, Poly, poly_extended_gcd
from .report import Report, timed
from .scalars import ONE, ZERO, GroupElement, as_scalar


class NotQuasiLocal(Exception):
    """Raised with the offending pair when no witness can be found."""

    def __init__(self, a, b, why):
        super().__init__(f"{a.name} and {b.name} are not quasi local here: {why}")
        self.pair = (a, b)


# ------------------------------------------------------------ witness algebra on p(x1/x2)

def _strip(p: Poly) -> Poly:
    """Drop powers of t and normalize to monic; x1, x2 factors never matter."""
    k = 0
    while k < len(p.c) and not p.c[k]:
        k += 1
    p = Poly(p.c[k:])
    return p.monic() if p.c else p


def _as_p(w) -> Poly:
    f = w.f if isinstance(w, CompatibilityWitness) else w
    return _strip(f.lowest_part().dehomogenize())


def _scale_var(p: Poly, c) -> Poly:
    """p(c t)."""
    c = as_scalar(c)
    out, cp = [], ONE
    for x in p.c:
        out.append(x * cp)
        cp = cp * c
    return _strip(Poly(out))


def _reverse(p: Poly) -> Poly:
    return _strip(Poly(list(reversed(p.c))))


def _lcm(p: Poly, q: Poly) -> Poly:
    d, _, _ = poly_extended_gcd(p, q)
    return _strip((p * q) // d)


class WitnessBook:
    """Quasi-locality witnesses for any pair of fields, with memoized products."""

    def __init__(self, candidates=(), labels=None, degree_bound: int = 8, tighten: bool = True):
        self.candidates = list(candidates)
        self.labels = labels
        self.degree_bound = degree_bound
        self.tighten = tighten
        self._base = {}
        self._poly = {}
        self._prod = {}
        self._wit = {}
        self._roots = {}
        self._keep = []
        self.uncapped = []

    # polynomial p with p(x1/x2) killing [a(x1), b(x2)]
    def poly(self, a: Field, b: Field) -> Poly:
        key = (id(a), id(b))
        hit = self._poly.get(key)
        if hit is not None:
            return hit
        r = self.roots(a, b)
        if r is not None:
            p = _strip(Poly.from_roots({gvalue(g): k for g, k in r.items()}))
        else:
            p = self._derive(a, b)
        self._poly[key] = p
        self._keep.append((a, b))
        return p

    def roots(self, a: Field, b: Field):
        """The witness as {group element: multiplicity}, or None when it does not factor over Gamma."""
        key = (id(a), id(b))
        if key in self._roots:
            return self._roots[key]
        r = self._rderive(a, b)
        if r is not None and self.tighten and r and not self._atomic(a, b):
            r = self._capped(a, b, r)
        self._roots[key] = r
        self._keep.append((a, b))
        return r

    def _rderive(self, a, b):
        if isinstance(a, (IdentityField, ZeroField)) or isinstance(b, (IdentityField, ZeroField)):
            return {}
        if isinstance(b, Perturbed):
            return self.roots(a, b.a)
        if isinstance(a, Perturbed):
            return self.roots(a.a, b)
        if isinstance(b, ProductField):
            if not isinstance(b.alpha, GroupElement):
                return None
            k = max(0, b.data.s - b.n)
            f, g = self.roots(a, b.a), self.roots(a, b.b)
            if f is None or g is None:
                return None
            out = dict(g)
            for h, m in f.items():
                if k:
                    r = h * b.alpha
                    out[r] = out.get(r, 0) + k * m
            return out
        if isinstance(a, ProductField):
            r = self.roots(b, a)
            return None if r is None else {h.inverse(): m for h, m in r.items()}
        if isinstance(b, RAlpha):
            if not isinstance(b.alpha, GroupElement):
                return None
            r = self.roots(a, b.a)
            return None if r is None else {h * b.alpha: m for h, m in r.items()}
        if isinstance(a, RAlpha):
            if not isinstance(a.alpha, GroupElement):
                return None
            r = self.roots(a.a, b)
            return None if r is None else {h / a.alpha: m for h, m in r.items()}
        if isinstance(b, DField) or isinstance(a, DField):
            r = self.roots(a, b.a) if isinstance(b, DField) else self.roots(a.a, b)
            return None if r is None else {h: 2 * m for h, m in r.items()}
        if isinstance(b, LinearCombination) or isinstance(a, LinearCombination):
            parts = [self.roots(a, t) for _, t in b.terms] if isinstance(b, LinearCombination) \
                else [self.roots(t, b) for _, t in a.terms]
            if any(r is None for r in parts):
                return None
            out = {}
            for r in parts:
                for h, m in r.items():
                    out[h] = max(out.get(h, 0), m)
            return out
        if not self.candidates:
            return None
        fac = _factor_over(_as_p(self.base(a, b)), self.candidates)
        return None if fac is None else dict(fac)

    def _capped(self, a, b, r: dict) -> dict:
        """Cap each root's multiplicity at wt(a) + wt(b).

        In the commutator formula only products a_(alpha,j) b with
        j < wt(a) + wt(b) can be nonzero: the others have negative weight and
        vanish on a nonnegatively graded closure.  The capped witness is then
        confirmed on the low-degree commutator entries; if that fails the
        proven witness is kept and the pair is logged.
        """
        cap = a.weight + b.weight
        if cap < 0 or all(k <= cap for k in r.values()):
            return r
        trial = {h: min(k, cap) for h, k in r.items() if min(k, cap)}
        mod = a.module
        labels = self.labels if self.labels is not None else mod.basis_upto(min(2, mod.cutoff))
        p = Poly.from_roots({gvalue(h): k for h, k in trial.items()})
        ok, _, _ = CommutatorData(a, b).annihilates(BiPoly.homogenize(p), labels)
        if not ok:
            self.uncapped.append((a.name, b.name))
            return r
        return trial

    @staticmethod
    def product_key(a, b, alpha, n):
        """Memo key; all copies of 1_W on one module share an entry."""
        ka = ("1", id(a.module)) if isinstance(a, IdentityField) else id(a)
        kb = ("1", id(b.module)) if isinstance(b, IdentityField) else id(b)
        return (ka, kb, alpha, n)

    def _derive(self, a, b) -> Poly:
        one = Poly([ONE])
        if isinstance(a, (IdentityField, ZeroField)) or isinstance(b, (IdentityField, ZeroField)):
            return one
        if isinstance(b, Perturbed):
            return self.poly(a, b.a)
        if isinstance(a, Perturbed):
            return self.poly(a.a, b)
        if isinstance(b, ProductField):
            # a against b'_(alpha,n) c': f_ab'(x1, alpha x2)^k g_ac'(x1, x2)
            y = b.data
            k = max(0, y.s - b.n)
            f = _scale_var(self.poly(a, b.a), gvalue(b.alpha).inverse())
            return _strip(f ** k * self.poly(a, b.b))
        if isinstance(a, ProductField):
            return _reverse(self.poly(b, a))
        if isinstance(b, RAlpha):
            return _scale_var(self.poly(a, b.a), gvalue(b.alpha).inverse())
        if isinstance(a, RAlpha):
            return _scale_var(self.poly(a.a, b), gvalue(a.alpha))
        if isinstance(b, DField):
            return _strip(self.poly(a, b.a) ** 2)
        if isinstance(a, DField):
            return _strip(self.poly(a.a, b) ** 2)
        if isinstance(b, LinearCombination):
            p = one
            for _, t in b.terms:
                p = _lcm(p, self.poly(a, t))
            return p
        if isinstance(a, LinearCombination):
            p = one
            for _, t in a.terms:
                p = _lcm(p, self.poly(t, b))
            return p
        return _as_p(self.base(a, b))

    @staticmethod
    def _atomic(a, b) -> bool:
        derived = (ProductField, RAlpha, DField, LinearCombination, Perturbed)
        return not isinstance(a, derived) and not isinstance(b, derived)

    def base(self, a: Field, b: Field) -> CompatibilityWitness:
        """Searched witness of an atomic pair (cached in both orders)."""
        key = (id(a), id(b))
        hit = self._base.get(key)
        if hit is not None:
            return hit
        rev = self._base.get((id(b), id(a)))
        if rev is not None:
            w = self._wrap(_reverse(_as_p(rev)))
        else:
            try:
                w = find_annihilator(a, b, "quasi-locality", self.candidates, self.degree_bound, labels=self.labels)
            except (WindowTooSmall, NoWitness) as exc:
                raise NotQuasiLocal(a, b, str(exc)) from exc
        self._base[key] = w
        self._keep.append((a, b))
        return w

    def _wrap(self, p: Poly) -> CompatibilityWitness:
        factors = _factor_over(p, self.candidates) if self.candidates and p.degree > 0 else None
        if p.degree <= 0:
            return CompatibilityWitness.one()
        if factors is not None:
            return CompatibilityWitness.from_factors(factors)
        return CompatibilityWitness(BiPoly.homogenize(p), "quasi-locality")

    def __call__(self, a: Field, b: Field) -> CompatibilityWitness:
        key = (id(a), id(b))
        hit = self._wit.get(key)
        if hit is None:
            r = self.roots(a, b)
            if r is None:
                hit = self._wrap(self.poly(a, b))
            elif not r:
                hit = CompatibilityWitness.one()
            else:
                hit = CompatibilityWitness.from_factors(sorted(r.items(), key=lambda kv: kv[0]._key()))
            self._wit[key] = hit
        return hit

    def product(self, a: Field, b: Field, alpha, n: int) -> Field:
        key = self.product_key(a, b, alpha, n)
        hit = self._prod.get(key)
        if hit is None:
            hit = y_alpha_product(a, b, alpha, self(a, b), n)
            self._prod[key] = hit
            self._keep.append((a, b))
        return hit

    def top(self, a: Field, b: Field, alpha) -> int:
        """Products a_(alpha,n) b vanish for n >= top."""
        return vanishing_bound(self(a, b), alpha)


# ------------------------------------------------------------ closures

def _flatten(f: Field, labels):
    """Exact mode-matrix entries of f on the labels, and the (mode, label) pairs that are exact."""
    mod = f.module
    out, dom = {}, set()
    for lab in labels:
        for m in f.mode_range(mod.degree(lab)):
            v, ok = f.act(m, lab)
            if ok:
                dom.add((m, lab))
                for comp, c in v.items():
                    out[(m, lab, comp)] = c
    return out, dom


class _Span:
    """Linear dependence of fields of equal weight, judged where all of them are exact."""

    def __init__(self, labels):
        self.labels = labels
        self.members = {}

    def _rank(self, items) -> int:
        dom = set.intersection(*(d for _, d in items))
        index = {}
        rows = []
        for vec, _ in items:
            row = {}
            for (m, lab, comp), c in vec.items():
                if (m, lab) in dom:
                    row[index.setdefault((m, lab, comp), len(index))] = c
            rows.append(row)
        return len(row_reduce(rows)[1])

    def _independent(self, f: Field):
        item = _flatten(f, self.labels)
        have = self.members.get(f.weight, [])
        if not item[0]:
            return False, item
        if not have:
            return True, item
        return self._rank(have + [item]) > self._rank(have), item

    def add(self, f: Field) -> bool:
        ok, item = self._independent(f)
        if ok:
            self.members.setdefault(f.weight, []).append(item)
        return ok

    def contains(self, f: Field) -> bool:
        return not self._independent(f)[0]


class ClosureAlgebra:
    """Finite spanning set of the closure of some fields under alpha-products."""

    def __init__(self, generators, gamma, book: WitnessBook, weight_cutoff: int, depth: int, check_degree: int):
        self.generators = list(generators)
        self.gamma = list(gamma)
        self.book = book
        self.weight_cutoff = weight_cutoff
        self.depth = depth
        module = self.generators[0].module if self.generators else None
        self.module = module
        self.identity = IdentityField(module)
        self.labels = module.basis_upto(check_degree)
        self.elements = [self.identity]
        self.provenance = {id(self.identity): ("vacuum",)}
        self.log = []
        self._span = _Span(self.labels)
        self._span.add(self.identity)

    def witness(self, a, b) -> CompatibilityWitness:
        return self.book(a, b)

    def product(self, a, b, alpha, n) -> Field:
        return self.book.product(a, b, alpha, n)

    def derivation(self, a: Field) -> Field:
        """D on the closure: a_(1,-2) 1_W."""
        return self.product(a, self.identity, GroupElement(), -2)

    def r_table(self) -> dict:
        """(element index, alpha) -> R_alpha of the element, as a field."""
        return {(i, g): RAlpha(e, g) for i, e in enumerate(self.elements) for g in self.gamma}

    def depth_of(self, f: Field) -> int:
        p = self.provenance.get(id(f))
        if p is None or p[0] == "vacuum":
            return 0
        return 1 + self.depth_of(p[2])

    def contains(self, f: Field) -> bool:
        return self._span.contains(f)

    def _try_add(self, f, prov) -> bool:
        if isinstance(f, ZeroField) or f.weight > self.weight_cutoff:
            return False
        if self._span.add(f):
            self.elements.append(f)
            self.provenance[id(f)] = prov
            self.log.append({"element": f.name, "weight": f.weight, "from": [prov[1].name, gtext(prov[3]),
                                                                          prov[4], prov[2].name]})
            return True
        return False

    def grow(self):
        frontier = [self.identity]
        for _ in range(self.depth):
            new = []
            for g in self.generators:
                for x in frontier:
                    for alpha in self.gamma:
                        top = self.book.top(g, x, alpha)
                        for n in range(g.weight + x.weight - 1 - self.weight_cutoff, top):
                            f = self.product(g, x, alpha, n)
                            if self._try_add(f, ("product", g, x, alpha, n)):
                                new.append(f)
            if not new:
                break
            frontier = new
        return self

    def by_weight(self) -> dict:
        out = {}
        for e in self.elements:
            out.setdefault(e.weight, []).append(e)
        return out

    def same_span(self, other: "ClosureAlgebra") -> bool:
        return all(other.contains(e) for e in self.elements) and all(self.contains(e) for e in other.elements)


def generate_closure(S, gamma, weight_cutoff: int, depth: int, book: WitnessBook | None = None,
                     check_degree: int = 2) -> ClosureAlgebra:
    """Iterated products g_(alpha,n) ... 1_W with g in S, deduplicated by rank."""
    S = list(S)
    if not S:
        raise ValueError("need at least one generating field")
    book = book or WitnessBook(gamma)
    gens = [g for g in S if not isinstance(g, IdentityField)] or []
    C = ClosureAlgebra(gens or S, gamma, book, weight_cutoff, depth,
                       min(check_degree, S[0].module.cutoff))
    if gens:
        C.grow()
    else:
        C.generators = []
    return C


def subgroup_closure_check(S, gamma, weight_cutoff, depth, book=None, check_degree=2) -> Report:
    """The closure under all of gamma spans the same space as under {1}."""
    rep = Report("gamma-closure-equals-closure", {"generators": [s.name for s in S],
                                                  "gamma": [gtext(g) for g in gamma]},
                 {"weight": weight_cutoff, "depth": depth})
    with timed(rep):
        book = book or WitnessBook(gamma)
        full = generate_closure(S, gamma, weight_cutoff, depth, book, check_degree)
        triv = generate_closure(S, [GroupElement()], weight_cutoff, depth, book, check_degree)
        rep.compared = len(full.elements) + len(triv.elements)
        rep.params["sizes"] = [len(full.elements), len(triv.elements)]
        for e in full.elements:
            if not triv.contains(e):
                return rep.fail(element=e.name, missing_from="closure under 1")
        for e in triv.elements:
            if not full.contains(e):
                return rep.fail(element=e.name, missing_from="closure under gamma")
    return rep


# ------------------------------------------------------------ Jacobi identity

def _combo(terms, module, weight):
    terms = [(c, f) for c, f in terms if c and not isinstance(f, ZeroField)]
    if not terms:
        return ZeroField(module, weight)
    return LinearCombination(terms, weight=weight)


def jacobi_sides(book: WitnessBook, a, b, c, alpha, beta, l: int, m: int, k: int):
    """The two sides of the gamma-Jacobi identity at the mode triple (l, m, k).

    sum_i C(l,i)(-g)^i a_(alpha,l+m-i)(b_(beta,k+i)c)
      - sum_i C(l,i)(-g)^(l-i) b_(beta,k+l-i)(a_(alpha,m+i)c)
      = sum_j C(m,j) g^(m-j) (a_(g,l+j)b)_(beta,m+k-j)c,   g = alpha/beta.
    """
    gamma = alpha / beta
    gv = gvalue(gamma)
    mod = a.module
    weight = a.weight + b.weight + c.weight - l - m - k - 2
    left = []
    top_bc = book.top(b, c, beta)
    top_ac = book.top(a, c, alpha)
    top_ab = book.top(a, b, gamma)
    irange = range(0, l + 1) if l >= 0 else range(0, max(0, top_bc - k))
    for i in irange:
        coef = as_scalar(binom(l, i)) * (-gv) ** i
        if k + i < top_bc:
            inner = book.product(b, c, beta, k + i)
            left.append((coef, book.product(a, inner, alpha, l + m - i)))
    irange = range(0, l + 1) if l >= 0 else range(0, max(0, top_ac - m))
    for i in irange:
        coef = as_scalar(binom(l, i)) * (-gv) ** (l - i)
        if m + i < top_ac:
            inner = book.product(a, c, alpha, m + i)
            left.append((-coef, book.product(b, inner, beta, k + l - i)))
    right = []
    jrange = range(0, m + 1) if m >= 0 else range(0, max(0, top_ab - l))
    for j in jrange:
        coef = as_scalar(binom(m, j)) * gv ** (m - j)
        if l + j < top_ab:
            inner = book.product(a, b, gamma, l + j)
            right.append((coef, book.product(inner, c, beta, m + k - j)))
    return _combo(left, mod, weight), _combo(right, mod, weight)


def verify_gamma_jacobi(C, a, b, c, alpha, beta, box: int = 3, max_degree: int | None = None,
                        report: Report | None = None) -> Report:
    """Gamma-Jacobi identity in components on the mode box |l|, |m|, |k| <= box."""
    book = C.book if isinstance(C, ClosureAlgebra) else C
    rep = report or Report("gamma-jacobi", {"a": a.name, "b": b.name, "c": c.name,
                                            "alpha": gtext(alpha), "beta": gtext(beta)},
                           {"modes": [-box, box], "max_degree": max_degree})
    with timed(rep):
        for l in range(-box, box + 1):
            for m in range(-box, box + 1):
                for k in range(-box, box + 1):
                    lhs, rhs = jacobi_sides(book, a, b, c, alpha, beta, l, m, k)
                    ok, where, n = fields_equal(lhs, rhs, max_degree)
                    rep.compared += n
                    if not ok:
                        return rep.fail(modes=[l, m, k], **where)
    return rep


# ------------------------------------------------------------ quasi modules

def verify_quasi_module(book: WitnessBook, u: Field, v: Field, f=None, gamma=None, labels=None,
                        lbox: int = 2, ebox: int = 2, report: Report | None = None) -> Report:
    """f-multiplied Jacobi identity for (u, v) acting on the module, coefficient-wise.

    With gamma = alpha/beta the deltas are shifted by gamma and the iterate
    uses Y_gamma; gamma = 1 is the plain quasi Jacobi identity.  The action
    Y_W of a field on W is the field itself, and Y^W_alpha(v, x) = Y^W_1(R_alpha v, x/alpha)
    collapses to v(x) as well.
    """
    gamma = gamma or GroupElement()
    if f is None:
        f = book(u, v)
    fw = f if isinstance(f, CompatibilityWitness) else CompatibilityWitness(f)
    terms = list(fw.f.terms.items())
    gv = gvalue(gamma)
    mod = u.module
    rep = report or Report("quasi-jacobi", {"u": u.name, "v": v.name, "f": fw.to_text(), "gamma": gtext(gamma)},
                           {"l": [-lbox, lbox], "exponents": ebox})
    labels = labels if labels is not None else mod.basis_upto(min(1, mod.cutoff))
    data = {}

    def F(order, lab, e1, e2):
        """(f u(x1) v(x2) w) for order "uv", (f v(x2) u(x1) w) for "vu", or None if cut off."""
        key = (order, lab, e1, e2)
        if key in data:
            return data[key]
        out = {}
        for (i, j), c in terms:
            p, r = -(e1 - i) - 1, -(e2 - j) - 1
            if order == "uv":
                x, ok1 = v.act(r, lab)
                y, ok2 = u.act_vector(p, x)
            else:
                x, ok1 = u.act(p, lab)
                y, ok2 = v.act_vector(r, x)
            if not (ok1 and ok2):
                out = None
                break
            vadd(out, y, c)
        data[key] = out
        return out

    top = book.top(u, v, gamma)
    with timed(rep):
        for lab in labels:
            d = mod.degree(lab)
            lo1, lo2 = -(d + u.weight), -(d + v.weight)
            for l in range(-lbox, lbox + 1):
                for A in range(lo1 - 1, lo1 + ebox + 1):
                    for B in range(lo2 - 1, lo2 + ebox + 1):
                        lhs, ok = {}, True
                        # (x1 - g x2)^l expanded in powers of x2, then in powers of x1
                        n1 = l + 1 if l >= 0 else max(0, B - lo2 + 1)
                        for i in range(n1):
                            g = F("uv", lab, A - l + i, B - i)
                            if g is None:
                                ok = False
                                break
                            vadd(lhs, g, as_scalar(binom(l, i)) * (-gv) ** i)
                        n2 = l + 1 if l >= 0 else max(0, A - lo1 + 1)
                        for i in range(n2 if ok else 0):
                            g = F("vu", lab, A - i, B - l + i)
                            if g is None:
                                ok = False
                                break
                            vadd(lhs, g, -as_scalar(binom(l, i)) * (-gv) ** (l - i))
                        if not ok:
                            continue
                        rhs = {}
                        for (i, j), c in terms:
                            r = i - A - 1
                            for t in range(0, max(0, top - l)):
                                bc = binom(r, t)
                                if not bc:
                                    continue
                                p = r - t + j - 1 - B
                                w, e = book.product(u, v, gamma, l + t).act(p, lab)
                                if not e:
                                    ok = False
                                    break
                                vadd(rhs, w, c * bc * gv ** (r - t))
                            if not ok:
                                break
                        if not ok:
                            continue
                        rep.compared += 1
                        if lhs != rhs:
                            return rep.fail(basis=mod.label_text(lab), l=l, exponent=[A, B])
    return rep


def d_property_check(book: WitnessBook, v: Field, max_degree=None) -> Report:
    """Y_W(Dv, x) = d/dx Y_W(v, x), with D v = v_(1,-2) 1_W."""
    from .fields import d_derivative
    rep = Report("d-property", {"v": v.name})
    with timed(rep):
        Dv = book.product(v, IdentityField(v.module), GroupElement(), -2)
        ok, where, n = fields_equal(Dv, d_derivative(v), max_degree)
        rep.compared = n
        if not ok:
            rep.fail(**where)
    return rep


def verify_weak_assoc_sufficiency(book: WitnessBook, pairs, alpha=None, labels=None, kmax: int = 2,
                                  lbox: int = 1, ebox: int = 2) -> Report:
    """Weak associativity (hypothesis) and the quasi Jacobi identity (conclusion) per pair."""
    alpha = alpha or GroupElement()
    rep = Report("weak-assoc-sufficiency", {"pairs": [[u.name, v.name] for u, v in pairs], "alpha": gtext(alpha)})
    with timed(rep):
        for u, v in pairs:
            w = book(u, v)
            mod = u.module
            for lab in labels if labels is not None else mod.basis_upto(min(1, mod.cutoff)):
                sub = weak_associativity_check(u, v, alpha, w, lab, kmax=kmax)
                rep.merge(sub)
                if not rep.passed:
                    rep.counterexample["stage"] = "hypothesis"
                    return rep
            sub = verify_quasi_module(book, u, v, w, alpha, labels, lbox=lbox, ebox=ebox)
            rep.merge(sub)
            if not rep.passed:
                rep.counterexample["stage"] = "conclusion"
                return rep
    return rep


# ------------------------------------------------------------ gamma vertex algebra structure

def verify_gamma_va_equivalence(C: ClosureAlgebra, max_degree: int | None = None, nbox=(-2, 1),
                                elements=None) -> Report:
    """R-action, the two conjugation forms of Y_alpha, the module translation and the grading law."""
    rep = Report("gamma-va-equivalence", {"gamma": [gtext(g) for g in C.gamma], "elements": len(C.elements)},
                 {"modes": list(nbox), "max_degree": max_degree})
    book, one = C.book, C.identity
    els = list(elements) if elements is not None else list(C.elements)

    def eq(x, y, **where):
        ok, w, n = fields_equal(x, y, max_degree)
        rep.compared += n
        if not ok:
            rep.fail(**where, **w)
        return ok

    with timed(rep):
        for g in C.gamma:
            if not eq(RAlpha(one, g), one, rule="R fixes the vacuum", alpha=gtext(g)):
                return rep
        for e in els:
            for g in C.gamma:
                for h in C.gamma:
                    if not eq(RAlpha(RAlpha(e, h), g), RAlpha(e, g * h), rule="R is an action", element=e.name,
                              alpha=gtext(g), beta=gtext(h)):
                        return rep
                back = RAlpha(RAlpha(e, g), g.inverse())
                if not eq(back, e, rule="module translation", element=e.name, alpha=gtext(g)):
                    return rep
        for v in els:
            for u in els:
                for g in C.gamma:
                    ginv = g.inverse()
                    Ru = RAlpha(u, ginv)
                    Rv = RAlpha(v, g)
                    for n in range(nbox[0], min(nbox[1], book.top(v, u, g) - 1) + 1):
                        lhs = book.product(v, u, g, n)
                        mid = RAlpha(book.product(v, Ru, GroupElement(), n), g)
                        if not eq(lhs, mid, rule="Y_alpha = R Y_1 R^-1", v=v.name, u=u.name, alpha=gtext(g), n=n):
                            return rep
                        rhs = _combo([(gvalue(g) ** (n + 1), book.product(Rv, u, GroupElement(), n))],
                                     v.module, lhs.weight)
                        if not eq(lhs, rhs, rule="Y_alpha = Y_1(R_alpha v, x/alpha)", v=v.name, u=u.name,
                                  alpha=gtext(g), n=n):
                            return rep
                        if not _grading_ok(lhs, rep, max_degree):
                            rep.counterexample.update(rule="grading", v=v.name, u=u.name, alpha=gtext(g), n=n)
                            return rep
    return rep


def _grading_ok(f: Field, rep: Report, max_degree=None) -> bool:
    """Every computed component of f(m) w lies in degree deg(w) + wt(f) - m - 1."""
    mod = f.module
    top = mod.cutoff if max_degree is None else max_degree
    for lab in mod.basis_upto(top):
        d = mod.degree(lab)
        for m in f.mode_range(d):
            v, ok = f.act(m, lab)
            if not ok:
                continue
            rep.compared += 1
            for comp in v:
                if mod.degree(comp) != d + f.weight - m - 1:
                    rep.fail(basis=mod.label_text(lab), mode=m, component=mod.label_text(comp))
                    return False
    return True


def automorphism_check(C: ClosureAlgebra, max_degree=None, nbox=(-2, 1)) -> Report:
    """R_alpha(u_(1,n) v) = u_(alpha,n) R_alpha v on closure pairs."""
    rep = Report("r-alpha-translation", {"gamma": [gtext(g) for g in C.gamma]}, {"modes": list(nbox)})
    book = C.book
    with timed(rep):
        for u in C.elements:
            for v in C.elements:
                for g in C.gamma:
                    Rv = RAlpha(v, g)
                    for n in range(nbox[0], min(nbox[1], book.top(u, v, GroupElement()) - 1) + 1):
                        lhs = RAlpha(book.product(u, v, GroupElement(), n), g)
                        rhs = book.product(u, Rv, g, n)
                        ok, where, k = fields_equal(lhs, rhs, max_degree)
                        rep.compared += k
                        if not ok:
                            return rep.fail(u=u.name, v=v.name, alpha=gtext(g), n=n, **where)
    return rep


# ------------------------------------------------------------ minimal polynomial

def minimal_polynomial(fields, candidates, degree_bound: int = 8, labels=None, book: WitnessBook | None = None,
                       propagate=None, rmax: int = 4):
    """Least-degree monic p with some power p(x1/x2)^r killing every generator commutator.

    Any such p has every root of every pair's witness among its roots, so the
    squarefree product over the union of roots is the answer; it is then
    re-verified pair by pair.  ``propagate`` lists extra pairs (typically
    products) on which some power of p is spot-checked.  Returns (p, report).
    """
    book = book or WitnessBook(candidates, labels, degree_bound)
    rep = Report("minimal-polynomial", {"fields": [f.name for f in fields]})
    with timed(rep):
        roots = []
        powers = {}
        for a in fields:
            for b in fields:
                w = book.base(a, b)
                q = _as_p(w)
                for g in candidates:
                    k = q.multiplicity(gvalue(g))
                    if k:
                        if g not in roots:
                            roots.append(g)
                        powers[g] = max(powers.get(g, 0), k)
        p = Poly([ONE])
        for g in roots:
            p = p * Poly.linear_root(gvalue(g))
        deg = sum(powers.values())
        r = max(powers.values(), default=1)
        for a in fields:
            for b in fields:
                data = CommutatorData(a, b)
                ok, where, n = data.annihilates(BiPoly.homogenize(p ** r), labels or a.module.basis_upto(a.module.cutoff))
                rep.compared += n
                if not ok:
                    rep.fail(pair=[a.name, b.name], power=r, **where)
                    return p, rep
        for a, b in propagate or []:
            data = CommutatorData(a, b)
            found = False
            for rr in range(1, rmax + 1):
                ok, _, n = data.annihilates(BiPoly.homogenize(p ** rr), labels or a.module.basis_upto(1))
                rep.compared += n
                if ok:
                    found = True
                    break
            if not found:
                rep.fail(pair=[a.name, b.name], power=f"> {rmax}")
                return p, rep
        rep.params["polynomial"] = p.to_text()
        rep.params["power"] = r
        rep.params["witness degree"] = deg
    return p, rep


# ------------------------------------------------------------ negative controls

def perturb_field(f: Field, delta=ONE) -> Field:
    """f with the single entry f(wt - 2) on the vacuum moved by delta times the first degree-1 vector."""
    mod = f.module
    return Perturbed(f, f.weight - 2, mod.vacuum(), mod.basis(1)[0], delta)


def inject_product(book: WitnessBook, a: Field, b: Field, alpha, n: int) -> Field:
    """Replace the memoized a_(alpha,n) b by a copy with one perturbed entry."""
    p = perturb_field(book.product(a, b, alpha, n))
    book._prod[book.product_key(a, b, alpha, n)] = p
    return p
