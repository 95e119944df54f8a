"""The named verification suites run by the command line driver."""

from __future__ import annotations

import json
from importlib import resources

from . import delta
from .families import (defining_relations_check, omega_averaging_check, relabel_isomorphism_check,
                       star_algebra_check)
from .fields import (CompatibilityWitness, IdentityField, NoWitness, RAlpha, WindowTooSmall, ZeroField,
                     commutator_formula_check, fields_equal, find_annihilator, gtext, gvalue,
                     weak_associativity_check)
from .identities import conjugation_check, d_rules_check, vacuum_creation_check, witness_independence_check
from .laurent import LaurentData
from .polys import Poly
from .report import Report, timed
from .scalars import ONE, GroupElement, Scalar, as_scalar, parse_group_element
from .scenario import SUITES, Setup
from .verifier import (NotQuasiLocal, WitnessBook, _as_p, d_property_check, generate_closure, inject_product,
                       minimal_polynomial, perturb_field, subgroup_closure_check, automorphism_check,
                       verify_gamma_jacobi, verify_gamma_va_equivalence, verify_quasi_module,
                       verify_weak_assoc_sufficiency)


def catalog() -> list:
    """Suites in run order, each with a short description and the results it covers."""
    data = json.loads(resources.files("qvertex").joinpath("checks.json").read_text())
    by_name = {d["suite"]: d for d in data}
    return [by_name[s] for s in SUITES]


def guarded(name: str, fn, *args, **kw) -> Report:
    """Run a check; errors become a failing report naming the error."""
    try:
        rep = fn(*args, **kw)
        return rep[1] if isinstance(rep, tuple) else rep
    except NotQuasiLocal as exc:
        return Report(name).fail(error="not quasi local", pair=[f.name for f in exc.pair], detail=str(exc))
    except (ValueError, NoWitness, WindowTooSmall) as exc:
        return Report(name).fail(error=type(exc).__name__, detail=str(exc))


def _alphas(setup: Setup) -> list:
    texts = setup.scenario.gamma.get("alphas")
    return [parse_group_element(str(t)) for t in texts] if texts else list(setup.gamma)


def _degree(setup: Setup) -> int:
    return min(setup.scenario.window["degree"], setup.module.cutoff)


def closed_witness(setup: Setup, a, b) -> CompatibilityWitness:
    roots = setup.expected_roots(a, b)
    if not roots:
        return CompatibilityWitness.one()
    return CompatibilityWitness.from_factors(sorted(roots.items(), key=lambda kv: kv[0].to_text()))


def expected_poly(setup: Setup, a, b) -> Poly:
    roots = setup.expected_roots(a, b)
    return Poly.from_roots({gvalue(g): k for g, k in roots.items()})


# ------------------------------------------------------------ delta-calculus

def suite_delta_calculus(setup: Setup, inject=False) -> list:
    w = setup.scenario.window["exponent"]
    box = ((-w, w),) * 3
    z3, z4 = Scalar.zeta(3), Scalar.zeta(4)
    out = []
    for i, a in enumerate((ONE, -ONE, z3, z4)):
        out.append(delta.verify_delta_identity(a, box, perturb=(-1, 0, 0) if inject and i == 0 else None))
    rep = Report("iota-expansion", {"alphas": ["1", "zeta3", "q"], "n": [-5, 5]}, {"terms": 20})
    with timed(rep):
        for a in (ONE, z3, Scalar.q()):
            for n in range(-5, 6):
                rep.merge(delta.iota_check(n, a, 20))
    out.append(rep)
    out.append(delta.decomposition_roundtrip({ONE: 1, z3: 2, z3 * z3: 1}, setup.rng))
    rng = setup.rng
    g = LaurentData(("x0", "x1", "x2"), {(rng.randint(-2, 2), rng.randint(0, 2), rng.randint(-2, 2)):
                                         as_scalar(rng.randint(1, 5)) for _ in range(4)})
    for a in (ONE, z4):
        out.append(delta.substitution_check(a, g))
    out.append(delta.annihilation_check(z3))
    out.append(taylor_shift_check(rng))
    return out


def taylor_shift_check(rng, window=((-6, 6), (0, 6))) -> Report:
    """d/dx after the shift equals the shift of d/dx, on a random Laurent polynomial."""
    from .laurent import taylor_shift
    rep = Report("taylor-shift", {}, {"box": window})
    with timed(rep):
        terms = {(e,): as_scalar(rng.randint(-4, 4)) for e in range(-3, 4)}
        s = LaurentData(("x",), {k: v for k, v in terms.items() if v})
        (lo, hi), w2 = window
        wide = ((lo - 8, hi + 8), w2)
        a = taylor_shift(s, "x", "x0", ONE, wide).derivative("x")
        b = taylor_shift(s.derivative("x"), "x", "x0", ONE, wide)
        bad, n = a.compare(b, window)
        rep.compared = n
        if bad is not None:
            rep.fail(exponent=list(bad))
    return rep


# ------------------------------------------------------------ compatibility

def suite_compatibility(setup: Setup, inject=False) -> list:
    labels = setup.labels()
    rep = Report("find-annihilator", {"family": setup.kind, "candidates": [gtext(g) for g in setup.gamma]},
                 {"label_degree": setup.scenario.window["labels"]})
    gens = list(setup.gens)
    if inject:
        gens[0] = type(gens[0])(perturb_field(gens[0].field), gens[0].desc)
    pairs = _sample([(a, b) for a in gens for b in gens], setup)
    with timed(rep):
        for a, b in pairs:
            want = expected_poly(setup, a, b)
            try:
                w = find_annihilator(a.field, b.field, "quasi-locality", setup.gamma, 8, labels=labels)
            except (NoWitness, WindowTooSmall) as exc:
                rep.fail(pair=[a.field.name, b.field.name], error=str(exc))
                break
            rep.compared += 1
            got = _as_p(w)
            if got != delta_strip(want):
                rep.fail(pair=[a.field.name, b.field.name], found=w.to_text(), expected=want.to_text())
                break
    out = [rep]
    one = IdentityField(setup.module)
    rep = Report("identity-pair", {"family": setup.kind})
    with timed(rep):
        for g in setup.gens[:3]:
            w = find_annihilator(one, g.field, "quasi-locality", setup.gamma, 4, labels=labels)
            rep.compared += 1
            if w.f.degree() != 0:
                rep.fail(field=g.field.name, found=w.to_text())
                break
    out.append(rep)
    return out


def delta_strip(p: Poly) -> Poly:
    from .verifier import _strip
    return _strip(p)


def _sample(pairs, setup, limit=None):
    limit = setup.scenario.window.get("pairs") if limit is None else limit
    if limit and limit < len(pairs):
        step = len(pairs) / limit
        return [pairs[int(i * step)] for i in range(limit)]
    return pairs


# ------------------------------------------------------------ yalpha

def suite_yalpha(setup: Setup, inject=False) -> list:
    book, alphas, md = setup.book, _alphas(setup), _degree(setup)
    one = IdentityField(setup.module)
    pairs = setup.pairs()
    if inject:
        inject_product(book, setup.gens[0].field, one, alphas[0], -1)
    out = []
    rep = Report("vacuum-creation-translation", {"alphas": [gtext(a) for a in alphas]}, {"max_degree": md})
    with timed(rep):
        for g in setup.gens:
            rep.merge(guarded("vacuum-creation", vacuum_creation_check, book, g.field, alphas, max_degree=md))
            if not rep.passed:
                break
    out.append(rep)
    for name, fn in (("d-rules", d_rules_check), ("conjugation", conjugation_check)):
        rep = Report(name, {"alphas": [gtext(a) for a in alphas], "pairs": len(pairs)}, {"max_degree": md})
        with timed(rep):
            for a, b in pairs:
                rep.merge(guarded(name, fn, book, a.field, b.field, alphas, max_degree=md))
                if not rep.passed:
                    break
        out.append(rep)
    rep = Report("witness-independence", {"extra": "x1 - 2*x2", "pairs": 3}, {"max_degree": md})
    with timed(rep):
        for a, b in _spread(pairs, 3):
            rep.merge(guarded("witness-independence", witness_independence_check, book, a.field, b.field, alphas,
                              max_degree=md))
    out.append(rep)
    rep = Report("weak-associativity", {"alpha": "1"}, {"label_degree": 1})
    with timed(rep):
        for a, b in _spread(pairs, 3):
            w = book(a.field, b.field)
            for lab in setup.module.basis_upto(1):
                rep.merge(weak_associativity_check(a.field, b.field, GroupElement(), w, lab, kmax=2))
    out.append(rep)
    out.append(products_check(setup, pairs, book, md))
    rep = Report("commutator-formula", {"pairs": len(pairs)}, {"label_degree": setup.scenario.window["labels"]})
    with timed(rep):
        for a, b in _spread(pairs, 6):
            sub = guarded("commutator-formula", lambda: commutator_formula_check(
                a.field, b.field, book(a.field, b.field), setup.labels()))
            rep.merge(sub)
    out.append(rep)
    return out


def _spread(items, k):
    if len(items) <= k:
        return list(items)
    step = len(items) / k
    return [items[int(i * step)] for i in range(k)]


def products_check(setup: Setup, pairs, book=None, md=None, name="mode-products") -> Report:
    """a_(1,n) b against the family's closed-form products, n >= 0."""
    book = book or setup.book
    rep = Report(name, {"family": setup.kind, "pairs": len(pairs)}, {"max_degree": md})
    with timed(rep):
        for a, b in pairs:
            want = setup.expected_products(a, b)
            w = book(a.field, b.field)
            top = max(book.top(a.field, b.field, GroupElement()), 3)
            for n in range(0, top):
                got = book.product(a.field, b.field, GroupElement(), n)
                exp = want.get(n, ZeroField(setup.module, a.field.weight + b.field.weight - n - 1))
                ok, where, k = fields_equal(got, exp, md)
                rep.compared += k
                if not ok:
                    return rep.fail(pair=[a.field.name, b.field.name], n=n, witness=w.to_text(), **where)
    return rep


# ------------------------------------------------------------ jacobi

def suite_jacobi(setup: Setup, inject=False) -> list:
    book, md = setup.book, _degree(setup)
    box = setup.scenario.window["modes"]
    fields = [g.field for g in setup.gens]
    if inject:
        fields[0] = perturb_field(fields[0])
    triples = [(a, b, c) for a in fields for b in fields for c in fields]
    limit = setup.scenario.window.get("triples", 0)
    if limit:
        triples = _spread(triples, limit)
    alphas = _alphas(setup)
    rep = Report("gamma-jacobi", {"triples": len(triples), "alphas": [gtext(a) for a in alphas]},
                 {"modes": [-box, box], "max_degree": md})
    with timed(rep):
        for a, b, c in triples:
            for al in alphas:
                for be in alphas:
                    rep.merge(guarded("gamma-jacobi", verify_gamma_jacobi, book, a, b, c, al, be, box, md))
                    if not rep.passed:
                        rep.counterexample.update(a=a.name, b=b.name, c=c.name, alpha=gtext(al), beta=gtext(be))
                        return [rep]
    return [rep]


# ------------------------------------------------------------ quasi-module

def quasi_f(setup: Setup):
    factors = setup.scenario.quasi_module.get("f")
    if not factors:
        return None
    return CompatibilityWitness.from_factors([(parse_group_element(str(r)), int(k)) for r, k in factors])


def suite_quasi_module(setup: Setup, inject=False) -> list:
    book = setup.book
    f = quasi_f(setup)
    gens = [g.field for g in setup.gens]
    if inject:
        gens[-1] = perturb_field(gens[-1])
    pairs = _sample([(u, v) for u in gens for v in gens], setup)
    qm = setup.scenario.quasi_module
    lbox, ebox = qm.get("lbox", 2), qm.get("ebox", 2)
    alphas = _alphas(setup)
    rep = Report("quasi-jacobi", {"f": f.to_text() if f else "pair witness", "pairs": len(pairs),
                                  "gamma": [gtext(g) for g in alphas]}, {"l": [-lbox, lbox], "exponents": ebox})
    with timed(rep):
        for u, v in pairs:
            for g in alphas:
                rep.merge(guarded("quasi-jacobi", verify_quasi_module, book, u, v, f, g, lbox=lbox, ebox=ebox))
                if not rep.passed:
                    rep.counterexample.update(u=u.name, v=v.name, gamma=gtext(g))
                    break
            if not rep.passed:
                break
    out = [rep]
    rep = Report("d-property", {"fields": len(gens)}, {"max_degree": _degree(setup)})
    with timed(rep):
        for v in gens:
            rep.merge(guarded("d-property", d_property_check, book, v, _degree(setup)))
    out.append(rep)
    out.append(guarded("weak-assoc-sufficiency", verify_weak_assoc_sufficiency, book, _spread(pairs, 3),
                       GroupElement(), None, 2, 1, 2))
    return out


# ------------------------------------------------------------ gamma-va

def suite_gamma_va(setup: Setup, inject=False) -> list:
    from .fields import adjoint_locality_check
    c = setup.scenario.closure
    md = _degree(setup)
    fields = setup.fields
    C = setup.closure()
    rep = Report("closure", {"generators": [f.name for f in fields], "gamma": [gtext(g) for g in setup.gamma]},
                 {"weight": c["weight"], "depth": c["depth"]})
    rep.params["size"] = len(C.elements)
    rep.params["by_weight"] = {w: len(v) for w, v in sorted(C.by_weight().items())}
    rep.compared = len(C.elements)
    out = [rep]
    if inject:
        e = C.elements[1]
        inject_product(C.book, e, e, setup.gamma[-1], -1)
    out.append(guarded("gamma-closure-equals-closure", subgroup_closure_check, fields, setup.gamma, c["weight"],
                       c["depth"], WitnessBook(setup.gamma), setup.scenario.window["degree"]))
    out.append(guarded("gamma-va-equivalence", verify_gamma_va_equivalence, C, md))
    out.append(guarded("r-alpha-translation", automorphism_check, C, md))
    rep = Report("adjoint-locality", {"elements": len(C.elements)}, {"max_degree": md})
    els = [e for e in C.elements if not isinstance(e, IdentityField)]
    triples = _spread([(a, b, x) for a in els for b in els for x in els], setup.closure_triples)
    with timed(rep):
        for a, b, x in triples:
            for al in setup.gamma:
                for be in setup.gamma:
                    sub = guarded("adjoint-locality", adjoint_locality_check, a, b, x, al, be, C.book(a, b),
                                  C.book, md)
                    rep.merge(sub)
                    if not rep.passed:
                        rep.counterexample.update(a=a.name, b=b.name, c=x.name, alpha=gtext(al), beta=gtext(be))
                        break
                if not rep.passed:
                    break
            if not rep.passed:
                break
    out.append(rep)
    rep = Report("closure-determinism", {"size": len(C.elements)})
    with timed(rep):
        again = generate_closure(fields, setup.gamma, c["weight"], c["depth"], WitnessBook(setup.gamma),
                                 setup.scenario.window["degree"])
        rep.compared = len(again.elements)
        names = [e.name for e in C.elements]
        if [e.name for e in again.elements] != names:
            rep.fail(first=names, second=[e.name for e in again.elements])
    out.append(rep)
    return out


# ------------------------------------------------------------ minpoly

def suite_minpoly(setup: Setup, inject=False) -> list:
    fields = [g.field for g in setup.gens]
    if inject:
        fields[0] = perturb_field(fields[0])
    labels = setup.labels()
    roots = []
    for a in setup.gens:
        for b in setup.gens:
            for g in setup.expected_roots(a, b):
                if g not in roots:
                    roots.append(g)
    want = Poly([ONE])
    for g in roots:
        want = want * Poly.linear_root(gvalue(g))
    book = WitnessBook(setup.gamma, labels)
    prop = []
    gens = setup.gens
    for a, b in _spread([(a, b) for a in gens for b in gens], 3):
        p = book.product(a.field, b.field, GroupElement(), 0)
        if not isinstance(p, ZeroField):
            prop.append((p, gens[0].field))
    rep = guarded("minimal-polynomial", minimal_polynomial, fields, setup.gamma, 8, labels, book, prop)
    rep.params["expected"] = want.to_text()
    if rep.passed and rep.params.get("polynomial") != want.to_text():
        rep.fail(found=rep.params.get("polynomial"), expected=want.to_text())
    return [rep]


# ------------------------------------------------------------ family-closed-forms

def suite_family_closed_forms(setup: Setup, inject=False) -> list:
    gens = list(setup.gens)
    if inject:
        gens[0] = type(gens[0])(perturb_field(gens[0].field), gens[0].desc)
    labels = setup.labels()
    md = _degree(setup)
    pairs = _sample([(a, b) for a in gens for b in gens], setup)
    fam = setup.fam
    out = []
    rep = Report("closed-form-commutator", {"family": setup.kind, "pairs": len(pairs)},
                 {"label_degree": setup.scenario.window["labels"]})
    with timed(rep):
        for a, b in pairs:
            cf = setup.closed_form(a, b)
            commutator_formula_check(a.field, b.field, closed_witness(setup, a, b), labels, rep,
                                     expansion=cf.field_delta())
            if not rep.passed:
                rep.counterexample.update(pair=[a.field.name, b.field.name], closed_form=cf.describe())
                break
    out.append(rep)
    book = _ClosedBook(setup)
    out.append(products_check(setup, pairs, book, md, name="closed-form-products"))
    if setup.kind != "sublattice":
        out.append(defining_relations_check(fam, 2))
    if setup.kind == "twisted-affine":
        for r in range(fam.T):
            out.append(omega_averaging_check(fam.T, r))
        out.append(relabel_isomorphism_check(fam))
    if setup.kind in ("twisted-affine", "sublattice"):
        out.append(r_action_check(setup, gens, md))
    if setup.kind == "sublattice":
        out.append(periodicity_check(setup, md))
    if setup.kind == "quantum-torus":
        out.append(star_algebra_check(3))
        out.append(fam.A.check())
    return out


class _ClosedBook(WitnessBook):
    """Witnesses read from the closed forms instead of searched for."""

    def __init__(self, setup):
        super().__init__(setup.gamma)
        self.setup = setup
        self._by_field = {id(g.field): g for g in setup.gens}

    def __call__(self, a, b):
        ga, gb = self._by_field.get(id(a)), self._by_field.get(id(b))
        if ga is None or gb is None:
            return super().__call__(a, b)
        return closed_witness(self.setup, ga, gb)


def r_action_check(setup: Setup, gens, md) -> Report:
    """R_alpha acts on a generator of class s by alpha^(-s-1)."""
    rep = Report("r-action", {"family": setup.kind}, {"max_degree": md})
    with timed(rep):
        for g in gens:
            if setup.kind == "sublattice":
                s = g.desc[1]
            else:
                s = setup.fam.degrees[next(iter(g.desc))]
            for al in setup.gamma:
                want = RAlpha(g.field, al)
                c = gvalue(al) ** (-s - 1)
                from .fields import LinearCombination
                got = LinearCombination([(c, g.field)], weight=g.field.weight)
                ok, where, n = fields_equal(want, got, md)
                rep.compared += n
                if not ok:
                    return rep.fail(field=g.field.name, alpha=gtext(al), **where)
    return rep


def periodicity_check(setup: Setup, md) -> Report:
    """E(a, r + k) = E(a, r)."""
    from .families import sublattice_field
    rep = Report("sublattice-periodicity", {"k": setup.k}, {"max_degree": md})
    with timed(rep):
        for g in setup.gens:
            v, r = g.desc
            ok, where, n = fields_equal(g.field, sublattice_field(setup.fam, v, r + setup.k, setup.k), md)
            rep.compared += n
            if not ok:
                return rep.fail(field=g.field.name, **where)
    return rep


SUITE_FUNCS = {
    "delta-calculus": suite_delta_calculus,
    "compatibility": suite_compatibility,
    "yalpha": suite_yalpha,
    "jacobi": suite_jacobi,
    "quasi-module": suite_quasi_module,
    "gamma-va": suite_gamma_va,
    "minpoly": suite_minpoly,
    "family-closed-forms": suite_family_closed_forms,
}


def run_suite(setup: Setup, suite: str) -> list:
    inject = setup.scenario.perturb.get("suite") == suite
    return SUITE_FUNCS[suite](setup, inject)
