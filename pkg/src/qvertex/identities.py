"""Calculus identities of the alpha-products: vacuum, creation, D and R rules."""

from __future__ import annotations

from math import factorial

from .fields import (IdentityField, LinearCombination, RAlpha, ZeroField, d_derivative, fields_equal, gtext,
                     gvalue, y_alpha_product)
from .polys import BiPoly
from .report import Report, timed
from .scalars import ONE, GroupElement, as_scalar


def _lin(terms, like):
    terms = [(as_scalar(c), f) for c, f in terms if c and not isinstance(f, ZeroField)]
    if not terms:
        return ZeroField(like.module, like.weight)
    return LinearCombination(terms, weight=like.weight)


def _modes(book, a, b, alpha, lo):
    return range(lo, book.top(a, b, alpha))


def _eq(rep, x, y, max_degree, **where) -> bool:
    ok, w, n = fields_equal(x, y, max_degree)
    rep.compared += n
    if not ok:
        rep.fail(**where, **w)
    return ok


def vacuum_creation_check(book, a, gamma, jmax: int = 3, nmax: int = 2, max_degree=None) -> Report:
    """1_(alpha,n) a, a_(alpha,n) 1_W against a, R_alpha a and D^j R_alpha a."""
    one = IdentityField(a.module)
    rep = Report("vacuum-creation", {"a": a.name, "gamma": [gtext(g) for g in gamma]},
                 {"j": [0, jmax], "n": [0, nmax]})
    with timed(rep):
        for g in gamma:
            for n in range(-1 - jmax, nmax + 1):
                got = book.product(one, a, g, n)
                want = a if n == -1 else ZeroField(a.module, a.weight - n - 1)
                if not _eq(rep, got, want, max_degree, rule="vacuum", alpha=gtext(g), n=n):
                    return rep
            Ra = RAlpha(a, g)
            if not _eq(rep, book.product(a, one, g, -1), Ra, max_degree, rule="a_(alpha,-1)1 = R_alpha a",
                       alpha=gtext(g)):
                return rep
            Dj = Ra
            for j in range(jmax + 1):
                # a_(alpha,-1-j) 1_W = alpha^-j / j! D^j R_alpha a
                c = gvalue(g) ** (-j) * as_scalar(factorial(j)).inverse()
                if not _eq(rep, book.product(a, one, g, -1 - j), _lin([(c, Dj)], Dj), max_degree,
                           rule="creation", alpha=gtext(g), j=j):
                    return rep
                Dj = d_derivative(Dj)
            for n in range(nmax + 1):
                if not _eq(rep, book.product(a, one, g, n), ZeroField(a.module, a.weight - n - 1), max_degree,
                           rule="creation (n >= 0)", alpha=gtext(g), n=n):
                    return rep
        if not _eq(rep, book.product(a, one, GroupElement(), -2), d_derivative(a), max_degree,
                   rule="a_(1,-2)1 = Da"):
            return rep
    return rep


def d_rules_check(book, a, b, gamma, nlo: int = -2, max_degree=None) -> Report:
    """(Da)_(alpha,n) b, D(a_(alpha,n) b) - a_(alpha,n) Db and D R_alpha = alpha R_alpha D."""
    rep = Report("d-rules", {"a": a.name, "b": b.name, "gamma": [gtext(g) for g in gamma]}, {"n_from": nlo})
    Da, Db = d_derivative(a), d_derivative(b)
    with timed(rep):
        for g in gamma:
            gv = gvalue(g)
            lhs = d_derivative(RAlpha(a, g))
            if not _eq(rep, lhs, _lin([(gv, RAlpha(Da, g))], lhs), max_degree, rule="D R = alpha R D",
                       alpha=gtext(g)):
                return rep
            top = max(book.top(a, b, g), book.top(Da, b, g), book.top(a, Db, g))
            for n in range(nlo, top + 1):
                prev = book.product(a, b, g, n - 1)
                lhs = book.product(Da, b, g, n)
                if not _eq(rep, lhs, _lin([(-n, prev)], lhs), max_degree, rule="(Da)_n b = -n a_(n-1) b",
                           alpha=gtext(g), n=n):
                    return rep
                ab = book.product(a, b, g, n)
                lhs = _lin([(ONE, d_derivative(ab)), (-ONE, book.product(a, Db, g, n))], d_derivative(ab))
                if not _eq(rep, lhs, _lin([(-n * gv, prev)], lhs), max_degree, rule="D bracket",
                           alpha=gtext(g), n=n):
                    return rep
    return rep


def conjugation_check(book, a, b, gamma, nlo: int = -2, max_degree=None) -> Report:
    """R_alpha(a_(beta,n) b) = a_(alpha beta,n) R_alpha b and (R_beta a)_(alpha,n) b = beta^(-n-1) a_(alpha beta,n) b."""
    rep = Report("conjugation", {"a": a.name, "b": b.name, "gamma": [gtext(g) for g in gamma]}, {"n_from": nlo})
    with timed(rep):
        for al in gamma:
            for be in gamma:
                ab = al * be
                Rb, Ra = RAlpha(b, al), RAlpha(a, be)
                top = max(book.top(a, b, be), book.top(a, Rb, ab), book.top(Ra, b, al), book.top(a, b, ab))
                for n in range(nlo, top + 1):
                    lhs = RAlpha(book.product(a, b, be, n), al)
                    if not _eq(rep, lhs, book.product(a, Rb, ab, n), max_degree, rule="R Y_beta = Y_(alpha beta) R",
                               alpha=gtext(al), beta=gtext(be), n=n):
                        return rep
                    lhs = book.product(Ra, b, al, n)
                    rhs = _lin([(gvalue(be) ** (-n - 1), book.product(a, b, ab, n))], lhs)
                    if not _eq(rep, lhs, rhs, max_degree, rule="Y_alpha(R_beta a, x/beta) = Y_(alpha beta)(a, x)",
                               alpha=gtext(al), beta=gtext(be), n=n):
                        return rep
    return rep


def witness_independence_check(book, a, b, gamma, nlo: int = -3, extra=None, max_degree=None) -> Report:
    """Products computed with f and with f times an extra factor agree."""
    extra = extra if extra is not None else BiPoly.linear(as_scalar(2))
    rep = Report("witness-independence", {"a": a.name, "b": b.name, "extra": extra.to_text()}, {"n_from": nlo})
    with timed(rep):
        w = book(a, b)
        f2 = w.f * extra
        for g in gamma:
            for n in range(nlo, book.top(a, b, g) + 1):
                p1 = y_alpha_product(a, b, g, w, n)
                p2 = y_alpha_product(a, b, g, f2, n)
                if not _eq(rep, p1, p2, max_degree, alpha=gtext(g), n=n):
                    return rep
    return rep
