"""Delta distributions, the three-term delta identity and kernel decomposition."""

from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial

from .laurent import Binomial, IotaDirection, LaurentData, binom, falling, iota_expand
from .linalg import solve
from .polys import Poly, bezout_partition
from .report import Report, timed
from .scalars import ONE, ZERO, Scalar, as_scalar

PLAIN = "plain"          # (d/dx2)^j x1^-1 delta(alpha x2/x1)
NORMALIZED = "normalized"  # (alpha^-1 d/dx2)^j / j!  applied to the same delta


def delta_coefficients(alpha, j: int, window) -> LaurentData:
    """(d/dx2)^j x1^-1 delta(alpha x2/x1) on a (x1, x2) window."""
    alpha = as_scalar(alpha)
    if not alpha:
        raise ValueError("delta needs a nonzero alpha")
    (lo1, hi1), (lo2, hi2) = window
    terms = {}
    for a in range(lo1, hi1 + 1):
        m = -a - 1
        e2 = m - j
        if lo2 <= e2 <= hi2:
            c = falling(m, j)
            if c:
                terms[(a, e2)] = alpha ** m * c
    return LaurentData(("x1", "x2"), terms, window)


def delta_term(alpha, j: int, normalization: str = PLAIN):
    """Coefficient rule c(m) for x1^(-m-1) x2^(m-j) of one delta term."""
    alpha = as_scalar(alpha)

    if normalization == PLAIN:
        return lambda m: alpha ** m * falling(m, j)
    if normalization == NORMALIZED:
        return lambda m: alpha ** (m - j) * binom(m, j)
    raise ValueError(f"unknown normalization {normalization!r}")


# ------------------------------------------------------------ delta identity

def delta_identity_terms(alpha, window):
    """The three terms of the delta identity as LaurentData in (x0, x1, x2)."""
    alpha = as_scalar(alpha)
    (l0, h0), (l1, h1), (l2, h2) = window
    vars3 = ("x0", "x1", "x2")
    first = LaurentData(vars3, window=window)
    second = LaurentData(vars3, window=window)
    right = LaurentData(vars3, window=window)
    t1, t2, t3 = {}, {}, {}
    # x0^(-n-1) (x1 - alpha x2)^n, x2 expanded in nonnegative powers
    for e0 in range(l0, h0 + 1):
        n = -e0 - 1
        wn = ((l1, h1), (l2, h2))
        d = iota_expand([Binomial(1, "x1", -alpha, "x2", n)], ("x1", "x2"), wn, ("x1", "x2"))
        for (e1, e2), v in d.terms.items():
            t1[(e0, e1, e2)] = v
        d = iota_expand([Binomial(1, "x1", -alpha, "x2", n)], ("x2", "x1"), wn, ("x1", "x2"))
        for (e1, e2), v in d.terms.items():
            t2[(e0, e1, e2)] = v
    # x1^(-n-1) (alpha x2 + x0)^n, x0 expanded in nonnegative powers
    for e1 in range(l1, h1 + 1):
        n = -e1 - 1
        d = iota_expand([Binomial(alpha, "x2", 1, "x0", n)], ("x2", "x0"), ((l0, h0), (l2, h2)), ("x0", "x2"))
        for (e0, e2), v in d.terms.items():
            t3[(e0, e1, e2)] = v
    first = LaurentData(vars3, t1, window)
    second = LaurentData(vars3, t2, window)
    right = LaurentData(vars3, t3, window)
    return first, second, right


def verify_delta_identity(alpha, window=((-8, 8),) * 3, perturb=None) -> Report:
    """Check x0^-1 d((x1-a x2)/x0) - x0^-1 d((-a x2+x1)/x0) = x1^-1 d((a x2+x0)/x1).

    ``perturb`` optionally names an exponent of the middle term whose
    coefficient is dropped, as a negative control.
    """
    report = Report("delta-identity", {"alpha": as_scalar(alpha)}, {"box": window})
    with timed(report):
        first, second, right = delta_identity_terms(alpha, window)
        if perturb is not None:
            t = dict(second.terms)
            t.pop(tuple(perturb), None) if tuple(perturb) in t else t.__setitem__(tuple(perturb), ONE)
            second = LaurentData(second.vars, t, second.window)
        bad, count = (first - second).compare(right)
        report.compared = count
        if bad is not None:
            report.fail(exponent=list(bad), left=(first - second).terms.get(bad, ZERO),
                        right=right.terms.get(bad, ZERO))
    return report


# ------------------------------------------------------------ substitutions

def delta_substitute(g: LaurentData, form: str, alpha, window) -> LaurentData:
    """Replace x1 by x0 + alpha x2 in g(x0, x1, x2), following a delta kernel.

    ``form`` selects the kernel the substitution accompanies:
    "first"  for x0^-1 d((x1 - a x2)/x0): x2 expanded in nonnegative powers;
    "right"  for x1^-1 d((a x2 + x0)/x1): x0 expanded in nonnegative powers;
    "second" for x0^-1 d((-a x2 + x1)/x0): only allowed when g has no negative x1 powers.
    The result has x1-exponent 0 and is exact on ``window`` (x0, x1, x2).
    """
    alpha = as_scalar(alpha)
    if g.vars != ("x0", "x1", "x2"):
        raise ValueError("g must be in (x0, x1, x2)")
    if form == "second" and any(e[1] < 0 for e in g.terms):
        raise ValueError("the second kernel substitution needs nonnegative powers of x1")
    direction = ("x0", "x2") if form == "first" else ("x2", "x0")
    (l0, h0), _, (l2, h2) = window
    out = {}
    for (e0, e1, e2), v in g.terms.items():
        w = ((l0 - e0, h0 - e0), (l2 - e2, h2 - e2))
        d = iota_expand([Binomial(1, "x0", alpha, "x2", e1)], direction, w, ("x0", "x2"))
        for (a0, a2), c in d.terms.items():
            key = (a0 + e0, 0, a2 + e2)
            out[key] = out.get(key, ZERO) + v * c
    return LaurentData(("x0", "x1", "x2"), out, window)


def kernel(form: str, alpha, window) -> LaurentData:
    """One of the three delta kernels on a (x0, x1, x2) window."""
    first, second, right = delta_identity_terms(alpha, window)
    return {"first": first, "second": second, "right": right}[form]


def kernel_times(form: str, alpha, g: LaurentData, window) -> LaurentData:
    """kernel * g, coefficient-exact on ``window``; g must be a Laurent polynomial.

    Every coefficient of the product inside ``window`` is a finite sum because
    each kernel is finite along one axis for fixed exponents of the others.
    """
    (l0, h0), (l1, h1), (l2, h2) = window
    if not g.terms:
        return LaurentData(("x0", "x1", "x2"), {}, window)
    mins = [min(e[i] for e in g.terms) for i in range(3)]
    maxs = [max(e[i] for e in g.terms) for i in range(3)]
    big = ((l0 - maxs[0], h0 - mins[0]), (l1 - maxs[1], h1 - mins[1]), (l2 - maxs[2], h2 - mins[2]))
    k = kernel(form, alpha, big)
    out = {}
    for e, v in k.terms.items():
        for s, c in g.terms.items():
            key = (e[0] + s[0], e[1] + s[1], e[2] + s[2])
            if l0 <= key[0] <= h0 and l1 <= key[1] <= h1 and l2 <= key[2] <= h2:
                out[key] = out.get(key, ZERO) + v * c
    return LaurentData(("x0", "x1", "x2"), out, window)


# ------------------------------------------------------------ expansions

@dataclass
class DeltaTerm:
    alpha: Scalar
    j: int
    coeff: dict            # exponent n of x2 -> value (Scalar or anything linear)
    normalization: str = PLAIN


@dataclass
class DeltaExpansion:
    """A finite sum of c_{i,j}(x2) * (derivative)^j x1^-1 delta(alpha_i x2/x1)."""

    terms: list = field(default_factory=list)

    def add(self, alpha, j, coeff, normalization=PLAIN):
        alpha = as_scalar(alpha)
        if not alpha:
            raise ValueError("delta roots must be nonzero")
        for t in self.terms:
            if t.alpha == alpha and t.j == j and t.normalization == normalization:
                for n, v in coeff.items():
                    t.coeff[n] = t.coeff.get(n, ZERO) + v
                return self
        self.terms.append(DeltaTerm(alpha, j, dict(coeff), normalization))
        return self

    def roots(self) -> list:
        out = []
        for t in self.terms:
            if t.alpha not in out:
                out.append(t.alpha)
        return out

    def normalized(self) -> "DeltaExpansion":
        """The same expansion written with the (alpha^-1 d)^j/j! normalization."""
        out = DeltaExpansion()
        for t in self.terms:
            if t.normalization == NORMALIZED:
                out.add(t.alpha, t.j, t.coeff, NORMALIZED)
            else:
                # d^j = j! alpha^j (alpha^-1 d)^j / j!
                s = t.alpha ** t.j * factorial(t.j)
                out.add(t.alpha, t.j, {n: v * s for n, v in t.coeff.items()}, NORMALIZED)
        return out

    def expand(self, window) -> LaurentData:
        """Coefficients on a (x1, x2) window (scalar-valued coefficients)."""
        (lo1, hi1), (lo2, hi2) = window
        out = {}
        for t in self.terms:
            rule = delta_term(t.alpha, t.j, t.normalization)
            for a in range(lo1, hi1 + 1):
                m = -a - 1
                c = rule(m)
                if not c:
                    continue
                for n, v in t.coeff.items():
                    e2 = m - t.j + n
                    if lo2 <= e2 <= hi2:
                        out[(a, e2)] = out.get((a, e2), ZERO) + c * v
        return LaurentData(("x1", "x2"), out, window)

    def coefficient_at(self, a: int, e2: int, zero=ZERO):
        """Coefficient of x1^a x2^e2, for linear coefficient values."""
        m = -a - 1
        total = zero
        for t in self.terms:
            n = e2 - m + t.j
            v = t.coeff.get(n)
            if v is None:
                continue
            c = delta_term(t.alpha, t.j, t.normalization)(m)
            if c:
                total = total + v * c if total is not zero else v * c
        return total

    def polynomial(self) -> Poly:
        """prod (x - alpha_i)^(k_i) with k_i one more than the top derivative order."""
        top = {}
        for t in self.terms:
            if any(t.coeff.values()):
                top[t.alpha] = max(top.get(t.alpha, 0), t.j + 1)
        return Poly.from_roots(top)


# ------------------------------------------------------------ decomposition

def _lines(A: LaurentData):
    """Group coefficients by t = e2 + a + 1, keyed by m = -a - 1."""
    lines = {}
    for (a, e2), v in A.terms.items():
        m = -a - 1
        lines.setdefault(e2 - m, {})[m] = v
    return lines


def _window_lines(window):
    (lo1, hi1), (lo2, hi2) = window
    out = {}
    for a in range(lo1, hi1 + 1):
        m = -a - 1
        for e2 in range(lo2, hi2 + 1):
            out.setdefault(e2 - m, []).append(m)
    return out


def annihilated(A: LaurentData, p: Poly):
    """First window exponent where p(x1/x2) A fails to vanish, or None."""
    lines = _lines(A)
    wl = _window_lines(A.window)
    for t, ms in sorted(wl.items()):
        present = set(ms)
        vals = lines.get(t, {})
        for m in sorted(ms):
            # (x1/x2)^k moves x1^(-m-1) to x1^(-m-1+k): coefficient at m uses A at m + k
            if all((m + k) in present for k in range(len(p.c))):
                s = ZERO
                for k, c in enumerate(p.c):
                    v = vals.get(m + k)
                    if v is not None and c:
                        s = s + c * v
                if s:
                    return (-m - 1, t + m)
    return None


def annihilator_decompose(A: LaurentData, roots: dict, check: bool = True) -> DeltaExpansion:
    """Write A = sum_{i, j<k_i} (alpha_i^-j/j!) d^j x1^-1 delta(alpha_i x2/x1) B_ij(x2).

    ``roots`` maps each nonzero root alpha_i of p to its multiplicity k_i.
    Coefficients are found by solving, for each diagonal t, the confluent
    Vandermonde system over the window's columns.
    """
    roots = {as_scalar(a): k for a, k in roots.items()}
    if any(not a for a in roots):
        raise ValueError("roots must be nonzero")
    p = Poly.from_roots(roots)
    if check:
        bad = annihilated(A, p)
        if bad is not None:
            raise ValueError(f"p(x1/x2) A is nonzero at exponent {bad}")
    lines = _lines(A)
    wl = _window_lines(A.window)
    unknowns = [(a, j) for a, k in roots.items() for j in range(k)]
    result = DeltaExpansion()
    coeffs = {u: {} for u in unknowns}
    rules = {(a, j): delta_term(a, j, NORMALIZED) for a, j in unknowns}
    for t, ms in sorted(wl.items()):
        vals = lines.get(t, {})
        eqs = [({u: rules[u](m) for u in unknowns}, vals.get(m, ZERO)) for m in sorted(ms)]
        if len(ms) < len(unknowns):
            if any(vals.values()):
                raise ValueError(f"window too small on diagonal t={t}")
            continue
        sol, status = solve(eqs, unknowns)
        if status == "inconsistent":
            raise ValueError(f"inconsistent system on diagonal t={t}")
        if status == "underdetermined":
            raise ValueError(f"window too small on diagonal t={t}")
        for u in unknowns:
            if sol[u]:
                # B_ij(x2) coefficient at x2^n with n = t + j
                coeffs[u][t + u[1]] = sol[u]
    for (a, j) in unknowns:
        result.add(a, j, coeffs[(a, j)], NORMALIZED)
    return result


def decompose_via_bezout(A: LaurentData, roots: dict) -> DeltaExpansion:
    """Independent path: split A with q_i P_i(x1/x2), then solve one root at a time.

    With sum_i q_i(x) P_i(x) = 1 where P_i = prod_{j != i}(x - alpha_j)^{k_j},
    each A_i = q_i P_i(x1/x2) A is killed by (x1/x2 - alpha_i)^{k_i}.
    The window shrinks by the degree of q_i P_i along x1.
    """
    roots = {as_scalar(a): k for a, k in roots.items()}
    alphas = list(roots)
    factors = [Poly.linear_root(a) ** roots[a] for a in alphas]
    qs = bezout_partition(factors)
    lines = _lines(A)
    wl = _window_lines(A.window)
    result = DeltaExpansion()
    for i, a in enumerate(alphas):
        mult = Poly([ONE])
        for j, f in enumerate(factors):
            if j != i:
                mult = mult * f
        mult = qs[i] * mult
        pieces = {}
        for t, ms in wl.items():
            present = set(ms)
            vals = lines.get(t, {})
            for m in ms:
                if all((m + k) in present for k in range(len(mult.c))):
                    s = ZERO
                    for k, c in enumerate(mult.c):
                        v = vals.get(m + k)
                        if v is not None and c:
                            s = s + c * v
                    pieces.setdefault(t, {})[m] = s
        # solve the single-root system on each diagonal
        unknowns = [(a, j) for j in range(roots[a])]
        rules = {u: delta_term(a, u[1], NORMALIZED) for u in unknowns}
        coeffs = {u: {} for u in unknowns}
        for t, vals in sorted(pieces.items()):
            ms = sorted(vals)
            if len(ms) < len(unknowns):
                continue
            eqs = [({u: rules[u](m) for u in unknowns}, vals[m]) for m in ms]
            sol, status = solve(eqs, unknowns)
            if status != "ok":
                raise ValueError(f"Bezout path: {status} system on diagonal t={t}")
            for u in unknowns:
                if sol[u]:
                    coeffs[u][t + u[1]] = sol[u]
        for u in unknowns:
            result.add(a, u[1], coeffs[u], NORMALIZED)
    return result


def same_expansion(d1: DeltaExpansion, d2: DeltaExpansion, support=None) -> bool:
    """Compare two normalized expansions term by term (optionally on an x2 range)."""
    def table(d):
        out = {}
        for t in d.normalized().terms:
            for n, v in t.coeff.items():
                if v and (support is None or support[0] <= n <= support[1]):
                    out[(t.alpha, t.j, n)] = v
        return out
    return table(d1) == table(d2)


# ------------------------------------------------------------ property checks

def iota_check(n: int, alpha, count: int = 20, perturb=None) -> Report:
    """Both expansions of (x1 - alpha x2)^n against the binomial series, first ``count`` terms.

    ``perturb`` = (direction index, i) bumps one reference coefficient.
    """
    alpha = as_scalar(alpha)
    rep = Report("iota-expansion", {"n": n, "alpha": alpha}, {"terms": count})
    with timed(rep):
        for d, direction in enumerate((("x1", "x2"), ("x2", "x1"))):
            # in direction (x1, x2) x2 is expanded: x1^(n-i) x2^i; otherwise x1^i x2^(n-i)
            if d == 0:
                window = ((n - count + 1, n), (0, count - 1))
            else:
                window = ((0, count - 1), (n - count + 1, n))
            got = iota_expand([Binomial(1, "x1", -alpha, "x2", n)], direction, window, ("x1", "x2"))
            for i in range(count):
                if n >= 0 and i > n:
                    break
                if d == 0:
                    key, want = (n - i, i), binom(n, i) * (-alpha) ** i
                else:
                    key, want = (i, n - i), binom(n, i) * (-alpha) ** (n - i)
                want = as_scalar(want)
                if perturb is not None and tuple(perturb) == (d, i):
                    want = want + ONE
                rep.compared += 1
                if got.coefficient(key) != want:
                    return rep.fail(direction=list(direction), exponent=list(key), got=got.coefficient(key),
                                    expected=want)
    return rep


def random_laurent(rng, support, n: int = 1, bound: int = 5) -> dict:
    """Exponent -> Scalar with small random integer (or cyclotomic) coefficients."""
    out = {}
    for e in range(support[0], support[1] + 1):
        c = as_scalar(rng.randint(-bound, bound))
        if n > 2:
            c = c + as_scalar(rng.randint(-bound, bound)) * Scalar.zeta(n)
        if c:
            out[e] = c
    return out


def decomposition_roundtrip(roots: dict, rng, support=(-5, 5), n: int = 3, perturb=None) -> Report:
    """Expand random B_ij, decompose back with both methods, compare exactly.

    ``perturb`` names an (x1, x2) exponent of A to bump before decomposing.
    """
    roots = {as_scalar(a): k for a, k in roots.items()}
    rep = Report("decomposition-roundtrip", {"roots": {a.to_text(): k for a, k in roots.items()}},
                 {"support": list(support)})
    with timed(rep):
        given = DeltaExpansion()
        for a, k in roots.items():
            for j in range(k):
                given.add(a, j, random_laurent(rng, support, n), NORMALIZED)
        deg = sum(roots.values())
        lo, hi = support
        window = ((-hi - deg - 12, -lo + deg + 12), (lo - deg - 12, hi + deg + 12))
        A = given.expand(window)
        if perturb is not None:
            t = dict(A.terms)
            t[tuple(perturb)] = t.get(tuple(perturb), ZERO) + ONE
            A = LaurentData(A.vars, {e: v for e, v in t.items() if v}, A.window)
        rep.compared = len(A.terms)
        bad = annihilated(A, Poly.from_roots(roots))
        if bad is not None:
            return rep.fail(stage="annihilation", exponent=list(bad))
        try:
            got = annihilator_decompose(A, roots)
        except ValueError as exc:
            return rep.fail(stage="linear solve", error=str(exc))
        if not same_expansion(got, given, support):
            return rep.fail(stage="linear solve", mismatch=_first_mismatch(got, given, support))
        alt = decompose_via_bezout(A, roots)
        if not same_expansion(alt, given, support):
            return rep.fail(stage="Bezout path", mismatch=_first_mismatch(alt, given, support))
        again = got.expand(window)
        bad, count = again.compare(A, window)
        rep.compared += count
        if bad is not None:
            return rep.fail(stage="re-expansion", exponent=list(bad))
    return rep


def _first_mismatch(d1, d2, support):
    def table(d):
        return {(t.alpha, t.j, n): v for t in d.normalized().terms for n, v in t.coeff.items()
                if v and support[0] <= n <= support[1]}
    t1, t2 = table(d1), table(d2)
    for key in sorted(set(t1) | set(t2), key=lambda k: (k[1], k[2], k[0].to_text())):
        if t1.get(key, ZERO) != t2.get(key, ZERO):
            return {"root": key[0].to_text(), "j": key[1], "x2 exponent": key[2]}
    return None


def substitution_check(alpha, g: LaurentData, window=((-6, 6),) * 3, forms=("first", "second", "right")) -> Report:
    """kernel * g = kernel * g(x0, x0 + alpha x2, x2) for each delta kernel."""
    alpha = as_scalar(alpha)
    rep = Report("delta-substitution", {"alpha": alpha, "g": sorted(g.terms.items())}, {"box": window})
    with timed(rep):
        for form in forms:
            lhs = kernel_times(form, alpha, g, window)
            big = tuple((lo - 12, hi + 12) for lo, hi in window)
            sub = delta_substitute(g, form, alpha, big)
            rhs = kernel_times(form, alpha, LaurentData(sub.vars, sub.terms), window)
            bad, count = lhs.compare(rhs, window)
            rep.compared += count
            if bad is not None:
                return rep.fail(form=form, exponent=list(bad))
    return rep


def annihilation_check(alpha, nmax: int = 3, window=((-8, 8), (-8, 8))) -> Report:
    """(x1 - alpha x2)^m kills the n-th x2-derivative of the delta once m > n."""
    alpha = as_scalar(alpha)
    rep = Report("delta-annihilation", {"alpha": alpha}, {"box": window, "n": [0, nmax]})
    with timed(rep):
        for n in range(nmax + 1):
            (lo1, hi1), (lo2, hi2) = window
            d = delta_coefficients(alpha, n, ((lo1 - nmax - 2, hi1 + 1), (lo2 - 1, hi2 + nmax + 2)))
            p = Poly.linear_root(alpha) ** (n + 1)
            bad = annihilated(d, p)
            rep.compared += len(d.terms)
            if bad is not None:
                return rep.fail(n=n, exponent=list(bad))
    return rep
