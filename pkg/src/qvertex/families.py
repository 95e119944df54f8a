"""Affine, twisted affine, quantum Heisenberg and quantum torus examples.

Each family builds a truncated induced module, its generator fields, the
group elements that can appear as roots, and the commutators of generator
pairs written symbolically as delta expansions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .fields import (FieldDelta, GeneratorField, IdentityField, LinearCombination, ZeroField, gvalue)
from .laurent import LaurentData
from .linalg import row_reduce, solve
from .module import InducedModule, ModeAlgebra
from .report import Report, timed
from .scalars import ONE, ZERO, GroupElement, Scalar, as_scalar, roots_of_unity


# ------------------------------------------------------------ Lie data

def _vadd(acc, vec, c=ONE):
    for k, v in vec.items():
        s = acc.get(k, ZERO) + v * c
        if s:
            acc[k] = s
        else:
            acc.pop(k, None)
    return acc


class LieData:
    """A finite-dimensional Lie algebra with a symmetric invariant form."""

    def __init__(self, names, bracket, form):
        self.names = list(names)
        self.dim = len(self.names)
        # bracket: (i, j) -> {k: c}; missing pairs are zero
        self.table = {}
        for (i, j), v in bracket.items():
            v = {k: as_scalar(c) for k, c in v.items() if c}
            if v:
                self.table[(i, j)] = v
        self.form_table = {k: as_scalar(v) for k, v in form.items() if v}

    def br(self, i, j) -> dict:
        return self.table.get((i, j), {})

    def form(self, i, j) -> Scalar:
        return self.form_table.get((i, j), ZERO)

    def bracket(self, x: dict, y: dict) -> dict:
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                _vadd(out, self.br(i, j), a * b)
        return out

    def pairing(self, x: dict, y: dict) -> Scalar:
        out = ZERO
        for i, a in x.items():
            for j, b in y.items():
                out = out + a * b * self.form(i, j)
        return out

    def check(self) -> Report:
        rep = Report("lie-data", {"basis": self.names})
        e = [{i: ONE} for i in range(self.dim)]
        for i in range(self.dim):
            for j in range(self.dim):
                rep.compared += 1
                if _vadd(dict(self.br(i, j)), self.br(j, i)):
                    return rep.fail(rule="antisymmetry", pair=[self.names[i], self.names[j]])
                if self.form(i, j) != self.form(j, i):
                    return rep.fail(rule="symmetric form", pair=[self.names[i], self.names[j]])
                for k in range(self.dim):
                    x, y, z = e[i], e[j], e[k]
                    jac = self.bracket(x, self.bracket(y, z))
                    _vadd(jac, self.bracket(y, self.bracket(z, x)))
                    _vadd(jac, self.bracket(z, self.bracket(x, y)))
                    if jac:
                        return rep.fail(rule="jacobi", triple=[self.names[i], self.names[j], self.names[k]])
                    if self.pairing(self.bracket(x, y), z) != self.pairing(x, self.bracket(y, z)):
                        return rep.fail(rule="invariant form", triple=[self.names[i], self.names[j], self.names[k]])
        return rep

    def vector_text(self, v: dict) -> str:
        parts = []
        for i in sorted(v):
            c = v[i].to_text()
            parts.append(self.names[i] if c == "1" else ("-" + self.names[i] if c == "-1" else f"{c}*{self.names[i]}"))
        return "+".join(parts).replace("+-", "-") or "0"

    def rebased(self, vectors: list, names: list) -> "LieData":
        """The same algebra written in another basis (vectors in old coordinates)."""
        unknowns = list(range(len(vectors)))

        def coords(v):
            eqs = []
            for k in range(self.dim):
                eqs.append(({u: vectors[u].get(k, ZERO) for u in unknowns}, v.get(k, ZERO)))
            sol, status = solve(eqs, unknowns)
            if status == "inconsistent":
                raise ValueError("vector outside the span of the new basis")
            return {u: c for u, c in sol.items() if c}

        br, form = {}, {}
        for i, x in enumerate(vectors):
            for j, y in enumerate(vectors):
                br[(i, j)] = coords(self.bracket(x, y))
                form[(i, j)] = self.pairing(x, y)
        return LieData(names, br, form)


def abelian(dim: int, form=None) -> LieData:
    names = ["a", "b", "c"][:dim] if dim <= 3 else [f"a{i}" for i in range(dim)]
    form = form or {(i, i): 1 for i in range(dim)}
    return LieData(names, {}, form)


def sl2() -> LieData:
    """Basis e, f, h with the trace form."""
    e, f, h = 0, 1, 2
    br = {(h, e): {e: 2}, (e, h): {e: -2}, (h, f): {f: -2}, (f, h): {f: 2},
          (e, f): {h: 1}, (f, e): {h: -1}}
    form = {(e, f): 1, (f, e): 1, (h, h): 2}
    return LieData(["e", "f", "h"], br, form)


def sl2_involution() -> dict:
    """h -> -h and e <-> f, as images of basis vectors."""
    return {0: {1: ONE}, 1: {0: ONE}, 2: {2: -ONE}}


def coordinate_permutation(perm: list) -> dict:
    return {i: {perm[i]: ONE} for i in range(len(perm))}


def negation(dim: int) -> dict:
    return {i: {i: -ONE} for i in range(dim)}


def identity_automorphism(dim: int) -> dict:
    return {i: {i: ONE} for i in range(dim)}


def apply_matrix(mat: dict, v: dict) -> dict:
    out = {}
    for j, c in v.items():
        _vadd(out, mat[j], c)
    return out


# ------------------------------------------------------------ mode algebras

class AffineModes(ModeAlgebra):
    """a (x) t^m with a in an eigenbasis, m restricted to the eigenvalue class."""

    def __init__(self, lie: LieData, degrees: list, T: int, k: Scalar):
        self.lie, self.degrees, self.T, self.k = lie, degrees, T, as_scalar(k)

    def bracket(self, k1, k2):
        (m, i), (n, j) = k1, k2
        br = {(m + n, c): v for c, v in self.lie.br(i, j).items()}
        central = ZERO
        if m + n == 0 and m:
            central = self.lie.form(i, j) * m * self.k
        return br, central

    def degree(self, key) -> int:
        return -key[0]

    def creation_keys(self, degree: int) -> list:
        return [(-degree, i) for i in range(self.lie.dim) if (-degree - self.degrees[i]) % self.T == 0]

    def key_text(self, key) -> str:
        return f"{self.lie.names[key[1]]}({key[0]})"


class HeisenbergModes(ModeAlgebra):
    """[a(m), b(n)] = m <a,b> delta_{m+n,0} (q^m + q^-m) l."""

    def __init__(self, names, form: dict, level):
        self.names = names
        self.form = {k: as_scalar(v) for k, v in form.items()}
        self.level = as_scalar(level)

    def bracket(self, k1, k2):
        (m, i), (n, j) = k1, k2
        if m + n or not m:
            return {}, ZERO
        g = self.form.get((i, j), ZERO)
        return {}, g * m * (Scalar.q(m) + Scalar.q(-m)) * self.level

    def degree(self, key) -> int:
        return -key[0]

    def creation_keys(self, degree: int) -> list:
        return [(-degree, i) for i in range(len(self.names))]

    def key_text(self, key) -> str:
        return f"{self.names[key[1]]}({key[0]})"


@dataclass
class AssocData:
    """A finite-dimensional associative algebra with a trace form."""

    names: list
    mult: dict        # (i, j) -> {k: c}
    form: dict        # (i, j) -> c

    def mul(self, i, j) -> dict:
        return self.mult.get((i, j), {})

    def pairing(self, i, j) -> Scalar:
        return as_scalar(self.form.get((i, j), 0))

    def check(self) -> Report:
        rep = Report("associative-data", {"basis": self.names})
        n = len(self.names)

        def prod(x, y):
            out = {}
            for i, a in x.items():
                for j, b in y.items():
                    _vadd(out, {k: as_scalar(c) for k, c in self.mul(i, j).items()}, a * b)
            return out

        def pair(x, y):
            out = ZERO
            for i, a in x.items():
                for j, b in y.items():
                    out = out + a * b * self.pairing(i, j)
            return out
        e = [{i: ONE} for i in range(n)]
        for i in range(n):
            for j in range(n):
                if self.pairing(i, j) != self.pairing(j, i):
                    return rep.fail(rule="symmetric form", pair=[i, j])
                for k in range(n):
                    rep.compared += 1
                    if prod(prod(e[i], e[j]), e[k]) != prod(e[i], prod(e[j], e[k])):
                        return rep.fail(rule="associativity", triple=[i, j, k])
                    if pair(prod(e[i], e[j]), e[k]) != pair(e[i], prod(e[j], e[k])):
                        return rep.fail(rule="associative form", triple=[i, j, k])
        return rep


def complex_numbers() -> AssocData:
    return AssocData(["1"], {(0, 0): {0: 1}}, {(0, 0): 1})


def group_algebra_z2() -> AssocData:
    """C[Z/2] with basis e0, e1 and the form <ei, ej> = [ei ej : e0]."""
    mult = {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (1, 1): {0: 1}}
    form = {(0, 0): 1, (1, 1): 1}
    return AssocData(["e0", "e1"], mult, form)


class TorusModes(ModeAlgebra):
    """a (x) t0^m t1^n in the quantum torus algebra with central c0 = l, c1 acting by c1."""

    def __init__(self, A: AssocData, level, c1=0, t1_window: int = 2):
        self.A = A
        self.c0 = as_scalar(level)
        self.c1 = as_scalar(c1)
        self.J = t1_window

    def bracket(self, k1, k2):
        (m, n, i), (r, s, j) = k1, k2
        out = {}
        qa = Scalar.q(n * r)
        qb = Scalar.q(m * s)
        for k, c in self.A.mul(i, j).items():
            key = (m + r, n + s, k)
            out[key] = out.get(key, ZERO) + qa * c
        for k, c in self.A.mul(j, i).items():
            key = (m + r, n + s, k)
            out[key] = out.get(key, ZERO) - qb * c
        out = {k: v for k, v in out.items() if v}
        central = ZERO
        if m + r == 0 and n + s == 0:
            g = self.A.pairing(i, j)
            if g:
                central = g * qa * (self.c0 * m + self.c1 * n)
        return out, central

    def degree(self, key) -> int:
        return -key[0]

    def creation_keys(self, degree: int) -> list:
        return [(-degree, n, i) for n in range(-self.J, self.J + 1) for i in range(len(self.A.names))]

    def key_text(self, key) -> str:
        m, n, i = key
        return f"{self.A.names[i]}[{m},{n}]"


# ------------------------------------------------------------ closed forms

@dataclass
class ClosedForm:
    """Commutator of two generators as a sum of coefficient * normalized delta derivative.

    Each term is (root, j, text, field); field is None for terms that act as
    zero on the module (the c1 term of the torus) and are only carried
    symbolically.
    """

    terms: list = dc_field(default_factory=list)

    def add(self, alpha, j, text, fld):
        self.terms.append((alpha, j, text, fld))

    def field_delta(self) -> FieldDelta:
        return FieldDelta([(a, j, f) for a, j, _, f in self.terms if f is not None])

    def roots(self) -> list:
        out = []
        for a, _, _, _ in self.terms:
            if a not in out:
                out.append(a)
        return out

    def describe(self) -> list:
        return [f"({t}) * delta_{j}({a.to_text()})" for a, j, t, _ in self.terms]


def _scaled(c, fld, name=None):
    c = as_scalar(c)
    if not c:
        return ZeroField(fld.module, fld.weight)
    if c == ONE:
        return fld
    return LinearCombination([(c, fld)], name=name)


# ------------------------------------------------------------ families

class Family:
    kind = "family"

    def __init__(self, cutoff: int):
        self.cutoff = cutoff
        self.module = None
        self.generators = {}
        self.gamma = [GroupElement()]
        self.identity = None

    def fields(self) -> list:
        return list(self.generators.values())

    def candidates(self) -> list:
        return list(self.gamma)


class TwistedAffine(Family):
    """The twisted affine algebra of (g, sigma) of order T at level l.

    The module is induced from the trivial module of the nonnegative part,
    with the canonical central element acting by l/T.  T = 1 with sigma the
    identity gives the untwisted affine algebra at level l.
    """

    kind = "twisted-affine"

    def __init__(self, lie: LieData, sigma: dict, T: int, level, cutoff: int, generators=None):
        super().__init__(cutoff)
        self.base, self.sigma, self.T, self.level = lie, sigma, T, as_scalar(level)
        self.omega = GroupElement(1, T) if T > 1 else GroupElement()
        self._check_sigma()
        vectors, names, degrees = self._eigenbasis()
        self.eigen_vectors = vectors
        self.degrees = degrees
        self.lie = lie.rebased(vectors, names)
        self.algebra = AffineModes(self.lie, degrees, T, self.level * as_scalar(T).inverse())
        self.module = InducedModule(self.algebra, cutoff, name=f"{self.kind}-T{T}")
        self.identity = IdentityField(self.module)
        self.gamma = roots_of_unity(T)
        gens = generators if generators is not None else [{i: ONE} for i in range(self.lie.dim)]
        for v in gens:
            f = self.field(v)
            self.generators[f.name] = f

    # sigma checks and the eigenspace decomposition
    def _check_sigma(self):
        lie, s = self.base, self.sigma
        e = [{i: ONE} for i in range(lie.dim)]
        for i in range(lie.dim):
            v = e[i]
            for _ in range(self.T):
                v = apply_matrix(s, v)
            if v != e[i]:
                raise ValueError(f"sigma^{self.T} is not the identity")
            for j in range(lie.dim):
                lhs = apply_matrix(s, lie.bracket(e[i], e[j]))
                rhs = lie.bracket(apply_matrix(s, e[i]), apply_matrix(s, e[j]))
                if lhs != rhs:
                    raise ValueError("sigma does not preserve the bracket")
                if lie.pairing(apply_matrix(s, e[i]), apply_matrix(s, e[j])) != lie.pairing(e[i], e[j]):
                    raise ValueError("sigma does not preserve the form")

    def projection(self, r: int, v: dict) -> dict:
        """(1/T) sum_i omega^(-ri) sigma^i v, the component in g_r."""
        out, w = {}, dict(v)
        inv_t = as_scalar(self.T).inverse()
        for i in range(self.T):
            _vadd(out, w, gvalue(self.omega) ** (-r * i) * inv_t)
            w = apply_matrix(self.sigma, w)
        return out

    def _eigenbasis(self):
        vectors, names, degrees = [], [], []
        for r in range(self.T):
            rows = [self.projection(r, {j: ONE}) for j in range(self.base.dim)]
            reduced, _ = row_reduce([x for x in rows if x])
            for v in reduced:
                # verify sigma v = omega^r v
                if apply_matrix(self.sigma, v) != {k: c * gvalue(self.omega) ** r for k, c in v.items()}:
                    raise ValueError("eigenspace check failed")
                vectors.append(v)
                names.append(self.base.vector_text(v))
                degrees.append(r)
        return vectors, names, degrees

    def field(self, v: dict, name=None) -> GeneratorField:
        """a(x)^sigma for a in g, given in eigenbasis coordinates."""
        T = as_scalar(self.T)
        v = {i: as_scalar(c) for i, c in v.items() if c}
        deg = self.degrees

        def modes(p, v=v):
            return {(p, i): c * T for i, c in v.items() if (p - deg[i]) % self.T == 0}
        label = name or self.lie.vector_text(v)
        if any(ch in label[1:] for ch in "+-*"):
            label = f"({label})"
        return GeneratorField(self.module, modes, 1, name=label + ("^s" if self.T > 1 else ""))

    def coords(self, name: str) -> dict:
        """Eigenbasis coordinates of a generator by name."""
        for i, n in enumerate(self.lie.names):
            if name in (n, f"({n})", n + "^s", f"({n})^s"):
                return {i: ONE}
        raise KeyError(name)

    def components(self, v: dict) -> dict:
        """Split eigen coordinates by eigenvalue class r."""
        out = {}
        for i, c in v.items():
            out.setdefault(self.degrees[i], {})[i] = c
        return out

    def closed_form(self, a: dict, b: dict) -> ClosedForm:
        """[a(x1)^s, b(x2)^s] from structure constants alone."""
        out = ClosedForm()
        for r, av in self.components(a).items():
            for s_, bv in self.components(b).items():
                br = self.lie.bracket(av, bv)
                g = self.lie.pairing(av, bv)
                br_field = self.field(br) if br else None
                for i in range(self.T):
                    w = self.omega ** i if self.T > 1 else GroupElement()
                    wv = gvalue(self.omega) ** i if self.T > 1 else ONE
                    if br_field is not None:
                        c = wv ** (-r)
                        out.add(w, 0, f"{c.to_text()}*[{self.lie.vector_text(av)},{self.lie.vector_text(bv)}]",
                                _scaled(c, br_field))
                    if g:
                        c = self.level * g * wv ** (1 - r)
                        out.add(w, 1, f"{c.to_text()}*1_W", _scaled(c, self.identity))
        return out

    def expected_products(self, a: dict, b: dict) -> dict:
        """a_(1,0) b = [a,b]^s, a_(1,1) b = l<a,b> 1_W, zero for n >= 2."""
        br = self.lie.bracket(a, b)
        g = self.lie.pairing(a, b)
        return {
            0: self.field(br) if br else ZeroField(self.module, 1),
            1: _scaled(self.level * g, self.identity) if g else ZeroField(self.module, 0),
        }

    def untwisted_relation_check(self, window: int = 2) -> Report:
        """Module brackets reproduce the defining relations on basis vectors."""
        return defining_relations_check(self, window)


def untwisted_affine(lie: LieData, level, cutoff: int) -> TwistedAffine:
    fam = TwistedAffine(lie, identity_automorphism(lie.dim), 1, level, cutoff)
    fam.kind = "affine"
    return fam


def sublattice_fields(fam: TwistedAffine, k: int, residues=None, elements=None) -> dict:
    """E(a, r, x) = k sum_n a(r + nk) x^(-r-nk-1) on an untwisted affine module."""
    if fam.T != 1:
        raise ValueError("sublattice fields live on the untwisted affine module")
    if k < 1:
        raise ValueError("step must be positive")
    residues = list(range(k)) if residues is None else residues
    elements = elements if elements is not None else [{i: ONE} for i in range(fam.lie.dim)]
    out = {}
    for v in elements:
        for r in residues:
            out[(fam.lie.vector_text(v), r)] = sublattice_field(fam, v, r, k)
    return out


def sublattice_field(fam, v: dict, r: int, k: int) -> GeneratorField:
    kk = as_scalar(k)
    v = {i: as_scalar(c) for i, c in v.items() if c}

    def modes(p):
        if (p - r) % k:
            return {}
        return {(p, i): c * kk for i, c in v.items()}
    return GeneratorField(fam.module, modes, 1, name=f"E({fam.lie.vector_text(v)},{r % k})")


def sublattice_closed_form(fam, a: dict, r: int, b: dict, s: int, k: int) -> ClosedForm:
    out = ClosedForm()
    omega = GroupElement(1, k) if k > 1 else GroupElement()
    br = fam.lie.bracket(a, b)
    g = fam.lie.pairing(a, b)
    br_field = sublattice_field(fam, br, r + s, k) if br else None
    for i in range(k):
        w = omega ** i if k > 1 else GroupElement()
        wv = gvalue(w)
        if br_field is not None:
            c = wv ** (-r)
            out.add(w, 0, f"{c.to_text()}*E([a,b],{r + s})", _scaled(c, br_field))
        if g and (r + s) % k == 0:
            c = fam.level * g * k * wv ** (1 - r)
            out.add(w, 1, f"{c.to_text()}*1_W", _scaled(c, fam.identity))
    return out


class QuantumHeisenberg(Family):
    """h_q: [a(m), b(n)] = m <a,b> delta_{m+n,0}(q^m + q^-m) c, c acting by l."""

    kind = "quantum-heisenberg"

    def __init__(self, dim: int, level, cutoff: int, shifts=range(-2, 3), form=None, qrange: int = 6):
        super().__init__(cutoff)
        self.lie = abelian(dim, form)
        self.names = self.lie.names
        self.level = as_scalar(level)
        self.algebra = HeisenbergModes(self.names, self.lie.form_table, self.level)
        self.module = InducedModule(self.algebra, cutoff, name="heisenberg-q")
        self.identity = IdentityField(self.module)
        self.shifts = list(shifts)
        self.gamma = [GroupElement(0, 1, k) for k in range(-qrange, qrange + 1)]
        for i in range(dim):
            for m in self.shifts:
                f = self.field(i, m)
                self.generators[f.name] = f

    def field(self, i: int, m: int) -> GeneratorField:
        """a(m, x) = q^m a(q^m x), with modes q^(-mp) a(p)."""
        def modes(p):
            return {(p, i): Scalar.q(-m * p)}
        return GeneratorField(self.module, modes, 1, name=f"{self.names[i]}({m},x)")

    def closed_form(self, i: int, m: int, j: int, n: int) -> ClosedForm:
        out = ClosedForm()
        g = self.lie.form(i, j)
        if g:
            for e in (n - m + 1, n - m - 1):
                alpha = GroupElement(0, 1, e)
                c = g * self.level * Scalar.q(e)
                out.add(alpha, 1, f"{c.to_text()}*1_W", _scaled(c, self.identity))
        return out

    def expected_products(self, i: int, m: int, j: int, n: int) -> dict:
        g = self.lie.form(i, j)
        c = g * self.level * ((1 if m == n + 1 else 0) + (1 if m == n - 1 else 0))
        return {0: ZeroField(self.module, 1),
                1: _scaled(c, self.identity) if c else ZeroField(self.module, 0)}


class QuantumTorus(Family):
    """The quantum torus Lie algebra A (x) C_q[t0^±1, t1^±1] with c0 = l, c1 = 0."""

    kind = "quantum-torus"

    def __init__(self, A: AssocData, level, cutoff: int, exponents=((-2, 2), (-2, 2)),
                 t1_window: int = 2, c1=0, qrange: int = 8):
        super().__init__(cutoff)
        rep = A.check()
        if not rep.passed:
            raise ValueError(f"algebra data invalid: {rep.counterexample}")
        if as_scalar(c1):
            raise ValueError("c1 must act as zero")
        self.A = A
        self.level = as_scalar(level)
        self.algebra = TorusModes(A, self.level, c1, t1_window)
        self.module = InducedModule(self.algebra, cutoff, name="quantum-torus")
        self.identity = IdentityField(self.module)
        self.exponents = exponents
        self.gamma = [GroupElement(0, 1, k) for k in range(-qrange, qrange + 1)]
        (nlo, nhi), (mlo, mhi) = exponents
        for i in range(len(A.names)):
            for n in range(nlo, nhi + 1):
                for m in range(mlo, mhi + 1):
                    f = self.field({i: ONE}, n, m)
                    self.generators[f.name] = f

    def field(self, a: dict, n: int, m: int, name=None) -> GeneratorField:
        """Xbar(a, n, m, x): mode p is q^(-mp) a (x) t0^p t1^n."""
        a = {i: as_scalar(c) for i, c in a.items() if c}

        def modes(p):
            qp = Scalar.q(-m * p)
            return {(p, n, i): c * qp for i, c in a.items()}
        text = name or "+".join(self.A.names[i] if c == ONE else f"{c.to_text()}*{self.A.names[i]}"
                                for i, c in sorted(a.items()))
        return GeneratorField(self.module, modes, 1, name=f"X({text},{n},{m})")

    def _prod(self, a: dict, b: dict) -> dict:
        out = {}
        for i, x in a.items():
            for j, y in b.items():
                _vadd(out, {k: as_scalar(c) for k, c in self.A.mul(i, j).items()}, x * y)
        return out

    def _pair(self, a, b) -> Scalar:
        out = ZERO
        for i, x in a.items():
            for j, y in b.items():
                out = out + x * y * self.A.pairing(i, j)
        return out

    def closed_form(self, a: dict, n: int, m: int, b: dict, s: int, r: int) -> ClosedForm:
        """[Xbar(a,n,m,x1), Xbar(b,s,r,x2)] including the symbolic c1 term."""
        out = ClosedForm()
        ab, ba = self._prod(a, b), self._prod(b, a)
        r1 = GroupElement(0, 1, r - n - m)
        r2 = GroupElement(0, 1, s + r - m)
        if ab:
            out.add(r1, 0, f"X(ab,{n + s},{r - n})", self.field(ab, n + s, r - n))
        if ba:
            out.add(r2, 0, f"-X(ba,{n + s},{r})", _scaled(-ONE, self.field(ba, n + s, r)))
        g = self._pair(a, b)
        if g and n + s == 0:
            c = g * self.level * gvalue(r1)
            out.add(r1, 1, f"{c.to_text()}*1_W", _scaled(c, self.identity))
            out.add(r1, 0, f"{g.to_text()}*c1*x^-1", None)
        return out

    def expected_products(self, a: dict, n: int, m: int, b: dict, s: int, r: int) -> dict:
        """Mode products 0 and 1 at alpha = 1 with c1 = 0."""
        terms = []
        ab, ba = self._prod(a, b), self._prod(b, a)
        if m == r - n and ab:
            terms.append((ONE, self.field(ab, n + s, r - n)))
        if m == s + r and ba:
            terms.append((-ONE, self.field(ba, n + s, r)))
        p0 = LinearCombination(terms) if terms else ZeroField(self.module, 1)
        g = self._pair(a, b)
        c = g * self.level if (n + s == 0 and m == r - n) else ZERO
        p1 = _scaled(c, self.identity) if c else ZeroField(self.module, 0)
        return {0: p0, 1: p1}


# ------------------------------------------------------------ checks on families

def defining_relations_check(fam: Family, window: int = 2) -> Report:
    """[X, Y] on the module equals the bracket of the mode algebra, on all basis vectors."""
    rep = Report("defining-relations", {"family": fam.kind, "cutoff": fam.cutoff}, {"modes": window})
    mod, alg = fam.module, fam.algebra
    keys = []
    for d in range(-window, window + 1):
        if hasattr(alg, "creation_keys"):
            keys.extend(alg.creation_keys(d) if d > 0 else _all_keys(alg, d))
    with timed(rep):
        for label in mod.basis_upto(mod.cutoff):
            for x in keys:
                for y in keys:
                    if mod.degree(label) + alg.degree(x) + alg.degree(y) > mod.cutoff:
                        continue
                    xy = mod.act_vector(x, mod.act_key(y, label))
                    yx = mod.act_vector(y, mod.act_key(x, label))
                    lhs = _vadd(dict(xy), yx, -ONE)
                    br, central = alg.bracket(x, y)
                    rhs = {}
                    for z, c in br.items():
                        _vadd(rhs, mod.act_key(z, label), c)
                    if central:
                        _vadd(rhs, {label: ONE}, central)
                    rep.compared += 1
                    if lhs != rhs:
                        return rep.fail(basis=mod.label_text(label), keys=[alg.key_text(x), alg.key_text(y)])
    return rep


def _all_keys(alg, d):
    """Keys of degree d <= 0 (annihilation side), using the creation pattern."""
    if isinstance(alg, AffineModes):
        return [(-d, i) for i in range(alg.lie.dim) if (-d - alg.degrees[i]) % alg.T == 0]
    if isinstance(alg, HeisenbergModes):
        return [(-d, i) for i in range(len(alg.names))]
    if isinstance(alg, TorusModes):
        return [(-d, n, i) for n in range(-alg.J, alg.J + 1) for i in range(len(alg.A.names))]
    return []


def omega_averaging_check(T: int, r: int, window=((-8, 8), (-8, 8))) -> Report:
    """T x1^-1 delta((x2/x1)^T)(x2/x1)^r = sum_i omega^(-ri) x1^-1 delta(omega^i x2/x1)."""
    from .delta import delta_coefficients
    rep = Report("omega-averaging", {"T": T, "r": r}, {"x1,x2": window})
    with timed(rep):
        (lo1, hi1), (lo2, hi2) = window
        lhs = {}
        for a in range(lo1, hi1 + 1):
            # x1^a x2^b with a = -(r + nT) - 1, b = r + nT
            e = -a - 1
            if (e - r) % T == 0 and lo2 <= e <= hi2:
                lhs[(a, e)] = as_scalar(T)
        lhs = LaurentData(("x1", "x2"), lhs, window)
        rhs = LaurentData(("x1", "x2"), {}, window)
        for i in range(T):
            w = GroupElement(i, T)
            rhs = rhs + delta_coefficients(gvalue(w), 0, window).scale(gvalue(GroupElement(-r * i, T)))
        where, count = lhs.compare(rhs, window)
        rep.compared = count
        if where is not None:
            rep.fail(exponent=list(where))
    return rep


def relabel_isomorphism_check(fam: TwistedAffine, window: int = 3) -> Report:
    """a (x) t^n -> a (x) t^(n/T), Tk -> k intertwines the two bracket tables.

    In the fractional picture the bracket is [a(x)t^(m/T), b(x)t^(n/T)] =
    [a,b](x)t^((m+n)/T) + (m/T)<a,b> delta k, with k the canonical central
    element of the untwisted convention.
    """
    from fractions import Fraction
    rep = Report("relabel-isomorphism", {"T": fam.T}, {"modes": window})
    alg = fam.algebra
    T = fam.T
    keys = [(m, i) for m in range(-window * T, window * T + 1) for i in range(fam.lie.dim)
            if (m - fam.degrees[i]) % T == 0]
    k_frac = fam.level    # k acts by l in the fractional algebra, T k_sigma = k
    with timed(rep):
        for x in keys:
            for y in keys:
                br, central = alg.bracket(x, y)
                # image of the left side under the relabeling
                img = {(Fraction(k[0], T), k[1]): v for k, v in br.items()}
                (m, i), (n, j) = x, y
                want = {(Fraction(m + n, T), k): v for k, v in fam.lie.br(i, j).items()}
                want_c = ZERO
                if m + n == 0:
                    want_c = fam.lie.form(i, j) * as_scalar(Fraction(m, T)) * k_frac
                rep.compared += 1
                if img != want or central != want_c:
                    return rep.fail(keys=[alg.key_text(x), alg.key_text(y)])
    return rep


def star_algebra(window: int = 3):
    """Product and form tables of C*[t0^±1, t1^±1] on an exponent window.

    (t0^n t1^m)(t0^s t1^r) = delta_{n+m,r} t0^(n+s) t1^m and
    <t0^n t1^m, t0^s t1^r> = delta_{n+s,0} delta_{m+n,r}.
    """
    exps = [(n, m) for n in range(-window, window + 1) for m in range(-window, window + 1)]

    def mul(x, y):
        (n, m), (s, r) = x, y
        return (n + s, m) if n + m == r else None

    def form(x, y):
        (n, m), (s, r) = x, y
        return 1 if (n + s == 0 and m + n == r) else 0
    return exps, mul, form


def star_algebra_check(window: int = 3) -> Report:
    """Associativity, symmetry and invariance of the star algebra, brute force."""
    rep = Report("star-algebra", {}, {"exponents": [-window, window]})
    exps, mul, form = star_algebra(window)
    with timed(rep):
        for x in exps:
            for y in exps:
                rep.compared += 1
                if form(x, y) != form(y, x):
                    return rep.fail(rule="symmetric", pair=[x, y])
                xy = mul(x, y)
                for z in exps:
                    yz = mul(y, z)
                    left = mul(xy, z) if xy is not None else None
                    right = mul(x, yz) if yz is not None else None
                    if left != right:
                        return rep.fail(rule="associative", triple=[x, y, z])
                    lf = form(xy, z) if xy is not None else 0
                    rf = form(x, yz) if yz is not None else 0
                    if lf != rf:
                        return rep.fail(rule="invariant form", triple=[x, y, z])
    return rep
