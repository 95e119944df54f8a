"""Univariate and bivariate polynomials with Scalar coefficients."""

from __future__ import annotations

from math import comb

from .scalars import ONE, ZERO, Scalar, as_scalar


class Poly:
    """Univariate polynomial, coefficients listed from the constant term up."""

    __slots__ = ("c",)

    def __init__(self, coeffs=()):
        c = [as_scalar(x) for x in coeffs]
        while c and not c[-1]:
            c.pop()
        self.c = tuple(c)

    @staticmethod
    def linear_root(alpha) -> "Poly":
        """x - alpha."""
        return Poly([-as_scalar(alpha), ONE])

    @staticmethod
    def from_roots(roots: dict) -> "Poly":
        """Product of (x - a)^k over a mapping a -> k."""
        p = Poly([ONE])
        for a, k in roots.items():
            p = p * Poly.linear_root(a) ** k
        return p

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return not self.c

    def __bool__(self):
        return bool(self.c)

    def lead(self) -> Scalar:
        return self.c[-1]

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self.c), len(other.c))
        return Poly([(self.c[i] if i < len(self.c) else ZERO) + (other.c[i] if i < len(other.c) else ZERO)
                     for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly([-x for x in self.c])

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.c or not other.c:
            return Poly()
        out = [ZERO] * (len(self.c) + len(other.c) - 1)
        for i, x in enumerate(self.c):
            if x:
                for j, y in enumerate(other.c):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly([ONE])
        for _ in range(k):
            out = out * self
        return out

    def divmod(self, other: "Poly"):
        if not other.c:
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self.c)
        inv = other.lead().inverse()
        dq = len(r) - len(other.c)
        if dq < 0:
            return Poly(), self
        q = [ZERO] * (dq + 1)
        for k in range(dq, -1, -1):
            t = r[k + len(other.c) - 1] * inv
            q[k] = t
            if t:
                for j, y in enumerate(other.c):
                    r[k + j] = r[k + j] - t * y
        return Poly(q), Poly(r[:len(other.c) - 1])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def monic(self) -> "Poly":
        inv = self.lead().inverse()
        return Poly([x * inv for x in self.c])

    def __call__(self, x):
        acc = ZERO
        for coef in reversed(self.c):
            acc = acc * x + coef
        return acc

    def derivative(self) -> "Poly":
        return Poly([self.c[i] * i for i in range(1, len(self.c))])

    def __eq__(self, other):
        other = _as_poly(other)
        return self.c == other.c

    def __hash__(self):
        return hash(self.c)

    def __repr__(self):
        return f"Poly({self.to_text()})"

    def to_text(self, var: str = "x") -> str:
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            x = self.c[i]
            if not x:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            coef = x.to_text()
            if mono and coef == "1":
                terms.append(mono)
            elif mono and coef == "-1":
                terms.append("-" + mono)
            elif mono:
                terms.append(f"({coef})*{mono}" if any(ch in coef[1:] for ch in "+-/") else f"{coef}*{mono}")
            else:
                terms.append(coef)
        return " + ".join(terms).replace("+ -", "- ")

    def multiplicity(self, root) -> int:
        """Order of vanishing at ``root``."""
        root = as_scalar(root)
        c, k = list(self.c), 0
        while c:
            # synthetic division by (x - root)
            q = [ZERO] * (len(c) - 1)
            acc = ZERO
            for i in range(len(c) - 1, 0, -1):
                acc = acc * root + c[i]
                q[i - 1] = acc
            if acc * root + c[0]:
                break
            c, k = q, k + 1
        return k


def _as_poly(x) -> Poly:
    if isinstance(x, Poly):
        return x
    return Poly([as_scalar(x)])


def poly_extended_gcd(f: Poly, g: Poly):
    """Return (d, u, v) with u*f + v*g = d and d monic."""
    if not f.c and not g.c:
        raise ValueError("poly_extended_gcd needs a nonzero input")
    r0, r1 = f, g
    s0, s1 = Poly([ONE]), Poly()
    t0, t1 = Poly(), Poly([ONE])
    while r1.c:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = r0.lead().inverse()
    return r0 * inv, s0 * inv, t0 * inv


def bezout_partition(factors: list) -> list:
    """Polynomials q_i with sum_i q_i * prod_{j != i} factors[j] = 1.

    The factors must be pairwise coprime.  Built by iterating the extended
    gcd: at step k the running identity for the first k factors is extended
    by one more.
    """
    if not factors:
        return []
    qs = [Poly([ONE])]
    acc = factors[0]
    for p in factors[1:]:
        # 1 = sum q_i prod_{j<k, j!=i} + ... ; combine with gcd(acc, p) = 1
        d, u, v = poly_extended_gcd(acc, p)
        if d.degree != 0:
            raise ValueError("factors are not coprime")
        # 1 = u*acc + v*p ; acc-part multiplies the new factor p
        qs = [qi * v for qi in qs] + [u]
        acc = acc * p
    # reduce degrees: q_i modulo factors[i]
    return [qi % fi for qi, fi in zip(qs, factors)]


class BiPoly:
    """Polynomial in (x1, x2): mapping (i, j) -> Scalar for x1^i x2^j."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        t = {}
        for k, v in (terms or {}).items():
            v = as_scalar(v)
            if v:
                t[(int(k[0]), int(k[1]))] = v
        self.terms = t

    @staticmethod
    def one() -> "BiPoly":
        return BiPoly({(0, 0): ONE})

    @staticmethod
    def linear(alpha) -> "BiPoly":
        """x1 - alpha * x2."""
        return BiPoly({(1, 0): ONE, (0, 1): -as_scalar(alpha)})

    @staticmethod
    def from_factors(factors) -> "BiPoly":
        """Product of (x1 - alpha x2)^k for (alpha, k) pairs."""
        f = BiPoly.one()
        for alpha, k in factors:
            for _ in range(k):
                f = f * BiPoly.linear(alpha)
        return f

    def __mul__(self, other):
        if not isinstance(other, BiPoly):
            s = as_scalar(other)
            return BiPoly({k: v * s for k, v in self.terms.items()})
        out = {}
        for (i1, j1), a in self.terms.items():
            for (i2, j2), b in other.terms.items():
                key = (i1 + i2, j1 + j2)
                out[key] = out.get(key, ZERO) + a * b
        return BiPoly(out)

    __rmul__ = __mul__

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, ZERO) + v
        return BiPoly(out)

    def __sub__(self, other):
        return self + other * as_scalar(-1)

    def __pow__(self, k: int):
        out = BiPoly.one()
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, BiPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((i + j for i, j in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({i + j for i, j in self.terms}) <= 1

    def homogeneous_parts(self) -> dict:
        out = {}
        for (i, j), v in self.terms.items():
            out.setdefault(i + j, {})[(i, j)] = v
        return {d: BiPoly(t) for d, t in out.items()}

    def dehomogenize(self) -> Poly:
        """For homogeneous f of degree d, the polynomial p with f = x2^d p(x1/x2)."""
        if not self.terms:
            return Poly()
        coeffs = {}
        for (i, j), v in self.terms.items():
            coeffs[i] = v
        top = max(coeffs)
        return Poly([coeffs.get(i, ZERO) for i in range(top + 1)])

    @staticmethod
    def homogenize(p: Poly) -> "BiPoly":
        d = p.degree
        return BiPoly({(i, d - i): c for i, c in enumerate(p.c) if c})

    def shifted(self, alpha) -> Poly:
        """Coefficients c_k of f(x0 + alpha*x, x) = sum_k c_k x0^k x^(N-k), homogeneous f of degree N."""
        alpha = as_scalar(alpha)
        n = self.degree()
        out = [ZERO] * (n + 1)
        for (i, j), v in self.terms.items():
            apow = ONE
            # (x0 + alpha x)^i = sum_k C(i,k) x0^k alpha^(i-k) x^(i-k)
            for k in range(i, -1, -1):
                out[k] = out[k] + v * comb(i, k) * apow
                apow = apow * alpha
        return Poly(out)

    def scaled(self, c1=ONE, c2=ONE) -> "BiPoly":
        """f(c1*x1, c2*x2)."""
        c1, c2 = as_scalar(c1), as_scalar(c2)
        return BiPoly({(i, j): v * c1 ** i * c2 ** j for (i, j), v in self.terms.items()})

    def swapped(self) -> "BiPoly":
        """f(x2, x1)."""
        return BiPoly({(j, i): v for (i, j), v in self.terms.items()})

    def lowest_part(self) -> "BiPoly":
        parts = self.homogeneous_parts()
        return parts[min(parts)] if parts else BiPoly()

    def diagonal_order(self, gamma) -> int:
        """Order of vanishing along x1 = gamma * x2 (homogeneous f)."""
        return self.dehomogenize().multiplicity(gamma)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (i, j) in sorted(self.terms, reverse=True):
            v = self.terms[(i, j)]
            mono = "*".join(m for m in (
                "" if i == 0 else ("x1" if i == 1 else f"x1^{i}"),
                "" if j == 0 else ("x2" if j == 1 else f"x2^{j}")) if m)
            coef = v.to_text()
            if mono:
                if coef == "1":
                    parts.append(mono)
                elif coef == "-1":
                    parts.append("-" + mono)
                else:
                    parts.append(f"({coef})*{mono}")
            else:
                parts.append(coef)
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"BiPoly({self.to_text()})"
