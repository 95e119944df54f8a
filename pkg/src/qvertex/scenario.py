"""Scenario files: loading, validation and construction of the family under test."""

from __future__ import annotations

import random
import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .families import (QuantumHeisenberg, QuantumTorus, TwistedAffine, abelian, complex_numbers,
                       coordinate_permutation, group_algebra_z2, identity_automorphism, negation, sl2,
                       sl2_involution, sublattice_closed_form, sublattice_field, untwisted_affine)
from .fields import ZeroField
from .scalars import ONE, GroupElement, as_scalar, parse_group_element, parse_scalar, roots_of_unity

SUITES = ("delta-calculus", "compatibility", "yalpha", "jacobi", "quasi-module", "gamma-va", "minpoly",
          "family-closed-forms")
KINDS = ("affine", "twisted-affine", "sublattice", "quantum-heisenberg", "quantum-torus")


class ConfigError(Exception):
    """A scenario that cannot be run; ``field`` names the offending entry."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass
class Scenario:
    name: str
    kind: str
    family: dict
    checks: list
    seed: int = 0
    window: dict = field(default_factory=dict)
    closure: dict = field(default_factory=dict)
    gamma: dict = field(default_factory=dict)
    quasi_module: dict = field(default_factory=dict)
    perturb: dict = field(default_factory=dict)
    output: dict = field(default_factory=dict)
    path: str | None = None

    def scaled(self, k: int) -> "Scenario":
        """Windows multiplied by k (mode boxes and exponent boxes)."""
        if k < 1:
            raise ConfigError("--window-scale", "must be a positive integer")
        w = dict(self.window)
        for key in ("exponent", "modes"):
            w[key] = w[key] * k
        return Scenario(**{**self.__dict__, "window": w})


WINDOW_DEFAULTS = {"exponent": 8, "modes": 3, "degree": 2, "labels": 2, "pairs": 0, "triples": 0}


def _positive_int(d: dict, key: str, where: str, allow_zero=False):
    v = d[key]
    if not isinstance(v, int) or isinstance(v, bool) or v < 0 or (v == 0 and not allow_zero):
        raise ConfigError(f"{where}.{key}", f"must be a {'nonnegative' if allow_zero else 'positive'} integer, got {v!r}")
    return v


def load_scenario(path: str) -> Scenario:
    try:
        with open(path, "rb") as fh:
            raw = tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError("scenario", f"file not found: {path}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError("scenario", f"cannot parse {path}: {exc}") from None
    sc = parse_scenario(raw)
    sc.path = path
    return sc


def parse_scenario(raw: dict) -> Scenario:
    if "family" not in raw:
        raise ConfigError("family", "missing table")
    fam = dict(raw["family"])
    kind = fam.get("kind")
    if kind not in KINDS:
        raise ConfigError("family.kind", f"must be one of {', '.join(KINDS)}, got {kind!r}")
    if "cutoff" not in fam:
        raise ConfigError("family.cutoff", "missing")
    _positive_int(fam, "cutoff", "family")
    checks = raw.get("checks", list(SUITES))
    if not isinstance(checks, list) or not checks:
        raise ConfigError("checks", "must be a nonempty list")
    for c in checks:
        if c not in SUITES:
            raise ConfigError("checks", f"unknown suite {c!r}")
    window = raw.get("window", {})
    if not isinstance(window, dict):
        if not isinstance(window, int) or isinstance(window, bool) or window <= 0:
            raise ConfigError("window", f"must be a table or a positive integer, got {window!r}")
        window = {"modes": window}
    window = {**WINDOW_DEFAULTS, **window}
    for key in ("exponent", "modes", "degree", "labels"):
        _positive_int(window, key, "window")
    for key in ("pairs", "triples"):
        _positive_int(window, key, "window", allow_zero=True)
    closure = {"weight": 3, "depth": 2, "triples": 8, **raw.get("closure", {})}
    for key in ("weight", "depth", "triples"):
        _positive_int(closure, key, "closure")
    seed = raw.get("seed", 0)
    if not isinstance(seed, int):
        raise ConfigError("seed", "must be an integer")
    n = fam.get("cyclotomic", 1)
    if not isinstance(n, int) or n < 1:
        raise ConfigError("family.cyclotomic", "must be a positive integer")
    order = fam.get("order", 1) if kind == "twisted-affine" else fam.get("step", 1) if kind == "sublattice" else 1
    if not isinstance(order, int) or order < 1:
        raise ConfigError("family.order" if kind == "twisted-affine" else "family.step", "must be a positive integer")
    if n % order:
        raise ConfigError("family.cyclotomic", f"must be a multiple of {order}")
    try:
        as_scalar(parse_scalar(str(fam.get("level", "1")), n))
    except Exception as exc:
        raise ConfigError("family.level", f"cannot parse: {exc}") from None
    perturb = dict(raw.get("perturb", {}))
    if perturb.get("suite") is not None and perturb["suite"] not in SUITES:
        raise ConfigError("perturb.suite", f"unknown suite {perturb['suite']!r}")
    gamma = dict(raw.get("gamma", {}))
    for key in ("elements", "alphas"):
        for t in gamma.get(key, []):
            try:
                parse_group_element(str(t))
            except ValueError as exc:
                raise ConfigError(f"gamma.{key}", str(exc)) from None
    return Scenario(name=str(raw.get("name", kind)), kind=kind, family=fam, checks=list(checks), seed=seed,
                    window=window, closure=closure, gamma=gamma, quasi_module=dict(raw.get("quasi-module", {})),
                    perturb=perturb, output=dict(raw.get("output", {})))


# ------------------------------------------------------------ built families

@dataclass
class Generator:
    field: object
    desc: object


class Setup:
    """A built family with its generators, group, closed forms and expected products."""

    def __init__(self, sc: Scenario):
        self.scenario = sc
        self.rng = random.Random(sc.seed)
        f = sc.family
        self.level = parse_scalar(str(f.get("level", "1")), f.get("cyclotomic", 1))
        D = f["cutoff"]
        kind = sc.kind
        self.kind = kind
        if kind in ("affine", "twisted-affine", "sublattice"):
            lie = _lie(f)
            if kind == "twisted-affine":
                T = f.get("order", 2)
                self.fam = TwistedAffine(lie, _sigma(f, lie.dim), T, self.level, D)
            else:
                self.fam = untwisted_affine(lie, self.level, D)
            if kind == "sublattice":
                k = f.get("step", 2)
                self.k = k
                self.gens = [Generator(sublattice_field(self.fam, {i: ONE}, r, k), ({i: ONE}, r))
                             for r in range(k) for i in range(self.fam.lie.dim)]
                self.gamma = roots_of_unity(k)
            else:
                self.gens = [Generator(g, self.fam.coords(name)) for name, g in self.fam.generators.items()]
                self.gamma = list(self.fam.gamma)
        elif kind == "quantum-heisenberg":
            lo, hi = f.get("shifts", [-2, 2])
            self.fam = QuantumHeisenberg(f.get("dim", 1), self.level, D, range(lo, hi + 1), qrange=f.get("qrange", 6))
            self.gens = [Generator(self.fam.field(i, m), (i, m)) for i in range(f.get("dim", 1))
                         for m in range(lo, hi + 1)]
            self.gamma = list(self.fam.gamma)
        else:
            A = {"C": complex_numbers, "C[Z2]": group_algebra_z2}.get(f.get("algebra", "C"))
            if A is None:
                raise ConfigError("family.algebra", "must be C or C[Z2]")
            (nlo, nhi), (mlo, mhi) = f.get("exponents", [[-2, 2], [-2, 2]])
            self.fam = QuantumTorus(A(), self.level, D, ((nlo, nhi), (mlo, mhi)), t1_window=f.get("t1_window", 1),
                                    qrange=f.get("qrange", 8))
            dimA = len(self.fam.A.names)
            self.gens = [Generator(self.fam.field({i: ONE}, n, m), ({i: ONE}, n, m)) for i in range(dimA)
                         for n in range(nlo, nhi + 1) for m in range(mlo, mhi + 1)]
            self.gamma = list(self.fam.gamma)
        if sc.gamma.get("elements"):
            self.gamma = [parse_group_element(str(t)) for t in sc.gamma["elements"]]
        self.module = self.fam.module
        self.identity = self.fam.identity
        self.closure_triples = sc.closure["triples"]
        self._closure = None
        self._book = None

    @property
    def fields(self) -> list:
        return [g.field for g in self.gens]

    def labels(self, degree=None):
        d = self.scenario.window["labels"] if degree is None else degree
        return self.module.basis_upto(min(d, self.module.cutoff))

    def pairs(self, limit=None) -> list:
        """Generator pairs, all of them or an evenly spread sample of ``limit``."""
        out = [(a, b) for a in self.gens for b in self.gens]
        limit = self.scenario.window.get("pairs") if limit is None else limit
        if limit and limit < len(out):
            step = len(out) / limit
            out = [out[int(i * step)] for i in range(limit)]
        return out

    def closed_form(self, a: Generator, b: Generator):
        fam = self.fam
        if self.kind == "sublattice":
            return sublattice_closed_form(fam, a.desc[0], a.desc[1], b.desc[0], b.desc[1], self.k)
        if self.kind in ("affine", "twisted-affine"):
            return fam.closed_form(a.desc, b.desc)
        if self.kind == "quantum-heisenberg":
            return fam.closed_form(*a.desc, *b.desc)
        return fam.closed_form(*a.desc, *b.desc)

    def expected_products(self, a: Generator, b: Generator) -> dict:
        fam = self.fam
        if self.kind == "sublattice":
            (va, r), (vb, s) = a.desc, b.desc
            br = fam.lie.bracket(va, vb)
            g = fam.lie.pairing(va, vb)
            p0 = sublattice_field(fam, br, r + s, self.k) if br else ZeroField(self.module, 1)
            c = self.level * g * self.k if (r + s) % self.k == 0 else 0
            c = as_scalar(c)
            from .families import _scaled
            p1 = _scaled(c, self.identity) if c else ZeroField(self.module, 0)
            return {0: p0, 1: p1}
        if self.kind in ("affine", "twisted-affine"):
            return fam.expected_products(a.desc, b.desc)
        return fam.expected_products(*a.desc, *b.desc)

    def expected_roots(self, a: Generator, b: Generator) -> dict:
        """Root -> multiplicity of the least witness, read from the closed form."""
        out = {}
        for alpha, j, _, fld in self.closed_form(a, b).terms:
            if fld is not None:
                out[alpha] = max(out.get(alpha, 0), j + 1)
        return out

    @property
    def book(self):
        if self._book is None:
            from .verifier import WitnessBook
            self._book = WitnessBook(self.gamma, labels=None)
        return self._book

    def closure(self):
        if self._closure is None:
            from .verifier import generate_closure
            c = self.scenario.closure
            self._closure = generate_closure(self.fields, self.gamma, c["weight"], c["depth"], self.book,
                                             self.scenario.window["degree"])
        return self._closure


def _lie(f: dict):
    name = f.get("lie", "sl2")
    if name == "sl2":
        return sl2()
    if name == "abelian":
        dim = f.get("dim", 1)
        if not isinstance(dim, int) or not 1 <= dim <= 3:
            raise ConfigError("family.dim", "abelian dimension must be 1, 2 or 3")
        return abelian(dim)
    raise ConfigError("family.lie", f"must be sl2 or abelian, got {name!r}")


def _sigma(f: dict, dim: int):
    s = f.get("sigma", "involution" if f.get("lie", "sl2") == "sl2" else "negation")
    if isinstance(s, list):
        if sorted(s) != list(range(dim)):
            raise ConfigError("family.sigma", "a permutation of the coordinates is required")
        return coordinate_permutation(s)
    if s == "involution":
        if f.get("lie", "sl2") != "sl2":
            raise ConfigError("family.sigma", "the involution is defined for sl2 only")
        return sl2_involution()
    if s == "negation":
        return negation(dim)
    if s == "identity":
        return identity_automorphism(dim)
    raise ConfigError("family.sigma", f"unknown automorphism {s!r}")


def group_elements(texts) -> list:
    return [parse_group_element(str(t)) for t in texts]


def default_alphas() -> list:
    return [GroupElement(), GroupElement(1, 2), GroupElement(1, 3), GroupElement(1, 4)]
