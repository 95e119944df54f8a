"""Truncated graded modules.

Vectors are plain dicts mapping basis labels to Scalars.  Induced modules use
PBW monomials (sorted tuples of creation-mode keys) as labels; the action of
any mode key on any monomial is computed exactly by commuting it to the right.
"""

from __future__ import annotations

from .scalars import ONE, ZERO


# ------------------------------------------------------------ vector helpers

def vadd(acc: dict, vec: dict, c=ONE) -> dict:
    """acc += c * vec, in place; returns acc."""
    if c is ONE:
        for k, v in vec.items():
            s = acc.get(k)
            s = v if s is None else s + v
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
    else:
        for k, v in vec.items():
            s = acc.get(k)
            t = v * c
            s = t if s is None else s + t
            if s:
                acc[k] = s
            else:
                acc.pop(k, None)
    return acc


def vscale(vec: dict, c) -> dict:
    if not c:
        return {}
    return {k: v * c for k, v in vec.items()}


def vsub(a: dict, b: dict) -> dict:
    return vadd(dict(a), b, -ONE)


class GradedModule:
    """A graded vector space W = sum_{d <= D} W_d with hashable basis labels."""

    def __init__(self, cutoff: int, name: str = "W"):
        if cutoff < 0:
            raise ValueError("cutoff must be nonnegative")
        self.cutoff = cutoff
        self.name = name
        self._basis = {}

    def degree(self, label) -> int:
        raise NotImplementedError

    def _enumerate(self, d: int) -> list:
        raise NotImplementedError

    def basis(self, d: int) -> list:
        """Basis labels of W_d in canonical order."""
        if d < 0 or d > self.cutoff:
            return []
        if d not in self._basis:
            self._basis[d] = self._enumerate(d)
        return self._basis[d]

    def basis_upto(self, d: int) -> list:
        out = []
        for k in range(0, min(d, self.cutoff) + 1):
            out.extend(self.basis(k))
        return out

    def dimension(self, d: int | None = None) -> int:
        if d is None:
            return sum(len(self.basis(k)) for k in range(self.cutoff + 1))
        return len(self.basis(d))

    def label_text(self, label) -> str:
        return str(label)

    def vacuum(self):
        raise NotImplementedError

    def vector_text(self, vec: dict) -> dict:
        return {self.label_text(k): v.to_text() for k, v in sorted(vec.items(), key=lambda kv: self.sort_label(kv[0]))}

    def sort_label(self, label):
        return (self.degree(label), str(label))


class ModeAlgebra:
    """Interface for the Lie algebra of mode operators behind an induced module.

    Keys are hashable; ``degree(key)`` is the amount by which the key raises
    the module grading (positive for creation operators).  Keys of degree
    <= 0 annihilate the vacuum; central elements act by scalars folded into
    ``bracket``'s second return value.
    """

    def bracket(self, k1, k2):
        raise NotImplementedError

    def degree(self, key) -> int:
        raise NotImplementedError

    def sort_key(self, key):
        return key

    def creation_keys(self, degree: int) -> list:
        raise NotImplementedError

    def key_text(self, key) -> str:
        return str(key)


class InducedModule(GradedModule):
    """PBW-truncated induced module of a mode algebra, central elements by scalars."""

    def __init__(self, algebra: ModeAlgebra, cutoff: int, name: str = "W"):
        super().__init__(cutoff, name)
        self.alg = algebra
        self._act = {}
        self._deg = {}

    def vacuum(self):
        return ()

    def degree(self, label) -> int:
        d = self._deg.get(label)
        if d is None:
            d = sum(self.alg.degree(k) for k in label)
            self._deg[label] = d
        return d

    def _enumerate(self, d: int) -> list:
        # partitions of d into creation keys, kept sorted by sort_key
        keys_by_deg = {k: sorted(self.alg.creation_keys(k), key=self.alg.sort_key) for k in range(1, d + 1)}
        allkeys = sorted((key for ks in keys_by_deg.values() for key in ks), key=self.alg.sort_key)
        out = []

        def rec(start, remaining, acc):
            if remaining == 0:
                out.append(tuple(acc))
                return
            for idx in range(start, len(allkeys)):
                key = allkeys[idx]
                kd = self.alg.degree(key)
                if kd <= remaining:
                    acc.append(key)
                    rec(idx, remaining - kd, acc)
                    acc.pop()
        rec(0, d, [])
        return sorted(out, key=lambda m: [self.alg.sort_key(k) for k in m])

    def label_text(self, label) -> str:
        if not label:
            return "|0>"
        return "".join(self.alg.key_text(k) for k in label) + "|0>"

    def sort_label(self, label):
        return (self.degree(label), [self.alg.sort_key(k) for k in label])

    def act_key(self, key, mono) -> dict:
        """The exact vector key . mono (no truncation)."""
        memo = self._act.get((key, mono))
        if memo is not None:
            return memo
        alg = self.alg
        kd = alg.degree(key)
        total = self.degree(mono) + kd
        if total < 0:
            out = {}
        elif not mono:
            out = {} if kd <= 0 else {(key,): ONE}
        else:
            g1 = mono[0]
            if kd > 0 and alg.sort_key(key) <= alg.sort_key(g1):
                out = {(key,) + mono: ONE}
            else:
                rest = mono[1:]
                out = {}
                inner = self.act_key(key, rest)
                for m2, c in inner.items():
                    vadd(out, self.act_key(g1, m2), c)
                br, central = alg.bracket(key, g1)
                for z, c in br.items():
                    vadd(out, self.act_key(z, rest), c)
                if central:
                    vadd(out, {rest: ONE}, central)
        self._act[(key, mono)] = out
        return out

    def act_vector(self, key, vec: dict) -> dict:
        out = {}
        for m, c in vec.items():
            vadd(out, self.act_key(key, m), c)
        return out
