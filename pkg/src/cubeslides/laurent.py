"""Multivariate Laurent polynomials with exact integer coefficients."""

from __future__ import annotations

from collections import defaultdict


class Laurent:
    """Sparse Laurent polynomial: a map from exponent tuples to integers.

    All terms share the same number of variables. Zero coefficients are
    never stored, so equality is plain dict equality.
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], int] = {}
        if terms:
            for exp, c in dict(terms).items():
                exp = tuple(exp)
                if len(exp) != nvars:
                    raise ValueError(f"exponent {exp} has wrong length for {nvars} variables")
                if c:
                    self.terms[exp] = self.terms.get(exp, 0) + c
            self.terms = {k: v for k, v in self.terms.items() if v}

    @classmethod
    def one(cls, nvars: int) -> Laurent:
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, exp, coeff: int = 1) -> Laurent:
        exp = tuple(exp)
        return cls(len(exp), {exp: coeff})

    @classmethod
    def variable(cls, nvars: int, index: int, power: int = 1) -> Laurent:
        exp = [0] * nvars
        exp[index] = power
        return cls.monomial(exp)

    def _check(self, other: Laurent) -> None:
        if other.nvars != self.nvars:
            raise ValueError("variable count mismatch")

    def __add__(self, other: Laurent) -> Laurent:
        self._check(other)
        out = defaultdict(int, self.terms)
        for exp, c in other.terms.items():
            out[exp] += c
        return Laurent(self.nvars, out)

    def __neg__(self) -> Laurent:
        return Laurent(self.nvars, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: Laurent) -> Laurent:
        return self + (-other)

    def __mul__(self, other: Laurent) -> Laurent:
        self._check(other)
        out: dict[tuple[int, ...], int] = defaultdict(int)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out[tuple(a + b for a, b in zip(e1, e2))] += c1 * c2
        return Laurent(self.nvars, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Laurent):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def __len__(self) -> int:
        return len(self.terms)

    def coefficient(self, exp) -> int:
        return self.terms.get(tuple(exp), 0)

    def evaluate_at_ones(self) -> int:
        return sum(self.terms.values())

    def __repr__(self) -> str:
        if not self.terms:
            return "Laurent(0)"
        parts = [f"{c}*{list(e)}" for e, c in sorted(self.terms.items())]
        return "Laurent(" + " + ".join(parts) + ")"
