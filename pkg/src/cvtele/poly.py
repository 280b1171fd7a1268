"""Sparse multivariate polynomials with complex coefficients.

A polynomial is a map from exponent tuples to coefficients. Characteristic
functions use the variable order ``(a1, a1*, a2, a2*, ...)``; the moment
engine uses real coordinates ``(x1, y1, x2, y2, ...)``.
"""

from __future__ import annotations

from typing import Mapping, Sequence

import numpy as np

_ZERO = 1e-300


class Poly:
    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple, complex] | None = None):
        self.nvars = nvars
        self.terms: dict[tuple, complex] = {}
        if terms:
            for exps, c in terms.items():
                exps = tuple(int(e) for e in exps)
                if len(exps) != nvars:
                    raise ValueError(f"exponent {exps} does not have {nvars} entries")
                c = complex(c)
                if abs(c) > _ZERO:
                    self.terms[exps] = self.terms.get(exps, 0) + c

    @classmethod
    def const(cls, nvars, c=1.0):
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars, i, c=1.0):
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): c})

    @classmethod
    def linear(cls, coeffs: Sequence[complex]):
        n = len(coeffs)
        return cls(n, {tuple(1 if j == i else 0 for j in range(n)): c
                       for i, c in enumerate(coeffs) if c != 0})

    def copy(self):
        out = Poly(self.nvars)
        out.terms = dict(self.terms)
        return out

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __repr__(self):
        return f"Poly({self.nvars}, {self.terms!r})"

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.nvars != self.nvars:
                raise ValueError("polynomials over different variable sets")
            return other
        return Poly.const(self.nvars, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = self.copy()
        for e, c in other.terms.items():
            out.terms[e] = out.terms.get(e, 0) + c
        return out.pruned()

    __radd__ = __add__

    def __neg__(self):
        return self * -1.0

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            c = complex(other)
            out = Poly(self.nvars)
            out.terms = {e: v * c for e, v in self.terms.items()}
            return out.pruned()
        other = self._coerce(other)
        acc: dict[tuple, complex] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = acc.get(e, 0) + c1 * c2
        out = Poly(self.nvars)
        out.terms = acc
        return out.pruned()

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = Poly.const(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def pruned(self, tol=_ZERO):
        self.terms = {e: c for e, c in self.terms.items() if abs(c) > tol}
        return self

    def conj_coeffs(self):
        out = Poly(self.nvars)
        out.terms = {e: c.conjugate() for e, c in self.terms.items()}
        return out

    def substitute(self, forms: Sequence["Poly"]) -> "Poly":
        """Replace variable ``i`` by the polynomial ``forms[i]``."""
        if len(forms) != self.nvars:
            raise ValueError("need one substitution per variable")
        nv = forms[0].nvars
        powers: list[list[Poly]] = [[Poly.const(nv)] for _ in forms]
        out = Poly(nv)
        for exps, c in self.terms.items():
            term = Poly.const(nv, c)
            for i, k in enumerate(exps):
                while len(powers[i]) <= k:
                    powers[i].append(powers[i][-1] * forms[i])
                if k:
                    term = term * powers[i][k]
            out = out + term
        return out

    def scale_variables(self, factors: Sequence[complex]) -> "Poly":
        """Substitute ``v_i -> factors[i] * v_i``."""
        out = Poly(self.nvars)
        for e, c in self.terms.items():
            f = c
            for fi, k in zip(factors, e):
                if k:
                    f *= fi ** k
            out.terms[e] = f
        return out.pruned()

    def evaluate(self, values: Sequence) -> np.ndarray | complex:
        """Evaluate with ``values[i]`` (scalars or broadcastable arrays) per variable."""
        if len(values) != self.nvars:
            raise ValueError("need one value per variable")
        values = [np.asarray(v, dtype=complex) for v in values]
        shape = np.broadcast(*values).shape if values else ()
        total = np.zeros(shape, dtype=complex)
        cache: dict[tuple[int, int], np.ndarray] = {}
        for exps, c in self.terms.items():
            term = np.full(shape, c, dtype=complex)
            for i, k in enumerate(exps):
                if k:
                    key = (i, k)
                    if key not in cache:
                        cache[key] = values[i] ** k
                    term = term * cache[key]
            total = total + term
        return total if shape else complex(total)
