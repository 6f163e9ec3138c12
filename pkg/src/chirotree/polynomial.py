"""Sparse multivariate polynomials with exact integer coefficients."""
from __future__ import annotations

from typing import Iterable, Mapping

from .errors import DivisionRemainder, VariableMismatch


class Poly:
    """Map from exponent tuples to nonzero Python ints over named variables."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Iterable[str], terms: Mapping[tuple, int] = None):
        self.vars = tuple(variables)
        clean = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(e) for e in exp)
            if len(exp) != len(self.vars):
                raise VariableMismatch(f"exponent {exp} does not match variables {self.vars}")
            if any(e < 0 for e in exp):
                raise ValueError(f"negative exponent in {exp}")
            c = int(c)
            if c:
                clean[exp] = clean.get(exp, 0) + c
                if not clean[exp]:
                    del clean[exp]
        self.terms = clean

    # -- constructors --------------------------------------------------------
    @classmethod
    def zero(cls, variables=()):
        return cls(variables)

    @classmethod
    def const(cls, c, variables=()):
        return cls(variables, {(0,) * len(tuple(variables)): c})

    @classmethod
    def var(cls, name, variables=None):
        variables = tuple(variables) if variables is not None else (name,)
        exp = tuple(1 if v == name else 0 for v in variables)
        return cls(variables, {exp: 1})

    @classmethod
    def univariate(cls, name, coeffs: Mapping[int, int]):
        """``coeffs`` maps degree to coefficient."""
        return cls((name,), {(d,): c for d, c in coeffs.items()})

    # -- basic ops -------------------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Poly):
            other = Poly.const(other, self.vars)
        if other.vars != self.vars:
            raise VariableMismatch(f"variables {self.vars} != {other.vars}")
        return other

    def __add__(self, other):
        other = self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Poly(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return Poly(self.vars, {e: c * other for e, c in self.terms.items()})
        other = self._check(other)
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Poly(self.vars, out)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = Poly.const(1, self.vars)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = Poly.const(other, self.vars)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    # -- queries -------------------------------------------------------------
    def coeff(self, exp) -> int:
        return self.terms.get(tuple(exp), 0)

    def evaluate(self, values=None) -> int:
        """Value at ``values`` (name -> number); missing variables default to 1."""
        values = values or {}
        vals = [values.get(v, 1) for v in self.vars]
        total = 0
        for e, c in self.terms.items():
            t = c
            for x, k in zip(vals, e):
                t *= x ** k
            total += t
        return total

    def degree(self, name=None) -> int:
        if not self.terms:
            return -1
        if name is None:
            return max(sum(e) for e in self.terms)
        i = self.vars.index(name)
        return max(e[i] for e in self.terms)

    def min_degree(self, name) -> int:
        i = self.vars.index(name)
        return min(e[i] for e in self.terms) if self.terms else -1

    def with_vars(self, variables) -> "Poly":
        """Re-express over ``variables`` (a superset, or dropping unused ones)."""
        variables = tuple(variables)
        idx = []
        for v in self.vars:
            if v not in variables:
                if any(e[self.vars.index(v)] for e in self.terms):
                    raise VariableMismatch(f"variable {v!r} is used and cannot be dropped")
                idx.append(None)
            else:
                idx.append(variables.index(v))
        out = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for k, j in zip(e, idx):
                if j is not None:
                    ne[j] = k
            out[tuple(ne)] = c
        return Poly(variables, out)

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        return Poly(tuple(mapping.get(v, v) for v in self.vars), self.terms)

    def derivative(self, name) -> "Poly":
        i = self.vars.index(name)
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                ne = list(e)
                ne[i] -= 1
                out[tuple(ne)] = c * e[i]
        return Poly(self.vars, out)

    def coeffs(self):
        """Univariate coefficient list, lowest degree first."""
        if len(self.vars) != 1:
            raise VariableMismatch("coeffs() needs a univariate polynomial")
        d = self.degree()
        return [self.terms.get((k,), 0) for k in range(d + 1)]

    def divmod(self, divisor: "Poly"):
        """Univariate long division with exact integer quotient."""
        divisor = self._check(divisor)
        if len(self.vars) != 1:
            raise VariableMismatch("division is univariate only")
        num = self.coeffs()
        den = divisor.coeffs()
        if not den:
            raise ZeroDivisionError("division by the zero polynomial")
        lead = den[-1]
        q = [0] * max(len(num) - len(den) + 1, 0)
        for k in range(len(q) - 1, -1, -1):
            top = num[k + len(den) - 1]
            if top % lead:
                raise DivisionRemainder(f"non-integral quotient coefficient {top}/{lead}")
            c = top // lead
            q[k] = c
            for j, dj in enumerate(den):
                num[k + j] -= c * dj
        quot = Poly(self.vars, {(k,): c for k, c in enumerate(q)})
        rem = Poly(self.vars, {(k,): c for k, c in enumerate(num)})
        return quot, rem

    def exact_div(self, divisor: "Poly") -> "Poly":
        quot, rem = self.divmod(divisor)
        if rem:
            raise DivisionRemainder(f"nonzero remainder {rem}")
        return quot

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), e)):
            c = self.terms[e]
            mono = "*".join(f"{v}^{k}" if k > 1 else v for v, k in zip(self.vars, e) if k)
            if not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"Poly({self.vars!r}, {self.terms!r})"
