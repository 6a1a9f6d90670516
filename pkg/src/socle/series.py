"""Truncated multivariate power series over exact rationals.

A series carries a precision K and stores exactly the terms of total degree
< K.  Binary operations use the min rule on precision, so arithmetic never
invents information: ``integrate`` raises precision by one (every produced
term is determined), ``differentiate`` lowers it by one (the top slice of the
derivative would need unknown terms).
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Dict, Mapping

from .errors import DimensionMismatch, DomainError, NonUnitError
from .poly import Exponent, MultiPoly, _coerce, default_names

#: valuation reported for the (truncation-)zero series
INFINITY = math.inf


class TruncatedSeries:
    """Finitely many exact terms plus a stated precision."""

    __slots__ = ("n_vars", "precision", "terms")

    def __init__(self, n_vars: int, precision: int, terms: Mapping[Exponent, Fraction] | None = None):
        if precision < 1:
            raise DomainError("precision must be at least 1")
        clean: Dict[Exponent, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(exp)
            if len(exp) != n_vars or any(e < 0 for e in exp):
                raise DomainError(f"bad exponent {exp} for {n_vars} variables")
            if sum(exp) >= precision:
                continue
            c = _coerce(c)
            if c:
                clean[exp] = c
        self.n_vars = n_vars
        self.precision = precision
        self.terms = clean

    # ---------------------------------------------------------------- builders

    @classmethod
    def from_poly(cls, p: MultiPoly, precision: int) -> "TruncatedSeries":
        return cls(p.n_vars, precision, p.terms)

    @classmethod
    def zero(cls, n_vars: int, precision: int) -> "TruncatedSeries":
        return cls(n_vars, precision, {})

    @classmethod
    def constant(cls, n_vars: int, c, precision: int) -> "TruncatedSeries":
        return cls(n_vars, precision, {(0,) * n_vars: _coerce(c)})

    @classmethod
    def one(cls, n_vars: int, precision: int) -> "TruncatedSeries":
        return cls.constant(n_vars, 1, precision)

    def poly_part(self) -> MultiPoly:
        """The stored terms as an exact polynomial."""
        return MultiPoly(self.n_vars, self.terms)

    # ------------------------------------------------------------- arithmetic

    def _check(self, other: "TruncatedSeries") -> None:
        if self.n_vars != other.n_vars:
            raise DimensionMismatch(
                f"mixed variable counts: {self.n_vars} vs {other.n_vars}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(self.n_vars, other, self.precision)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        prec = min(self.precision, other.precision)
        terms = dict(self.terms)
        for exp, c in other.terms.items():
            s = terms.get(exp, Fraction(0)) + c
            if s:
                terms[exp] = s
            else:
                terms.pop(exp, None)
        return TruncatedSeries(self.n_vars, prec, terms)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries(self.n_vars, self.precision, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(self.n_vars, other, self.precision)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            return TruncatedSeries(self.n_vars, self.precision, {e: c * v for e, v in self.terms.items()})
        if isinstance(other, MultiPoly):
            other = TruncatedSeries.from_poly(other, self.precision)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check(other)
        prec = min(self.precision, other.precision)
        out: Dict[Exponent, Fraction] = {}
        for e1, c1 in self.terms.items():
            d1 = sum(e1)
            for e2, c2 in other.terms.items():
                if d1 + sum(e2) >= prec:
                    continue
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return TruncatedSeries(self.n_vars, prec, out)

    __rmul__ = __mul__

    # --------------------------------------------------------- series-specific

    def constant_coefficient(self) -> Fraction:
        return self.terms.get((0,) * self.n_vars, Fraction(0))

    def is_unit(self) -> bool:
        return bool(self.constant_coefficient())

    def valuation(self):
        """Least total degree of a stored term; INFINITY when none remain."""
        if not self.terms:
            return INFINITY
        return min(sum(e) for e in self.terms)

    def _graded_slices(self) -> Dict[int, Dict[Exponent, Fraction]]:
        slices: Dict[int, Dict[Exponent, Fraction]] = {}
        for exp, c in self.terms.items():
            slices.setdefault(sum(exp), {})[exp] = c
        return slices

    def invert(self) -> "TruncatedSeries":
        """Multiplicative inverse at the same precision.

        Solved degree by degree against the graded slices of self; requires a
        unit constant term.
        """
        a0 = self.constant_coefficient()
        if not a0:
            raise NonUnitError("series has zero constant term")
        K = self.precision
        a = self._graded_slices()
        inv_a0 = 1 / a0
        b: Dict[int, Dict[Exponent, Fraction]] = {0: {(0,) * self.n_vars: inv_a0}}
        for d in range(1, K):
            acc: Dict[Exponent, Fraction] = {}
            for e_deg, a_slice in a.items():
                if e_deg == 0 or e_deg > d:
                    continue
                b_slice = b.get(d - e_deg)
                if not b_slice:
                    continue
                for e1, c1 in a_slice.items():
                    for e2, c2 in b_slice.items():
                        e = tuple(p + q for p, q in zip(e1, e2))
                        s = acc.get(e, Fraction(0)) + c1 * c2
                        if s:
                            acc[e] = s
                        else:
                            acc.pop(e, None)
            if acc:
                b[d] = {e: -inv_a0 * c for e, c in acc.items()}
        terms: Dict[Exponent, Fraction] = {}
        for slice_ in b.values():
            terms.update(slice_)
        return TruncatedSeries(self.n_vars, K, terms)

    def exp(self) -> "TruncatedSeries":
        """exp of a series with zero constant term, at the same precision."""
        if self.constant_coefficient():
            raise DomainError("exp needs a zero constant term")
        K = self.precision
        result = TruncatedSeries.one(self.n_vars, K)
        power = TruncatedSeries.one(self.n_vars, K)
        fact = 1
        for k in range(1, K):
            power = power * self
            if not power.terms:
                break
            fact *= k
            result = result + power * Fraction(1, fact)
        return result

    def integrate(self, i: int) -> "TruncatedSeries":
        """Antiderivative in variable i with zero constant; precision K+1."""
        if not 0 <= i < self.n_vars:
            raise DimensionMismatch(f"variable index {i} out of range")
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            e = list(exp)
            e[i] += 1
            out[tuple(e)] = c / e[i]
        return TruncatedSeries(self.n_vars, self.precision + 1, out)

    def differentiate(self, i: int) -> "TruncatedSeries":
        """Partial derivative in variable i; precision drops to K-1."""
        if not 0 <= i < self.n_vars:
            raise DimensionMismatch(f"variable index {i} out of range")
        if self.precision < 2:
            raise DomainError("cannot differentiate below precision 1")
        out: Dict[Exponent, Fraction] = {}
        for exp, c in self.terms.items():
            if exp[i]:
                e = list(exp)
                e[i] -= 1
                out[tuple(e)] = c * exp[i]
        return TruncatedSeries(self.n_vars, self.precision - 1, out)

    # ------------------------------------------------------------- inspection

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = TruncatedSeries.constant(self.n_vars, other, self.precision)
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.n_vars == other.n_vars
            and self.precision == other.precision
            and self.terms == other.terms
        )

    __hash__ = None

    def agrees_with(self, other: "TruncatedSeries", through_degree: int | None = None) -> bool:
        """Equality of terms below a degree bound (default: the shared precision)."""
        self._check(other)
        bound = min(self.precision, other.precision)
        if through_degree is not None:
            bound = min(bound, through_degree + 1)
        for exp in set(self.terms) | set(other.terms):
            if sum(exp) < bound and self.terms.get(exp, 0) != other.terms.get(exp, 0):
                return False
        return True

    def render(self, names=None) -> str:
        body = self.poly_part().render(names or default_names(self.n_vars))
        return f"{body} + O(deg {self.precision})"

    def __repr__(self):
        return f"TruncatedSeries({self.n_vars}, K={self.precision}, {self.poly_part().render()!r})"
