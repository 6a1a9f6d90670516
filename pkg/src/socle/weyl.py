"""The ring of differential operators with polynomial coefficients.

Operators are kept in normal order: every term is a monomial in the variables
times a monomial in the partials, stored as ``(x_exponent, d_exponent) ->
coefficient``.  Products are normal-ordered through the closed one-variable
formula

    d^b x^g = sum_nu  C(b, nu) * g(g-1)...(g-nu+1) * x^(g-nu) d^(b-nu)

applied componentwise, so no rewriting search is ever needed.

The module also carries the two function spaces operators act on besides
polynomials: the injective hull of the residue field at the origin (spanned
by inverse monomials with all exponents >= 1) and single-denominator pole
fractions g / f^k.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

from .errors import DimensionMismatch, DomainError
from .poly import Exponent, MultiPoly, _coerce

TermKey = Tuple[Exponent, Exponent]


def _falling(g: int, nu: int) -> int:
    out = 1
    for t in range(nu):
        out *= g - t
    return out


class WeylOp:
    """A normally ordered differential operator with rational coefficients."""

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars: int, terms: Mapping[TermKey, Fraction] | None = None):
        if n_vars < 1:
            raise DomainError("need at least one variable")
        clean: Dict[TermKey, Fraction] = {}
        for (xe, de), c in (terms or {}).items():
            xe, de = tuple(xe), tuple(de)
            if len(xe) != n_vars or len(de) != n_vars:
                raise DimensionMismatch(f"exponents {xe}, {de} do not fit {n_vars} variables")
            if any(e < 0 for e in xe + de):
                raise DomainError("negative exponent in operator term")
            c = _coerce(c)
            if c:
                clean[(xe, de)] = c
        self.n_vars = n_vars
        self.terms = clean

    # ---------------------------------------------------------------- builders

    @classmethod
    def zero(cls, n_vars: int) -> "WeylOp":
        return cls(n_vars, {})

    @classmethod
    def one(cls, n_vars: int) -> "WeylOp":
        z = (0,) * n_vars
        return cls(n_vars, {(z, z): Fraction(1)})

    @classmethod
    def x_gen(cls, n_vars: int, i: int) -> "WeylOp":
        z = (0,) * n_vars
        e = tuple(1 if j == i else 0 for j in range(n_vars))
        return cls(n_vars, {(e, z): Fraction(1)})

    @classmethod
    def d_gen(cls, n_vars: int, i: int) -> "WeylOp":
        z = (0,) * n_vars
        e = tuple(1 if j == i else 0 for j in range(n_vars))
        return cls(n_vars, {(z, e): Fraction(1)})

    @classmethod
    def from_poly(cls, p: MultiPoly) -> "WeylOp":
        """Multiplication operator by a polynomial."""
        z = (0,) * p.n_vars
        return cls(p.n_vars, {(e, z): c for e, c in p.terms.items()})

    # ------------------------------------------------------------- arithmetic

    def _check(self, other: "WeylOp") -> None:
        if self.n_vars != other.n_vars:
            raise DimensionMismatch(
                f"mixed variable counts: {self.n_vars} vs {other.n_vars}"
            )

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylOp.one(self.n_vars) * other
        if not isinstance(other, WeylOp):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for key, c in other.terms.items():
            s = terms.get(key, Fraction(0)) + c
            if s:
                terms[key] = s
            else:
                terms.pop(key, None)
        return WeylOp(self.n_vars, terms)

    __radd__ = __add__

    def __neg__(self):
        return WeylOp(self.n_vars, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylOp.one(self.n_vars) * other
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            return WeylOp(self.n_vars, {k: c * v for k, v in self.terms.items()})
        if isinstance(other, MultiPoly):
            other = WeylOp.from_poly(other)
        if not isinstance(other, WeylOp):
            return NotImplemented
        self._check(other)
        out: Dict[TermKey, Fraction] = {}
        n = self.n_vars
        for (a, b), c1 in self.terms.items():
            for (g, d), c2 in other.terms.items():
                # normal-order d^b x^g componentwise
                base = c1 * c2
                # iterate over nu <= min(b, g) componentwise
                ranges = [range(min(bi, gi) + 1) for bi, gi in zip(b, g)]
                stack = [((), Fraction(1))]
                for i, rng in enumerate(ranges):
                    new = []
                    for prefix, coef in stack:
                        for nu in rng:
                            w = comb(b[i], nu) * _falling(g[i], nu)
                            if w:
                                new.append((prefix + (nu,), coef * w))
                    stack = new
                for nu, coef in stack:
                    xe = tuple(ai + gi - ni for ai, gi, ni in zip(a, g, nu))
                    de = tuple(bi + di - ni for bi, di, ni in zip(b, d, nu))
                    key = (xe, de)
                    s = out.get(key, Fraction(0)) + base * coef
                    if s:
                        out[key] = s
                    else:
                        out.pop(key, None)
        return WeylOp(self.n_vars, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        if isinstance(other, MultiPoly):
            return WeylOp.from_poly(other) * self
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise DomainError("negative operator powers are not defined here")
        result = WeylOp.one(self.n_vars)
        for _ in range(k):
            result = result * self
        return result

    def commutator(self, other: "WeylOp") -> "WeylOp":
        return self * other - other * self

    # ---------------------------------------------------------------- actions

    def act_on_poly(self, p: MultiPoly) -> MultiPoly:
        if p.n_vars != self.n_vars:
            raise DimensionMismatch("polynomial lives over a different variable count")
        out: Dict[Exponent, Fraction] = {}
        for (a, b), c in self.terms.items():
            for g, cg in p.terms.items():
                w = 1
                for gi, bi in zip(g, b):
                    w *= _falling(gi, bi)
                    if not w:
                        break
                if not w:
                    continue
                e = tuple(ai + gi - bi for ai, gi, bi in zip(a, g, b))
                s = out.get(e, Fraction(0)) + c * cg * w
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MultiPoly(self.n_vars, out)

    def act_on_e(self, v: "EElement") -> "EElement":
        if v.n_vars != self.n_vars:
            raise DimensionMismatch("element lives over a different variable count")
        out: Dict[Exponent, Fraction] = {}
        for (xe, de), c in self.terms.items():
            for a, ca in v.terms.items():
                # d^de sends x^-a to prod_i (-1)^de_i a_i (a_i+1) ... (a_i+de_i-1) x^-(a+de)
                w = Fraction(1)
                for ai, di in zip(a, de):
                    for t in range(di):
                        w *= -(ai + t)
                shifted = tuple(ai + di for ai, di in zip(a, de))
                # multiplication by x^xe kills the term unless every exponent stays >= 1
                final = tuple(si - xi for si, xi in zip(shifted, xe))
                if any(f < 1 for f in final):
                    continue
                s = out.get(final, Fraction(0)) + c * ca * w
                if s:
                    out[final] = s
                else:
                    out.pop(final, None)
        return EElement(self.n_vars, out)

    def act_on_pole(self, v: "PoleElement") -> "PoleElement":
        if v.n_vars != self.n_vars:
            raise DimensionMismatch("element lives over a different variable count")
        result = PoleElement.zero_like(v)
        for (xe, de), c in self.terms.items():
            g, k = v.g, v.k
            # apply each partial one at a time: d_i (g/f^k) = (f dg - k g df) / f^(k+1)
            for i, di in enumerate(de):
                for _ in range(di):
                    g = v.f * g.partial_derivative(i) - k * g * v.f.partial_derivative(i)
                    k += 1
            # a normally ordered term multiplies by its x-part after the partials
            g = g * MultiPoly.monomial(self.n_vars, xe, c)
            result = result + PoleElement(v.f, k, g, quotient_mod_A=v.quotient_mod_A)
        return result

    # ------------------------------------------------------------- inspection

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = WeylOp.one(self.n_vars) * other
        if not isinstance(other, WeylOp):
            return NotImplemented
        return self.n_vars == other.n_vars and self.terms == other.terms

    __hash__ = None

    def order(self) -> int:
        """Total order in the partials; -1 for the zero operator."""
        if not self.terms:
            return -1
        return max(sum(de) for _, de in self.terms)

    def d_vars_used(self) -> set:
        used = set()
        for _, de in self.terms:
            for i, e in enumerate(de):
                if e:
                    used.add(i)
        return used

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    def render(self, names: Sequence[str] | None = None) -> str:
        from .poly import default_names

        if not self.terms:
            return "0"
        names = names or default_names(self.n_vars)
        parts = []
        for (xe, de), c in self.sorted_terms():
            factors = []
            for i, e in enumerate(xe):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            for i, e in enumerate(de):
                if e == 1:
                    factors.append(f"d{i}")
                elif e > 1:
                    factors.append(f"d{i}^{e}")
            if factors and abs(c) == 1:
                mag = ""
            else:
                mag = str(abs(c))
            body = "*".join(([mag] if mag else []) + factors) or mag
            parts.append(("-" if c < 0 else "+", body))
        out = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"WeylOp({self.n_vars}, {self.render()!r})"


def normal_order(raw: Iterable[Tuple[Fraction, Sequence[Tuple[str, int]]]], n_vars: int) -> WeylOp:
    """Normal-order a raw word list.

    ``raw`` is a list of (coefficient, word) pairs where each word is a
    sequence of generator tokens ('x', i) or ('d', i).  The result collects
    all words into a single normally ordered operator.
    """
    total = WeylOp.zero(n_vars)
    for coeff, word in raw:
        term = WeylOp.one(n_vars) * _coerce(coeff)
        for kind, i in word:
            if kind == "x":
                term = term * WeylOp.x_gen(n_vars, i)
            elif kind == "d":
                term = term * WeylOp.d_gen(n_vars, i)
            else:
                raise DomainError(f"unknown generator kind {kind!r}")
        total = total + term
    return total


# --------------------------------------------------------------------- adjoint


def right_coefficients(q: WeylOp, var: int = 0) -> List[MultiPoly]:
    """Write q = sum_i (-1)^i d^i a_i and return [a_0, ..., a_r].

    Only powers of the distinguished partial may occur.  The a_i are found by
    descending order using the Leibniz expansion
    d^i a = sum_nu C(i, nu) a^(nu) d^(i-nu).
    """
    n = q.n_vars
    if any(i != var for i in q.d_vars_used()):
        raise DomainError("operator involves partials other than the distinguished one")
    r = max(0, q.order())
    # left coefficients: q = sum_j c_j(x) d^j
    c: List[MultiPoly] = [MultiPoly.zero(n) for _ in range(r + 1)]
    for (xe, de), coef in q.terms.items():
        c[de[var]] = c[de[var]] + MultiPoly.monomial(n, xe, coef)
    a: List[MultiPoly] = [MultiPoly.zero(n) for _ in range(r + 1)]
    for j in range(r, -1, -1):
        acc = c[j]
        for i in range(j + 1, r + 1):
            deriv = a[i]
            for _ in range(i - j):
                deriv = deriv.partial_derivative(var)
            acc = acc - (-1) ** i * comb(i, i - j) * deriv
        a[j] = (-1) ** j * acc
    return a


def formal_adjoint(q: WeylOp, var: int = 0) -> WeylOp:
    """The anti-automorphism x^a d^b -> (-1)^b d^b x^a in the distinguished partial.

    Applying it twice gives the operator back; on q = sum (-1)^i d^i a_i it
    returns sum a_i d^i.
    """
    n = q.n_vars
    if any(i != var for i in q.d_vars_used()):
        raise DomainError("operator involves partials other than the distinguished one")
    out = WeylOp.zero(n)
    for (xe, de), coef in q.terms.items():
        b = de[var]
        term = (WeylOp.d_gen(n, var) ** b) * WeylOp.from_poly(MultiPoly.monomial(n, xe, coef))
        out = out + term * ((-1) ** b)
    return out


def check_euler_identity(q: WeylOp, b: MultiPoly, var: int = 0):
    """Certify b * q = P(b) + d * R with P the formal adjoint of q.

    Returns (p, remainder_op, residual) where residual = b*q - P(b) - d*R as
    a normally ordered operator; the identity holds exactly iff residual is
    zero.  The remainder is built by the recursion
    R_i(f, g) = R_{i-1}(f', g) + (-1)^i f d^(i-1) g,   R_0 = 0,
    summed over the right coefficients g = a_i of q.
    """
    n = q.n_vars
    if b.n_vars != n:
        raise DimensionMismatch("test polynomial lives over a different variable count")
    a = right_coefficients(q, var)
    p = formal_adjoint(q, var)
    d = WeylOp.d_gen(n, var)

    def remainder(i: int, f: MultiPoly, g: MultiPoly) -> WeylOp:
        if i == 0:
            return WeylOp.zero(n)
        prev = remainder(i - 1, f.partial_derivative(var), g)
        tail = WeylOp.from_poly(f) * (d ** (i - 1)) * WeylOp.from_poly(g)
        return prev + tail * ((-1) ** i)

    r_op = WeylOp.zero(n)
    for i, g in enumerate(a):
        if g:
            r_op = r_op + remainder(i, b, g)
    pb = p.act_on_poly(b)
    residual = WeylOp.from_poly(b) * q - WeylOp.from_poly(pb) - d * r_op
    return p, r_op, residual


# ---------------------------------------------------------------- E elements


class EElement:
    """A finite combination of inverse monomials x^-a with every a_i >= 1.

    These span the top local cohomology of the polynomial ring at the
    maximal ideal of the origin; the socle generator is a = (1, ..., 1).
    """

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars: int, terms: Mapping[Exponent, Fraction] | None = None):
        clean: Dict[Exponent, Fraction] = {}
        for a, c in (terms or {}).items():
            a = tuple(a)
            if len(a) != n_vars or any(ai < 1 for ai in a):
                raise DomainError(f"inverse-monomial exponent {a} must have all entries >= 1")
            c = _coerce(c)
            if c:
                clean[a] = c
        self.n_vars = n_vars
        self.terms = clean

    @classmethod
    def socle(cls, n_vars: int) -> "EElement":
        return cls(n_vars, {(1,) * n_vars: Fraction(1)})

    @classmethod
    def inverse_monomial(cls, n_vars: int, a: Sequence[int], c=1) -> "EElement":
        return cls(n_vars, {tuple(a): _coerce(c)})

    @classmethod
    def zero(cls, n_vars: int) -> "EElement":
        return cls(n_vars, {})

    def __add__(self, other):
        if not isinstance(other, EElement):
            return NotImplemented
        if self.n_vars != other.n_vars:
            raise DimensionMismatch("mixed variable counts")
        terms = dict(self.terms)
        for a, c in other.terms.items():
            s = terms.get(a, Fraction(0)) + c
            if s:
                terms[a] = s
            else:
                terms.pop(a, None)
        return EElement(self.n_vars, terms)

    def __neg__(self):
        return EElement(self.n_vars, {a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, EElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = _coerce(other)
            return EElement(self.n_vars, {a: c * v for a, v in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, EElement):
            return NotImplemented
        return self.n_vars == other.n_vars and self.terms == other.terms

    __hash__ = None

    def render(self, names=None) -> str:
        from .poly import default_names

        if not self.terms:
            return "0"
        names = names or default_names(self.n_vars)
        parts = []
        for a, c in sorted(self.terms.items()):
            mono = "*".join(
                f"{names[i]}^-{ai}" if ai > 1 else f"{names[i]}^-1" for i, ai in enumerate(a)
            )
            parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"EElement({self.n_vars}, {self.render()!r})"


# -------------------------------------------------------------- pole elements


class PoleElement:
    """A fraction g / f^k with a fixed homogeneous denominator base f.

    Construction canonicalizes: while f divides g and k > 0, cancel one
    power.  With ``quotient_mod_A`` set, elements whose pole order reaches 0
    (honest polynomials) are identified with zero.
    """

    __slots__ = ("n_vars", "f", "k", "g", "quotient_mod_A")

    def __init__(self, f: MultiPoly, k: int, g: MultiPoly, quotient_mod_A: bool = False):
        if not f:
            raise DomainError("denominator base must be nonzero")
        if not f.is_homogeneous():
            raise DomainError("denominator base must be homogeneous")
        if g.n_vars != f.n_vars:
            raise DimensionMismatch("numerator and denominator variable counts differ")
        if k < 0:
            raise DomainError("pole order must be nonnegative")
        while k > 0 and g:
            q = g.exact_divide(f)
            if q is None:
                break
            g, k = q, k - 1
        if not g:
            k = 0
        if quotient_mod_A and k == 0:
            g = MultiPoly.zero(f.n_vars)
        self.n_vars = f.n_vars
        self.f = f
        self.k = k
        self.g = g
        self.quotient_mod_A = quotient_mod_A

    @classmethod
    def zero_like(cls, other: "PoleElement") -> "PoleElement":
        return cls(other.f, 0, MultiPoly.zero(other.n_vars), other.quotient_mod_A)

    def __add__(self, other):
        if not isinstance(other, PoleElement):
            return NotImplemented
        if self.f != other.f or self.quotient_mod_A != other.quotient_mod_A:
            raise DomainError("pole elements must share the denominator base and mode")
        k = max(self.k, other.k)
        g = self.g * self.f ** (k - self.k) + other.g * self.f ** (k - other.k)
        return PoleElement(self.f, k, g, self.quotient_mod_A)

    def __neg__(self):
        return PoleElement(self.f, self.k, -self.g, self.quotient_mod_A)

    def __sub__(self, other):
        if not isinstance(other, PoleElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return PoleElement(self.f, self.k, self.g * other, self.quotient_mod_A)
        if isinstance(other, MultiPoly):
            return PoleElement(self.f, self.k, self.g * other, self.quotient_mod_A)
        return NotImplemented

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.g)

    def __eq__(self, other):
        if not isinstance(other, PoleElement):
            return NotImplemented
        return (
            self.f == other.f
            and self.k == other.k
            and self.g == other.g
            and self.quotient_mod_A == other.quotient_mod_A
        )

    __hash__ = None

    def render(self, names=None) -> str:
        if not self.g:
            return "0"
        if self.k == 0:
            return self.g.render(names)
        return f"({self.g.render(names)}) / ({self.f.render(names)})^{self.k}"

    def __repr__(self):
        return f"PoleElement({self.render()!r})"
