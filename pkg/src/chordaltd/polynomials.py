"""Exact sparse multivariate polynomial arithmetic over a pluggable field.

Variables are 1-based integer indices with the ambient ordering
``x_1 < x_2 < ... < x_n`` given by the index.  A monomial is a tuple of
``(variable, exponent)`` pairs sorted by variable descending, with no zero
exponents; the constant monomial is the empty tuple.  A polynomial maps
monomials to nonzero coefficients of its field.  The zero polynomial has an
empty term map.

Tuple comparison on monomials yields the canonical term order used for
display: descending leading variable, then descending degree in it, then
recursively on the remaining variables.
"""

from __future__ import annotations

from typing import Iterable, Mapping

from .errors import (
    BadPrimeError,
    ConstantHasNoInitialError,
    DivisorFreeOfVariableError,
    FieldMismatchError,
    UnboundVariableError,
)
from .fields import GF, QQ, PrimeField, RationalField

Monomial = tuple[tuple[int, int], ...]

CONST_MONOMIAL: Monomial = ()


def monomial(exponents: Mapping[int, int]) -> Monomial:
    """Build a canonical monomial from a variable -> exponent mapping."""
    for v, e in exponents.items():
        if v < 1:
            raise ValueError(f"variable index must be >= 1, got {v}")
        if e < 0:
            raise ValueError(f"negative exponent {e} for x{v}")
    return tuple(sorted(((v, e) for v, e in exponents.items() if e > 0), reverse=True))


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    exps = dict(a)
    for v, e in b:
        exps[v] = exps.get(v, 0) + e
    return tuple(sorted(exps.items(), reverse=True))


def monomial_degree(m: Monomial, var: int) -> int:
    for v, e in m:
        if v == var:
            return e
    return 0


class Polynomial:
    """Immutable sparse polynomial; arithmetic via the usual operators."""

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, field, terms: Mapping[Monomial, object]):
        self.field = field
        self.terms = dict(terms)
        self._hash = None

    @classmethod
    def from_terms(cls, field, items: Iterable[tuple[Monomial, object]]) -> "Polynomial":
        """Sum up (monomial, coefficient) pairs, coercing and dropping zeros."""
        acc: dict[Monomial, object] = {}
        zero = field.zero
        for mono, coef in items:
            c = field.coerce(coef)
            prev = acc.get(mono, zero)
            acc[mono] = field.add(prev, c)
        return cls(field, {m: c for m, c in acc.items() if c != zero})

    @classmethod
    def zero(cls, field=QQ) -> "Polynomial":
        return cls(field, {})

    @classmethod
    def constant(cls, value, field=QQ) -> "Polynomial":
        c = field.coerce(value)
        return cls(field, {} if c == field.zero else {CONST_MONOMIAL: c})

    @classmethod
    def variable(cls, index: int, field=QQ) -> "Polynomial":
        return cls(field, {monomial({index: 1}): field.one})

    # -- structure ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and CONST_MONOMIAL in self.terms)

    def constant_value(self):
        """Value of a constant polynomial (the field zero for 0)."""
        if not self.is_constant:
            raise ValueError(f"{self} is not constant")
        return self.terms.get(CONST_MONOMIAL, self.field.zero)

    def leading_variable(self) -> int | None:
        """Greatest variable appearing, or None for constants."""
        best = None
        for mono in self.terms:
            if mono and (best is None or mono[0][0] > best):
                best = mono[0][0]
        return best

    def degree(self, var: int) -> int:
        """Degree in ``var`` (0 for the zero polynomial and absent variables)."""
        return max((monomial_degree(m, var) for m in self.terms), default=0)

    def support(self) -> frozenset[int]:
        return frozenset(v for mono in self.terms for v, _ in mono)

    def coefficient_in(self, var: int, power: int) -> "Polynomial":
        """Coefficient of ``var**power`` as a polynomial in the other variables."""
        out: dict[Monomial, object] = {}
        for mono, coef in self.terms.items():
            if monomial_degree(mono, var) == power:
                rest = tuple((v, e) for v, e in mono if v != var)
                out[rest] = coef
        return Polynomial(self.field, out)

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        """Terms in canonical display order."""
        return sorted(self.terms.items(), key=lambda t: t[0], reverse=True)

    # -- arithmetic --------------------------------------------------------

    def _check_field(self, other: "Polynomial") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check_field(other)
        f = self.field
        out = dict(self.terms)
        for mono, coef in other.terms.items():
            s = f.add(out.get(mono, f.zero), coef)
            if s == f.zero:
                out.pop(mono, None)
            else:
                out[mono] = s
        return Polynomial(f, out)

    def __neg__(self) -> "Polynomial":
        f = self.field
        return Polynomial(f, {m: f.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        self._check_field(other)
        f = self.field
        out: dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = monomial_mul(m1, m2)
                s = f.add(out.get(mono, f.zero), f.mul(c1, c2))
                if s == f.zero:
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return Polynomial(f, out)

    def __pow__(self, exponent: int) -> "Polynomial":
        if exponent < 0:
            raise ValueError("negative exponent")
        out = Polynomial.constant(1, self.field)
        base = self
        e = exponent
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Polynomial)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.field, tuple(sorted(self.terms.items()))))
        return self._hash

    def __repr__(self) -> str:
        from .systems import render_poly

        return render_poly(self)

    # -- evaluation --------------------------------------------------------

    def evaluate(self, point: Mapping[int, object]):
        """Exact value at ``point`` (variable index -> field element)."""
        f = self.field
        missing = self.support() - set(point)
        if missing:
            v = min(missing)
            raise UnboundVariableError(f"no assignment for x{v}")
        vals = {v: f.coerce(c) for v, c in point.items()}
        total = f.zero
        for mono, coef in self.terms.items():
            term = coef
            for v, e in mono:
                term = f.mul(term, f.pow(vals[v], e))
            total = f.add(total, term)
        return total


def variables(*indices: int, field=QQ) -> list[Polynomial]:
    """Convenience constructor: one generator polynomial per index."""
    return [Polynomial.variable(i, field) for i in indices]


def support(arg) -> frozenset[int]:
    """Support of a polynomial, or the union over an iterable of them."""
    if isinstance(arg, Polynomial):
        return arg.support()
    out: frozenset[int] = frozenset()
    for p in arg:
        out |= p.support()
    return out


def initial_and_tail(f: Polynomial) -> tuple[Polynomial, Polynomial, int]:
    """Split ``f = init * x_k**d + tail`` with ``x_k`` the leading variable.

    ``init`` is free of ``x_k`` and ``deg(tail, x_k) < d``.  Constants have
    no leading variable and are rejected.
    """
    k = f.leading_variable()
    if k is None:
        raise ConstantHasNoInitialError(f"{f} is constant")
    d = f.degree(k)
    init = f.coefficient_in(k, d)
    xkd = Polynomial(f.field, {monomial({k: d}): f.field.one})
    tail = f - init * xkd
    return init, tail, d


def pseudo_remainder(
    f: Polynomial, t: Polynomial, var: int
) -> tuple[Polynomial, Polynomial, int]:
    """Classical pseudo-division of ``f`` by ``t`` with respect to ``var``.

    Returns ``(r, q, k)`` satisfying ``ini**k * f == q*t + r`` exactly with
    ``deg(r, var) < deg(t, var)``, where ``ini`` is the coefficient of the
    highest power of ``var`` in ``t``.  The exponent ``k`` counts the
    elimination steps actually performed (one multiplication by ``ini``
    each), so it never exceeds ``deg(f,var) - deg(t,var) + 1``.
    """
    if f.field != t.field:
        raise FieldMismatchError(f"{f.field!r} vs {t.field!r}")
    d = t.degree(var)
    if t.is_zero or d == 0:
        raise DivisorFreeOfVariableError(f"divisor has degree 0 in x{var}")
    ini = t.coefficient_in(var, d)
    r = f
    q = Polynomial.zero(f.field)
    k = 0
    while not r.is_zero and r.degree(var) >= d:
        e = r.degree(var) - d
        lead = r.coefficient_in(var, r.degree(var))
        shift = Polynomial(f.field, {monomial({var: e}) : f.field.one})
        lt = lead * shift
        q = ini * q + lt
        r = ini * r - lt * t
        k += 1
    return r, q, k


def reduce_mod_p(f: Polynomial, p: int) -> Polynomial:
    """Coefficient-wise image of a rational polynomial in F_p.

    Fails with ``bad-prime`` when any coefficient denominator is divisible
    by ``p``; terms whose image vanishes are dropped.
    """
    if not isinstance(f.field, RationalField):
        raise FieldMismatchError("reduce_mod_p expects a polynomial over the rationals")
    gf = GF(p)
    out: dict[Monomial, int] = {}
    for mono, coef in f.terms.items():
        c = gf.coerce(coef)  # raises BadPrimeError on p | denominator
        if c != 0:
            out[mono] = c
    return Polynomial(gf, out)
