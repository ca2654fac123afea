"""Sparse exact multivariate polynomials over Q or a prime field.

Variables are arbitrary hashable, totally ordered values; the generic-matrix
machinery uses `YVar` triples (degree label, generic index, row).  Monomials
are canonical sorted tuples of (variable, exponent) pairs, polynomials are
canonical monomial -> coefficient maps with no zero coefficients stored.
All arithmetic is exact: Fraction coefficients over the rationals, residues
over a prime field.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, NamedTuple

Coefficient = Any  # Fraction for Rationals, int residue for PrimeField
Monomial = tuple  # ((var, exp), ...) sorted by var, exps > 0


def _is_probable_prime(n: int) -> bool:
    # Deterministic Miller-Rabin; the witness set covers all n < 3.3e24.
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class Rationals:
    """The field Q with exact Fraction arithmetic."""

    characteristic = 0

    def from_int(self, value: int) -> Coefficient:
        return Fraction(value)

    def add(self, a: Coefficient, b: Coefficient) -> Coefficient:
        return a + b

    def neg(self, a: Coefficient) -> Coefficient:
        return -a

    def mul(self, a: Coefficient, b: Coefficient) -> Coefficient:
        return a * b

    def is_zero(self, a: Coefficient) -> bool:
        return a == 0

    @property
    def zero(self) -> Coefficient:
        return Fraction(0)

    @property
    def one(self) -> Coefficient:
        return Fraction(1)

    def parse(self, text: str) -> Coefficient:
        try:
            return Fraction(text.strip())
        except (ValueError, ZeroDivisionError):
            raise ValueError(f"invalid rational literal {text!r}") from None

    def format(self, a: Coefficient) -> str:
        return str(a)

    def __str__(self) -> str:
        return "rationals"


@dataclass(frozen=True)
class PrimeField:
    """The field F_p; coefficients are residues 0..p-1."""

    p: int

    def __post_init__(self) -> None:
        if not isinstance(self.p, int) or isinstance(self.p, bool) or not _is_probable_prime(self.p):
            raise ValueError(f"{self.p!r} is not prime")

    characteristic = property(lambda self: self.p)

    def from_int(self, value: int) -> Coefficient:
        return value % self.p

    def add(self, a: Coefficient, b: Coefficient) -> Coefficient:
        return (a + b) % self.p

    def neg(self, a: Coefficient) -> Coefficient:
        return (-a) % self.p

    def mul(self, a: Coefficient, b: Coefficient) -> Coefficient:
        return (a * b) % self.p

    def is_zero(self, a: Coefficient) -> bool:
        return a % self.p == 0

    @property
    def zero(self) -> Coefficient:
        return 0

    @property
    def one(self) -> Coefficient:
        return 1

    def parse(self, text: str) -> Coefficient:
        text = text.strip()
        if "/" in text:
            raise ValueError(f"fractional literal {text!r} is not valid over {self}")
        try:
            return int(text) % self.p
        except ValueError:
            raise ValueError(f"invalid coefficient literal {text!r}") from None

    def format(self, a: Coefficient) -> str:
        return str(a % self.p)

    def __str__(self) -> str:
        return f"fp:{self.p}"


RATIONALS = Rationals()

Field = Any  # Rationals | PrimeField


def parse_field(text: str) -> Field:
    """Parse a field selector: "rationals" or "fp:<prime>"."""
    text = text.strip().lower()
    if text in ("rationals", "q", "qq"):
        return RATIONALS
    if text.startswith("fp:"):
        try:
            p = int(text[3:])
        except ValueError:
            raise ValueError(f"invalid prime in field selector {text!r}") from None
        return PrimeField(p)
    raise ValueError(f"unknown field selector {text!r}; use 'rationals' or 'fp:<prime>'")


class YVar(NamedTuple):
    """Commuting variable attached to a generic matrix entry.

    `degree` is the raw group-element value of the generic matrix, `index`
    its generic index, `row` the matrix row the entry sits in.  Tuple order
    (degree, index, row) is the canonical variable order.
    """

    degree: Any
    index: int
    row: int


def monomial_mul(a: Monomial, b: Monomial) -> Monomial:
    exps: dict = dict(a)
    for var, e in b:
        exps[var] = exps.get(var, 0) + e
    return tuple(sorted(exps.items()))


def monomial_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


class Poly:
    """Immutable sparse polynomial over a fixed coefficient field."""

    __slots__ = ("field", "terms")

    def __init__(self, field: Field, terms: dict):
        self.field = field
        self.terms = terms

    @classmethod
    def zero(cls, field: Field) -> "Poly":
        return cls(field, {})

    @classmethod
    def constant(cls, field: Field, value: int) -> "Poly":
        c = field.from_int(value)
        return cls(field, {} if field.is_zero(c) else {(): c})

    @classmethod
    def variable(cls, field: Field, var: Any) -> "Poly":
        return cls(field, {((var, 1),): field.one})

    @classmethod
    def monomial(cls, field: Field, mono: Monomial, coeff: int = 1) -> "Poly":
        c = field.from_int(coeff)
        return cls(field, {} if field.is_zero(c) else {tuple(mono): c})

    @classmethod
    def from_terms(cls, field: Field, items: Iterable[tuple[Monomial, Coefficient]]) -> "Poly":
        terms: dict = {}
        for mono, c in items:
            acc = field.add(terms.get(mono, field.zero), c)
            if field.is_zero(acc):
                terms.pop(mono, None)
            else:
                terms[mono] = acc
        return cls(field, terms)

    def _require_same_field(self, other: "Poly") -> None:
        if self.field != other.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def __add__(self, other: "Poly") -> "Poly":
        self._require_same_field(other)
        f = self.field
        terms = dict(self.terms)
        for mono, c in other.terms.items():
            acc = f.add(terms.get(mono, f.zero), c)
            if f.is_zero(acc):
                terms.pop(mono, None)
            else:
                terms[mono] = acc
        return Poly(f, terms)

    def __neg__(self) -> "Poly":
        f = self.field
        return Poly(f, {mono: f.neg(c) for mono, c in self.terms.items()})

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        self._require_same_field(other)
        f = self.field
        terms: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = monomial_mul(m1, m2)
                acc = f.add(terms.get(mono, f.zero), f.mul(c1, c2))
                if f.is_zero(acc):
                    terms.pop(mono, None)
                else:
                    terms[mono] = acc
        return Poly(f, terms)

    def scale(self, value: Coefficient) -> "Poly":
        f = self.field
        if f.is_zero(value):
            return Poly.zero(f)
        return Poly(f, {mono: f.mul(value, c) for mono, c in self.terms.items()})

    def scale_int(self, value: int) -> "Poly":
        return self.scale(self.field.from_int(value))

    def is_zero(self) -> bool:
        return not self.terms

    def sorted_terms(self) -> list[tuple[Monomial, Coefficient]]:
        return sorted(self.terms.items(), key=lambda t: t[0])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.field == other.field and self.terms == other.terms

    __hash__ = None  # mutable dict inside; equality by content only

    def __repr__(self) -> str:
        return f"Poly({self.field}, {self.sorted_terms()!r})"


def render_yvar(var: YVar, degree_fmt: Callable[[Any], str]) -> str:
    return f"y[{degree_fmt(var.degree)};{var.index};{var.row}]"


def render_monomial(mono: Monomial, degree_fmt: Callable[[Any], str]) -> str:
    """Render a monomial as a y[h;i;k] product with ^e exponents."""
    if not mono:
        return "1"
    parts = []
    for var, e in mono:
        head = render_yvar(var, degree_fmt)
        parts.append(head if e == 1 else f"{head}^{e}")
    return "*".join(parts)


def render_poly(poly: Poly, degree_fmt: Callable[[Any], str]) -> str:
    if poly.is_zero():
        return "0"
    f = poly.field
    chunks: list[str] = []
    for mono, c in poly.sorted_terms():
        coeff_text = f.format(c)
        negative = coeff_text.startswith("-")
        magnitude = coeff_text[1:] if negative else coeff_text
        body = render_monomial(mono, degree_fmt)
        if mono and magnitude == "1":
            piece = body
        elif mono:
            piece = f"{magnitude}*{body}"
        else:
            piece = magnitude
        if not chunks:
            chunks.append(f"-{piece}" if negative else piece)
        else:
            chunks.append(f"- {piece}" if negative else f"+ {piece}")
    return " ".join(chunks)
