"""Exact amplitudes: finite rational combinations of roots of unity.

A PhaseSum stores a value of the form  sum_e c_e * exp(2*pi*i*e/L)  with
Fraction coefficients c_e and integer exponents e modulo L.  All arithmetic
(addition, multiplication, conjugation, rational scaling) is exact; floating
point enters only through eval_complex(), which is used for reporting and for
tolerance comparisons of values that are not structurally equal.

Canonical form: exponents are reduced mod L, zero coefficients are dropped,
and L is divided down to the smallest modulus for which all exponents stay
integral.  Two PhaseSums compare equal iff they have the same canonical form.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

Rational = Fraction


def _as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    raise TypeError(f"coefficient must be an int or Fraction, got {type(value).__name__}")


class PhaseSum:
    __slots__ = ("modulus", "terms")

    def __init__(self, modulus: int, terms=()):
        if not isinstance(modulus, int) or modulus <= 0:
            raise ValueError(f"modulus must be a positive integer, got {modulus!r}")
        merged: dict[int, Fraction] = {}
        items = terms.items() if hasattr(terms, "items") else terms
        for exponent, coeff in items:
            coeff = _as_fraction(coeff)
            if coeff == 0:
                continue
            exponent = exponent % modulus
            acc = merged.get(exponent, Fraction(0)) + coeff
            if acc == 0:
                merged.pop(exponent, None)
            else:
                merged[exponent] = acc
        if not merged:
            object.__setattr__(self, "modulus", 1)
            object.__setattr__(self, "terms", ())
            return
        g = modulus
        for exponent in merged:
            g = math.gcd(g, exponent)
        object.__setattr__(self, "modulus", modulus // g)
        object.__setattr__(
            self, "terms", tuple(sorted((e // g, c) for e, c in merged.items()))
        )

    def __setattr__(self, name, value):
        raise AttributeError("PhaseSum is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "PhaseSum":
        return cls(1, ())

    @classmethod
    def one(cls) -> "PhaseSum":
        return cls(1, {0: Fraction(1)})

    @classmethod
    def from_rational(cls, value) -> "PhaseSum":
        return cls(1, {0: _as_fraction(value)})

    @classmethod
    def root(cls, modulus: int, exponent: int, coeff=1) -> "PhaseSum":
        """coeff * exp(2*pi*i*exponent/modulus)."""
        return cls(modulus, {exponent: _as_fraction(coeff)})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_rational(self) -> bool:
        return self.modulus == 1

    def as_rational(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if self.modulus != 1:
            raise ValueError(f"not a rational value: {self!r}")
        return self.terms[0][1]

    # -- exact arithmetic ---------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PhaseSum.from_rational(other)
        if not isinstance(other, PhaseSum):
            return NotImplemented
        L = math.lcm(self.modulus, other.modulus)
        fa, fb = L // self.modulus, L // other.modulus
        terms: dict[int, Fraction] = {e * fa: c for e, c in self.terms}
        for e, c in other.terms:
            key = e * fb
            terms[key] = terms.get(key, Fraction(0)) + c
        return PhaseSum(L, terms)

    def __radd__(self, other):
        if other == 0:
            return self
        return self.__add__(other)

    def __neg__(self):
        return PhaseSum(self.modulus, {e: -c for e, c in self.terms})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PhaseSum.from_rational(other)
        if not isinstance(other, PhaseSum):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            scalar = _as_fraction(other)
            return PhaseSum(self.modulus, {e: c * scalar for e, c in self.terms})
        if not isinstance(other, PhaseSum):
            return NotImplemented
        L = math.lcm(self.modulus, other.modulus)
        fa, fb = L // self.modulus, L // other.modulus
        terms: dict[int, Fraction] = {}
        for ea, ca in self.terms:
            for eb, cb in other.terms:
                key = (ea * fa + eb * fb) % L
                terms[key] = terms.get(key, Fraction(0)) + ca * cb
        return PhaseSum(L, terms)

    __rmul__ = __mul__

    def conj(self) -> "PhaseSum":
        """Complex conjugate: exponent e -> (L - e) mod L."""
        return PhaseSum(self.modulus, {(self.modulus - e) % self.modulus: c for e, c in self.terms})

    # -- floating point (reporting only) ------------------------------------

    def eval_complex(self) -> complex:
        step = 2.0 * math.pi / self.modulus
        return sum(
            (complex(c) * cmath.exp(1j * step * e) for e, c in self.terms),
            complex(0),
        )

    def approx_eq(self, other: "PhaseSum", tol: float = 1e-9) -> bool:
        if tol < 0:
            raise ValueError("tolerance must be nonnegative")
        if self == other:
            return True
        return abs(self.eval_complex() - other.eval_complex()) <= tol

    # -- structural protocol -------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PhaseSum.from_rational(other)
        if not isinstance(other, PhaseSum):
            return NotImplemented
        return self.modulus == other.modulus and self.terms == other.terms

    def __hash__(self):
        return hash((self.modulus, self.terms))

    def __repr__(self):
        body = ", ".join(f"{e}: {c}" for e, c in self.terms)
        return f"PhaseSum(L={self.modulus}, {{{body}}})"

    # -- serialization --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "L": self.modulus,
            "terms": [[e, f"{c.numerator}/{c.denominator}"] for e, c in self.terms],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "PhaseSum":
        terms = {}
        for e, text in obj["terms"]:
            terms[int(e)] = Fraction(text)
        return cls(int(obj["L"]), terms)
