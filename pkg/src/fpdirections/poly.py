"""Polynomial functions F_p -> F_p in reduced form.

Every function F_p -> F_p coincides with exactly one polynomial of degree
at most p-1. Polynomial stores that representative as a dense coefficient
vector of length exactly p (index i holds the coefficient of x**i), so two
Polynomial values are equal iff they are the same function. The zero
polynomial has degree None, never -1 or 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .fp import FieldElement, PrimeModulus


@lru_cache(maxsize=None)
def interpolation_matrix(p: int) -> tuple[tuple[int, ...], ...]:
    """Row k maps a length-p value table to coefficient k of its interpolant.

    Derived from x**p - x = prod_c (x - c): the Lagrange basis polynomial at
    node i is -(x**p - x)/(x - i), whose x**k coefficient is -(i**(p-1-k))
    for k >= 1 and [i == 0] for k = 0.
    """
    rows = [tuple(1 if i == 0 else 0 for i in range(p))]
    for k in range(1, p):
        e = p - 1 - k
        rows.append(tuple((-pow(i, e, p)) % p for i in range(p)))
    return tuple(rows)


def _as_canonical(modulus: PrimeModulus, item: int | FieldElement) -> int:
    if isinstance(item, FieldElement):
        if item.modulus != modulus:
            raise ValueError(f"modulus mismatch: {item.modulus.p} vs {modulus.p}")
        return item.value
    return item % modulus.p


@dataclass(frozen=True, slots=True)
class Polynomial:
    """The unique degree <= p-1 representative of a function F_p -> F_p."""

    modulus: PrimeModulus
    coefficients: tuple[FieldElement, ...]

    def __post_init__(self):
        p = self.modulus.p
        if len(self.coefficients) != p:
            raise ValueError(
                f"coefficient vector must have length exactly {p}, "
                f"got {len(self.coefficients)}"
            )
        for c in self.coefficients:
            if c.modulus != self.modulus:
                raise ValueError(f"modulus mismatch: {c.modulus.p} vs {p}")

    @classmethod
    def from_coefficients(
        cls, modulus: PrimeModulus, coeffs: Sequence[int | FieldElement]
    ) -> Polynomial:
        """Build from a low-to-high coefficient list of length at most p.

        Integer entries are taken mod p. A list longer than p is rejected:
        reducing x**p to x is a statement about functions, not vectors, and
        belongs to interpolate.
        """
        p = modulus.p
        if len(coeffs) > p:
            raise ValueError(f"got {len(coeffs)} coefficients; at most {p} allowed")
        vals = [_as_canonical(modulus, c) for c in coeffs]
        vals.extend(0 for _ in range(p - len(vals)))
        return cls(modulus, tuple(FieldElement(v, modulus) for v in vals))

    @classmethod
    def zero(cls, modulus: PrimeModulus) -> Polynomial:
        return cls.from_coefficients(modulus, [])

    @classmethod
    def constant(cls, modulus: PrimeModulus, c: int | FieldElement) -> Polynomial:
        return cls.from_coefficients(modulus, [c])

    @classmethod
    def interpolate(
        cls, modulus: PrimeModulus, values: Sequence[int | FieldElement]
    ) -> Polynomial:
        """The unique degree <= p-1 polynomial with g(i) = values[i] for all i."""
        p = modulus.p
        if len(values) != p:
            raise ValueError(f"need exactly {p} values, got {len(values)}")
        v = [_as_canonical(modulus, x) for x in values]
        mat = interpolation_matrix(p)
        coeffs = [sum(row[i] * v[i] for i in range(p)) % p for row in mat]
        return cls(modulus, tuple(FieldElement(c, modulus) for c in coeffs))

    def _int_coeffs(self) -> tuple[int, ...]:
        return tuple(c.value for c in self.coefficients)

    def evaluate(self, x: int | FieldElement) -> FieldElement:
        """Horner evaluation of g(x)."""
        p = self.modulus.p
        xv = _as_canonical(self.modulus, x)
        acc = 0
        for c in reversed(self._int_coeffs()):
            acc = (acc * xv + c) % p
        return FieldElement(acc, self.modulus)

    __call__ = evaluate

    @property
    def degree(self) -> int | None:
        """Largest index with a nonzero coefficient; None for the zero polynomial."""
        for i in range(self.modulus.p - 1, -1, -1):
            if self.coefficients[i].value != 0:
                return i
        return None

    @property
    def is_constant(self) -> bool:
        d = self.degree
        return d is None or d == 0

    def value_table(self) -> tuple[int, ...]:
        """Canonical values (g(0), g(1), ..., g(p-1)) as integers."""
        p = self.modulus.p
        return tuple(self.evaluate(x).value for x in range(p))

    def lifted_value_sum(self) -> int:
        """Sum over F_p of the canonical integer values, computed in Z."""
        return sum(self.value_table())

    def sum_criterion(self) -> bool:
        """True iff the field sum of all values is 0, i.e. iff degree < p-1."""
        return sum(self.value_table()) % self.modulus.p == 0

    def compose_square(self) -> Polynomial:
        """The reduced representative of x -> g(x**2).

        Implemented by evaluating at every square and re-interpolating, so
        the reduction mod x**p - x is automatic.
        """
        p = self.modulus.p
        table = self.value_table()
        return Polynomial.interpolate(
            self.modulus, [table[(x * x) % p] for x in range(p)]
        )

    def substitute_affine(
        self, a: int | FieldElement, b: int | FieldElement
    ) -> Polynomial:
        """The reduced representative of x -> g(a*x + b), a != 0.

        Preserves the degree and the value multiset (the substitution
        permutes the inputs), hence also the lifted value sum.
        """
        p = self.modulus.p
        av = _as_canonical(self.modulus, a)
        bv = _as_canonical(self.modulus, b)
        if av == 0:
            raise ValueError("substitution x -> a*x + b requires a != 0")
        table = self.value_table()
        return Polynomial.interpolate(
            self.modulus, [table[(av * x + bv) % p] for x in range(p)]
        )

    def value_multiplicity(self, c: int | FieldElement) -> int:
        """How many x in F_p satisfy g(x) = c."""
        cv = _as_canonical(self.modulus, c)
        return sum(1 for v in self.value_table() if v == cv)

    def coefficient_list(self) -> list[int]:
        """Low-to-high coefficients with trailing zeros trimmed, e.g. [1, 0, 1]."""
        d = self.degree
        if d is None:
            return []
        return [c.value for c in self.coefficients[: d + 1]]

    def __str__(self):
        return str(self.coefficient_list())

    def __repr__(self):
        return f"Polynomial({self.coefficient_list()} mod {self.modulus.p})"


def one_plus_legendre(modulus: PrimeModulus) -> Polynomial:
    """x**((p-1)/2) + 1: value 2 on nonzero squares, 1 at 0, 0 elsewhere.

    Its lifted value sum is exactly p, and its degree (p-1)/2 is the least
    possible for a non-constant function with that sum.
    """
    h = (modulus.p - 1) // 2
    return Polynomial.from_coefficients(modulus, [1] + [0] * (h - 1) + [1])
