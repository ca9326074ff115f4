"""Exact arithmetic in prime fields F_p.

Every element is stored as its canonical representative in {0, ..., p-1};
there is no lazy reduction anywhere. Elements of different fields never
combine silently: mixing moduli raises ValueError.
"""

from __future__ import annotations

from dataclasses import dataclass

MAX_MODULUS = 2**31


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test, adequate for n <= 2**31."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True, slots=True)
class PrimeModulus:
    """An odd prime p in [3, 2**31], validated at construction."""

    p: int

    def __post_init__(self):
        if not isinstance(self.p, int) or isinstance(self.p, bool):
            raise TypeError(f"modulus must be an int, got {type(self.p).__name__}")
        if self.p < 3 or self.p > MAX_MODULUS:
            raise ValueError(f"modulus must be an odd prime in [3, 2**31], got {self.p}")
        if not is_prime(self.p):
            raise ValueError(f"modulus must be prime, got {self.p}")

    def element(self, value: int) -> FieldElement:
        """The canonical element congruent to value."""
        return FieldElement(value % self.p, self)

    def elements(self):
        """All p elements, in canonical order 0, 1, ..., p-1."""
        return (FieldElement(v, self) for v in range(self.p))

    @property
    def zero(self) -> FieldElement:
        return FieldElement(0, self)

    @property
    def one(self) -> FieldElement:
        return FieldElement(1, self)

    def __repr__(self):
        return f"PrimeModulus({self.p})"


@dataclass(frozen=True, slots=True)
class FieldElement:
    """A canonical residue in F_p.

    The constructor requires an already-canonical value; use
    PrimeModulus.element to reduce an arbitrary integer.
    """

    value: int
    modulus: PrimeModulus

    def __post_init__(self):
        if not 0 <= self.value < self.modulus.p:
            raise ValueError(
                f"value {self.value} is not canonical mod {self.modulus.p}; "
                "use PrimeModulus.element to reduce"
            )

    def _same_field(self, other: FieldElement) -> int:
        if self.modulus != other.modulus:
            raise ValueError(
                f"modulus mismatch: {self.modulus.p} vs {other.modulus.p}"
            )
        return self.modulus.p

    def __add__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        p = self._same_field(other)
        return FieldElement((self.value + other.value) % p, self.modulus)

    def __sub__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        p = self._same_field(other)
        return FieldElement((self.value - other.value) % p, self.modulus)

    def __mul__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        p = self._same_field(other)
        return FieldElement((self.value * other.value) % p, self.modulus)

    def __truediv__(self, other):
        if not isinstance(other, FieldElement):
            return NotImplemented
        self._same_field(other)
        return self * other.inverse()

    def __neg__(self):
        return FieldElement((-self.value) % self.modulus.p, self.modulus)

    def inverse(self) -> FieldElement:
        """The multiplicative inverse; division by zero is a hard error."""
        if self.value == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.modulus.p}")
        return FieldElement(pow(self.value, -1, self.modulus.p), self.modulus)

    def legendre(self) -> int:
        """+1 for a nonzero square, -1 for a nonsquare, 0 for zero.

        Computed as the canonical power a**((p-1)/2) mapped through
        {1 -> +1, p-1 -> -1, 0 -> 0}.
        """
        p = self.modulus.p
        e = pow(self.value, (p - 1) // 2, p)
        if e == 0:
            return 0
        return 1 if e == 1 else -1

    def lift(self) -> int:
        """The canonical integer representative in {0, ..., p-1}."""
        return self.value

    def __bool__(self):
        return self.value != 0

    def __str__(self):
        return str(self.value)

    def __repr__(self):
        return f"FieldElement({self.value} mod {self.modulus.p})"
