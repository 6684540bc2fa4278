"""Exact and modular integer arithmetic shared by the rest of the package.

Exact integers are plain Python ``int`` and rationals are
:class:`fractions.Fraction`; both are arbitrary precision and always
canonical.  Modular work happens in :class:`ModularInteger` with machine-word
moduli.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

__all__ = [
    "MAX_MODULUS",
    "InvalidModulus",
    "ModulusMismatch",
    "ModularInteger",
    "Rational",
    "binomial",
    "check_modulus",
    "is_prime",
    "mod_reduce",
    "rat_cmp",
]

MAX_MODULUS = 2**63

Rational = Fraction


class InvalidModulus(ValueError):
    """Modulus outside the supported range 2 <= m < 2**63."""


class ModulusMismatch(ValueError):
    """Binary operation on residues with different moduli."""


def check_modulus(m: int) -> int:
    if not isinstance(m, int) or isinstance(m, bool):
        raise InvalidModulus(f"modulus must be an integer, got {m!r}")
    if m < 2:
        raise InvalidModulus(f"modulus must be at least 2, got {m}")
    if m >= MAX_MODULUS:
        raise InvalidModulus(f"modulus must be below 2**63, got {m}")
    return m


@dataclass(frozen=True, slots=True)
class ModularInteger:
    residue: int
    modulus: int

    def __post_init__(self):
        check_modulus(self.modulus)
        if not 0 <= self.residue < self.modulus:
            raise ValueError(f"residue {self.residue} not reduced mod {self.modulus}")

    def _coerce(self, other) -> int:
        if isinstance(other, ModularInteger):
            if other.modulus != self.modulus:
                raise ModulusMismatch(f"mod {self.modulus} vs mod {other.modulus}")
            return other.residue
        if isinstance(other, int):
            return other % self.modulus
        return NotImplemented

    def _make(self, value: int) -> ModularInteger:
        return ModularInteger(value % self.modulus, self.modulus)

    def __add__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return self._make(self.residue + r)

    __radd__ = __add__

    def __sub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return self._make(self.residue - r)

    def __rsub__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return self._make(r - self.residue)

    def __mul__(self, other):
        r = self._coerce(other)
        if r is NotImplemented:
            return r
        return self._make(self.residue * r)

    __rmul__ = __mul__

    def __neg__(self):
        return self._make(-self.residue)

    def __pow__(self, e: int):
        return ModularInteger(pow(self.residue, e, self.modulus), self.modulus)

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.modulus})"


def mod_reduce(x: int, m: int) -> ModularInteger:
    """Reduce ``x`` into the canonical residue range ``[0, m)``.

    >>> mod_reduce(-1, 5)
    4 (mod 5)
    """
    check_modulus(m)
    return ModularInteger(x % m, m)


def rat_cmp(a: Fraction, b: Fraction) -> int:
    """Three-way exact comparison: -1, 0 or 1."""
    a, b = Fraction(a), Fraction(b)
    # denominators are positive, so cross-multiplying preserves the order
    lhs = a.numerator * b.denominator
    rhs = b.numerator * a.denominator
    return (lhs > rhs) - (lhs < rhs)


def binomial(n: int, k: int) -> int:
    """Binomial coefficient, zero outside ``0 <= k <= n``."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return comb(n, k)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True
