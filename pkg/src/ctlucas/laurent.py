"""Sparse multivariate Laurent polynomials over ZZ or ZZ/m.

A polynomial is a map from exponent tuples to nonzero coefficients.  Over
ZZ/m the coefficients are stored as canonical residues in ``[0, m)``.
Instances are immutable; every operation returns a new polynomial.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping

from .ring import check_modulus

__all__ = [
    "ArityError",
    "DegreeOfZero",
    "LaurentPolynomial",
    "add",
    "cartier",
    "coeff",
    "constant_term",
    "degree_sup",
    "frobenius_substitute",
    "mul",
    "power",
    "reduce_mod",
]

Exponent = tuple[int, ...]


class ArityError(ValueError):
    """Operands disagree in dimension or coefficient ring."""


class DegreeOfZero(ValueError):
    pass


class LaurentPolynomial:
    """Laurent polynomial in ``dim`` variables.

    ``modulus`` is ``None`` for exact integer coefficients, otherwise the
    coefficient ring is ZZ/modulus.

    >>> x = LaurentPolynomial.variable(0, 1)
    >>> (1 + x) * (x - x**-1) == LaurentPolynomial({(2,): 1, (1,): 1, (0,): -1, (-1,): -1}, 1)
    True
    """

    __slots__ = ("_dim", "_modulus", "_terms", "_hash")

    def __init__(self, terms: Mapping[Exponent, int] | Iterable[tuple[Exponent, int]] = (),
                 dim: int = 1, modulus: int | None = None):
        if dim < 1:
            raise ValueError(f"dimension must be at least 1, got {dim}")
        if modulus is not None:
            check_modulus(modulus)
        items = terms.items() if isinstance(terms, Mapping) else terms
        clean: dict[Exponent, int] = {}
        for e, c in items:
            e = tuple(int(v) for v in e)
            if len(e) != dim:
                raise ArityError(f"exponent {e} has length {len(e)}, expected {dim}")
            c = int(c)
            clean[e] = clean.get(e, 0) + c
        if modulus is not None:
            clean = {e: c % modulus for e, c in clean.items()}
        self._terms = {e: c for e, c in clean.items() if c}
        self._dim = dim
        self._modulus = modulus
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict[Exponent, int], dim: int, modulus: int | None) -> LaurentPolynomial:
        # trusted constructor: terms already reduced and zero-free
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._dim = dim
        obj._modulus = modulus
        obj._hash = None
        return obj

    @classmethod
    def constant(cls, c: int, dim: int = 1, modulus: int | None = None) -> LaurentPolynomial:
        return cls({(0,) * dim: c}, dim, modulus)

    @classmethod
    def monomial(cls, exponent: Iterable[int], c: int = 1,
                 modulus: int | None = None) -> LaurentPolynomial:
        exponent = tuple(exponent)
        return cls({exponent: c}, len(exponent), modulus)

    @classmethod
    def variable(cls, i: int, dim: int, modulus: int | None = None) -> LaurentPolynomial:
        e = [0] * dim
        e[i] = 1
        return cls({tuple(e): 1}, dim, modulus)

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def modulus(self) -> int | None:
        return self._modulus

    def terms(self) -> list[tuple[Exponent, int]]:
        """Terms in canonical order (descending lexicographic exponents)."""
        return sorted(self._terms.items(), reverse=True)

    def as_dict(self) -> dict[Exponent, int]:
        return dict(self._terms)

    def support(self) -> list[Exponent]:
        return sorted(self._terms, reverse=True)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPolynomial.constant(other, self._dim, self._modulus)
        if not isinstance(other, LaurentPolynomial):
            return NotImplemented
        return (self._dim == other._dim and self._modulus == other._modulus
                and self._terms == other._terms)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self._dim, self._modulus, frozenset(self._terms.items())))
        return self._hash

    def __repr__(self):
        from .parser import format_poly

        ring = "ZZ" if self._modulus is None else f"ZZ/{self._modulus}"
        return f"LaurentPolynomial({format_poly(self)!r}, dim={self._dim}, ring={ring})"

    def _check(self, other: LaurentPolynomial) -> None:
        if self._dim != other._dim:
            raise ArityError(f"dimension mismatch: {self._dim} vs {other._dim}")
        if self._modulus != other._modulus:
            raise ArityError(f"ring mismatch: mod {self._modulus} vs mod {other._modulus}")

    def _lift(self, other) -> LaurentPolynomial:
        if isinstance(other, int):
            return LaurentPolynomial.constant(other, self._dim, self._modulus)
        if isinstance(other, LaurentPolynomial):
            self._check(other)
            return other
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        m = self._modulus
        out = dict(self._terms)
        for e, c in other._terms.items():
            s = out.get(e, 0) + c
            if m is not None:
                s %= m
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        return LaurentPolynomial._raw(out, self._dim, m)

    __radd__ = __add__

    def __neg__(self):
        m = self._modulus
        if m is None:
            out = {e: -c for e, c in self._terms.items()}
        else:
            out = {e: (-c) % m for e, c in self._terms.items()}
        return LaurentPolynomial._raw(out, self._dim, m)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        m = self._modulus
        a, b = self._terms, other._terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Exponent, int] = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                e = tuple(i + j for i, j in zip(ea, eb))
                out[e] = get(e, 0) + ca * cb
        if m is None:
            out = {e: c for e, c in out.items() if c}
        else:
            out = {e: c % m for e, c in out.items() if c % m}
        return LaurentPolynomial._raw(out, self._dim, m)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._terms) != 1:
                raise ValueError("negative power of a polynomial with more than one term")
            (e, c), = self._terms.items()
            if c not in (1, -1) and not (self._modulus is not None and c == self._modulus - 1):
                raise ValueError("negative power needs a unit coefficient")
            k = -n
            # c is its own inverse here
            return LaurentPolynomial({tuple(-v * k for v in e): c ** k},
                                     self._dim, self._modulus)
        result = LaurentPolynomial.constant(1, self._dim, self._modulus)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def constant_term(self) -> int:
        return self._terms.get((0,) * self._dim, 0)

    def coeff(self, v: Iterable[int]) -> int:
        v = tuple(v)
        if len(v) != self._dim:
            raise ArityError(f"exponent {v} has length {len(v)}, expected {self._dim}")
        return self._terms.get(v, 0)

    def cartier(self, p: int) -> LaurentPolynomial:
        """Keep terms whose exponents are all divisible by ``p``; divide them by ``p``."""
        if p < 2:
            raise ValueError(f"Cartier operator needs p >= 2, got {p}")
        out = {tuple(v // p for v in e): c for e, c in self._terms.items()
               if all(v % p == 0 for v in e)}
        return LaurentPolynomial._raw(out, self._dim, self._modulus)

    def frobenius_substitute(self, p: int) -> LaurentPolynomial:
        """Substitute ``x_i -> x_i**p`` for every variable."""
        if p < 2:
            raise ValueError(f"Frobenius substitution needs p >= 2, got {p}")
        out = {tuple(v * p for v in e): c for e, c in self._terms.items()}
        return LaurentPolynomial._raw(out, self._dim, self._modulus)

    def reduce_mod(self, m: int) -> LaurentPolynomial:
        check_modulus(m)
        if self._modulus is not None and self._modulus % m:
            raise ArityError(f"cannot reduce mod {self._modulus} coefficients to mod {m}")
        return LaurentPolynomial(self._terms, self._dim, m)

    def lift(self) -> LaurentPolynomial:
        """Forget the modulus, keeping the canonical residues as integers."""
        return LaurentPolynomial._raw(dict(self._terms), self._dim, None)

    def degree_sup(self) -> int:
        if not self._terms:
            raise DegreeOfZero("degree of the zero polynomial is undefined")
        return max(abs(v) for e in self._terms for v in e)

    def bounding_box(self) -> tuple[Exponent, Exponent]:
        """Per-coordinate (min, max) exponents over the support."""
        if not self._terms:
            raise DegreeOfZero("bounding box of the zero polynomial is undefined")
        lo = tuple(min(e[i] for e in self._terms) for i in range(self._dim))
        hi = tuple(max(e[i] for e in self._terms) for i in range(self._dim))
        return lo, hi


def add(P: LaurentPolynomial, Q: LaurentPolynomial) -> LaurentPolynomial:
    P._check(Q)
    return P + Q


def mul(P: LaurentPolynomial, Q: LaurentPolynomial) -> LaurentPolynomial:
    P._check(Q)
    return P * Q


def power(P: LaurentPolynomial, n: int) -> LaurentPolynomial:
    if n < 0:
        raise ValueError(f"power needs n >= 0, got {n}")
    return P ** n


def constant_term(P: LaurentPolynomial) -> int:
    return P.constant_term()


def coeff(P: LaurentPolynomial, v: Iterable[int]) -> int:
    return P.coeff(v)


def cartier(P: LaurentPolynomial, p: int) -> LaurentPolynomial:
    return P.cartier(p)


def frobenius_substitute(P: LaurentPolynomial, p: int) -> LaurentPolynomial:
    return P.frobenius_substitute(p)


def reduce_mod(P: LaurentPolynomial, m: int) -> LaurentPolynomial:
    return P.reduce_mod(m)


def degree_sup(P: LaurentPolynomial) -> int:
    return P.degree_sup()
