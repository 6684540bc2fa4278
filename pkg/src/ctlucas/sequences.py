"""Constant-term sequences ``A(n) = ct[P^n Q]``, binomial-sum oracles and the catalog.

The oracles are plain big-integer binomial sums and never touch the Laurent
machinery, so they can serve as ground truth for :func:`ct_prefix`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path

from . import _kernels
from .laurent import ArityError, LaurentPolynomial
from .parser import ParseContext, parse
from .ring import binomial, check_modulus

__all__ = [
    "CTRepresentation",
    "CatalogEntry",
    "InvalidParameters",
    "ORACLES",
    "build_uab_poly",
    "catalog",
    "ct_at",
    "ct_prefix",
    "dump_catalog",
    "get_entry",
    "load_catalog",
    "oracle_apery",
    "oracle_delannoy3",
    "oracle_u",
    "oracle_uab",
    "oracle_w",
]


class InvalidParameters(ValueError):
    pass


@dataclass(frozen=True)
class CTRepresentation:
    """The pair ``(P, Q)`` of ``A(n) = ct[P^n Q]``; ``Q`` defaults to 1."""

    P: LaurentPolynomial
    Q: LaurentPolynomial | None = None

    def __post_init__(self):
        if self.P.is_zero():
            raise InvalidParameters("P must be nonzero")
        if self.P.modulus is not None:
            raise ArityError("representations carry exact integer coefficients")
        if self.Q is None:
            object.__setattr__(self, "Q", LaurentPolynomial.constant(1, self.P.dim))
        elif self.Q.dim != self.P.dim or self.Q.modulus is not None:
            raise ArityError("P and Q must share dimension and ring")

    @classmethod
    def from_strings(cls, poly: str, q: str | None = None, names=("x",)) -> CTRepresentation:
        ctx = names if isinstance(names, ParseContext) else ParseContext(names)
        P = parse(poly, ctx)
        Q = parse(q, ctx) if q else None
        return cls(P, Q)

    @property
    def dim(self) -> int:
        return self.P.dim

    @property
    def q_is_one(self) -> bool:
        return self.Q == LaurentPolynomial.constant(1, self.dim)


def ct_prefix(rep: CTRepresentation, N: int, modulus: int | None = None,
              backend: str | None = None) -> list[int]:
    """``[ct(P^0 Q), ..., ct(P^N Q)]``, exact or as residues mod ``modulus``.

    The running power is multiplied by ``P`` once per step; see
    :mod:`ctlucas._kernels` for the backends.
    """
    if N < 0:
        raise ValueError(f"N must be nonnegative, got {N}")
    if modulus is not None:
        check_modulus(modulus)
    return _kernels.constant_terms(rep.P.as_dict(), rep.Q.as_dict(), rep.dim, N,
                                   modulus, backend)


def ct_at(rep: CTRepresentation, n: int, modulus: int | None = None) -> int:
    """Single value ``ct(P^n Q)`` by binary powering of the sparse polynomial."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    P, Q = rep.P, rep.Q
    if modulus is not None:
        P, Q = P.reduce_mod(modulus), Q.reduce_mod(modulus)
    Pn = P ** n
    total = sum(c * Pn.coeff(tuple(-v for v in e)) for e, c in Q.terms())
    return total % modulus if modulus is not None else total


def oracle_u(n: int) -> int:
    if n < 0:
        raise InvalidParameters(f"n must be nonnegative, got {n}")
    return sum((-1) ** k * binomial(n, k) * binomial(2 * n, k) for k in range(n + 1))


def oracle_uab(eps: int, a: int, b: int, n: int) -> int:
    if eps not in (0, 1) or a < 1 or b < 0 or n < 0:
        raise InvalidParameters(f"need eps in {{0, 1}}, a >= 1, b >= 0, n >= 0; got {(eps, a, b, n)}")
    sign = -1 if eps else 1
    return sum(sign ** k * binomial(n, k) ** a * binomial(2 * n, k) ** b for k in range(n + 1))


def oracle_w(n: int) -> int:
    # the defining sum runs over 0 <= k <= n - 1, so n = 0 is rejected
    if n < 1:
        raise InvalidParameters(f"w(n) is defined for n >= 1, got {n}")
    return sum((-1) ** k * binomial(2 * n - 1, k) * binomial(n - 1, k) for k in range(n))


def oracle_apery(n: int) -> int:
    if n < 0:
        raise InvalidParameters(f"n must be nonnegative, got {n}")
    return sum(binomial(n, k) ** 2 * binomial(n + k, k) ** 2 for k in range(n + 1))


def oracle_delannoy3(n: int) -> int:
    if n < 0:
        raise InvalidParameters(f"n must be nonnegative, got {n}")
    return sum(binomial(n, k) * binomial(n + k, k) * binomial(n + 2 * k, k) for k in range(n + 1))


def _w_shifted(n: int) -> int:
    return oracle_w(n + 1)


ORACLES = {
    "u": lambda n: oracle_u(n),
    "uab": lambda n, eps, a, b: oracle_uab(eps, a, b, n),
    "w": lambda n: oracle_w(n),
    "w_shifted": _w_shifted,
    "apery": lambda n: oracle_apery(n),
    "delannoy3": lambda n: oracle_delannoy3(n),
}


def build_uab_poly(eps: int, a: int, b: int) -> CTRepresentation:
    """Representation of ``u_{a,b}^eps`` in ``a + b - 1`` variables.

    ``P = (1 + (-1)^eps / (x_1 ... x_d)) * prod_{i<a} (1 + x_i) * prod_{a<=j<a+b} (1 + x_j)^2``.
    For ``(a, b) = (1, 0)`` there are no variables and ``P`` is the constant
    ``1 + (-1)^eps`` (placed in one dummy variable); for ``eps = 1`` that
    constant vanishes and no representation with nonzero ``P`` exists.
    """
    if eps not in (0, 1) or a < 1 or b < 0:
        raise InvalidParameters(f"need eps in {{0, 1}}, a >= 1, b >= 0; got {(eps, a, b)}")
    sign = -1 if eps else 1
    d = a + b - 1
    if d == 0:
        if eps:
            raise InvalidParameters("u_{1,0}^1 has P = 0; it is the sequence 1, 0, 0, ...")
        return CTRepresentation(LaurentPolynomial.constant(2, 1))
    one = LaurentPolynomial.constant(1, d)
    xs = [LaurentPolynomial.variable(i, d) for i in range(d)]
    P = one + LaurentPolynomial.monomial([-1] * d, sign)
    for i in range(a - 1):
        P = P * (one + xs[i])
    for j in range(a - 1, d):
        P = P * (one + xs[j]) ** 2
    return CTRepresentation(P)


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    vars: tuple[str, ...]
    poly: str
    q: str = "1"
    oracle: dict | None = None
    documented_m: int | None = None
    companion: str | None = None
    note: str = field(default="", compare=False)

    @cached_property
    def context(self) -> ParseContext:
        return ParseContext(self.vars)

    @cached_property
    def representation(self) -> CTRepresentation:
        return CTRepresentation.from_strings(self.poly, self.q, self.context)

    @cached_property
    def companion_poly(self) -> LaurentPolynomial | None:
        return parse(self.companion, self.context) if self.companion else None

    @property
    def parameters(self) -> dict:
        return dict(self.oracle.get("params", {})) if self.oracle else {}

    def has_oracle(self) -> bool:
        return self.oracle is not None

    def oracle_at(self, n: int) -> int:
        if self.oracle is None:
            raise LookupError(f"catalog entry {self.name!r} has no oracle")
        fn = ORACLES[self.oracle["name"]]
        return fn(n, **self.parameters)

    def oracle_values(self, N: int) -> list[int]:
        return [self.oracle_at(n) for n in range(N + 1)]

    def to_json(self) -> dict:
        out = {
            "name": self.name,
            "vars": list(self.vars),
            "poly": self.poly,
            "q": self.q,
            "oracle": self.oracle,
            "documented_m": self.documented_m,
        }
        if self.companion:
            out["companion"] = self.companion
        if self.note:
            out["note"] = self.note
        return out

    @classmethod
    def from_json(cls, obj: dict) -> CatalogEntry:
        try:
            entry = cls(
                name=obj["name"],
                vars=tuple(obj["vars"]),
                poly=obj["poly"],
                q=obj.get("q") or "1",
                oracle=obj.get("oracle"),
                documented_m=obj.get("documented_m"),
                companion=obj.get("companion"),
                note=obj.get("note", ""),
            )
        except KeyError as exc:
            raise InvalidParameters(f"catalog entry is missing field {exc}") from None
        if entry.oracle is not None and entry.oracle.get("name") not in ORACLES:
            raise InvalidParameters(f"unknown oracle {entry.oracle.get('name')!r} in {entry.name!r}")
        return entry


def load_catalog(path: str | Path | None = None) -> list[CatalogEntry]:
    """Load catalog entries from ``path``, or the built-in copy when omitted."""
    if path is None:
        text = resources.files("ctlucas").joinpath("data/catalog.json").read_text()
    else:
        text = Path(path).read_text()
    return [CatalogEntry.from_json(obj) for obj in json.loads(text)]


def dump_catalog(entries, path: str | Path) -> None:
    Path(path).write_text(json.dumps([e.to_json() for e in entries], indent=2) + "\n")


def catalog() -> list[CatalogEntry]:
    return load_catalog()


def get_entry(name: str, entries=None) -> CatalogEntry:
    for e in entries if entries is not None else catalog():
        if e.name == name:
            return e
    raise KeyError(f"no catalog entry named {name!r}")
