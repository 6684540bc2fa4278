"""Constant-term sequences and their partial Lucas congruences.

Sequences ``A(n) = ct[P(x)^n Q(x)]`` for Laurent polynomials ``P, Q`` are
generated exactly or modulo ``m``; the Newton polytope of ``P`` yields a digit
bound ``M`` such that ``A(pn + k) = A(n) A(k) mod p`` for every prime ``p``
and ``k < p/M``.  The :mod:`ctlucas.congruences` checks confirm this and
related congruences numerically against independent binomial-sum oracles.
"""

__version__ = "0.1.0"

from .laurent import ArityError, DegreeOfZero, LaurentPolynomial
from .parser import ParseContext, ParseError, format_poly, parse
from .polytope import (
    CandidateExplosion,
    EmptySupport,
    LPSolution,
    PolytopeReport,
    SupportGeometry,
    contains_origin,
    g_value,
    integral_candidates,
    interior_points_at_scale,
    lp_min_sum,
    minimal_M,
)
from .ring import InvalidModulus, ModularInteger, binomial, mod_reduce, rat_cmp
from .sequences import CTRepresentation, CatalogEntry, build_uab_poly, catalog, ct_at, ct_prefix, get_entry

__all__ = [
    "ArityError",
    "CTRepresentation",
    "CandidateExplosion",
    "CatalogEntry",
    "DegreeOfZero",
    "EmptySupport",
    "InvalidModulus",
    "LPSolution",
    "LaurentPolynomial",
    "ModularInteger",
    "ParseContext",
    "ParseError",
    "PolytopeReport",
    "SupportGeometry",
    "binomial",
    "build_uab_poly",
    "catalog",
    "contains_origin",
    "ct_at",
    "ct_prefix",
    "format_poly",
    "g_value",
    "get_entry",
    "integral_candidates",
    "interior_points_at_scale",
    "lp_min_sum",
    "minimal_M",
    "mod_reduce",
    "parse",
    "rat_cmp",
]
