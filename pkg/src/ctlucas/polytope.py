"""Newton-polytope digit bounds in exact rational arithmetic.

For a support ``S = {v_1, ..., v_t}`` the λ-sum minimum of a lattice point
``v`` is::

    g(v) = min { sum(lam) : sum(lam_i * v_i) = v, lam >= 0 }

A nonzero integral ``v`` is an interior point of ``(1/M) Newt(P)`` exactly
when ``g(v) < 1/M``, and the smallest ``M`` with no such point is the digit
bound reported by :func:`minimal_M`.  Every LP is solved by a two-phase
simplex over :class:`fractions.Fraction` with Bland's pivoting rule.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

from .laurent import LaurentPolynomial

__all__ = [
    "DEFAULT_CANDIDATE_CAP",
    "CandidateExplosion",
    "EmptySupport",
    "LPSolution",
    "PolytopeReport",
    "SupportGeometry",
    "contains_origin",
    "g_value",
    "integral_candidates",
    "interior_points_at_scale",
    "lp_min_sum",
    "minimal_M",
]

DEFAULT_CANDIDATE_CAP = 10**7

Point = tuple[int, ...]


class EmptySupport(ValueError):
    pass


class CandidateExplosion(RuntimeError):
    """The bounding box holds more lattice points than the configured cap."""


@dataclass(frozen=True)
class SupportGeometry:
    dim: int
    points: tuple[Point, ...]

    def __post_init__(self):
        pts = tuple(sorted({tuple(int(c) for c in p) for p in self.points}))
        for p in pts:
            if len(p) != self.dim:
                raise ValueError(f"point {p} does not have dimension {self.dim}")
        object.__setattr__(self, "points", pts)

    @classmethod
    def from_poly(cls, P: LaurentPolynomial) -> SupportGeometry:
        return cls(P.dim, tuple(P.support()))

    @classmethod
    def from_points(cls, points) -> SupportGeometry:
        points = [tuple(p) for p in points]
        if not points:
            raise EmptySupport("cannot infer the dimension of an empty point set")
        return cls(len(points[0]), tuple(points))

    @cached_property
    def bounding_box(self) -> tuple[tuple[int, int], ...]:
        """Per-coordinate ``(lo, hi)`` of the support together with the origin."""
        return tuple(
            (min([0] + [p[c] for p in self.points]), max([0] + [p[c] for p in self.points]))
            for c in range(self.dim)
        )

    def box_size(self) -> int:
        return math.prod(hi - lo + 1 for lo, hi in self.bounding_box)


@dataclass(frozen=True)
class LPSolution:
    """Result of ``min sum(lam)`` subject to ``A lam = target, lam >= 0``.

    At optimality ``dual`` is a vector ``y`` with ``1 - y.v_i >= 0`` for all
    support points (the reduced costs) and ``y.target == value``, which
    certifies optimality independently of the pivoting history.
    """

    status: str  # "optimal" or "infeasible"
    value: Fraction | None = None
    witness: tuple[Fraction, ...] = ()
    dual: tuple[Fraction, ...] = ()
    reduced_costs: tuple[Fraction, ...] = ()

    @property
    def optimal(self) -> bool:
        return self.status == "optimal"

    def verify(self, geom: SupportGeometry, target) -> bool:
        """Re-check feasibility, nonnegativity and the dual certificate exactly."""
        if not self.optimal:
            return True
        target = tuple(target)
        if len(self.witness) != len(geom.points):
            return False
        if any(lam < 0 for lam in self.witness):
            return False
        for c in range(geom.dim):
            if sum(lam * p[c] for lam, p in zip(self.witness, geom.points)) != target[c]:
                return False
        if sum(self.witness) != self.value:
            return False
        for p, r in zip(geom.points, self.reduced_costs):
            if r != 1 - sum(y * pc for y, pc in zip(self.dual, p)) or r < 0:
                return False
        return sum(y * t for y, t in zip(self.dual, target)) == self.value


def _solve_square(M: list[list[Fraction]], rhs: list[Fraction]) -> list[Fraction]:
    n = len(M)
    aug = [row[:] + [r] for row, r in zip(M, rhs)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [a / pv for a in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


class _Simplex:
    """Dense-tableau two-phase simplex for ``min c.x, A x = b, x >= 0``."""

    def __init__(self, A: list[list[int]], b: list[int], c: list[int]):
        self.m = len(A)
        self.n = len(c)
        self.A = A
        self.b = b
        self.c = [Fraction(v) for v in c]
        rows = []
        for i in range(self.m):
            sign = -1 if b[i] < 0 else 1
            art = [Fraction(0)] * self.m
            art[i] = Fraction(1)
            rows.append([Fraction(sign * a) for a in A[i]] + art + [Fraction(sign * b[i])])
        self.T = rows
        self.basis = [self.n + i for i in range(self.m)]
        self.rows = list(range(self.m))  # original row index of each tableau row

    def _pivot(self, r: int, j: int) -> None:
        T = self.T
        pv = T[r][j]
        T[r] = [a / pv for a in T[r]]
        for i in range(len(T)):
            if i != r and T[i][j] != 0:
                f = T[i][j]
                T[i] = [a - f * b for a, b in zip(T[i], T[r])]
        self.basis[r] = j

    def _reduced_costs(self, cost: list[Fraction], allowed: range) -> dict[int, Fraction]:
        cb = [cost[k] for k in self.basis]
        out = {}
        for j in allowed:
            out[j] = cost[j] - sum(cb[i] * self.T[i][j] for i in range(len(self.T)))
        return out

    def _run(self, cost: list[Fraction], allowed: range) -> None:
        while True:
            rc = self._reduced_costs(cost, allowed)
            entering = next((j for j in allowed if rc[j] < 0), None)  # Bland: lowest index
            if entering is None:
                return
            best = None
            for i, row in enumerate(self.T):
                a = row[entering]
                if a > 0:
                    key = (row[-1] / a, self.basis[i])
                    if best is None or key < best[0]:
                        best = (key, i)
            if best is None:
                raise ArithmeticError("unbounded LP")  # impossible for nonnegative costs
            self._pivot(best[1], entering)

    def solve(self) -> LPSolution:
        n, m = self.n, self.m
        phase1 = [Fraction(0)] * n + [Fraction(1)] * m
        self._run(phase1, range(n + m))
        infeas = sum(self.T[i][-1] for i in range(len(self.T)) if self.basis[i] >= n)
        if infeas > 0:
            return LPSolution("infeasible")
        # drive zero-level artificials out of the basis; drop redundant rows
        i = 0
        while i < len(self.T):
            if self.basis[i] >= n:
                j = next((j for j in range(n) if self.T[i][j] != 0), None)
                if j is None:
                    del self.T[i], self.basis[i], self.rows[i]
                    continue
                self._pivot(i, j)
            i += 1
        self.T = [row[:n] + row[-1:] for row in self.T]
        self._run(self.c, range(n))
        x = [Fraction(0)] * n
        for i, j in enumerate(self.basis):
            x[j] = self.T[i][-1]
        B = [[Fraction(self.A[r][j]) for r in self.rows] for j in self.basis]  # B^T
        y_kept = _solve_square(B, [self.c[j] for j in self.basis]) if self.basis else []
        y = [Fraction(0)] * m
        for r, val in zip(self.rows, y_kept):
            y[r] = val
        reduced = tuple(self.c[j] - sum(y[r] * self.A[r][j] for r in range(m)) for j in range(n))
        value = sum((self.c[j] * x[j] for j in range(n)), Fraction(0))
        return LPSolution("optimal", value, tuple(x), tuple(y), reduced)


def _solve_lp(points, rows_extra, target) -> LPSolution:
    dim = len(target)
    A = [[p[c] for p in points] for c in range(dim)] + rows_extra
    return _Simplex(A, list(target), [1] * len(points)).solve()


def lp_min_sum(geom: SupportGeometry, target) -> LPSolution:
    """Minimal ``sum(lam)`` with ``sum(lam_i * v_i) = target`` and ``lam >= 0``."""
    target = tuple(int(t) for t in target)
    if len(target) != geom.dim:
        raise ValueError(f"target {target} does not have dimension {geom.dim}")
    if not geom.points:
        if any(target):
            return LPSolution("infeasible")
        return LPSolution("optimal", Fraction(0), (), (Fraction(0),) * geom.dim, ())
    return _solve_lp(geom.points, [], target)


def g_value(geom: SupportGeometry, v) -> Fraction | None:
    """λ-sum minimum of ``v``; ``None`` when ``v`` is not a nonnegative combination."""
    sol = lp_min_sum(geom, v)
    return sol.value if sol.optimal else None


def contains_origin(geom: SupportGeometry) -> bool:
    if not geom.points:
        raise EmptySupport("support is empty")
    target = (0,) * geom.dim + (1,)
    A = [[p[c] for p in geom.points] for c in range(geom.dim)] + [[1] * len(geom.points)]
    sol = _Simplex(A, list(target), [0] * len(geom.points)).solve()
    return sol.optimal


def integral_candidates(geom: SupportGeometry, cap: int = DEFAULT_CANDIDATE_CAP) -> list[Point]:
    """All nonzero lattice points of the bounding box, in ascending lex order.

    Any ``v`` with finite ``g(v) <= 1`` lies in the box, so this is a
    complete search space for the interior-point test.
    """
    if not geom.points:
        return []
    size = geom.box_size()
    if size > cap:
        raise CandidateExplosion(f"bounding box has {size} lattice points (cap {cap})")
    origin = (0,) * geom.dim
    ranges = [range(lo, hi + 1) for lo, hi in geom.bounding_box]
    return [v for v in itertools.product(*ranges) if v != origin]


def _g_table(geom: SupportGeometry, cap: int) -> list[tuple[Point, Fraction]]:
    table = []
    for v in integral_candidates(geom, cap):
        g = g_value(geom, v)
        if g is not None:
            table.append((v, g))
    return table


def interior_points_at_scale(geom: SupportGeometry, M: int,
                             cap: int = DEFAULT_CANDIDATE_CAP) -> list[tuple[Point, Fraction]]:
    """Nonzero integral ``v`` with ``g(v) < 1/M``, with their g-values."""
    if M < 1:
        raise ValueError(f"scale needs M >= 1, got {M}")
    bound = Fraction(1, M)
    return [(v, g) for v, g in _g_table(geom, cap) if g < bound]


def _frac_str(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class PolytopeReport:
    m_min: int
    g_min: Fraction | None
    interior_points: tuple[tuple[Point, Fraction], ...]
    contains_origin: bool
    support_size: int = 0
    candidates: int = field(default=0, compare=False)

    def to_json(self) -> dict:
        return {
            "m_min": self.m_min,
            "g_min": None if self.g_min is None else _frac_str(self.g_min),
            "interior_points": [{"v": list(v), "g": _frac_str(g)} for v, g in self.interior_points],
            "contains_origin": self.contains_origin,
        }


def minimal_M(geom: SupportGeometry, cap: int = DEFAULT_CANDIDATE_CAP) -> PolytopeReport:
    """Smallest ``M >= 1`` such that no nonzero lattice point has ``g(v) < 1/M``."""
    if not geom.points:
        raise EmptySupport("support is empty")
    table = _g_table(geom, cap)
    g_min = min((g for _, g in table), default=None)
    if g_min is None or g_min >= 1:
        m_min = 1
    else:
        m_min = math.ceil(1 / g_min)
    interior = tuple((v, g) for v, g in table if g < 1)
    return PolytopeReport(m_min, g_min, interior, contains_origin(geom),
                          len(geom.points), geom.box_size() - 1)
