"""Strategies and independent oracles shared by the test modules."""

from fractions import Fraction
from itertools import combinations
import random

import sympy
from hypothesis import strategies as st

from ctlucas.laurent import LaurentPolynomial

PRIMES_SMALL = (2, 3, 5, 7)


@st.composite
def polynomials(draw, dim=None, max_terms=6, lo=-3, hi=3, coeff=9, modulus=None):
    d = draw(st.integers(1, 3)) if dim is None else dim
    exps = draw(st.lists(st.tuples(*[st.integers(lo, hi)] * d), max_size=max_terms, unique=True))
    coeffs = draw(st.lists(st.integers(-coeff, coeff).filter(bool), min_size=len(exps), max_size=len(exps)))
    return LaurentPolynomial(dict(zip(exps, coeffs)), d, modulus)


def random_poly(rng: random.Random, d=None, max_terms=6, lo=-3, hi=3, coeff=9, modulus=None,
                nonzero=False):
    d = d or rng.randint(1, 3)
    while True:
        n = rng.randint(1 if nonzero else 0, max_terms)
        terms = {tuple(rng.randint(lo, hi) for _ in range(d)): rng.choice([-1, 1]) * rng.randint(1, coeff)
                 for _ in range(n)}
        P = LaurentPolynomial(terms, d, modulus)
        if P or not nonzero:
            return P


def random_support(rng: random.Random, d=None, max_points=6, lo=-3, hi=3):
    d = d or rng.randint(1, 3)
    k = rng.randint(1, max_points)
    return [tuple(rng.randint(lo, hi) for _ in range(d)) for _ in range(k)]


def naive_expand(P: LaurentPolynomial, n: int) -> dict:
    """P**n by n-fold schoolbook multiplication on plain dicts (no binary powering)."""
    d = P.dim
    out = {(0,) * d: 1}
    for _ in range(n):
        nxt = {}
        for e1, c1 in out.items():
            for e2, c2 in P.as_dict().items():
                e = tuple(a + b for a, b in zip(e1, e2))
                nxt[e] = nxt.get(e, 0) + c1 * c2
        out = {e: c for e, c in nxt.items() if c}
    return out


def basic_solution_min(points, target):
    """min sum(lam) over basic feasible solutions of sum lam_i v_i = target.

    Enumerates every set of linearly independent support points (at most
    ``d`` of them), solves the square or overdetermined system with sympy and
    keeps nonnegative solutions.  Returns None when none exists.
    """
    d = len(target)
    if not any(target):
        return Fraction(0)
    pts = sorted(set(points))
    b = sympy.Matrix(target)
    best = None
    for r in range(1, d + 1):
        for S in combinations(range(len(pts)), r):
            A = sympy.Matrix([[pts[j][c] for j in S] for c in range(d)])
            if A.rank() < r:
                continue
            try:
                sol, params = A.gauss_jordan_solve(b)
            except ValueError:
                continue
            lam = [Fraction(int(q.p), int(q.q)) for q in sol]
            if all(x >= 0 for x in lam):
                s = sum(lam)
                best = s if best is None or s < best else best
    return best
