import json
import random
from fractions import Fraction

import pytest

from ctlucas.parser import parse
from ctlucas.polytope import (
    CandidateExplosion,
    EmptySupport,
    SupportGeometry,
    contains_origin,
    g_value,
    integral_candidates,
    interior_points_at_scale,
    lp_min_sum,
    minimal_M,
)

from helpers import basic_solution_min, random_support

U = SupportGeometry.from_poly(parse("(1+x)*(x-1/x)", "x"))
APERY = SupportGeometry.from_poly(parse("(x+y)*(z+1)*(x+y+z)*(y+z+1)/(x*y*z)", "x,y,z"))
RECT = SupportGeometry.from_poly(parse("(1+x)*(1+y)*(1+(1+x)*(1+y)^2/(x*y))", "x,y"))
TRI = SupportGeometry.from_poly(parse("(1+x+y)*(1+(1+x+y)^2/(x*y))", "x,y"))
ETA = SupportGeometry.from_poly(parse(
    "(z*x+x*y-y*z-x-1)*(x*y+y*z-z*x-y-1)*(y*z+z*x-x*y-z-1)/(x*y*z)", "x,y,z"))


class TestGValue:
    def test_u_support_values(self):
        # support {-1, 0, 1, 2}; 5 = 2.5 * 2 and -1 = 1 * (-1)
        assert U.points == ((-1,), (0,), (1,), (2,))
        assert g_value(U, (5,)) == Fraction(5, 2)
        assert g_value(U, (-1,)) == 1
        assert g_value(U, (1,)) == Fraction(1, 2)
        assert g_value(U, (0,)) == 0

    def test_infeasible(self):
        geom = SupportGeometry.from_points([(1, 0), (0, 1)])
        assert g_value(geom, (-1, 0)) is None
        assert not lp_min_sum(geom, (-1, 0)).optimal

    def test_certificate(self):
        sol = lp_min_sum(ETA, (1, 1, 0))
        assert sol.optimal and sol.value == Fraction(2, 3)
        assert sol.verify(ETA, (1, 1, 0))

    def test_dimension_check(self):
        with pytest.raises(ValueError):
            lp_min_sum(U, (1, 2))

    def test_against_basic_solutions_seeded(self):
        rng = random.Random(7)
        for _ in range(60):
            pts = random_support(rng)
            geom = SupportGeometry.from_points(pts)
            v = tuple(rng.randint(-3, 3) for _ in range(geom.dim))
            sol = lp_min_sum(geom, v)
            assert sol.verify(geom, v)
            assert sol.value == basic_solution_min(geom.points, v)

    def test_positive_and_subadditive(self):
        rng = random.Random(11)
        for _ in range(40):
            geom = SupportGeometry.from_points(random_support(rng))
            d = geom.dim
            a = tuple(rng.randint(-2, 2) for _ in range(d))
            b = tuple(rng.randint(-2, 2) for _ in range(d))
            ga, gb = g_value(geom, a), g_value(geom, b)
            gab = g_value(geom, tuple(x + y for x, y in zip(a, b)))
            if any(a) and ga is not None:
                assert ga > 0
            if ga is not None and gb is not None:
                assert gab is not None and gab <= ga + gb
            if ga is not None:
                assert g_value(geom, tuple(3 * x for x in a)) == 3 * ga


class TestMinimalM:
    def test_u(self):
        r = minimal_M(U)
        assert r.m_min == 2 and r.g_min == Fraction(1, 2)
        assert [v for v, _ in r.interior_points] == [(1,)]
        assert r.contains_origin

    def test_apery(self):
        r = minimal_M(APERY)
        assert r.m_min == 1 and r.interior_points == ()

    def test_delannoy(self):
        r = minimal_M(RECT)
        assert r.m_min == 2
        assert [v for v, _ in r.interior_points] == [(0, 1)]
        assert minimal_M(TRI).m_min == 1

    def test_eta(self):
        r = minimal_M(ETA)
        assert r.m_min == 2
        got = dict(r.interior_points)
        for v in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]:
            assert got[v] == Fraction(1, 2)
        for v in [(1, 1, 0), (1, 0, 1), (0, 1, 1)]:
            assert got[v] == Fraction(2, 3)

    def test_predicate_and_monotonicity(self):
        rng = random.Random(3)
        for _ in range(30):
            geom = SupportGeometry.from_points(random_support(rng))
            M = minimal_M(geom).m_min
            assert interior_points_at_scale(geom, M) == []
            if M > 1:
                assert interior_points_at_scale(geom, M - 1) != []
            assert interior_points_at_scale(geom, M + 3) == []

    def test_empty_and_cap(self):
        with pytest.raises(EmptySupport):
            SupportGeometry.from_points([])
        with pytest.raises(EmptySupport):
            minimal_M(SupportGeometry(2, ()))
        with pytest.raises(CandidateExplosion):
            minimal_M(APERY, cap=10)

    def test_candidates_exclude_origin(self):
        cands = integral_candidates(U)
        assert (0,) not in cands and cands == sorted(cands) and len(cands) == 3

    def test_contains_origin(self):
        assert contains_origin(U)
        assert not contains_origin(SupportGeometry.from_points([(1, 0), (0, 1)]))

    def test_json(self):
        payload = minimal_M(U).to_json()
        assert json.loads(json.dumps(payload)) == {
            "m_min": 2,
            "g_min": "1/2",
            "interior_points": [{"v": [1], "g": "1/2"}],
            "contains_origin": True,
        }
