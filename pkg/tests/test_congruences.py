import json
import random
from math import comb

import pytest

from ctlucas.congruences import (
    ExcludedParameterTriple,
    ModulusTooLarge,
    NotPrime,
    SoundnessAlarm,
    cartier_identity_holds,
    cartier_residue,
    check_companion,
    check_digit_product,
    check_gauss,
    check_lucasx_with_q,
    check_partial_lucas,
    check_wolstenholme,
    frobenius_property_check,
)
from ctlucas.laurent import LaurentPolynomial as LP
from ctlucas.parser import parse
from ctlucas.sequences import CTRepresentation, get_entry, oracle_apery

from helpers import random_poly

U = get_entry("u").representation
APERY = get_entry("apery").representation
ONE_PLUS_X = parse("1+x", "x")


def u_direct(n):
    return sum((-1) ** k * comb(n, k) * comb(2 * n, k) for k in range(n + 1))


def w_direct(n):
    return sum((-1) ** k * comb(2 * n - 1, k) * comb(n - 1, k) for k in range(n))


class TestPartialLucas:
    def test_u_p7(self):
        r = check_partial_lucas(U, 7, 20, M=2)
        assert all(r.verdict(k).passed for k in range(4))
        assert r.guaranteed_k == 4 and r.observed_k >= 4 and not r.soundness_alarm

    def test_apery_full(self):
        r = check_partial_lucas(APERY, 5, 8, M=1)
        assert r.all_passed and r.guaranteed_k == 5 and r.observed_k == 5

    def test_default_M_from_polytope(self):
        assert check_partial_lucas(U, 5, 4).m_used == 2

    def test_failure_above_threshold_is_reported(self):
        # k = 4 lies above p/2 for p = 7 and is not a Lucas digit for u
        r = check_partial_lucas(U, 7, 20, M=2)
        bad = [v for v in r.verdicts if not v.passed]
        assert bad and all(v.k >= 4 for v in bad)
        ce = bad[0].counterexample
        n, k = ce.n, bad[0].k
        assert ce.lhs == u_direct(7 * n + k) % 7
        assert ce.rhs == u_direct(n) * u_direct(k) % 7

    def test_alarm(self):
        # forcing M = 1 claims every digit, which u does not satisfy
        r = check_partial_lucas(U, 7, 20, M=1)
        assert r.soundness_alarm
        with pytest.raises(SoundnessAlarm):
            r.raise_on_alarm()

    def test_not_prime(self):
        with pytest.raises(NotPrime):
            check_partial_lucas(U, 9, 3)


class TestDigitProduct:
    def test_u_p5(self):
        r = check_digit_product(U, 5, 2, 60)
        assert r.verdict(0).passed and r.verdict(1).passed and r.verdict(2).passed
        assert u_direct(31) % 5 == u_direct(1) ** 3 % 5

    def test_apery_p3(self):
        r = check_digit_product(APERY, 3, 1, 40)
        assert r.all_passed and not r.soundness_alarm


class TestGauss:
    def test_examples(self):
        assert u_direct(5) % 5 == u_direct(1) % 5
        assert u_direct(9) % 9 == u_direct(3) % 9
        r = check_gauss(U, 3, 2, 3)
        assert r.all_passed and r.guaranteed_k == 3
        r = check_gauss(oracle_apery, 5, 1, 2)
        assert r.all_passed

    def test_modulus_too_large(self):
        with pytest.raises(ModulusTooLarge):
            check_gauss(U, 3, 40, 1)


class TestCartierResidue:
    def test_r0(self):
        assert cartier_residue(U, 5, 0) == LP.constant(1).reduce_mod(5)

    def test_low_digits_are_constants(self):
        for p in (5, 7, 11):
            for k in range(1, (p + 1) // 2):
                assert cartier_residue(U, p, k) == LP.constant(u_direct(k), 1, p)

    def test_u_p5_k3(self):
        assert cartier_residue(U, 5, 3) == parse("3+3*x", "x").reduce_mod(5)


class TestCompanion:
    def test_u_p7(self):
        r = check_companion(U, ONE_PLUS_X, 7, 4, 6, 20, proven=True)
        assert r.all_passed and all(v.structural for v in r.verdicts)
        assert not r.soundness_alarm

    def test_u8_example(self):
        assert u_direct(8) % 5 == (w_direct(2) * u_direct(3)) % 5 == 4

    def test_structural_can_fail_without_error(self):
        r = check_companion(APERY, parse("1+x", "x,y,z"), 5, 3, 4, 3)
        assert not r.soundness_alarm
        assert r.to_json()["verdicts"][0]["structural"] in (True, False)

    def test_trivial_companion_is_partial_lucas(self):
        r = check_companion(U, parse("1", "x"), 7, 0, 3, 10)
        assert r.all_passed and all(v.structural for v in r.verdicts)


class TestUpperDigitIdentities:
    @pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19])
    def test_coefficient_identity_and_split(self, p):
        P = U.P.reduce_mod(p)
        x = LP.variable(0, 1, p)
        for k in range((p + 1) // 2, p):
            Pk = P ** k
            assert Pk.coeff((p,)) == Pk.constant_term()
            assert Pk.cartier(p) == LP.constant(Pk.constant_term(), 1, p) + x * Pk.coeff((p,))

    def test_identity_layer_random(self):
        rng = random.Random(99)
        for _ in range(30):
            P = random_poly(rng, max_terms=4, lo=-2, hi=2, nonzero=True)
            p = rng.choice((2, 3, 5))
            assert cartier_identity_holds(P, p, rng.randint(0, 3), rng.randrange(p))


class TestLucasX:
    def test_v_p11(self):
        rep = CTRepresentation(U.P, ONE_PLUS_X)
        r = check_lucasx_with_q(rep, 11, 10)
        assert r.guaranteed_k == 5 and not r.soundness_alarm
        assert all(r.verdict(k).passed for k in range(5))

    def test_q_one_matches_lucas(self):
        a = check_lucasx_with_q(U, 7, 6)
        b = check_partial_lucas(U, 7, 6, M=2)
        assert [v.passed for v in a.verdicts] == [v.passed for v in b.verdicts]

    def test_vacuous(self):
        rep = CTRepresentation(U.P, parse("1+x^5", "x"))
        r = check_lucasx_with_q(rep, 3, 2)
        assert r.guaranteed_k == 0 and not r.soundness_alarm


class TestWolstenholme:
    def test_examples(self):
        assert check_wolstenholme(1, 1, 1, 5).passed
        assert check_wolstenholme(1, 1, 1, 7).lhs == (-1) % 343
        r = check_wolstenholme(0, 2, 0, 5)
        assert comb(10, 5) % 125 == r.lhs == 2 and r.passed

    def test_excluded(self):
        for t in [(0, 0, 1), (0, 1, 0)]:
            with pytest.raises(ExcludedParameterTriple):
                check_wolstenholme(*t, 5)
        with pytest.raises(ValueError):
            check_wolstenholme(1, 1, 1, 3)


def test_frobenius_examples():
    assert frobenius_property_check(ONE_PLUS_X, 5)
    assert frobenius_property_check(APERY.P, 3)
    assert frobenius_property_check(LP.constant(2), 2)


def test_report_determinism():
    a = json.dumps(check_partial_lucas(U, 5, 10).to_json(), sort_keys=True)
    b = json.dumps(check_partial_lucas(U, 5, 10).to_json(), sort_keys=True)
    assert a == b
    payload = json.loads(a)
    assert set(payload) == {"check", "prime", "power", "n_max", "m_used", "guaranteed_k",
                            "observed_k", "verdicts"}
    assert set(payload["verdicts"][0]) == {"k", "pass", "counterexample"}
