"""Finite-range verification of Lucas-type congruences.

Every check returns a :class:`CongruenceReport` with one verdict per digit
``k`` (per power ``r`` for Gauss checks).  Thresholds are exclusive upper
bounds: ``guaranteed_k`` is the first ``k`` not covered by the theorem being
exercised and ``observed_k`` the first ``k`` (scanning upward from
``k_lo``) with a failure.  A run whose observed threshold falls short of the
guaranteed one contradicts a proved statement and is flagged as a soundness
alarm.
"""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass, field

from .laurent import LaurentPolynomial
from .polytope import SupportGeometry, minimal_M
from .ring import MAX_MODULUS, is_prime
from .sequences import CTRepresentation, ct_prefix, oracle_uab

__all__ = [
    "CongruenceReport",
    "Counterexample",
    "ExcludedParameterTriple",
    "ModulusTooLarge",
    "NotPrime",
    "SoundnessAlarm",
    "Verdict",
    "WolstenholmeResult",
    "cartier_identity_holds",
    "cartier_residue",
    "check_companion",
    "check_digit_product",
    "check_gauss",
    "check_lucasx_with_q",
    "check_partial_lucas",
    "check_wolstenholme",
    "frobenius_property_check",
]


class NotPrime(ValueError):
    pass


class ModulusTooLarge(ValueError):
    pass


class ExcludedParameterTriple(ValueError):
    pass


class SoundnessAlarm(AssertionError):
    """A proved congruence failed inside its guaranteed range."""

    def __init__(self, report: CongruenceReport):
        self.report = report
        super().__init__(f"{report.check} mod {report.prime}^{report.power}: observed_k="
                         f"{report.observed_k} < guaranteed_k={report.guaranteed_k}")


@dataclass(frozen=True)
class Counterexample:
    n: int
    lhs: int
    rhs: int


@dataclass(frozen=True)
class Verdict:
    k: int
    passed: bool
    counterexample: Counterexample | None = None
    structural: bool | None = None  # companion checks only: R_k == A(k) * Q_c

    def to_json(self) -> dict:
        out = {
            "k": self.k,
            "pass": self.passed,
            "counterexample": None if self.counterexample is None else {
                "n": self.counterexample.n,
                "lhs": self.counterexample.lhs,
                "rhs": self.counterexample.rhs,
            },
        }
        if self.structural is not None:
            out["structural"] = self.structural
        return out


@dataclass(frozen=True)
class CongruenceReport:
    check: str
    prime: int
    power: int
    n_max: int
    m_used: int
    guaranteed_k: int
    observed_k: int
    verdicts: tuple[Verdict, ...] = field(default=())

    @property
    def soundness_alarm(self) -> bool:
        return self.observed_k < self.guaranteed_k

    @property
    def all_passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def verdict(self, k: int) -> Verdict:
        return next(v for v in self.verdicts if v.k == k)

    def raise_on_alarm(self) -> CongruenceReport:
        if self.soundness_alarm:
            raise SoundnessAlarm(self)
        return self

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "prime": self.prime,
            "power": self.power,
            "n_max": self.n_max,
            "m_used": self.m_used,
            "guaranteed_k": self.guaranteed_k,
            "observed_k": self.observed_k,
            "verdicts": [v.to_json() for v in self.verdicts],
        }


def _require_prime(p: int) -> None:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")


def _observed(verdicts: Sequence[Verdict], start: int) -> int:
    k = start
    for v in sorted(verdicts, key=lambda v: v.k):
        if v.k != k or not v.passed:
            break
        k += 1
    return k


def _resolve_M(rep: CTRepresentation, M: int | None) -> int:
    if M is not None:
        if M < 1:
            raise ValueError(f"M must be at least 1, got {M}")
        return M
    return minimal_M(SupportGeometry.from_poly(rep.P)).m_min


def _k_verdict(k: int, pairs) -> Verdict:
    for n, lhs, rhs in pairs:
        if lhs != rhs:
            return Verdict(k, False, Counterexample(n, lhs, rhs))
    return Verdict(k, True)


def check_partial_lucas(rep: CTRepresentation, p: int, n_max: int, M: int | None = None,
                        backend: str | None = None) -> CongruenceReport:
    """``A(pn + k) = A(n) A(k) mod p`` for all ``n <= n_max`` and every ``k < p``.

    ``M`` defaults to the minimal digit bound of ``Newt(P)``; the theorem then
    guarantees all ``k < p/M``.
    """
    _require_prime(p)
    if n_max < 0:
        raise ValueError(f"n_max must be nonnegative, got {n_max}")
    if not rep.q_is_one:
        raise ValueError("partial Lucas congruences need Q = 1; use check_lucasx_with_q")
    M = _resolve_M(rep, M)
    A = ct_prefix(rep, p * n_max + p - 1, p, backend)
    verdicts = tuple(
        _k_verdict(k, ((n, A[p * n + k], A[n] * A[k] % p) for n in range(n_max + 1)))
        for k in range(p)
    )
    return CongruenceReport("lucas", p, 1, n_max, M, -(-p // M), _observed(verdicts, 0), verdicts)


def _digits(n: int, p: int) -> list[int]:
    out = []
    while n:
        n, d = divmod(n, p)
        out.append(d)
    return out


def check_digit_product(rep: CTRepresentation, p: int, M: int | None, n_max: int,
                        backend: str | None = None) -> CongruenceReport:
    """``A(n) = prod A(n_j) mod p`` over the base-``p`` digits of each ``n <= n_max``.

    Verdict ``k`` collects the indices whose largest digit is ``k``; the
    theorem covers digits below ``p/M``.  ``n = 0`` has the empty product 1.
    """
    _require_prime(p)
    if not rep.q_is_one:
        raise ValueError("digit products need Q = 1")
    M = _resolve_M(rep, M)
    A = ct_prefix(rep, max(n_max, p - 1), p, backend)
    groups: dict[int, list] = {k: [] for k in range(p)}
    for n in range(n_max + 1):
        digits = _digits(n, p)
        rhs = 1
        for d in digits:
            rhs = rhs * A[d] % p
        groups[max(digits, default=0)].append((n, A[n], rhs))
    verdicts = tuple(_k_verdict(k, groups[k]) for k in range(p))
    return CongruenceReport("digits", p, 1, n_max, M, -(-p // M), _observed(verdicts, 0), verdicts)


SequenceSource = CTRepresentation | Callable[[int], int]


def _values_mod(source: SequenceSource, indices: Sequence[int], modulus: int,
                backend: str | None) -> dict[int, int]:
    if isinstance(source, CTRepresentation):
        A = ct_prefix(source, max(indices), modulus, backend)
        return {i: A[i] for i in indices}
    return {i: source(i) % modulus for i in indices}


def check_gauss(source: SequenceSource, p: int, r_max: int, n_max: int, proven: bool = True,
                backend: str | None = None) -> CongruenceReport:
    """``A(p^r n) = A(p^(r-1) n) mod p^r`` for ``1 <= r <= r_max``, ``1 <= n <= n_max``.

    ``source`` is a representation (values from the running power mod
    ``p^r``) or any callable ``n -> A(n)`` such as a binomial-sum oracle.
    Verdicts are indexed by ``r``.  Constant terms of plain powers satisfy
    these congruences, so ``proven`` should be cleared for ``Q != 1``.
    """
    _require_prime(p)
    if r_max < 1 or n_max < 1:
        raise ValueError("need r_max >= 1 and n_max >= 1")
    if p ** r_max >= MAX_MODULUS:
        raise ModulusTooLarge(f"{p}^{r_max} does not fit below 2**63")
    verdicts = []
    for r in range(1, r_max + 1):
        mod = p ** r
        hi = [p ** r * n for n in range(1, n_max + 1)]
        lo = [p ** (r - 1) * n for n in range(1, n_max + 1)]
        vals = _values_mod(source, sorted(set(hi + lo)), mod, backend)
        verdicts.append(_k_verdict(r, ((n, vals[h], vals[l]) for n, h, l in zip(range(1, n_max + 1), hi, lo))))
    verdicts = tuple(verdicts)
    guaranteed = r_max + 1 if proven else 1
    return CongruenceReport("gauss", p, r_max, n_max, 1, guaranteed, _observed(verdicts, 1), verdicts)


def cartier_residue(rep: CTRepresentation, p: int, k: int) -> LaurentPolynomial:
    """``Λ_p[(P mod p)^k]``: the digit-``k`` factor in ``A(pn + k) = ct[P^n Λ_p[P^k]] mod p``."""
    if not 0 <= k < p:
        raise ValueError(f"need 0 <= k < p, got k={k}, p={p}")
    return (rep.P.reduce_mod(p) ** k).cartier(p)


def check_companion(rep: CTRepresentation, companion: LaurentPolynomial, p: int,
                    k_lo: int, k_hi: int, n_max: int, proven: bool = False,
                    backend: str | None = None) -> CongruenceReport:
    """``A(pn + k) = B(n) A(k) mod p`` with ``B(n) = ct[P^n Q_c]``, ``k_lo <= k <= k_hi``.

    Each verdict also records the structural test ``Λ_p[P^k] == A(k) Q_c``
    over ZZ/p, which implies the numeric congruence.  Pass ``proven=True``
    when the range is covered by a theorem so failures raise the alarm.
    """
    _require_prime(p)
    if not 0 <= k_lo <= k_hi < p:
        raise ValueError(f"need 0 <= k_lo <= k_hi < p, got {k_lo}, {k_hi}, p={p}")
    if not rep.q_is_one:
        raise ValueError("companion congruences need Q = 1")
    if companion.dim != rep.dim:
        raise ValueError("companion polynomial has the wrong dimension")
    A = ct_prefix(rep, p * n_max + k_hi, p, backend)
    B = ct_prefix(CTRepresentation(rep.P, companion), n_max, p, backend)
    Qc = companion.reduce_mod(p)
    verdicts = []
    for k in range(k_lo, k_hi + 1):
        structural = cartier_residue(rep, p, k) == Qc * A[k]
        v = _k_verdict(k, ((n, A[p * n + k], B[n] * A[k] % p) for n in range(n_max + 1)))
        verdicts.append(Verdict(v.k, v.passed, v.counterexample, structural))
    verdicts = tuple(verdicts)
    guaranteed = k_hi + 1 if proven else k_lo
    return CongruenceReport("companion", p, 1, n_max, 0, guaranteed, _observed(verdicts, k_lo), verdicts)


def check_lucasx_with_q(rep: CTRepresentation, p: int, n_max: int,
                        backend: str | None = None) -> CongruenceReport:
    """``A(pn + k) = A(k) B(n) mod p`` with ``A = ct[P^n Q]`` and ``B = ct[P^n]``.

    Guaranteed whenever ``k deg(P) + deg(Q) < p``; all ``k < p`` are reported.
    """
    _require_prime(p)
    deg_p = rep.P.degree_sup()
    deg_q = rep.Q.degree_sup() if not rep.Q.is_zero() else 0
    A = ct_prefix(rep, p * n_max + p - 1, p, backend)
    B = ct_prefix(CTRepresentation(rep.P), n_max, p, backend)
    verdicts = tuple(
        _k_verdict(k, ((n, A[p * n + k], A[k] * B[n] % p) for n in range(n_max + 1)))
        for k in range(p)
    )
    if deg_q >= p:
        guaranteed = 0
    elif deg_p == 0:
        guaranteed = p
    else:
        guaranteed = min(p, -(-(p - deg_q) // deg_p))
    return CongruenceReport("lucasx", p, 1, n_max, deg_p, guaranteed, _observed(verdicts, 0), verdicts)


WOLSTENHOLME_EXCLUDED = {(0, 0, 1), (0, 1, 0)}


@dataclass(frozen=True)
class WolstenholmeResult:
    eps: int
    a: int
    b: int
    prime: int
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    @property
    def modulus(self) -> int:
        return self.prime ** 3

    def to_json(self) -> dict:
        return {"check": "wolstenholme", "prime": self.prime, "power": 3,
                "params": {"eps": self.eps, "a": self.a, "b": self.b},
                "lhs": self.lhs, "rhs": self.rhs, "pass": self.passed}


def check_wolstenholme(eps: int, a: int, b: int, p: int) -> WolstenholmeResult:
    """``u_{a,b}^eps(p) = 1 + (-1)^eps 2^b mod p^3`` for primes ``p >= 5``."""
    if (eps, a, b) in WOLSTENHOLME_EXCLUDED:
        raise ExcludedParameterTriple(f"(eps, a, b) = {(eps, a, b)} is excluded")
    _require_prime(p)
    if p < 5:
        raise ValueError(f"the congruence is stated for p >= 5, got {p}")
    mod = p ** 3
    lhs = oracle_uab(eps, a, b, p) % mod
    rhs = (1 + (-1) ** eps * 2 ** b) % mod
    return WolstenholmeResult(eps, a, b, p, lhs, rhs)


def frobenius_property_check(P: LaurentPolynomial, p: int) -> bool:
    """``(P mod p)^p == P(x^p) mod p``."""
    _require_prime(p)
    Pp = P.reduce_mod(p) if P.modulus is None else P
    return Pp ** p == Pp.frobenius_substitute(p)


def cartier_identity_holds(P: LaurentPolynomial, p: int, n: int, k: int) -> bool:
    """``ct[P^(pn+k)] = ct[P^n Λ_p[P^k]] mod p``, valid for every P."""
    Pp = P.reduce_mod(p)
    lhs = (Pp ** (p * n + k)).constant_term()
    rhs = (Pp ** n * (Pp ** k).cartier(p)).constant_term()
    return lhs == rhs

