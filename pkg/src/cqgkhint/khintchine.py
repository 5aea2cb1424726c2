"""Certified evaluation of the character Khintchine constant ``K_p``.

For a model with irreducibles graded by a length, the squared constant is the
series::

    K_p^2 = sum_over_irreducibles  chi_sup^(2 - 4/p) * (n/d)^(2/p)

summed here by ascending length.  The evaluator returns a *certified
interval*: an exact-ordered partial sum (high-precision mpmath arithmetic at a
fixed precision, so results are bit-stable) plus a rigorous bound on the
dropped tail, computed with interval arithmetic from growth envelopes:

* free orthogonal / quantum automorphism families: two-sided Chebyshev
  envelopes give ``n_k/d_k <= C r^k`` with explicit ``C`` and ratio ``r`` the
  quotient of growth bases; the tail is a dominated geometric series.
* Drinfeld-Jimbo deformations: ``n_mu`` is bounded by an explicit polynomial
  ``prod (1 + C_a k)`` in the length, ``d_mu >= t_max^{-k}`` by the
  modular-matrix sup-norm identity, and the number of dominant weights of
  length ``k`` is the exact binomial count; the dominated series is again
  summed in closed form once its term ratio drops below 1.

Kac-type models are reported divergent with a certified witness (every level
contributes a term >= 1), never via timeout.
"""

from __future__ import annotations

import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
import mpmath
from mpmath import iv, mp

from .exact import as_fraction
from .models import (
    DrinfeldJimboModel,
    FreeOrthogonalModel,
    QuantumGroupModel,
    construct_model,
)

__all__ = [
    "KacDivergenceError",
    "PValueError",
    "KpNotConvergedError",
    "KpReport",
    "DecayReport",
    "ConstantsReport",
    "KpEvaluator",
    "kp_constant",
    "certified_tail",
    "decay_rate",
    "norm_equivalence_constants",
    "DEFAULT_PRECISION_BITS",
]

DEFAULT_PRECISION_BITS = 192


class KacDivergenceError(ArithmeticError):
    code = "kac-divergent"


class PValueError(ValueError):
    code = "p-out-of-range"


class KpNotConvergedError(ArithmeticError):
    code = "kp-not-converged"


@dataclass(frozen=True)
class KpReport:
    """Certified summary of a ``K_p`` evaluation.

    ``verdict`` is one of ``"converged"``, ``"divergent"``, ``"inconclusive"``.
    For a converged report ``K_p^2`` lies in
    ``[partial_sum, partial_sum + tail_bound]`` and ``kp_interval`` is the
    square-root interval.  A divergent report carries the certified lower
    bound on infinitely many terms instead.
    """

    model_spec: str
    p: Fraction
    terms_summed: int
    partial_sum: mpmath.mpf
    tail_bound: mpmath.mpf | None
    verdict: str
    kp2_interval: tuple[mpmath.mpf, mpmath.mpf] | None
    kp_interval: tuple[mpmath.mpf, mpmath.mpf] | None
    term_lower_bound: float | None
    precision_bits: int

    @property
    def converged(self) -> bool:
        return self.verdict == "converged"


@dataclass(frozen=True)
class DecayReport:
    """Decay data for ``n/d`` along the length grading.

    ``theoretical_base`` is the closed-form ratio of growth bases (1 for Kac
    models); ``empirical_base`` is ``(n/d)^{1/k}`` at the horizon (worst label
    on the level for rank > 1); ``constant_envelope`` is an explicit ``C``
    with ``n/d <= C * base^k`` checked for every ``k <= horizon``.
    ``polynomial_factor`` flags families where the ratio carries a polynomial
    factor on top of the geometric decay.
    """

    model_spec: str
    theoretical_base: mpmath.mpf
    empirical_base: mpmath.mpf
    constant_envelope: mpmath.mpf
    horizon: int
    polynomial_factor: bool


@dataclass(frozen=True)
class ConstantsReport:
    """Norm-equivalence constants derived from a converged ``K_p``.

    The exponents are exact rationals: ``p/(p-2)`` (L2 against L1),
    ``(2p-2)/(p-2)`` (Lp against L1) and ``2p(r-1)/(r(p-2))`` (Lr against L1);
    the constants are powers of the conservative upper end of the ``K_p``
    interval.
    """

    model_spec: str
    p: Fraction
    r: Fraction
    exp_c_2_1: Fraction
    exp_c_p_1: Fraction
    exp_c_r_1: Fraction
    c_2_1: mpmath.mpf
    c_p_1: mpmath.mpf
    c_r_1: mpmath.mpf
    kp_upper: mpmath.mpf
    precision_bits: int


def _mpf_from_fraction(x: Fraction) -> mpmath.mpf:
    return mp.mpf(x.numerator) / x.denominator


def _iv_from_fraction(x: Fraction):
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def _iv_pow(x, e: Fraction):
    """``x ** e`` for a positive interval and rational exponent."""
    if e.denominator == 1:
        return x ** int(e)
    return iv.exp(iv.log(x) * _iv_from_fraction(e))


def _check_p(p, minimum=2) -> Fraction:
    p = as_fraction(p)
    if p < minimum:
        raise PValueError(f"p >= {minimum} is required, got {p}")
    return p


class KpEvaluator:
    """Per-model cache of exact level data plus the certified summation.

    Level data (the exact ``(n, d, chi_sup)`` triples of every label of a
    given length) is computed once and shared across values of ``p``.  The
    caches are only written with values that are functions of the key, so
    concurrent use is safe; parallel workers only pre-fill the exact caches,
    while every floating accumulation runs in a fixed ascending-length order,
    making reports bit-identical for any worker count.
    """

    def __init__(self, model: QuantumGroupModel, precision_bits: int = DEFAULT_PRECISION_BITS):
        if precision_bits < 64:
            raise ValueError("precision_bits must be at least 64")
        self.model = construct_model(model)
        self.precision_bits = int(precision_bits)
        self._levels: dict[int, list[tuple[int, Fraction, int]]] = {}
        if isinstance(self.model, DrinfeldJimboModel):
            self._prepare_drinfeld_jimbo()
        elif isinstance(self.model, FreeOrthogonalModel):
            self._bases = (Fraction(self.model.N), self.model.Nq)
            self._running = [(Fraction(1), Fraction(1)), self._bases]
            self._step = lambda t, prev, cur: t * cur - prev
        else:
            self._bases = (Fraction(self.model.dimB), self.model.d1 + 1)
            self._running = [
                (Fraction(1), Fraction(1)),
                (self._bases[0] - 1, self._bases[1] - 1),
            ]
            self._step = lambda t, prev, cur: (t - 2) * cur - prev

    # -- exact level data --------------------------------------------------

    def _prepare_drinfeld_jimbo(self):
        rs = self.model.root_system
        q = self.model.q
        self._pairing = rs.root_weight_pairing
        self._rho_pairing = [rs.root_pairing(rs.rho, i) for i in range(len(rs.positive_roots))]
        self._rho_prod = math.prod(self._rho_pairing)
        self._qpow: list[Fraction] = [Fraction(1)]
        self._qpow_lock = threading.Lock()
        self._q = q

    def _q_power(self, m: int) -> Fraction:
        # extended under a lock: prefetch workers share this cache, and an
        # unsynchronised read-check-append could double-append an entry
        if len(self._qpow) <= m:
            with self._qpow_lock:
                while len(self._qpow) <= m:
                    self._qpow.append(self._qpow[-1] * self._q)
        return self._qpow[m]

    def level_entries(self, k: int) -> list[tuple[int, Fraction, int]]:
        """Exact ``(n, d, chi_sup)`` for every label of length ``k``."""
        cached = self._levels.get(k)
        if cached is not None:
            return cached
        model = self.model
        if isinstance(model, DrinfeldJimboModel):
            entries = self._dj_level(k)
        else:
            n, d = self._graded_dims(k)
            chi = k + 1 if isinstance(model, FreeOrthogonalModel) else 2 * k + 1
            entries = [(n, d, chi)]
        self._levels[k] = entries
        return entries

    def _graded_dims(self, k: int) -> tuple[int, Fraction]:
        while len(self._running) <= k:
            (pn, pd), (cn, cd) = self._running[-2], self._running[-1]
            bn, bd = self._bases
            self._running.append((self._step(bn, pn, cn), self._step(bd, pd, cd)))
        n_frac, d_frac = self._running[k]
        assert n_frac.denominator == 1
        return int(n_frac), d_frac

    def _dj_level(self, k: int) -> list[tuple[int, Fraction, int]]:
        model = self.model
        rs = model.root_system
        out = []
        denom = Fraction(1)
        for h in self._rho_pairing:
            denom *= self._q_power(h) - 1 / self._q_power(h)
        for mu in model.enumerate_level(k):
            shifted = tuple(c + 1 for c in mu)
            n_num = 1
            d_num = Fraction(1)
            for idx, w in enumerate(self._pairing):
                m = sum(shifted[i] * w[i] for i in range(rs.rank))
                n_num *= m
                qm = self._q_power(m)
                d_num *= qm - 1 / qm
            n = n_num // self._rho_prod
            assert n * self._rho_prod == n_num
            d = d_num / denom
            out.append((n, d, n))
        return out

    # -- floating accumulation ----------------------------------------------

    def level_term_sum(self, k: int, p: Fraction) -> mpmath.mpf:
        """Sum of ``chi^(2-4/p) (n/d)^(2/p)`` over the level, at working precision."""
        e1 = Fraction(2) - Fraction(4) / p
        e2 = Fraction(2) / p
        e1_m = _mpf_from_fraction(e1)
        e2_m = _mpf_from_fraction(e2)
        total = mp.mpf(0)
        for n, d, chi in self.level_entries(k):
            ratio = mp.mpf(d.numerator) / d.denominator
            ratio = mp.mpf(n) / ratio
            term = mp.power(mp.mpf(chi), e1_m) * mp.power(ratio, e2_m)
            total += term
        return total

    # -- certified tails ------------------------------------------------------

    def tail_bound(self, L: int, p: Fraction) -> mpmath.mpf | None:
        """Upper bound on the sum of all terms of length > L, or None.

        Returns a certified (interval-arithmetic) bound once the dominating
        series has term ratio < 1 at length L+1; None means the ratio test is
        not yet conclusive at this cutoff.
        """
        if self.model.is_kac():
            raise KacDivergenceError(
                "Kac-type model: terms do not vanish, no finite tail bound exists"
            )
        iv.prec = mp.prec
        e1 = Fraction(2) - Fraction(4) / p
        e2 = Fraction(2) / p
        model = self.model
        if isinstance(model, DrinfeldJimboModel):
            bound = self._dj_tail(L, e1, e2)
        elif isinstance(model, FreeOrthogonalModel):
            bound = self._oplus_tail(L, e1, e2)
        else:
            bound = self._aut_tail(L, e1, e2)
        return bound

    @staticmethod
    def _geometric(first, ratio) -> mpmath.mpf | None:
        if not (ratio < 1):  # interval comparison: certain only if ratio.b < 1
            return None
        return mp.mpf((first / (1 - ratio)).b)

    def _oplus_tail(self, L: int, e1: Fraction, e2: Fraction):
        model = self.model
        N = iv.mpf(model.N)
        Nq = _iv_from_fraction(model.Nq)
        u_q = (Nq + iv.sqrt(Nq * Nq - 4)) / 2
        depth = 2 * (L + 2)
        slack = 1 - u_q ** (-depth)
        if model.N == 2:
            # n_k = k + 1 exactly; d_k >= u_q^{k+1} slack / (u_q - 1/u_q)
            c2 = (u_q - 1 / u_q) / slack
            rho = _iv_pow(1 / u_q, e2)
            k0 = L + 1
            first = (
                _iv_pow(iv.mpf(k0 + 1), e1 + e2) * _iv_pow(c2, e2) * rho ** (k0 + 1)
            )
            ratio = _iv_pow(iv.mpf(k0 + 2) / (k0 + 1), e1 + e2) * rho
            return self._geometric(first, ratio)
        u_n = (N + iv.sqrt(N * N - 4)) / 2
        r = u_n / u_q
        c = (u_q - 1 / u_q) / ((u_n - 1 / u_n) * slack)
        rho = _iv_pow(r, e2)
        k0 = L + 1
        first = _iv_pow(iv.mpf(k0 + 1), e1) * _iv_pow(c, e2) * rho ** (k0 + 1)
        ratio = _iv_pow(iv.mpf(k0 + 2) / (k0 + 1), e1) * rho
        return self._geometric(first, ratio)

    def _aut_tail(self, L: int, e1: Fraction, e2: Fraction):
        model = self.model
        xd = _iv_from_fraction(model.d1 + 1)
        sd = iv.sqrt(xd)
        u_d = (sd + iv.sqrt(xd - 4)) / 2
        lam_d = u_d * u_d
        depth = 2 * (2 * (L + 1) + 1)
        c_d_low = u_d * (1 - u_d ** (-depth)) / (u_d - 1 / u_d)
        k0 = L + 1
        if model.dimB == 4:
            # n_k = 2k + 1 exactly
            rho = _iv_pow(1 / lam_d, e2)
            first = (
                _iv_pow(iv.mpf(2 * k0 + 1), e1 + e2)
                * _iv_pow(1 / c_d_low, e2)
                * rho**k0
            )
            ratio = _iv_pow(iv.mpf(2 * k0 + 3) / (2 * k0 + 1), e1 + e2) * rho
            return self._geometric(first, ratio)
        xn = iv.mpf(model.dimB)
        sn = iv.sqrt(xn)
        u_n = (sn + iv.sqrt(xn - 4)) / 2
        lam_n = u_n * u_n
        c_n = u_n / (u_n - 1 / u_n)
        big_c = c_n / c_d_low
        rho = _iv_pow(lam_n / lam_d, e2)
        first = _iv_pow(iv.mpf(2 * k0 + 1), e1) * _iv_pow(big_c, e2) * rho**k0
        ratio = _iv_pow(iv.mpf(2 * k0 + 3) / (2 * k0 + 1), e1) * rho
        return self._geometric(first, ratio)

    def _dj_tail(self, L: int, e1: Fraction, e2: Fraction):
        model = self.model
        rs = model.root_system
        rank = rs.rank
        # t_max = q^(min_i (omega_i, 2 rho)); d_mu >= t_max^(-|mu|)
        e_min = min(rs.two_rho_pairing)
        t_max = model.q**e_min
        tau = _iv_pow(_iv_from_fraction(t_max), e2)
        # n_mu <= prod_over_roots (1 + C_a k) with C_a = max_i (omega_i, a)/(rho, a)
        cs = []
        for idx, w in enumerate(self._pairing):
            h = self._rho_pairing[idx]
            cs.append(Fraction(max(w), h))
        sigma = e1 + e2  # = 2 - 2/p

        def poly(k: int) -> Fraction:
            val = Fraction(1)
            for c in cs:
                val *= 1 + c * k
            return val

        def count(k: int) -> int:
            return math.comb(k + rank - 1, rank - 1)

        k0 = L + 1
        first = (
            iv.mpf(count(k0))
            * _iv_pow(_iv_from_fraction(poly(k0)), sigma)
            * tau**k0
        )
        ratio = (
            iv.mpf(count(k0 + 1))
            / count(k0)
            * _iv_pow(_iv_from_fraction(poly(k0 + 1) / poly(k0)), sigma)
            * tau
        )
        return self._geometric(first, ratio)

    # -- the evaluator --------------------------------------------------------

    def kp_constant(
        self,
        p,
        tol: float = 1e-10,
        max_length: int = 4000,
        workers: int = 1,
    ) -> KpReport:
        p = _check_p(p)
        if not tol > 0:
            raise ValueError(f"tol must be positive, got {tol}")
        if max_length < 1:
            raise ValueError("max_length must be >= 1")
        chunk = 32
        with mp.workprec(self.precision_bits):
            if self.model.is_kac():
                return self._divergent_report(p, min(max_length, 8))
            partial = mp.mpf(0)
            for L in range(0, max_length + 1):
                if workers > 1 and L % chunk == 0:
                    self._prefetch(range(L, min(L + chunk, max_length + 1)), workers)
                partial += self.level_term_sum(L, p)
                tail = self.tail_bound(L, p)
                if tail is not None and tail <= tol:
                    kp2 = (partial, partial + tail)
                    return KpReport(
                        model_spec=self.model.spec_string(),
                        p=p,
                        terms_summed=L,
                        partial_sum=partial,
                        tail_bound=tail,
                        verdict="converged",
                        kp2_interval=kp2,
                        kp_interval=(mp.sqrt(kp2[0]), mp.sqrt(kp2[1])),
                        term_lower_bound=None,
                        precision_bits=self.precision_bits,
                    )
            tail = self.tail_bound(max_length, p)
            return KpReport(
                model_spec=self.model.spec_string(),
                p=p,
                terms_summed=max_length,
                partial_sum=partial,
                tail_bound=tail,
                verdict="inconclusive",
                kp2_interval=None,
                kp_interval=None,
                term_lower_bound=None,
                precision_bits=self.precision_bits,
            )

    def _prefetch(self, lengths, workers: int):
        # warm the exact caches in parallel; the graded recursion is cheap and
        # sequential, so only the per-level Drinfeld-Jimbo data is farmed out
        if not isinstance(self.model, DrinfeldJimboModel):
            return
        with ThreadPoolExecutor(max_workers=workers) as pool:
            list(pool.map(self.level_entries, lengths))

    def _divergent_report(self, p: Fraction, sample_levels: int) -> KpReport:
        # Kac: n = d for every label, so each level contributes
        # chi^(2-4/p) * 1 >= 1; infinitely many terms are >= 1.
        partial = mp.mpf(0)
        for L in range(0, sample_levels + 1):
            partial += self.level_term_sum(L, p)
        return KpReport(
            model_spec=self.model.spec_string(),
            p=p,
            terms_summed=sample_levels,
            partial_sum=partial,
            tail_bound=None,
            verdict="divergent",
            kp2_interval=None,
            kp_interval=None,
            term_lower_bound=1.0,
            precision_bits=self.precision_bits,
        )


def kp_constant(
    model,
    p,
    tol: float = 1e-10,
    max_length: int = 4000,
    precision_bits: int = DEFAULT_PRECISION_BITS,
    workers: int = 1,
) -> KpReport:
    """Certified ``K_p`` evaluation; see :class:`KpEvaluator`."""
    return KpEvaluator(construct_model(model), precision_bits).kp_constant(
        p, tol=tol, max_length=max_length, workers=workers
    )


def certified_tail(
    model,
    p,
    L: int,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> mpmath.mpf:
    """A number T with ``sum of terms of length > L <= T``.

    Monotone nonincreasing in ``L`` (infinite while the ratio test is not yet
    conclusive).  Raises :class:`KacDivergenceError` for Kac models.
    """
    if L < 0:
        raise ValueError("L must be >= 0")
    p = _check_p(p)
    ev = KpEvaluator(construct_model(model), precision_bits)
    with mp.workprec(ev.precision_bits):
        bound = ev.tail_bound(L, p)
        return mp.inf if bound is None else bound


def decay_rate(
    model,
    horizon: int = 50,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> DecayReport:
    """Theoretical and empirical decay base of ``n/d`` along the grading."""
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    model = construct_model(model)
    ev = KpEvaluator(model, precision_bits)
    with mp.workprec(precision_bits):
        iv.prec = mp.prec
        polynomial = False
        if model.is_kac():
            theoretical = mp.mpf(1)
            theo_iv = iv.mpf(1)
        elif isinstance(model, DrinfeldJimboModel):
            e_min = min(model.root_system.two_rho_pairing)
            theoretical = _mpf_from_fraction(model.q**e_min)
            theo_iv = _iv_from_fraction(model.q**e_min)
            polynomial = True
        elif isinstance(model, FreeOrthogonalModel):
            n_iv, nq_iv = iv.mpf(model.N), _iv_from_fraction(model.Nq)
            r_iv = (n_iv + iv.sqrt(n_iv * n_iv - 4)) / (nq_iv + iv.sqrt(nq_iv * nq_iv - 4))
            theo_iv = r_iv
            theoretical = mp.mpf(r_iv.mid)
            polynomial = model.N == 2
        else:
            xn, xd = iv.mpf(model.dimB), _iv_from_fraction(model.d1 + 1)
            lam_n = (xn - 2 + iv.sqrt(xn * (xn - 4))) / 2
            lam_d = (xd - 2 + iv.sqrt(xd * (xd - 4))) / 2
            theo_iv = lam_n / lam_d
            theoretical = mp.mpf((lam_n / lam_d).mid)
            polynomial = model.dimB == 4

        worst = max(
            mp.mpf(n) * d.denominator / d.numerator
            for n, d, _ in ev.level_entries(horizon)
        )
        empirical = mp.power(worst, mp.mpf(1) / horizon)

        # explicit constant C with n/d <= C * base^k, checked on every level
        envelope = mp.mpf(0)
        for k in range(0, horizon + 1):
            base_k = theo_iv**k
            for n, d, _ in ev.level_entries(k):
                ratio = iv.mpf(n) * iv.mpf(d.denominator) / iv.mpf(d.numerator)
                envelope = max(envelope, mp.mpf((ratio / base_k).b))
        return DecayReport(
            model_spec=model.spec_string(),
            theoretical_base=theoretical,
            empirical_base=empirical,
            constant_envelope=envelope,
            horizon=horizon,
            polynomial_factor=polynomial,
        )


def _is_dyadic_power(p: Fraction) -> bool:
    if p.denominator != 1:
        return False
    n = p.numerator
    return n >= 4 and (n & (n - 1)) == 0


def norm_equivalence_constants(
    model,
    p,
    r,
    tol: float = 1e-10,
    max_length: int = 4000,
    precision_bits: int = DEFAULT_PRECISION_BITS,
) -> ConstantsReport:
    """Explicit constants for the L2/Lp/Lr-against-L1 norm equivalences.

    Exponents are exact rationals; the numeric constants use the upper end of
    the certified ``K_p`` interval (conservative).  Requires ``p`` to be a
    dyadic power >= 4 and ``r >= 1``; raises :class:`KpNotConvergedError` when
    the underlying ``K_p`` evaluation is divergent or inconclusive.
    """
    p = _check_p(p, minimum=4)
    if not _is_dyadic_power(p):
        raise PValueError(f"p must be a power of 2 with p >= 4, got {p}")
    r = as_fraction(r)
    if r < 1:
        raise ValueError(f"r >= 1 is required, got {r}")
    report = kp_constant(model, p, tol=tol, max_length=max_length, precision_bits=precision_bits)
    if not report.converged:
        raise KpNotConvergedError(
            f"K_p is {report.verdict} for {report.model_spec}; "
            "norm-equivalence constants are undefined"
        )
    exp21 = p / (p - 2)
    exp_p1 = (2 * p - 2) / (p - 2)
    exp_r1 = 2 * p * (r - 1) / (r * (p - 2))
    with mp.workprec(precision_bits):
        upper = report.kp_interval[1]
        return ConstantsReport(
            model_spec=report.model_spec,
            p=p,
            r=r,
            exp_c_2_1=exp21,
            exp_c_p_1=exp_p1,
            exp_c_r_1=exp_r1,
            c_2_1=mp.power(upper, _mpf_from_fraction(exp21)),
            c_p_1=mp.power(upper, _mpf_from_fraction(exp_p1)),
            c_r_1=mp.power(upper, _mpf_from_fraction(exp_r1)),
            kp_upper=upper,
            precision_bits=precision_bits,
        )
