from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from conftest import q_integer
from cqgkhint.khintchine import (
    KacDivergenceError,
    KpEvaluator,
    KpNotConvergedError,
    PValueError,
    certified_tail,
    decay_rate,
    kp_constant,
    norm_equivalence_constants,
)
from cqgkhint.models import FreeOrthogonalModel, parse_model_spec

HALF = Fraction(1, 2)


def _mpf(fr: Fraction) -> mpmath.mpf:
    return mp.mpf(fr.numerator) / fr.denominator


# -- K2 against a from-scratch oracle ----------------------------------------------


def k2_squared_bracket_a1(q: Fraction, cutoff: int = 200) -> tuple[Fraction, Fraction]:
    """Exact rational bracket for ``sum_k (k+1)/[k+1]_q`` by brute force.

    Partial sum to ``cutoff`` plus the remainder bound from
    ``[k+1]_q >= q^{-k}``: remainder <= sum_{k>K} (k+1) q^k, summed in closed
    form ``x^{K+1} ((K+2) - (K+1) x) / (1-x)^2``.
    """
    partial = sum(
        (Fraction(k + 1) / q_integer(k + 1, q) for k in range(cutoff + 1)), Fraction(0)
    )
    x = q
    rem = x ** (cutoff + 1) * ((cutoff + 2) - (cutoff + 1) * x) / (1 - x) ** 2
    return partial, partial + rem


def test_k2_a1_matches_brute_force():
    report = kp_constant("djq:A1:1/2", 2, tol=1e-12, max_length=500)
    assert report.converged
    lo, hi = k2_squared_bracket_a1(HALF)
    assert abs(report.partial_sum - _mpf(lo)) < 1e-8
    assert float(report.partial_sum) == pytest.approx(3.3107, abs=5e-4)
    # the certified interval and the oracle bracket overlap
    assert report.partial_sum <= _mpf(hi) + 1e-20
    assert report.partial_sum + report.tail_bound >= _mpf(lo)


def test_k2_equals_sum_of_dimension_ratios():
    # at p = 2 the terms are exactly n/d
    ev = KpEvaluator(parse_model_spec("oplus:3:7/2"))
    report = ev.kp_constant(2, tol=1e-10)
    with mp.workprec(192):
        direct = mp.mpf(0)
        for k in range(report.terms_summed + 1):
            (n, d, chi) = ev.level_entries(k)[0]
            direct += mp.mpf(n) * d.denominator / d.numerator
        assert abs(report.partial_sum - direct) < 1e-25


def test_kp_oplus_brute_force_partial_sums():
    # independent recursion for n_k, d_k and a long direct partial sum
    report = kp_constant("oplus:3:3.5", 4, tol=1e-10, max_length=3000)
    assert report.converged
    with mp.workprec(250):
        n_prev, n_cur = 1, 3
        d_prev, d_cur = Fraction(1), Fraction(7, 2)
        total = mp.mpf(1)  # k = 0 term
        for k in range(1, 2500):
            term = mp.mpf(k + 1) * mp.sqrt(mp.mpf(n_cur) * d_cur.denominator / d_cur.numerator)
            total += term
            n_prev, n_cur = n_cur, 3 * n_cur - n_prev
            d_prev, d_cur = d_cur, Fraction(7, 2) * d_cur - d_prev
    assert report.kp2_interval[0] - 1e-12 <= total <= report.kp2_interval[1] + 1e-9


# -- verdicts ------------------------------------------------------------------------


@pytest.mark.parametrize("spec", ["oplus:3:3", "aut:4:3"])
@pytest.mark.parametrize("p", [2, 4, 16])
def test_kac_models_divergent(spec, p):
    report = kp_constant(spec, p)
    assert report.verdict == "divergent"
    assert report.term_lower_bound == 1.0
    assert report.kp_interval is None


def test_inconclusive_when_max_length_too_small():
    report = kp_constant("oplus:3:3.5", 16, tol=1e-10, max_length=20)
    assert report.verdict == "inconclusive"
    assert report.kp_interval is None


def test_p_below_two_rejected():
    with pytest.raises(PValueError):
        kp_constant("oplus:3:3.5", Fraction(3, 2))
    with pytest.raises(ValueError):
        kp_constant("oplus:3:3.5", 4, tol=0)


# -- structural properties ------------------------------------------------------------


def test_kp_nondecreasing_in_p():
    ev = KpEvaluator(parse_model_spec("oplus:3:7/2"))
    values = []
    for p in (2, 4, 8, 16):
        rep = ev.kp_constant(p, tol=1e-10, max_length=3000)
        assert rep.converged
        values.append(rep.kp_interval)
    # intervals are tight; compare upper of smaller p with lower of larger p
    for (lo_a, hi_a), (lo_b, hi_b) in zip(values, values[1:]):
        assert hi_a <= hi_b and lo_a <= lo_b


def test_interval_nesting_in_max_length():
    ev = KpEvaluator(parse_model_spec("djq:A1:1/2"))
    loose = ev.kp_constant(4, tol=1e-6)
    tight = ev.kp_constant(4, tol=1e-12)
    assert loose.kp2_interval[0] <= tight.kp2_interval[0]
    assert tight.kp2_interval[1] <= loose.kp2_interval[1]


def test_certified_tail_monotone_and_small():
    t30 = certified_tail("djq:A1:1/2", 2, 30)
    assert t30 < 1e-6
    values = [certified_tail("djq:A1:1/2", 2, L) for L in (5, 10, 20, 30, 50)]
    assert all(a >= b for a, b in zip(values, values[1:]))


def test_certified_tail_kac_fails_loudly():
    with pytest.raises(KacDivergenceError):
        certified_tail("oplus:3:3", 4, 10)


def test_tail_bound_covers_actual_remainder():
    # the certified tail must dominate the actually-summed remainder
    ev = KpEvaluator(parse_model_spec("oplus:3:7/2"))
    p = Fraction(4)
    with mp.workprec(192):
        tail_at_40 = ev.tail_bound(40, p)
        actual = mp.mpf(0)
        for k in range(41, 600):
            actual += ev.level_term_sum(k, p)
        assert actual < tail_at_40


def test_su_q2_bridge_kp_intervals_overlap():
    dj = KpEvaluator(parse_model_spec("djq:A1:1/2"))
    op = KpEvaluator(FreeOrthogonalModel(2, Fraction(5, 2)))
    for p in (2, 4):
        a = dj.kp_constant(p, tol=1e-12, max_length=3000)
        b = op.kp_constant(p, tol=1e-12, max_length=3000)
        assert a.converged and b.converged
        lo = max(a.kp_interval[0], b.kp_interval[0])
        hi = min(a.kp_interval[1], b.kp_interval[1])
        assert lo <= hi + 1e-10


def test_workers_bit_identical():
    serial = kp_constant("djq:A2:1/2", 4, tol=1e-10, workers=1)
    parallel = kp_constant("djq:A2:1/2", 4, tol=1e-10, workers=4)
    assert serial.partial_sum == parallel.partial_sum
    assert serial.tail_bound == parallel.tail_bound
    assert serial.terms_summed == parallel.terms_summed


# -- decay rates ----------------------------------------------------------------------


def test_decay_free_orthogonal_example():
    report = decay_rate("oplus:3:3.5", horizon=50)
    expected = (3 + 5**0.5) / (3.5 + 8.25**0.5)
    assert float(report.theoretical_base) == pytest.approx(expected, rel=1e-12)
    assert float(report.theoretical_base) == pytest.approx(0.82169, abs=5e-6)
    assert abs(report.empirical_base / report.theoretical_base - 1) < 0.01
    assert not report.polynomial_factor


def test_decay_quantum_automorphism_consistent_base():
    # with level-1 data (n1, d1) = (4, 5) the polynomial arguments are 5 and 6,
    # so the decay base is ((5-2+sqrt(5))/2) / ((6-2+sqrt(12))/2)
    report = decay_rate("aut:5:5", horizon=50)
    lam_n = (3 + 5**0.5) / 2
    lam_d = (4 + 12**0.5) / 2
    assert float(report.theoretical_base) == pytest.approx(lam_n / lam_d, rel=1e-12)
    assert float(report.theoretical_base) == pytest.approx(0.701500, abs=5e-7)
    assert abs(report.empirical_base / report.theoretical_base - 1) < 0.01


def test_decay_kac_base_is_one():
    for spec in ("oplus:3:3", "aut:4:3"):
        report = decay_rate(spec, horizon=20)
        assert report.theoretical_base == 1
        assert report.empirical_base == 1
        assert report.constant_envelope >= 1


def test_decay_drinfeld_jimbo_base_max_t():
    report = decay_rate("djq:A1:1/2", horizon=50)
    assert float(report.theoretical_base) == pytest.approx(0.5, rel=1e-15)
    assert report.polynomial_factor
    # empirical approaches the base from above (polynomial factor)
    assert 1 < report.empirical_base / report.theoretical_base < 1.2


def test_decay_envelope_dominates_all_levels():
    report = decay_rate("aut:4:5", horizon=40)
    ev = KpEvaluator(parse_model_spec("aut:4:5"))
    for k in range(41):
        n, d, _ = ev.level_entries(k)[0]
        ratio = mp.mpf(n) * d.denominator / d.numerator
        bound = report.constant_envelope * mp.power(report.theoretical_base, k)
        assert ratio <= bound * (1 + mp.mpf(10) ** -30)


# -- norm-equivalence constants ----------------------------------------------------------


def test_constants_exact_exponents():
    report = norm_equivalence_constants("djq:A1:1/2", 4, 3)
    assert report.exp_c_2_1 == Fraction(2)
    assert report.exp_c_p_1 == Fraction(3)
    assert report.exp_c_r_1 == Fraction(8, 3)


def test_constants_r_one_is_trivial():
    report = norm_equivalence_constants("djq:A1:1/2", 4, 1)
    assert report.exp_c_r_1 == 0
    assert report.c_r_1 == 1


def test_constants_monotone_in_r():
    ev_values = []
    for r in (1, Fraction(3, 2), 2, 3, 5, 10):
        rep = norm_equivalence_constants("djq:A1:1/2", 4, r)
        ev_values.append(rep.c_r_1)
    assert all(a <= b for a, b in zip(ev_values, ev_values[1:]))


def test_constants_p8_exponents():
    report = norm_equivalence_constants("oplus:3:3.5", 8, 2)
    assert report.exp_c_2_1 == Fraction(8, 6)
    assert report.exp_c_p_1 == Fraction(14, 6)
    assert report.exp_c_r_1 == Fraction(2 * 8 * 1, 2 * 6)


def test_constants_reject_bad_p_and_propagate_divergence():
    with pytest.raises(PValueError):
        norm_equivalence_constants("djq:A1:1/2", 6, 2)
    with pytest.raises(PValueError):
        norm_equivalence_constants("djq:A1:1/2", 2, 2)
    with pytest.raises(KpNotConvergedError):
        norm_equivalence_constants("oplus:3:3", 4, 2)


# -- level data sanity ------------------------------------------------------------------


def test_dj_level_entries_match_models_api():
    model = parse_model_spec("djq:A2:1/2")
    ev = KpEvaluator(model)
    for k in range(5):
        entries = ev.level_entries(k)
        expected = [(d.n, d.d, d.chi_sup) for d in model.level_data(k)]
        assert entries == expected


def test_graded_level_entries_match_models_api():
    for spec in ("oplus:3:3.5", "aut:5:5"):
        model = parse_model_spec(spec)
        ev = KpEvaluator(model)
        for k in range(30):
            (n, d, chi) = ev.level_entries(k)[0]
            data = model.irr_data(k)
            assert (n, d, chi) == (data.n, data.d, data.chi_sup)


def test_polynomial_character_sums_drinfeld_jimbo():
    # sum of chi_sup^2 = sum n^2 per level grows polynomially:
    # exactly (k+1)^2 for A1; log-log slope stabilises for A2
    ev1 = KpEvaluator(parse_model_spec("djq:A1:1/2"))
    for k in (1, 5, 20, 50):
        total = sum(n * n for n, _, _ in ev1.level_entries(k))
        assert total == (k + 1) ** 2
    ev2 = KpEvaluator(parse_model_spec("djq:A2:1/2"))

    def level_sum(k):
        return sum(n * n for n, _, _ in ev2.level_entries(k))

    import math

    slopes = [
        math.log(level_sum(2 * k) / level_sum(k)) / math.log(2) for k in (50, 100, 200)
    ]
    assert abs(slopes[-1] - slopes[-2]) < 0.1
    # sum over the level of (cubic)^2 with ~k labels: degree 7 for A2
    assert abs(slopes[-1] - 7) < 0.2


def test_dj_tail_bound_covers_actual_remainder():
    ev = KpEvaluator(parse_model_spec("djq:A2:1/2"))
    p = Fraction(4)
    with mp.workprec(192):
        tail_at_40 = ev.tail_bound(40, p)
        actual = mp.mpf(0)
        for k in range(41, 260):
            actual += ev.level_term_sum(k, p)
        assert actual < tail_at_40


@pytest.mark.parametrize(
    "spec", ["djq:B2:1/2", "djq:G2:1/2", "djq:A3:1/2", "djq:C3:3/4"]
)
def test_kp_converges_on_other_cartan_types(spec):
    rep = kp_constant(spec, 4, tol=1e-10, max_length=1500)
    assert rep.verdict == "converged"
    assert rep.tail_bound < 1e-10
