from fractions import Fraction

import mpmath
import pytest
from mpmath import mp

from cqgkhint.chebyshev import (
    OutsideDomainError,
    chebyshev_f,
    chebyshev_f_closed,
    chebyshev_g,
    envelope,
    f_growth_base,
    g_growth_base,
    limit_value,
)


def test_f_small_values():
    assert chebyshev_f(2, 3) == 8  # 3*3 - 1
    assert chebyshev_f(2, Fraction(7, 2)) == Fraction(45, 4)  # 11.25
    assert chebyshev_f(0, 10) == 1
    assert chebyshev_f(1, Fraction(5, 2)) == Fraction(5, 2)


def test_f_degenerate_point():
    for k in range(20):
        assert chebyshev_f(k, 2) == k + 1


def test_g_values():
    for k in range(20):
        assert chebyshev_g(k, 4) == 2 * k + 1
    assert chebyshev_g(1, 5) == 4
    for x in (4, 5, Fraction(9, 2), 10):
        assert chebyshev_g(0, x) == 1
        assert chebyshev_g(1, x) == Fraction(x) - 1


def test_g_equals_f2k_at_sqrt():
    # identity g_k(x) = f_{2k}(sqrt(x)) for x > 4, on a numeric grid
    with mp.workprec(200):
        for x in ("4.2", "5", "6.5", "9", "16"):
            sx = mp.sqrt(mp.mpf(x))
            for k in range(0, 40, 3):
                lhs = chebyshev_g(k, Fraction(x))
                rhs = chebyshev_f(2 * k, sx)
                lhs_m = mp.mpf(lhs.numerator) / lhs.denominator
                assert abs(lhs_m - rhs) <= abs(lhs_m) * mp.mpf(2) ** -150


@pytest.mark.parametrize("t", [Fraction(21, 10), Fraction(3), Fraction(7, 2), Fraction(10)])
def test_recursion_matches_closed_form(t):
    # agreement <= 1e-9 relative for k <= 300 (evaluated well above double range)
    with mp.workprec(500):
        t_m = mp.mpf(t.numerator) / t.denominator
        for k in list(range(0, 30)) + [100, 200, 300]:
            exact = chebyshev_f(k, t)
            closed = chebyshev_f_closed(k, t_m)
            exact_m = mp.mpf(exact.numerator) / exact.denominator
            assert abs(closed - exact_m) <= 1e-9 * exact_m


def test_f_monotone_in_t():
    grid = [Fraction(2), Fraction(21, 10), Fraction(5, 2), Fraction(3), Fraction(7, 2), Fraction(5)]
    for k in (1, 2, 5, 11):
        values = [chebyshev_f(k, t) for t in grid]
        assert all(a < b for a, b in zip(values, values[1:]))


def test_domain_errors():
    with pytest.raises(OutsideDomainError):
        chebyshev_f(3, Fraction(19, 10))
    with pytest.raises(OutsideDomainError):
        chebyshev_g(3, Fraction(39, 10))
    with pytest.raises(OutsideDomainError):
        chebyshev_f_closed(3, 2)
    with pytest.raises(OutsideDomainError):
        envelope(3, 2)
    with pytest.raises(OutsideDomainError):
        chebyshev_f(-1, 3)


def test_envelope_brackets_exact_value():
    for k in (0, 1, 2, 7, 50, 200):
        for t in (Fraction(21, 10), Fraction(3), Fraction(7, 2)):
            env = envelope(k, t)
            exact = chebyshev_f(k, t)
            lo = Fraction(*mpmath.libmp.to_rational(env.lower._mpf_))
            hi = Fraction(*mpmath.libmp.to_rational(env.upper._mpf_))
            assert lo <= exact <= hi, (k, t)


def test_envelope_contains_known_values():
    env = envelope(0, 3)
    assert env.lower <= 1 <= env.upper
    env = envelope(2, 3)
    assert env.lower <= 8 <= env.upper


def test_envelope_width_shrinks():
    with mp.workprec(300):
        widths = []
        for k in (5, 20, 80):
            env = envelope(k, Fraction(3))
            widths.append(float((env.upper - env.lower) / env.upper))
    assert widths[0] > widths[1] > widths[2]
    assert widths[2] < 1e-30


def test_limit_identity_residual():
    # f_k(t) u^{-(k+1)} -> 1/sqrt(t^2-4); residual tiny at k = 200, t = 3.5
    with mp.workprec(400):
        t = Fraction(7, 2)
        k = 200
        f = chebyshev_f(k, t)
        f_m = mp.mpf(f.numerator) / f.denominator
        u = f_growth_base(mp.mpf(3.5))
        residual = abs(f_m * u ** (-(k + 1)) - limit_value(3.5))
        assert residual < 1e-6


def test_growth_bases_consistency():
    # g growth base is the square of the f growth base at sqrt(x)
    with mp.workprec(200):
        for x in (4.5, 5.0, 7.25):
            lhs = g_growth_base(x)
            rhs = f_growth_base(mp.sqrt(mp.mpf(x))) ** 2
            assert abs(lhs - rhs) < 1e-40 * lhs
    assert g_growth_base(4) == 1
