import math

import pytest
from scipy.optimize import brentq

from tdqo._precision import ext
from tdqo.roots import ConvergenceError, SolverError, bisect, bisect_newton, sign_changes


@pytest.mark.parametrize(
    "f, df, a, b",
    [
        (lambda x: x * x - 2, lambda x: 2 * x, 0.0, 2.0),
        (lambda x: math.cos(x) - x, lambda x: -math.sin(x) - 1, 0.0, 1.0),
        (lambda x: x**7 - 7 * x - 8, lambda x: 7 * x**6 - 7, 1.0, 3.0),
    ],
)
def test_bisect_newton_matches_brentq(f, df, a, b):
    want = brentq(f, a, b, xtol=1e-15, rtol=4 * 2.0**-52)
    assert bisect_newton(f, df, a, b) == pytest.approx(want, rel=1e-14)


def test_bisect_returns_valid_bracket():
    f = lambda x: x**3 - 0.5  # noqa: E731
    lo, hi = bisect(f, 0.0, 1.0, rtol=1e-10)
    assert f(lo) <= 0 <= f(hi)
    assert hi - lo <= 1e-10 * hi


def test_bisect_exact_zero_at_end():
    assert bisect(lambda x: x - 1, 1.0, 2.0, rtol=1e-12) == (1.0, 1.0)


def test_bisect_without_sign_change():
    with pytest.raises(SolverError):
        bisect(lambda x: x * x + 1, -1.0, 1.0, rtol=1e-12)


def test_bisect_iteration_cap_keeps_bracket():
    with pytest.raises(ConvergenceError) as info:
        bisect(lambda x: x - 0.3, 0.0, 1.0, rtol=1e-15, max_iter=5)
    lo, hi = info.value.bracket
    assert lo < 0.3 < hi


def test_bisect_newton_extended():
    two = ext.mpf(2)
    x = bisect_newton(lambda x: x * x - two, lambda x: 2 * x, ext.mpf(1), two, rtol=1e-13)
    assert abs(x - ext.sqrt(two)) < ext.mpf(10) ** -45


def test_sign_changes():
    hits = sign_changes(lambda x: (x - 0.25) * (x - 0.63), 0.0, 1.0, panels=10)
    assert len(hits) == 2
    assert hits[0][0] < 0.25 < hits[0][1] and hits[1][0] < 0.63 < hits[1][1]


def test_sign_changes_exact_zero_counted_once():
    hits = sign_changes(lambda x: x - 0.5, 0.0, 1.0, panels=4)
    assert hits == [(0.5, 0.5)]
