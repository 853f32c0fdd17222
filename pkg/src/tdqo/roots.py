"""Bracketing root finders that work in either working precision.

Everything here is written against plain arithmetic operators so the same
code runs on Python floats and on extended-precision mpmath numbers.
"""

from __future__ import annotations

from typing import Callable

from ._precision import machine_eps, precision_of


class SolverError(RuntimeError):
    """Base class for root-finding failures."""


class ConvergenceError(SolverError):
    """Raised when bisection hits its iteration cap.

    The best bracket found so far is kept on ``bracket``.
    """

    def __init__(self, message, bracket):
        super().__init__(f"{message}; best bracket {bracket!r}")
        self.bracket = bracket


class RootCountError(SolverError):
    """A bracket that must contain exactly one root contains several."""


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def sign_changes(f: Callable, a, b, panels: int = 64) -> list[tuple]:
    """Scan ``[a, b]`` on ``panels`` equal panels and return sign-change brackets.

    A sample where ``f`` is exactly zero is reported as the degenerate
    bracket ``(x, x)``; the zero is not counted a second time by its
    neighbouring panels.
    """
    if panels < 1:
        raise ValueError("panels must be >= 1")
    xs = [a + (b - a) * i / panels for i in range(panels + 1)]
    xs[-1] = b
    signs = [_sign(f(x)) for x in xs]
    found = []
    last = None  # (x, sign) of the last nonzero sample
    for x, s in zip(xs, signs):
        if s == 0:
            found.append((x, x))
            last = None
            continue
        if last is not None and last[1] != s:
            found.append((last[0], x))
        last = (x, s)
    return found


def bisect(f: Callable, a, b, *, rtol: float, max_iter: int = 500):
    """Shrink a sign-change bracket until its relative width is <= ``rtol``.

    Returns the final ``(a, b)`` bracket with ``f(a)`` and ``f(b)`` of
    opposite sign (or one of them exactly zero).
    """
    fa, fb = f(a), f(b)
    if fa == 0:
        return a, a
    if fb == 0:
        return b, b
    if _sign(fa) == _sign(fb):
        raise SolverError(f"no sign change on [{a}, {b}]: f(a)={fa}, f(b)={fb}")
    for _ in range(max_iter):
        scale = max(abs(a), abs(b))
        if b - a <= rtol * scale:
            return a, b
        c = (a + b) / 2
        if c == a or c == b:
            # bracket already at working-precision resolution
            return a, b
        fc = f(c)
        if fc == 0:
            return c, c
        if _sign(fc) == _sign(fa):
            a, fa = c, fc
        else:
            b, fb = c, fc
    raise ConvergenceError(f"bisection did not reach rtol={rtol} in {max_iter} steps", (a, b))


def bisect_newton(
    f: Callable,
    df: Callable,
    a,
    b,
    *,
    rtol: float = 1e-13,
    max_newton: int = 8,
    max_bisect: int = 500,
):
    """Bisection to ``rtol`` on ``[a, b]`` followed by a safeguarded Newton polish.

    Newton steps that leave the final bisection bracket are rejected and the
    polish stops there, so the result can never escape the certified
    bracket. Polishing runs until the step is at the working-precision
    resolution or ``max_newton`` iterations are spent.
    """
    lo, hi = bisect(f, a, b, rtol=rtol, max_iter=max_bisect)
    x = (lo + hi) / 2
    if lo == hi:
        return x
    eps = machine_eps(precision_of(x))
    # Newton may wander slightly outside the tight bisection bracket while
    # still converging, so allow a margin of one bracket width each side.
    width = hi - lo
    left, right = lo - width, hi + width
    for _ in range(max_newton):
        fx = f(x)
        if fx == 0:
            break
        d = df(x)
        if d == 0:
            break
        step = fx / d
        nx = x - step
        if not (left <= nx <= right):
            break
        x = nx
        if abs(step) <= 4 * eps * abs(x):
            break
    return x
