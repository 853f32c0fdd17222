"""Accidental two-fold degeneracies ``E_m = E_{m+k}`` of the TD spectrum.

Closed forms exist for ``k = 1`` and ``k = 2``; everything else is solved
numerically on a certified bracket. For ``q`` in (0, 1), ``E_m = E_{m+k}`` is
equivalent to the root of

    f(q) = (m+k+1) q^(k+1) + (m+k) q^k - (m+1) q - m,

whose coefficient signs (+, +, -, -) allow exactly one positive root.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _precision as P
from .core import energy
from .roots import RootCountError, SolverError, bisect_newton, sign_changes

DEFAULT_TOL = 1e-13

# auto-precision thresholds
EXTENDED_LEVEL = 50
EXTENDED_GAP = 20

# rows of the reference E_0 = E_n table
PRESET_N = (2, 3, 4, 5, 6, 10, 25, 50, 100, 200, 400)

SCAN_PANELS = 64


class ImpossibleDegeneracyError(ValueError):
    pass


_E0_E1 = "E_0 = E_1 is impossible: it would require q = 0, outside q > 0"


class Method(str, enum.Enum):
    CLOSED_FORM_K1 = "closed_form_k1"
    CLOSED_FORM_K2 = "closed_form_k2"
    ROOT_SOLVE = "root_solve"


@dataclass(frozen=True)
class DegeneracyQuery:
    m: int
    k: int

    def __post_init__(self):
        if self.m < 0:
            raise ValueError(f"m must be >= 0, got {self.m}")
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if (self.m, self.k) == (0, 1):
            raise ImpossibleDegeneracyError(_E0_E1)


@dataclass(frozen=True)
class DegeneracySolution:
    """Tuned ``q`` for ``E_m = E_{m+k}``.

    ``residual`` is the absolute ``|E_m - E_{m+k}|`` at ``q_value``;
    ``q_value`` is a float or an extended-precision number depending on
    ``precision``.
    """

    query: DegeneracyQuery
    q_value: object
    residual: float
    method: Method
    precision: str = "double"

    @property
    def relative_residual(self) -> float:
        scale = max(abs(float(energy(self.query.m, self.q_value))), P.TINY)
        return self.residual / scale


def _resolve_precision(precision: str, top_level: int, gap: int) -> str:
    if precision == "auto":
        return "extended" if top_level > EXTENDED_LEVEL or gap > EXTENDED_GAP else "double"
    return P.check_precision(precision)


# -- closed forms ------------------------------------------------------------


def q_nearest_neighbor(m: int, precision: str = "double"):
    """``q = sqrt(m/(m+2))``, at which ``E_m = E_{m+1}`` (m >= 1)."""
    if m < 1:
        raise ImpossibleDegeneracyError(_E0_E1) if m == 0 else ValueError(f"m must be >= 1, got {m}")
    return P.sqrt(P.fraction(m, m + 2, precision))


def q_next_nearest(m: int, precision: str = "double"):
    """``q = (1 + sqrt(4m^2 + 12m + 1)) / (2(m+3))``, at which ``E_m = E_{m+2}``."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    one = P.to_working(1, precision)
    return (one + P.sqrt(one * (4 * m * m + 12 * m + 1))) / (2 * (m + 3))


# -- polynomials -------------------------------------------------------------


def degeneracy_polynomial(m: int, k: int) -> np.ndarray:
    """Integer coefficients of ``f(q)`` in increasing powers of ``q``."""
    c = np.zeros(k + 2, dtype=np.int64)
    c[0] = -m
    c[1] += -(m + 1)
    c[k] += m + k
    c[k + 1] += m + k + 1
    return c


def _poly_fns(m: int, k: int, deflate: bool):
    """``f`` and ``f'``; with ``deflate`` both are of ``f(q)/(q+1)``.

    For even ``k`` the polynomial has the root ``q = -1``; dividing it out
    keeps Newton from being drawn towards it.
    """
    a, b, c, d = m + k + 1, m + k, m + 1, m

    def f(q):
        return a * q ** (k + 1) + b * q**k - c * q - d

    def df(q):
        return a * (k + 1) * q**k + b * k * q ** (k - 1) - c

    if not deflate:
        return f, df

    def g(q):
        return f(q) / (q + 1)

    def dg(q):
        return (df(q) * (q + 1) - f(q)) / ((q + 1) * (q + 1))

    return g, dg


def _single_sign_change(f, a, b, what: str):
    hits = sign_changes(f, a, b, SCAN_PANELS)
    if len(hits) != 1:
        raise RootCountError(f"{what}: expected one sign change on ({a}, {b}), found {len(hits)}: {hits}")
    return hits[0]


def count_sign_changes(m: int, k: int, panels: int = SCAN_PANELS, precision: str = "double") -> int:
    """Number of sign changes of ``f`` found by a panel scan of ``(eps, 1]``."""
    f, _ = _poly_fns(m, k, deflate=False)
    lo = _left_end(m, precision)
    return len(sign_changes(f, lo, P.to_working(1, precision), panels))


def _left_end(m: int, precision: str):
    # f(0) = -m; for m = 0 the root q = 0 is spurious, so start just above it
    if m > 0:
        return P.to_working(0, precision)
    return P.to_working(2.0**-20, precision)


# -- solvers -----------------------------------------------------------------


def verify_degeneracy(m: int, k: int, q) -> float:
    """``|E_m - E_{m+k}|`` at ``q``.

    When both double-precision energies are below 1e-200 (or underflow) the
    difference is recomputed in extended precision.
    """
    em, ek = energy(m, q), energy(m + k, q)
    if not P.is_extended(q) and max(abs(em), abs(ek)) < 1e-200:
        qx = P.to_working(q, "extended")
        return float(abs(energy(m, qx) - energy(m + k, qx)))
    return float(abs(em - ek))


def q_zero_level(n: int, tol: float = DEFAULT_TOL, precision: str = "auto") -> DegeneracySolution:
    """Solve ``E_0 = E_n`` (n >= 2).

    Works on ``z = 1/q``: ``z^n - n z - (n+1) = 0`` has a single root
    ``z* > 1`` inside ``(1, 2 n^(1/(n-1)) + 2)``; the bracket is bisected and
    Newton-polished, then ``q = 1/z*``.
    """
    if n < 2:
        raise ImpossibleDegeneracyError(_E0_E1) if n == 1 else ValueError(f"n must be >= 2, got {n}")
    query = DegeneracyQuery(0, n)
    precision = _resolve_precision(precision, n, n)
    one = P.to_working(1, precision)

    def g(z):
        return z**n - n * z - (n + 1)

    def dg(z):
        return n * z ** (n - 1) - n

    lo = one
    hi = 2 * (one * n) ** (one / (n - 1)) + 2
    a, b = _single_sign_change(g, lo, hi, f"E_0 = E_{n}")
    z = bisect_newton(g, dg, a, b, rtol=tol)
    q = one / z
    return _finish(query, q, Method.ROOT_SOLVE, precision, tol)


def q_general(m, k: int | None = None, tol: float = DEFAULT_TOL, precision: str = "auto") -> DegeneracySolution:
    """Solve ``E_m = E_{m+k}`` for the unique ``q`` in (0, 1).

    Accepts a :class:`DegeneracyQuery` or ``m, k``. The bracket
    ``(eps, 1)`` has ``f(eps) < 0`` and ``f(1) = 2k > 0``; a 64-panel scan
    must find exactly one sign change there or :class:`RootCountError` is
    raised.
    """
    query = m if isinstance(m, DegeneracyQuery) else DegeneracyQuery(m, k)
    m, k = query.m, query.k
    precision = _resolve_precision(precision, m + k, k)
    f, _ = _poly_fns(m, k, deflate=False)
    lo = _left_end(m, precision)
    a, b = _single_sign_change(f, lo, P.to_working(1, precision), f"E_{m} = E_{m + k}")
    g, dg = _poly_fns(m, k, deflate=(k % 2 == 0))
    q = bisect_newton(g, dg, a, b, rtol=tol)
    return _finish(query, q, Method.ROOT_SOLVE, precision, tol)


def _finish(query, q, method, precision, tol) -> DegeneracySolution:
    if not (0 < q < 1):
        raise SolverError(f"root {q} for E_{query.m} = E_{query.m + query.k} is outside (0, 1)")
    res = verify_degeneracy(query.m, query.k, q)
    return DegeneracySolution(query, q, res, method, precision)


def solve(m: int, k: int, tol: float = DEFAULT_TOL, precision: str = "auto") -> tuple[DegeneracySolution, DegeneracySolution]:
    """Best available solution plus the root-solver cross-check.

    Returns ``(primary, check)``. ``primary`` uses the closed form for
    ``k in (1, 2)`` and is the root solver itself otherwise.
    """
    query = DegeneracyQuery(m, k)
    check = q_general(query, tol=tol, precision=precision)
    if k == 1:
        q = q_nearest_neighbor(m, check.precision)
        primary = _finish(query, q, Method.CLOSED_FORM_K1, check.precision, tol)
    elif k == 2:
        q = q_next_nearest(m, check.precision)
        primary = _finish(query, q, Method.CLOSED_FORM_K2, check.precision, tol)
    else:
        primary = check
    return primary, check


class Table1Row(NamedTuple):
    n: int
    q: object


def table1(n_values=PRESET_N, precision: str = "extended", tol: float = DEFAULT_TOL) -> list[Table1Row]:
    """Rows ``(n, q_n)`` with ``E_0 = E_n`` at ``q_n``."""
    return [Table1Row(n, q_zero_level(n, tol=tol, precision=precision).q_value) for n in n_values]
