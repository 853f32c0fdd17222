"""Scalar q-mathematics of the Tamm-Dancoff (TD) q-oscillator.

Energies are in units of hbar*omega (set to 1). Every function accepts the
deformation parameter either as a :class:`DeformationParameter` or as a bare
positive number; bare numbers may be floats or extended-precision mpmath
values, and the result is computed in the same precision.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from . import _precision as P


class Regime(str, enum.Enum):
    SUB_UNIT = "sub_unit"
    CLASSICAL = "classical"
    SUPER_UNIT = "super_unit"


@dataclass(frozen=True)
class DeformationParameter:
    """A validated deformation parameter ``q > 0``.

    ``q = 0`` is rejected: every level above the vacuum collapses to zero
    energy there.
    """

    value: object

    def __post_init__(self):
        v = self.value
        if isinstance(v, DeformationParameter):
            object.__setattr__(self, "value", v.value)
            return
        if isinstance(v, bool) or not _is_real(v):
            raise TypeError(f"q must be a real number, got {v!r}")
        if isinstance(v, int):
            object.__setattr__(self, "value", float(v))
            v = self.value
        if not (v > 0) or not _finite(v):
            raise ValueError(f"q must be a finite number > 0, got {v!r}")

    @property
    def regime(self) -> Regime:
        if self.value < 1:
            return Regime.SUB_UNIT
        if self.value == 1:
            return Regime.CLASSICAL
        return Regime.SUPER_UNIT

    @property
    def precision(self) -> str:
        return P.precision_of(self.value)

    def __float__(self):
        return float(self.value)


def _is_real(v) -> bool:
    return isinstance(v, (int, float, np.floating, np.integer)) or P.is_extended(v)


def _finite(v) -> bool:
    return P.ext.isfinite(v) if P.is_extended(v) else math.isfinite(v)


def qvalue(q):
    """Unwrap and validate ``q``; returns the raw number."""
    if isinstance(q, DeformationParameter):
        return q.value
    return DeformationParameter(q).value


def _half(like):
    return P.ext.mpf(1) / 2 if P.is_extended(like) else 0.5


# -- brackets and factorials -------------------------------------------------


def q_bracket(x, q):
    """TD q-bracket ``{x}_q = x q^(x-1)``."""
    q = qvalue(q)
    return x * q ** (x - 1)


# relative |q - p| below which the difference quotient is replaced by its
# first-order Taylor expansion about p = q
QP_SWITCH = 1e-8


def qp_bracket(x, q, p):
    """Two-parameter bracket ``(q^x - p^x) / (q - p)``.

    At ``p == q`` this returns the limit ``x q^(x-1)`` (the TD bracket).
    For ``|q - p| < 1e-8 q`` the quotient loses most of its digits to
    cancellation, so the limit plus its first-order correction
    ``x (x-1)/2 q^(x-2) (p - q)`` is used instead; the dropped term is
    O((p - q)^2).
    """
    q = qvalue(q)
    p = qvalue(p)
    h = p - q
    if h == 0:
        return x * q ** (x - 1)
    if abs(h) < QP_SWITCH * q:
        return x * q ** (x - 1) + x * (x - 1) / 2 * q ** (x - 2) * h
    return (q**x - p**x) / (q - p)


def q_factorial(n: int, q):
    """``{n}_q! = {1}_q {2}_q ... {n}_q``; equals 1 for ``n = 0``."""
    n = _check_level(n)
    q = qvalue(q)
    out = 1.0 if not P.is_extended(q) else P.ext.mpf(1)
    for i in range(1, n + 1):
        out = out * q_bracket(i, q)
    return out


def log_q_factorial(n: int, q):
    """Natural log of :func:`q_factorial`, safe for large ``n``.

    Uses ``ln {n}_q! = ln n! + n(n-1)/2 ln q``.
    """
    n = _check_level(n)
    q = qvalue(q)
    if P.is_extended(q):
        return P.ext.loggamma(n + 1) + P.ext.mpf(n * (n - 1)) / 2 * P.ext.log(q)
    return math.lgamma(n + 1) + n * (n - 1) / 2 * math.log(q)


# -- energies ----------------------------------------------------------------


def _check_level(n) -> int:
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(f"level index must be an integer, got {n!r}")
    if n < 0:
        raise ValueError(f"level index must be >= 0, got {n}")
    return int(n)


def energy(n: int, q):
    """Energy of level ``n``: ``E_n = ((n+1) q^n + n q^(n-1)) / 2``.

    For ``q < 1`` and large ``n`` the double-precision value underflows to
    0, which is the physical limit; use :func:`log_energy` to resolve it.
    For ``q > 1`` an overflow returns ``inf``.
    """
    n = _check_level(n)
    q = qvalue(q)
    half = _half(q)
    if n == 0:
        return half
    try:
        return half * ((n + 1) * q**n + n * q ** (n - 1))
    except OverflowError:
        return math.inf


def log_energy(n: int, q):
    """``ln E_n = ln(1/2) + n ln q + ln(1 + n (1 + 1/q))``."""
    n = _check_level(n)
    q = qvalue(q)
    lg = P.log
    return lg(_half(q)) + n * lg(q) + lg(1 + n * (1 + 1 / q))


def level_spacing(n: int, q):
    """``E_{n+1} - E_n = q^(n-1) ((n+2) q^2 - n) / 2`` without cancellation."""
    n = _check_level(n)
    q = qvalue(q)
    return _half(q) * q ** (n - 1) * ((n + 2) * q * q - n)


@dataclass(frozen=True)
class Spectrum:
    q: DeformationParameter
    energies: np.ndarray
    n_max: int

    def __post_init__(self):
        if len(self.energies) != self.n_max + 1:
            raise ValueError("energies must have n_max + 1 entries")

    def __len__(self):
        return len(self.energies)

    def __getitem__(self, n):
        return self.energies[n]


def spectrum(q, n_max: int, precision: str | None = None) -> Spectrum:
    """Levels ``E_0 .. E_{n_max}``.

    ``precision`` defaults to that of ``q``. Double-precision spectra are
    float64 arrays; extended spectra are object arrays of mpmath numbers.
    """
    n_max = _check_level(n_max)
    qp = q if isinstance(q, DeformationParameter) else DeformationParameter(q)
    precision = P.check_precision(precision or qp.precision)
    qv = P.to_working(qp.value, precision)
    values = [energy(n, qv) for n in range(n_max + 1)]
    dtype = float if precision == "double" else object
    arr = np.array(values, dtype=dtype)
    arr.flags.writeable = False
    return Spectrum(DeformationParameter(qv), arr, n_max)


def truncation_index(q) -> int:
    """Largest level kept when every spacing is required to be positive.

    Returns ``floor((1 + q^2) / (1 - q^2))``. When the ratio is an integer
    up to rounding of ``q`` itself (e.g. ``q = sqrt(1/3)`` gives 2) the
    integer is returned, so the boundary level with zero spacing below it
    is included.
    """
    q = qvalue(q)
    if not q < 1:
        raise ValueError(f"truncation index is defined only for q < 1, got {q}")
    ratio = (1 + q * q) / (1 - q * q)
    nearest = int(round(float(ratio)))
    # a few ulps of q, amplified by 4q^2/(1-q^2)^2 in the ratio
    slack = 64 * P.machine_eps(P.precision_of(q)) * max(1.0, float(ratio)) ** 2
    if abs(ratio - nearest) <= slack:
        return nearest
    return int(math.floor(ratio))


def degenerate_pairs(spec: Spectrum, tol: float = 1e-9) -> list[tuple[int, int]]:
    """All level pairs ``(i, j)``, ``i < j``, with ``|E_i - E_j| <= tol * scale``.

    The scale is ``max(|E_i|, |E_j|)`` floored at 1e-300.
    """
    e = spec.energies
    if spec.q.precision == "double":
        ef = np.asarray(e, dtype=float)
        diff = np.abs(ef[:, None] - ef[None, :])
        scale = np.maximum(np.maximum(np.abs(ef)[:, None], np.abs(ef)[None, :]), P.TINY)
        hit = np.triu(diff <= tol * scale, k=1)
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(hit))]
    out = []
    for i in range(len(e)):
        for j in range(i + 1, len(e)):
            scale = max(abs(e[i]), abs(e[j]), P.TINY)
            if abs(e[i] - e[j]) <= tol * scale:
                out.append((i, j))
    return out


# -- Fibonacci recurrence ----------------------------------------------------


class FibonacciCoefficients(NamedTuple):
    alpha: object
    beta: object


def fibonacci_coefficients(q) -> FibonacciCoefficients:
    """``E_{n+1} = alpha E_n + beta E_{n-1}`` holds with ``alpha = 2q``, ``beta = -q^2``."""
    q = qvalue(q)
    return FibonacciCoefficients(2 * q, -q * q)


def fibonacci_terms(spec: Spectrum, relative: bool = False) -> np.ndarray:
    """Per-level recurrence defects ``|E_{n+1} - 2q E_n + q^2 E_{n-1}|``, ``n >= 1``.

    With ``relative=True`` each defect is divided by the largest of the three
    energies involved (floored at 1e-300).
    """
    e = spec.energies
    if len(e) < 3:
        raise ValueError("Fibonacci check needs at least 3 levels")
    alpha, beta = fibonacci_coefficients(spec.q)
    out = []
    for n in range(1, len(e) - 1):
        d = abs(e[n + 1] - alpha * e[n] - beta * e[n - 1])
        if relative:
            d = d / max(abs(e[n + 1]), abs(e[n]), abs(e[n - 1]), P.TINY)
        out.append(d)
    return np.array(out, dtype=float if spec.q.precision == "double" else object)


def fibonacci_residual(spec: Spectrum, relative: bool = False):
    """Maximum of :func:`fibonacci_terms` over the spectrum."""
    return max(fibonacci_terms(spec, relative=relative))


LocalVariant = Literal["below_degenerate", "above_degenerate", "next_nearest"]


class LocalRatio(NamedTuple):
    q: object
    ratio: object
    numerator: int  # level index of the ratio's numerator
    denominator: int


def fibonacci_local_ratio(m: int, variant: LocalVariant, precision: str = "double") -> LocalRatio:
    """Energy ratio forced by the recurrence next to a tuned degeneracy.

    ``below_degenerate`` (m > 1)
        ``q = sqrt((m-1)/(m+1))`` makes ``E_{m-1} = E_m``; then
        ``E_{m+1}/E_m = q (2 - q)``.
    ``above_degenerate`` (m > 0)
        ``q = sqrt(m/(m+2))`` makes ``E_m = E_{m+1}``; then
        ``E_{m-1}/E_m = (2q - 1)/q^2``.
    ``next_nearest`` (m >= 0)
        ``q`` from :func:`tdqo.degeneracy.q_next_nearest` makes
        ``E_m = E_{m+2}``; then ``E_{m+1}/E_m = (1 + q^2)/(2q)``.
    """
    from .degeneracy import q_nearest_neighbor, q_next_nearest

    if variant == "below_degenerate":
        if m <= 1:
            raise ValueError(f"below_degenerate needs m > 1, got {m}")
        q = q_nearest_neighbor(m - 1, precision)
        return LocalRatio(q, q * (2 - q), m + 1, m)
    if variant == "above_degenerate":
        if m <= 0:
            raise ValueError(f"above_degenerate needs m > 0, got {m}")
        q = q_nearest_neighbor(m, precision)
        return LocalRatio(q, (2 * q - 1) / (q * q), m - 1, m)
    if variant == "next_nearest":
        if m < 0:
            raise ValueError(f"next_nearest needs m >= 0, got {m}")
        q = q_next_nearest(m, precision)
        return LocalRatio(q, (1 + q * q) / (2 * q), m + 1, m)
    raise ValueError(f"unknown variant {variant!r}")
