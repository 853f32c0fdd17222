"""Truncated Fock-space matrices of the TD q-oscillator.

The basis is ``|0>, ..., |D-1>``. Ladder operators act as

    a |n>     = sqrt(n q^(n-1))   |n-1>
    a^+ |n>   = sqrt((n+1) q^n)   |n+1>

Cutting the space at ``D`` levels breaks operator identities on the top
state only, so identities are checked on the *safe zone* ``|0> .. |D-2>``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import qvalue
from .roots import bisect, sign_changes

DEFAULT_DIM = 32


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@dataclass(frozen=True)
class FockRep:
    dim: int
    q: float
    a: np.ndarray
    a_dag: np.ndarray
    n_op: np.ndarray

    @property
    def safe(self) -> slice:
        """Index range of the truncation-safe zone."""
        return slice(0, self.dim - 1)

    def q_power_n(self) -> np.ndarray:
        """The diagonal operator ``q^N``."""
        return np.diag(self.q ** np.arange(self.dim, dtype=float))


def ladder_elements(dim: int, q) -> np.ndarray:
    """``sqrt(n q^(n-1))`` for ``n = 1 .. dim-1``."""
    n = np.arange(1, dim, dtype=float)
    return np.sqrt(n * q ** (n - 1))


def build_fock_rep(dim: int = DEFAULT_DIM, q=1.0) -> FockRep:
    if dim < 2:
        raise ValueError(f"dim must be >= 2, got {dim}")
    q = float(qvalue(q))
    a = np.diag(ladder_elements(dim, q), k=1)
    n_op = np.diag(np.arange(dim, dtype=float))
    return FockRep(dim, q, _frozen(a), _frozen(a.T.copy()), _frozen(n_op))


def _is_diagonal(x: np.ndarray) -> bool:
    return not np.any(x - np.diag(np.diag(x)))


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """``x y - y x``.

    When either operand is diagonal the entrywise form
    ``[D, y]_ij = (d_i - d_j) y_ij`` is used; it has no summation error, so
    relations like ``[N, a] = -a`` come out exact.
    """
    if _is_diagonal(x):
        d = np.diag(x)
        return (d[:, None] - d[None, :]) * y
    if _is_diagonal(y):
        d = np.diag(y)
        return (d[None, :] - d[:, None]) * x
    return x @ y - y @ x


def eq1_defect(rep: FockRep) -> np.ndarray:
    """Full matrix ``a a^+ - q a^+ a - q^N``; nonzero only at ``(D-1, D-1)``."""
    return rep.a @ rep.a_dag - rep.q * rep.a_dag @ rep.a - rep.q_power_n()


class RelationResiduals(NamedTuple):
    eq1: float  # a a^+ - q a^+ a = q^N on the safe zone
    eq2: float  # [N, a] = -a, [N, a^+] = a^+ everywhere
    eq11: float  # a^+ a = N q^(N-1) everywhere


def check_defining_relations(rep: FockRep) -> RelationResiduals:
    s = rep.safe
    r1 = np.abs(eq1_defect(rep)[s, s]).max()
    r2 = max(
        np.abs(commutator(rep.n_op, rep.a) + rep.a).max(),
        np.abs(commutator(rep.n_op, rep.a_dag) - rep.a_dag).max(),
    )
    n = np.arange(rep.dim, dtype=float)
    r11 = np.abs(rep.a_dag @ rep.a - np.diag(n * rep.q ** (n - 1))).max()
    return RelationResiduals(float(r1), float(r2), float(r11))


def hamiltonian(rep: FockRep) -> np.ndarray:
    """``H = (a a^+ + a^+ a) / 2``.

    The last diagonal entry is polluted by the truncation and does not equal
    ``E_{D-1}``.
    """
    return (rep.a @ rep.a_dag + rep.a_dag @ rep.a) / 2


def xp_commutator_value(n: int, q) -> float:
    """Eigenvalue of ``[a, a^+]`` on ``|n>``: ``q^n (1 + n (1 - 1/q))``.

    Equivalently ``q^n + (q - 1) n q^(n-1)``. With ``X = (a + a^+)/sqrt 2``
    and ``P = i (a^+ - a)/sqrt 2`` one has ``[X, P] = i [a, a^+]``, so this is
    also the eigenvalue of ``-i [X, P]``.
    """
    q = qvalue(q)
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    if n == 0:
        return 1.0
    return q**n * (1 + n * (1 - 1 / q))


def classical_q(m: int):
    """``q = m/(m+1)``, where ``[X, P]`` vanishes on the single state ``|m>``."""
    if m < 1:
        raise ValueError(f"m must be >= 1 (m = 0 would need q = 0), got {m}")
    return m / (m + 1)


def xp_zero_crossings(m: int, panels: int = 256, rtol: float = 1e-14) -> list[float]:
    """Zeros of ``q -> xp_commutator_value(m, q)`` in (0, 1), by panel scan.

    Each sign change is refined by bisection. The scan starts at
    ``q = 1/panels`` so that ``q^m`` stays representable for moderate ``m``.
    """
    f = lambda q: xp_commutator_value(m, q)  # noqa: E731
    zeros = []
    for a, b in sign_changes(f, 1.0 / panels, 1.0, panels - 1):
        lo, hi = bisect(f, a, b, rtol=rtol)
        zeros.append((lo + hi) / 2)
    return zeros


@dataclass(frozen=True)
class PhaseSpaceOps:
    """Position and momentum matrices.

    ``P`` is purely imaginary, so only its real factor is stored:
    ``P = 1j * p_imag``. ``commutator_diag`` holds the diagonal of
    ``-i [X, P] = [X, p_imag] = [a, a^+]``; its last entry is affected by the
    truncation.
    """

    x: np.ndarray
    p_imag: np.ndarray
    commutator_diag: np.ndarray

    @property
    def p(self) -> np.ndarray:
        return 1j * self.p_imag


def build_phase_space(rep: FockRep) -> PhaseSpaceOps:
    r2 = math.sqrt(2.0)
    x = (rep.a + rep.a_dag) / r2
    p_imag = (rep.a_dag - rep.a) / r2
    diag = np.diag(commutator(x, p_imag)).copy()
    return PhaseSpaceOps(_frozen(x), _frozen(p_imag), _frozen(diag))

