"""The deformed algebra U_q(su(2) + u(1)) built from two TD q-oscillators.

Generators ``J+ = a1^+ a2``, ``J- = a2^+ a1``, ``J0 = (N1 - N2)/2`` and
``J3 = (N1 + N2)/2`` close into

    [J0, J+-] = +-J+-,   [J+, J-] = 2 J0 q^(2 J3 - 1),
    [J0, J3] = 0,        [J+-, J3] = 0.

Spin labels are carried as integers ``two_j = 2j`` and ``two_m = 2m`` so
half-integers stay exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import qvalue
from .fock import build_fock_rep, commutator


def _frozen(a):
    a.flags.writeable = False
    return a


def _check_two_j(two_j: int) -> int:
    if isinstance(two_j, bool) or not isinstance(two_j, (int, np.integer)) or two_j < 0:
        raise ValueError(f"two_j must be a nonnegative integer (2j), got {two_j!r}")
    return int(two_j)


@dataclass(frozen=True)
class SpinModule:
    """Spin-j representation in the basis ``|j, m>``, ``m = -j .. j`` (ascending)."""

    two_j: int
    q: float
    j_plus: np.ndarray
    j_minus: np.ndarray
    j0: np.ndarray
    j3: np.ndarray

    @property
    def j(self) -> float:
        return self.two_j / 2

    @property
    def dim(self) -> int:
        return self.two_j + 1

    @property
    def two_m(self) -> np.ndarray:
        return np.arange(-self.two_j, self.two_j + 1, 2)


def raising_element(two_j: int, two_m: int, q) -> float:
    """``<j, m+1| J+ |j, m> = q^(j - 1/2) sqrt((j - m)(j + m + 1))``."""
    q = float(qvalue(q))
    two_j = _check_two_j(two_j)
    if abs(two_m) > two_j or (two_j - two_m) % 2:
        raise ValueError(f"invalid m: 2m={two_m} for 2j={two_j}")
    prod = (two_j - two_m) * (two_j + two_m + 2) / 4
    if prod == 0:
        return 0.0
    # log form keeps q^(j-1/2) from underflowing before the product is formed
    return math.exp((two_j - 1) / 2 * math.log(q) + 0.5 * math.log(prod))


def build_spin_module(two_j: int, q) -> SpinModule:
    two_j = _check_two_j(two_j)
    q = float(qvalue(q))
    dim = two_j + 1
    two_m = np.arange(-two_j, two_j + 1, 2)
    jp = np.zeros((dim, dim))
    for i in range(dim - 1):
        jp[i + 1, i] = raising_element(two_j, int(two_m[i]), q)
    j0 = np.diag(two_m / 2)
    j3 = np.eye(dim) * (two_j / 2)
    return SpinModule(two_j, q, _frozen(jp), _frozen(jp.T.copy()), _frozen(j0), _frozen(j3))


def relation_residuals(jp, jm, j0, j3, q, keep=None) -> dict[str, float]:
    """Max-abs defect of each relation, optionally restricted to index set ``keep``.

    ``q^(2 J3 - 1)`` is applied as a diagonal function of ``J3``, which is
    diagonal in every representation built here.
    """
    deform = np.diag(q ** (2 * np.diag(j3) - 1))
    defects = {
        "[J0,J+]=J+": commutator(j0, jp) - jp,
        "[J0,J-]=-J-": commutator(j0, jm) + jm,
        "[J+,J-]=2J0q^(2J3-1)": commutator(jp, jm) - 2 * j0 @ deform,
        "[J0,J3]=0": commutator(j0, j3),
        "[J+,J3]=0": commutator(jp, j3),
        "[J-,J3]=0": commutator(jm, j3),
    }
    if keep is not None:
        idx = np.ix_(keep, keep)
        defects = {k: v[idx] for k, v in defects.items()}
    return {k: float(np.abs(v).max()) if v.size else 0.0 for k, v in defects.items()}


def check_spin_relations(module: SpinModule) -> float:
    res = relation_residuals(module.j_plus, module.j_minus, module.j0, module.j3, module.q)
    return max(res.values())


@dataclass(frozen=True)
class TwoModeRealization:
    """Generators on the product of two ``mode_dim``-level Fock spaces.

    Basis states ``|n1, n2>`` are ordered lexicographically, index
    ``n1 * mode_dim + n2``.
    """

    mode_dim: int
    q: float
    j_plus: np.ndarray
    j_minus: np.ndarray
    j0: np.ndarray
    j3: np.ndarray

    def index(self, n1: int, n2: int) -> int:
        return n1 * self.mode_dim + n2

    def safe_indices(self) -> np.ndarray:
        """Basis indices with total occupation ``n1 + n2 <= mode_dim - 2``."""
        d = self.mode_dim
        return np.array([self.index(n1, n2) for n1 in range(d) for n2 in range(d) if n1 + n2 <= d - 2])


def build_two_mode(mode_dim: int, q) -> TwoModeRealization:
    if mode_dim < 2:
        raise ValueError(f"mode_dim must be >= 2, got {mode_dim}")
    rep = build_fock_rep(mode_dim, q)
    eye = np.eye(mode_dim)
    a1, a1d, n1 = (np.kron(x, eye) for x in (rep.a, rep.a_dag, rep.n_op))
    a2, a2d, n2 = (np.kron(eye, x) for x in (rep.a, rep.a_dag, rep.n_op))
    return TwoModeRealization(
        mode_dim,
        rep.q,
        _frozen(a1d @ a2),
        _frozen(a2d @ a1),
        _frozen((n1 - n2) / 2),
        _frozen((n1 + n2) / 2),
    )


def check_two_mode_relations(real: TwoModeRealization) -> float:
    res = relation_residuals(
        real.j_plus, real.j_minus, real.j0, real.j3, real.q, keep=real.safe_indices()
    )
    return max(res.values())


def spin_block(real: TwoModeRealization, two_j: int) -> dict[str, np.ndarray]:
    """Sub-block on total occupation ``2j`` in the ``|j, m>`` ordering.

    Uses ``|j, m> <-> |n1 = j + m, n2 = j - m>`` with ``m`` ascending.
    """
    two_j = _check_two_j(two_j)
    if two_j > real.mode_dim - 1:
        raise ValueError(f"2j={two_j} needs mode_dim >= {two_j + 1}")
    idx = [real.index((two_j + tm) // 2, (two_j - tm) // 2) for tm in range(-two_j, two_j + 1, 2)]
    sel = np.ix_(idx, idx)
    return {
        "j_plus": real.j_plus[sel],
        "j_minus": real.j_minus[sel],
        "j0": real.j0[sel],
        "j3": real.j3[sel],
    }


def large_j_matrix_element(two_j: int, two_m: int, q) -> float:
    """``<j, m+1| J+ |j, m>`` as a function of spin; see :func:`raising_element`.

    For ``q < 1`` and fixed ``m`` this tends to 0 as ``j`` grows, although the
    ``J3`` eigenvalue ``j`` is unbounded.
    """
    if abs(two_m) > two_j:
        raise ValueError(f"|m| > j: 2m={two_m}, 2j={two_j}")
    return raising_element(two_j, two_m, q)


def large_j_crossover(q, two_m: int = 0, eps: float = 1e-8, max_two_j: int = 10**7) -> int:
    """Smallest ``2j`` past the peak of the ``J+`` element where it drops below ``eps``.

    ``j`` runs over values with ``2j = |2m|, |2m| + 2, ...`` (``j - m`` integral).
    """
    q = float(qvalue(q))
    if q >= 1:
        raise ValueError("the J+ element only decays for q < 1")
    two_j = abs(two_m)
    prev = large_j_matrix_element(two_j, two_m, q)
    while two_j <= max_two_j:
        two_j += 2
        cur = large_j_matrix_element(two_j, two_m, q)
        if cur < prev and cur < eps:
            return two_j
        prev = cur
    raise RuntimeError(f"no crossover below {eps} up to 2j={max_two_j}")
