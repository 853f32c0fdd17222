"""Invariant suites run by ``tdqo verify``.

Each check reduces to one nonnegative residual compared against a
tolerance. Passing ``tol`` to :func:`run` replaces the default tolerance of
every floating-point residual; counting checks (violations must be 0) and
the digit check against the printed E_0 = E_n table keep their own thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import algebra, core, degeneracy, fock
from . import _precision as P

SUITES = ("core", "degeneracy", "fock", "algebra")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(self.residual <= self.tol)


_REGISTRY: dict[str, list[tuple[str, float, bool, Callable[[], float]]]] = {s: [] for s in SUITES}


def _check(suite: str, name: str, tol: float, fixed: bool = False):
    def deco(fn):
        _REGISTRY[suite].append((name, tol, fixed, fn))
        return fn

    return deco


def _rel(a, b) -> float:
    return float(abs(a - b) / max(abs(a), abs(b), P.TINY))


# -- core --------------------------------------------------------------------

BRACKET_QS = (0.1, 0.5, 0.9, 1.5)
SAMPLE_QS = (0.1, 0.33, 0.5, 0.7, 0.95, 1.0, 1.3)


@_check("core", "qp bracket at p=q equals TD bracket", 0.0)
def _bracket_limit():
    return max(abs(core.qp_bracket(k, q, q) - core.q_bracket(k, q)) for k in range(21) for q in BRACKET_QS)


@_check("core", "qp bracket converges linearly as p->q", 0.05, fixed=True)
def _bracket_linear():
    # |diff(eps)| / eps must approach |k(k-1)/2 q^(k-1)|
    worst = 0.0
    for q in BRACKET_QS:
        for k in range(2, 21):
            slope = k * (k - 1) / 2 * q ** (k - 1)
            for eps in (1e-2, 1e-4, 1e-6):
                d = abs(core.qp_bracket(k, q, q * (1 + eps)) - core.q_bracket(k, q)) / eps
                if eps <= 1e-4:
                    worst = max(worst, abs(d - slope) / slope)
    return worst


@_check("core", "Fibonacci recurrence n<=500 (relative)", 1e-12)
def _recurrence():
    return max(float(core.fibonacci_residual(core.spectrum(q, 501), relative=True)) for q in SAMPLE_QS)


@_check("core", "monotone decay beyond truncation index", 0.0, fixed=True)
def _decay():
    bad = 0
    for q in (0.1, 0.33, 0.5, 0.7, 0.95):
        t = core.truncation_index(q)
        # extended precision: q^(n-1) would underflow to 0 in double
        qx = P.to_working(q, "extended")
        for n in range(t + 1, t + 400):
            if not core.level_spacing(n, qx) < 0:
                bad += 1
    return bad


@_check("core", "E_n falls below 1e-100 for large n", 0.0, fixed=True)
def _to_zero():
    bad = 0
    for q in (0.1, 0.33, 0.5, 0.7, 0.95):
        n = 1
        while core.log_energy(n, q) > math.log(1e-100) or n <= core.truncation_index(q):
            n += 1
        bad += not (core.energy(n, q) < 1e-100)
    return bad


@_check("core", "spacing increases for q>1 (n<=100)", 0.0, fixed=True)
def _growth():
    bad = 0
    for q in (1.01, 1.3, 2.0):
        s = [core.level_spacing(n, q) for n in range(101)]
        bad += sum(not (b > a) for a, b in zip(s, s[1:]))
    return bad


@_check("core", "{n+1}_q - q{n}_q = q^n (relative)", 1e-13)
def _scalar_identity():
    return max(
        _rel(core.q_bracket(n + 1, q) - q * core.q_bracket(n, q), q**n)
        for q in SAMPLE_QS
        for n in range(200)
    )


@_check("core", "local Fibonacci ratios vs direct ratios (m<=100)", 1e-12)
def _local_ratios():
    worst = 0.0
    for variant, lo in (("below_degenerate", 2), ("above_degenerate", 1), ("next_nearest", 0)):
        for m in range(lo, 101):
            r = core.fibonacci_local_ratio(m, variant)
            direct = core.energy(r.numerator, r.q) / core.energy(r.denominator, r.q)
            worst = max(worst, _rel(r.ratio, direct))
    return worst


# -- degeneracy --------------------------------------------------------------


@_check("degeneracy", "solver vs sqrt(m/(m+2)), m=1..1000", 1e-12)
def _agree_k1():
    return max(
        float(abs(degeneracy.q_general(m, 1).q_value - degeneracy.q_nearest_neighbor(m, "extended")))
        for m in range(1, 1001)
    )


@_check("degeneracy", "solver vs next-nearest closed form, m=0..1000", 1e-12)
def _agree_k2():
    return max(
        float(abs(degeneracy.q_general(m, 2).q_value - degeneracy.q_next_nearest(m, "extended")))
        for m in range(0, 1001)
    )


@_check("degeneracy", "closed-form degeneracy residual (relative), m<=1000", 1e-11)
def _closed_residual():
    worst = 0.0
    for m in range(0, 1001):
        prec = "extended" if m > degeneracy.EXTENDED_LEVEL else "double"
        for k, qf in ((1, degeneracy.q_nearest_neighbor), (2, degeneracy.q_next_nearest)):
            if k == 1 and m == 0:
                continue
            q = qf(m, prec)
            worst = max(worst, degeneracy.verify_degeneracy(m, k, q) / float(core.energy(m, q)))
    return worst


@_check("degeneracy", "(q+1)((m+3)q^2-q-m) == f at k=2, m<=1000", 0.0, fixed=True)
def _factorization():
    bad = 0
    for m in range(1001):
        prod = np.polynomial.polynomial.polymul([1, 1], [-m, -1, m + 3])
        bad += not np.array_equal(prod.astype(np.int64), degeneracy.degeneracy_polynomial(m, 2))
    return bad


@_check("degeneracy", "single sign change in (0,1), m<=60, k<=20", 0.0, fixed=True)
def _uniqueness():
    return sum(
        degeneracy.count_sign_changes(m, k) != 1 for m in range(61) for k in range(1, 21) if (m, k) != (0, 1)
    )


@_check("degeneracy", "q_nn(m) and q_n increase towards 1", 0.0, fixed=True)
def _limits():
    nn = [degeneracy.q_nearest_neighbor(m) for m in range(1, 400)]
    zl = [r.q for r in degeneracy.table1(range(2, 120), precision="double")]
    bad = sum(not (b > a) for a, b in zip(nn, nn[1:])) + sum(not (b > a) for a, b in zip(zl, zl[1:]))
    return bad + sum(not (x < 1) for x in nn + zl)


_PRINTED = {
    2: "0.333333", 3: "0.45541", 4: "0.53156446", 5: "0.585442", 6: "0.6262253", 10: "0.725405",
    25: "0.851675", 50: "0.910968", 100: "0.948094", 200: "0.9704016", 400: "0.98340363",
}


@_check("degeneracy", "E_0=E_n table digits (units of last printed place)", 5.0, fixed=True)
def _table1():
    worst = 0.0
    for row in degeneracy.table1(tuple(_PRINTED)):
        printed = _PRINTED[row.n]
        ulp = 10.0 ** -len(printed.split(".")[1])
        worst = max(worst, float(abs(row.q - P.ext.mpf(printed))) / ulp)
    return worst


# -- fock --------------------------------------------------------------------

FOCK_QS = (0.3, 0.5, 0.9, 1.0)


@_check("fock", "[N,a]=-a and [N,a+]=a+ (all entries)", 1e-14)
def _eq2():
    return max(fock.check_defining_relations(fock.build_fock_rep(32, q)).eq2 for q in FOCK_QS)


@_check("fock", "a a+ - q a+ a = q^N on safe zone", 1e-13)
def _eq1():
    return max(fock.check_defining_relations(fock.build_fock_rep(32, q)).eq1 for q in FOCK_QS)


@_check("fock", "a+ a = N q^(N-1)", 1e-13)
def _eq11():
    return max(fock.check_defining_relations(fock.build_fock_rep(32, q)).eq11 for q in FOCK_QS)


@_check("fock", "truncation defect confined to (D-1, D-1)", 1e-13)
def _localization():
    worst = 0.0
    for q in FOCK_QS:
        d = fock.eq1_defect(fock.build_fock_rep(32, q)).copy()
        d[-1, -1] = 0.0
        worst = max(worst, float(np.abs(d).max()))
    return worst


@_check("fock", "Hamiltonian diagonal vs E_n (relative, safe zone)", 1e-13)
def _hamiltonian():
    worst = 0.0
    for q in FOCK_QS:
        h = np.diag(fock.hamiltonian(fock.build_fock_rep(32, q)))
        worst = max(worst, max(_rel(h[n], core.energy(n, q)) for n in range(31)))
    return worst


@_check("fock", "(a+)^n |0> = sqrt({n}_q!) |n> (relative)", 1e-12)
def _states():
    worst = 0.0
    for q in FOCK_QS:
        rep = fock.build_fock_rep(32, q)
        v = np.zeros(32)
        v[0] = 1.0
        for n in range(1, 32):
            v = rep.a_dag @ v
            worst = max(worst, _rel(v[n], math.sqrt(core.q_factorial(n, q))))
    return worst


@_check("fock", "[X,P] vanishes on |m> at q=m/(m+1), m<=50", 1e-14)
def _classical():
    return max(abs(fock.xp_commutator_value(m, fock.classical_q(m))) for m in range(1, 51))


@_check("fock", "single commutator zero at m/(m+1) (distance)", 1e-10)
def _xp_scan():
    worst = 0.0
    for m in range(1, 51):
        zeros = fock.xp_zero_crossings(m)
        if len(zeros) != 1:
            return math.inf
        worst = max(worst, abs(zeros[0] - m / (m + 1)))
    return worst


# -- algebra -----------------------------------------------------------------

ALGEBRA_QS = (0.1, 0.5, 0.9, 1.0)


@_check("algebra", "spin-module relations, 2j<=40", 1e-10)
def _spin():
    return max(
        algebra.check_spin_relations(algebra.build_spin_module(tj, q)) for tj in range(41) for q in ALGEBRA_QS
    )


@_check("algebra", "J- equals transpose of J+", 0.0)
def _transpose():
    return max(
        float(np.abs(s.j_minus - s.j_plus.T).max())
        for s in (algebra.build_spin_module(tj, q) for tj in range(41) for q in ALGEBRA_QS)
    )


@_check("algebra", "two-mode relations on safe zone, D=6", 1e-12)
def _two_mode():
    return max(algebra.check_two_mode_relations(algebra.build_two_mode(6, q)) for q in ALGEBRA_QS)


@_check("algebra", "two-mode block equals spin module, 2j<=4", 1e-12)
def _blocks():
    worst = 0.0
    for q in ALGEBRA_QS:
        real = algebra.build_two_mode(6, q)
        for tj in range(5):
            blk = algebra.spin_block(real, tj)
            mod = algebra.build_spin_module(tj, q)
            worst = max(worst, max(float(np.abs(blk[k] - getattr(mod, k)).max()) for k in blk))
    return worst


@_check("algebra", "J+ element decays below 1e-8 at large j (q=0.9, m=0)", 0.0, fixed=True)
def _asymptotic():
    el = lambda j: algebra.large_j_matrix_element(2 * j, 0, 0.9)  # noqa: E731
    tj = algebra.large_j_crossover(0.9, 0, 1e-8)
    ok = el(40) < el(20) < el(10) and algebra.large_j_matrix_element(tj, 0, 0.9) < 1e-8 and tj / 2 > 40
    return 0.0 if ok else 1.0


def run(suites=SUITES, tol: float | None = None) -> list[Check]:
    out = []
    for suite in suites:
        if suite not in _REGISTRY:
            raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
        for name, default, fixed, fn in _REGISTRY[suite]:
            limit = default if (tol is None or fixed) else tol
            out.append(Check(suite, name, float(fn()), limit))
    return out
