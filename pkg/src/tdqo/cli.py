"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 usage error,
3 solver non-convergence.
"""

from __future__ import annotations

import argparse
import re
import sys
from fractions import Fraction

from . import _precision as P
from . import algebra, core, degeneracy, fock, verify
from .output import OutputRecord
from .roots import SolverError

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_SOLVER = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- q parsing ---------------------------------------------------------------

_NUM = r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_RATIO = re.compile(rf"^({_NUM})(?:/({_NUM}))?$")
_SQRT = re.compile(r"^sqrt\((.+)\)$")
_EQ18 = re.compile(r"^eq18\((\d+)\)$")


def _ratio(text: str, precision: str):
    m = _RATIO.match(text)
    if not m:
        raise UsageError(f"cannot parse number {text!r}")
    num, den = m.group(1), m.group(2) or "1"
    if precision == "extended":
        d = P.ext.mpf(den)
        if d == 0:
            raise UsageError("division by zero in q")
        return P.ext.mpf(num) / d
    fd = Fraction(den)
    if fd == 0:
        raise UsageError("division by zero in q")
    return float(Fraction(num) / fd)


def parse_q(text: str, precision: str = "double"):
    """Parse ``q`` given as ``0.5``, ``1/3``, ``sqrt(1/3)`` or ``eq18(m)``.

    ``eq18(m)`` is the next-nearest degeneracy value
    ``(1 + sqrt(4m^2 + 12m + 1)) / (2(m+3))``.
    """
    s = text.strip().replace(" ", "")
    if m := _EQ18.match(s):
        q = degeneracy.q_next_nearest(int(m.group(1)), precision)
    elif m := _SQRT.match(s):
        inner = _ratio(m.group(1), precision)
        if inner < 0:
            raise UsageError(f"negative argument in {text!r}")
        q = P.sqrt(inner)
    else:
        q = _ratio(s, precision)
    try:
        return core.qvalue(q)
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from exc


# -- commands ----------------------------------------------------------------


def _base_params(args, **extra) -> dict:
    # callers pass the effective precision when the flag was left unset
    params = {"precision": args.precision}
    if args.tol is not None:
        params["tol"] = args.tol
    params.update(extra)
    return params


def cmd_spectrum(args) -> OutputRecord:
    precision = args.precision or "double"
    q = parse_q(args.q, precision)
    if args.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    spec = core.spectrum(q, args.n_max, precision)
    tol = args.tol if args.tol is not None else 1e-9
    meta = {"q": q, "regime": core.DeformationParameter(q).regime.value}
    if q < 1:
        meta["truncation_index"] = core.truncation_index(q)
    meta["degenerate_pairs"] = [list(p) for p in core.degenerate_pairs(spec, tol)]
    rows = [(n, e) for n, e in enumerate(spec.energies)]
    return OutputRecord("spectrum", _base_params(args, precision=precision, q=args.q, n_max=args.n_max), ["n", "E_n"], rows, meta)


def cmd_degeneracy(args) -> tuple[OutputRecord, int]:
    tol = args.tol if args.tol is not None else degeneracy.DEFAULT_TOL
    try:
        primary, check = degeneracy.solve(args.m, args.k, tol=tol, precision=args.precision or "auto")
    except degeneracy.ImpossibleDegeneracyError as exc:
        raise UsageError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    agreement = abs(primary.q_value - check.q_value)
    meta = {
        "precision_used": primary.precision,
        "cross_check_q": check.q_value,
        "cross_check_agreement": agreement,
        "relative_residual": primary.relative_residual,
    }
    rows = [(args.m, args.k, primary.q_value, primary.residual, primary.method.value)]
    rec = OutputRecord(
        "degeneracy",
        _base_params(args, precision=primary.precision, m=args.m, k=args.k),
        ["m", "k", "q_value", "residual", "method"],
        rows,
        meta,
    )
    status = EXIT_OK if agreement <= max(1e-12, 10 * tol) else EXIT_FAIL
    return rec, status


def cmd_table1(args) -> OutputRecord:
    if args.preset == "paper":
        ns = degeneracy.PRESET_N
    elif args.n:
        ns = tuple(args.n)
    else:
        raise UsageError("table1 needs --preset paper or --n N [N ...]")
    if any(n < 2 for n in ns):
        raise UsageError("every n must be >= 2")
    tol = args.tol if args.tol is not None else degeneracy.DEFAULT_TOL
    precision = args.precision or "extended"
    rows = degeneracy.table1(ns, precision=precision, tol=tol)
    params = _base_params(args, precision=precision, preset=args.preset, n=list(ns))
    return OutputRecord("table1", params, ["n", "q_n"], [tuple(r) for r in rows])


def classical_level(q, tol: float = 1e-12):
    """``m`` if ``q = m/(m+1)`` within ``tol`` for an integer ``m >= 1``, else None."""
    if not 0 < q < 1:
        return None
    m = round(float(q / (1 - q)))
    if m >= 1 and abs(q - P.fraction(m, m + 1, P.precision_of(q))) <= tol:
        return m
    return None


def cmd_xp(args) -> OutputRecord:
    precision = args.precision or "double"
    q = parse_q(args.q, precision)
    if args.n_max < 0:
        raise UsageError("--n-max must be >= 0")
    rows = [(n, fock.xp_commutator_value(n, q)) for n in range(args.n_max + 1)]
    tol = args.tol if args.tol is not None else 1e-12
    meta = {"q": q, "classical_level": classical_level(q, tol)}
    return OutputRecord(
        "xp", _base_params(args, precision=precision, q=args.q, n_max=args.n_max), ["n", "commutator_eigenvalue"], rows, meta
    )


def _double_only(args):
    if args.precision == "extended":
        raise UsageError(f"{args.command} works on float64 matrices; --precision extended is not supported")


def cmd_algebra(args) -> OutputRecord:
    _double_only(args)
    if args.two_j < 0:
        raise UsageError("--two-j must be >= 0")
    q = float(parse_q(args.q, "double"))
    mod = algebra.build_spin_module(args.two_j, q)
    residual = algebra.check_spin_relations(mod)
    tol = args.tol if args.tol is not None else 1e-12
    tm = mod.two_m
    rows = [
        (int(tm[r]), int(tm[c]), mod.j_plus[r, c], mod.j_minus[r, c], mod.j0[r, c], mod.j3[r, c])
        for r in range(mod.dim)
        for c in range(mod.dim)
    ]
    meta = {"dim": mod.dim, "relation_residual": residual, "passed": residual <= tol}
    return OutputRecord(
        "algebra",
        _base_params(args, precision="double", two_j=args.two_j, q=args.q),
        ["two_m_row", "two_m_col", "j_plus", "j_minus", "j0", "j3"],
        rows,
        meta,
    )


def cmd_fock(args) -> OutputRecord:
    _double_only(args)
    q = float(parse_q(args.q, "double"))
    if args.dim < 2:
        raise UsageError("--dim must be >= 2")
    rep = fock.build_fock_rep(args.dim, q)
    h = fock.hamiltonian(rep)
    ps = fock.build_phase_space(rep)
    rows = [
        (r, c, rep.a[r, c], rep.a_dag[r, c], rep.n_op[r, c], h[r, c], ps.x[r, c], ps.p_imag[r, c])
        for r in range(rep.dim)
        for c in range(rep.dim)
    ]
    res = fock.check_defining_relations(rep)
    meta = {"residual_eq1": res.eq1, "residual_eq2": res.eq2, "residual_eq11": res.eq11}
    return OutputRecord(
        "fock",
        _base_params(args, precision="double", q=args.q, dim=args.dim),
        ["row", "col", "a", "a_dag", "n", "h", "x", "p_imag"],
        rows,
        meta,
    )


def cmd_verify(args) -> tuple[OutputRecord, int]:
    suites = verify.SUITES if args.suite == "all" else (args.suite,)
    checks = verify.run(suites, tol=args.tol)
    rows = [(c.suite, c.name, c.residual, c.tol, c.passed) for c in checks]
    ok = all(c.passed for c in checks)
    meta = {"passed": ok, "n_checks": len(checks), "n_failed": sum(not c.passed for c in checks)}
    rec = OutputRecord(
        "verify", _base_params(args, suite=args.suite), ["suite", "check", "residual", "tol", "passed"], rows, meta
    )
    return rec, EXIT_OK if ok else EXIT_FAIL


# -- argument parsing --------------------------------------------------------


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--format", choices=("csv", "json"), default=None)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--precision", choices=P.PRECISIONS, default=None)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tdqo", description="Tamm-Dancoff q-oscillator numerics")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()

    p = sub.add_parser("spectrum", parents=[common], help="energy levels E_0..E_nmax")
    p.add_argument("--q", required=True)
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("degeneracy", parents=[common], help="solve E_m = E_{m+k} for q")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_degeneracy)

    p = sub.add_parser("table1", parents=[common], help="q_n with E_0 = E_n")
    p.add_argument("--preset", choices=("paper",), default=None)
    p.add_argument("--n", type=int, nargs="+", default=None)
    p.set_defaults(func=cmd_table1)

    p = sub.add_parser("xp", parents=[common], help="eigenvalues of [a, a+] = -i[X, P]")
    p.add_argument("--q", required=True)
    p.add_argument("--n-max", type=int, default=10)
    p.set_defaults(func=cmd_xp)

    p = sub.add_parser("algebra", parents=[common], help="spin-j representation matrices")
    p.add_argument("--two-j", type=int, required=True)
    p.add_argument("--q", required=True)
    p.set_defaults(func=cmd_algebra)

    p = sub.add_parser("fock", parents=[common], help="truncated Fock-space matrices")
    p.add_argument("--q", required=True)
    p.add_argument("--dim", type=int, default=fock.DEFAULT_DIM)
    p.set_defaults(func=cmd_fock)

    p = sub.add_parser("verify", parents=[common], help="run invariant suites")
    p.add_argument("--suite", choices=verify.SUITES + ("all",), default="all")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    default_fmt = "json" if args.command == "verify" else "csv"
    fmt = args.format or default_fmt
    try:
        result = args.func(args)
    except UsageError as exc:
        print(f"tdqo {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SolverError as exc:
        print(f"tdqo {args.command}: solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    record, status = result if isinstance(result, tuple) else (result, EXIT_OK)
    text = record.render(fmt)
    if args.out:
        with open(args.out, "w", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
