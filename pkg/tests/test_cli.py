import csv
import io
import json
import math
from decimal import Decimal

import pytest

from tdqo import cli
from tdqo._precision import ext


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(text):
    return list(csv.DictReader(io.StringIO(text)))


# -- q parsing ---------------------------------------------------------------


@pytest.mark.parametrize(
    "text, want",
    [
        ("0.5", 0.5),
        ("1/3", 1 / 3),
        ("sqrt(1/3)", math.sqrt(1 / 3)),
        ("sqrt(9/11)", math.sqrt(9 / 11)),
        ("eq18(5)", (1 + math.sqrt(161)) / 16),
        ("eq18(0)", 1 / 3),
        ("2.5e-1", 0.25),
    ],
)
def test_parse_q(text, want):
    assert cli.parse_q(text) == pytest.approx(want, rel=1e-15)


def test_parse_q_extended():
    q = cli.parse_q("sqrt(1/3)", "extended")
    assert abs(q - ext.sqrt(ext.mpf(1) / 3)) < ext.mpf(10) ** -48


@pytest.mark.parametrize("text", ["abc", "0", "-1", "1/0", "sqrt(-1)", "", "nan"])
def test_parse_q_rejects(text):
    with pytest.raises(cli.UsageError):
        cli.parse_q(text)


# -- spectrum ----------------------------------------------------------------


def test_spectrum_sqrt_third(capsys):
    code, out, _ = run(capsys, "spectrum", "--q", "0.5773502691896258", "--n-max", "10")
    assert code == 0
    e = [float(r["E_n"]) for r in rows(out)]
    assert len(e) == 11
    assert abs(e[1] - e[2]) <= 1e-12 * e[1]


def test_spectrum_classical(capsys):
    code, out, _ = run(capsys, "spectrum", "--q", "1", "--n-max", "3")
    assert code == 0
    assert [float(r["E_n"]) for r in rows(out)] == [0.5, 1.5, 2.5, 3.5]


def test_spectrum_q_third(capsys):
    _, out, _ = run(capsys, "spectrum", "--q", "0.3333333333333333", "--n-max", "3")
    e = [float(r["E_n"]) for r in rows(out)]
    assert e == pytest.approx([0.5, 5 / 6, 0.5, 13 / 54], rel=1e-15)


def test_spectrum_json_metadata(capsys):
    _, out, _ = run(capsys, "spectrum", "--q", "sqrt(1/3)", "--n-max", "5", "--format", "json")
    doc = json.loads(out)
    assert doc["metadata"]["truncation_index"] == 2
    assert doc["metadata"]["degenerate_pairs"] == [[1, 2]]
    assert doc["metadata"]["parameters"]["precision"] == "double"


def test_spectrum_no_truncation_for_q_ge_1(capsys):
    _, out, _ = run(capsys, "spectrum", "--q", "1.2", "--format", "json")
    assert "truncation_index" not in json.loads(out)["metadata"]


def test_spectrum_extended_digits(capsys):
    _, out, _ = run(capsys, "spectrum", "--q", "1/3", "--n-max", "3", "--precision", "extended")
    e3 = rows(out)[3]["E_n"]
    assert abs(ext.mpf(e3) - ext.mpf(13) / 54) < ext.mpf(10) ** -45


@pytest.mark.parametrize("q", ["0", "-2", "x"])
def test_spectrum_invalid_q(capsys, q):
    code, _, err = run(capsys, "spectrum", "--q", q)
    assert code == 2 and err


# -- degeneracy --------------------------------------------------------------


def test_degeneracy_nearest(capsys):
    code, out, _ = run(capsys, "degeneracy", "--m", "1", "--k", "1")
    assert code == 0
    r = rows(out)[0]
    assert float(r["q_value"]) == pytest.approx(0.5773502692, abs=1e-10)
    assert r["method"] == "closed_form_k1"


def test_degeneracy_zero_level(capsys):
    _, out, _ = run(capsys, "degeneracy", "--m", "0", "--k", "10")
    assert abs(float(rows(out)[0]["q_value"]) - 0.725405) < 5e-6


def test_degeneracy_next_nearest(capsys):
    _, out, _ = run(capsys, "degeneracy", "--m", "5", "--k", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["rows"][0]["q_value"] == pytest.approx((1 + math.sqrt(161)) / 16, rel=1e-15)
    assert doc["metadata"]["cross_check_agreement"] < 1e-12


def test_degeneracy_impossible(capsys):
    code, out, err = run(capsys, "degeneracy", "--m", "0", "--k", "1")
    assert code == 2 and out == ""
    assert "impossible" in err


def test_degeneracy_extended_auto(capsys):
    _, out, _ = run(capsys, "degeneracy", "--m", "60", "--k", "1", "--format", "json")
    assert json.loads(out)["metadata"]["precision_used"] == "extended"


# -- table1 ------------------------------------------------------------------


def test_table1_preset(capsys):
    code, out, _ = run(capsys, "table1", "--preset", "paper")
    assert code == 0
    got = {int(r["n"]): r["q_n"] for r in rows(out)}
    assert list(got) == [2, 3, 4, 5, 6, 10, 25, 50, 100, 200, 400]
    for n, printed in [(5, "0.585442"), (50, "0.910968"), (200, "0.9704016")]:
        assert abs(Decimal(got[n]) - Decimal(printed)) <= Decimal(5) * Decimal(10) ** -(len(printed) - 2)


def test_table1_custom(capsys):
    _, out, _ = run(capsys, "table1", "--n", "2", "7")
    assert [int(r["n"]) for r in rows(out)] == [2, 7]


@pytest.mark.parametrize("argv", [["table1"], ["table1", "--n", "1"]])
def test_table1_usage(capsys, argv):
    assert run(capsys, *argv)[0] == 2


# -- xp ----------------------------------------------------------------------


@pytest.mark.parametrize("q, n_max, zero_at, level", [("0.5", 4, 1, 1), ("0.75", 5, 3, 3), ("3/4", 5, 3, 3)])
def test_xp_zero(capsys, q, n_max, zero_at, level):
    _, out, _ = run(capsys, "xp", "--q", q, "--n-max", str(n_max), "--format", "json")
    doc = json.loads(out)
    vals = [r["commutator_eigenvalue"] for r in doc["rows"]]
    assert len(vals) == n_max + 1
    assert abs(vals[zero_at]) < 1e-15
    assert doc["metadata"]["classical_level"] == level


def test_xp_classical(capsys):
    _, out, _ = run(capsys, "xp", "--q", "1", "--n-max", "4")
    assert all(float(r["commutator_eigenvalue"]) == 1 for r in rows(out))


def test_xp_no_level(capsys):
    _, out, _ = run(capsys, "xp", "--q", "0.6", "--format", "json")
    assert json.loads(out)["metadata"]["classical_level"] is None


# -- algebra and fock --------------------------------------------------------


def test_algebra_spin_half(capsys):
    _, out, _ = run(capsys, "algebra", "--two-j", "1", "--q", "0.5")
    r = rows(out)
    entry = [x for x in r if x["two_m_row"] == "1" and x["two_m_col"] == "-1"][0]
    assert float(entry["j_plus"]) == 1.0
    assert sum(float(x["j_plus"]) != 0 for x in r) == 1


def test_algebra_classical_spin_one(capsys):
    _, out, _ = run(capsys, "algebra", "--two-j", "2", "--q", "1")
    jp = {(int(x["two_m_row"]), int(x["two_m_col"])): float(x["j_plus"]) for x in rows(out)}
    assert jp[(0, -2)] == pytest.approx(math.sqrt(2)) and jp[(2, 0)] == pytest.approx(math.sqrt(2))


def test_algebra_residual(capsys):
    _, out, _ = run(capsys, "algebra", "--two-j", "4", "--q", "0.9", "--format", "json")
    meta = json.loads(out)["metadata"]
    assert meta["relation_residual"] <= 1e-12 and meta["passed"] is True


@pytest.mark.parametrize("cmd", [["algebra", "--two-j", "2"], ["fock"]])
def test_matrix_commands_reject_extended(capsys, cmd):
    assert run(capsys, *cmd, "--q", "0.5", "--precision", "extended")[0] == 2


def test_fock(capsys):
    code, out, _ = run(capsys, "fock", "--q", "0.5", "--dim", "3", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and len(doc["rows"]) == 9
    a12 = [r for r in doc["rows"] if (r["row"], r["col"]) == (1, 2)][0]["a"]
    assert a12 == pytest.approx(1.0)


# -- verify ------------------------------------------------------------------


def test_verify_single_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "algebra")
    doc = json.loads(out)
    assert code == 0 and doc["metadata"]["passed"] is True
    assert any("2j<=40" in r["check"] for r in doc["rows"])


def test_verify_failure_exit(capsys):
    # an impossible tolerance makes floating-point checks fail
    code, out, _ = run(capsys, "verify", "--suite", "fock", "--tol", "-1")
    assert code == 1 and json.loads(out)["metadata"]["passed"] is False


# -- general behaviour -------------------------------------------------------


def test_out_file(tmp_path, capsys):
    path = tmp_path / "s.csv"
    code, out, _ = run(capsys, "spectrum", "--q", "1/3", "--n-max", "2", "--out", str(path))
    assert code == 0 and out == ""
    assert path.read_text().startswith("n,E_n\n")


def test_determinism(capsys):
    a = run(capsys, "table1", "--preset", "paper", "--format", "json")[1]
    b = run(capsys, "table1", "--preset", "paper", "--format", "json")[1]
    assert a == b


@pytest.mark.parametrize(
    "argv",
    [
        ["spectrum", "--q", "sqrt(1/3)", "--n-max", "6"],
        ["degeneracy", "--m", "3", "--k", "4"],
        ["xp", "--q", "0.75"],
        ["table1", "--n", "3", "60"],
    ],
)
def test_csv_json_parity(capsys, argv):
    j = json.loads(run(capsys, *argv, "--format", "json")[1], parse_float=Decimal, parse_int=Decimal)
    c = rows(run(capsys, *argv, "--format", "csv")[1])
    assert len(j["rows"]) == len(c)
    for jr, cr in zip(j["rows"], c):
        for key, val in cr.items():
            if isinstance(jr[key], str):
                assert jr[key] == val
            else:
                assert jr[key] == Decimal(val)


def test_tol_is_recorded(capsys):
    _, out, _ = run(capsys, "degeneracy", "--m", "2", "--k", "3", "--tol", "1e-10", "--format", "json")
    assert json.loads(out)["metadata"]["parameters"]["tol"] == 1e-10


def test_argparse_usage_error():
    with pytest.raises(SystemExit) as info:
        cli.main(["spectrum"])
    assert info.value.code == 2


def test_solver_failure_maps_to_exit_3(capsys, monkeypatch):
    from tdqo import degeneracy
    from tdqo.roots import ConvergenceError

    def boom(*a, **k):
        raise ConvergenceError("stuck", (0.1, 0.2))

    monkeypatch.setattr(degeneracy, "solve", boom)
    code, _, err = run(capsys, "degeneracy", "--m", "2", "--k", "3")
    assert code == 3 and "best bracket" in err


def test_verify_all_passes(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "all")
    doc = json.loads(out)
    assert code == 0
    suites = {r["suite"] for r in doc["rows"]}
    assert suites == {"core", "degeneracy", "fock", "algebra"}
    assert any("m=1..1000" in r["check"] for r in doc["rows"])
