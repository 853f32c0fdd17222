import pytest

from tdqo import verify


@pytest.mark.parametrize("suite", ["core", "degeneracy", "fock", "algebra"])
def test_suite_passes(suite):
    checks = verify.run((suite,))
    assert checks and all(c.passed for c in checks), [c for c in checks if not c.passed]


def test_unknown_suite():
    with pytest.raises(ValueError):
        verify.run(("nope",))


def test_tol_override_leaves_fixed_checks():
    checks = verify.run(("fock",), tol=1e-30)
    # residuals that are exactly zero survive any tolerance
    assert any(c.passed for c in checks)
    assert all(c.tol == 1e-30 for c in checks if "single commutator" not in c.name)


def test_check_passed_flag():
    assert verify.Check("s", "n", 1e-15, 1e-14).passed
    assert not verify.Check("s", "n", 1e-13, 1e-14).passed
