"""Acceptance criteria, one test per criterion; each prints its check lines.

Run with `pytest -v tests/test_acceptance.py -s` for the per-case detail,
or `oscphase verify --suite all --format human` for the same checks outside
pytest.
"""

from oscphase.verification import (
    check_beta_identity,
    check_continuation,
    check_fresnel_anchor,
    check_gelfand_shilov,
    check_ibp_oracle,
    check_remainder_fullline,
    check_remainder_halfline,
    check_stationary_reduction,
    check_structural_invariants,
    check_superpolynomial_decay,
    check_three_path_grid,
)


def _assert_check(result):
    print()
    for line in result.lines:
        print(f"  {line}")
    print(f"  [{'PASS' if result.passed else 'FAIL'}] {result.name}")
    assert result.passed, f"{result.name} failed:\n" + "\n".join(result.lines)


def test_criterion_01_fresnel_anchor():
    _assert_check(check_fresnel_anchor())


def test_criterion_02_three_path_grid():
    _assert_check(check_three_path_grid())


def test_criterion_03_gelfand_shilov():
    _assert_check(check_gelfand_shilov())


def test_criterion_04_beta_identity():
    _assert_check(check_beta_identity())


def test_criterion_05_ibp_oracle():
    _assert_check(check_ibp_oracle())


def test_criterion_06_meromorphic_continuation():
    _assert_check(check_continuation())


def test_criterion_07_remainder_order_fullline():
    _assert_check(check_remainder_fullline())


def test_criterion_08_remainder_order_halfline():
    _assert_check(check_remainder_halfline())


def test_criterion_09_superpolynomial_decay():
    _assert_check(check_superpolynomial_decay())


def test_criterion_10_stationary_phase_reduction():
    _assert_check(check_stationary_reduction())


def test_criterion_11_structural_invariants():
    _assert_check(check_structural_invariants())
