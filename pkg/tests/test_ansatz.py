from fractions import Fraction
from random import Random

import pytest

from ppmoments import (
    AnsatzSum,
    AnsatzTerm,
    PolyC,
    RationalFnC,
    ansatz_to_series,
    chain_shape_violations,
    enum_paths,
    euler_apply,
    f_initial,
    f_series,
    fine_structure_form,
    g_apply,
    g_series,
    operator_chain,
    phi,
    y0_coefficient,
)
from ppmoments.algebra import C_MINUS_ONE, POLY_C, TWO_MINUS_C

from helpers import direct_g_apply_grid, euler_grid, random_ansatz_sum

C = POLY_C


def test_f_initial_is_single_term():
    f = f_initial()
    assert len(f) == 1
    t = f.terms[0]
    assert (t.num, t.a, t.b) == (C, 0, 1)


def test_ansatz_sum_canonicalization():
    # merge by exponent pair, drop zeros, reduce numerator factors of (2-c)
    s = AnsatzSum([(C, 1, 1), (-C, 1, 1)])
    assert not s
    merged = AnsatzSum([(C, 1, 1), (C, 1, 1)])
    assert merged.terms[0].num == 2 * C
    reduced = AnsatzSum([(TWO_MINUS_C * C, 1, 1)])
    assert reduced == AnsatzSum([(C, 0, 1)])
    with pytest.raises(ValueError):
        AnsatzTerm(C, -1, 0)


def test_ansatz_serialization():
    assert f_initial().to_json() == [{"num": ["0", "1"], "a": 0, "b": 1}]


def test_y0_coefficient_examples():
    assert y0_coefficient(AnsatzSum([(C, 0, 5)])) == RationalFnC(C)
    assert y0_coefficient(f_initial()) == RationalFnC(C)
    assert y0_coefficient(AnsatzSum()) == RationalFnC(PolyC(()))
    half_euler = euler_apply(0, f_initial())
    assert y0_coefficient(half_euler) == RationalFnC(C * C_MINUS_ONE, TWO_MINUS_C)


def test_euler_on_f_closed_form():
    assert euler_apply(0, f_initial()) == AnsatzSum([(C * C_MINUS_ONE, 1, 2)])


def test_euler_on_constant_in_u():
    s = AnsatzSum([(C, 0, 0)])
    assert euler_apply(0, s) == AnsatzSum([(C * C_MINUS_ONE, 1, 0)])


def test_euler_linearity_in_shift():
    rng = Random(3)
    for _ in range(10):
        s = random_ansatz_sum(rng)
        assert euler_apply(5, s) == euler_apply(0, s) + s.scale(-5)


def test_euler_series_equivalence_randomized():
    rng = Random(5)
    for _ in range(20):
        s = random_ansatz_sum(rng)
        r = rng.randint(0, 3)
        got = ansatz_to_series(euler_apply(r, s), 10, 6)
        want = euler_grid(r, ansatz_to_series(s, 10, 6))
        assert got == want


def test_g_apply_zero_sum():
    assert g_apply(0, AnsatzSum()) == AnsatzSum()
    assert g_apply(3, AnsatzSum()) == AnsatzSum()


def test_g_apply_first_correction():
    out = y0_coefficient(g_apply(0, f_initial()))
    assert out == RationalFnC(C * C_MINUS_ONE ** 2, TWO_MINUS_C ** 3)


def test_g_apply_chained_gives_second_order_table():
    s = g_apply(1, g_apply(0, f_initial()))
    form = fine_structure_form(y0_coefficient(s), 2)
    assert form.theta == {3: Fraction(1), 4: Fraction(14), 5: Fraction(15)}


def test_g_apply_series_equivalence_randomized():
    rng = Random(9)
    x_order, y_order = 10, 5
    g_grid = g_series(x_order, y_order, x_order + 1)
    for _ in range(12):
        s = random_ansatz_sum(rng)
        k = rng.randint(0, 2)
        got = ansatz_to_series(g_apply(k, s), x_order, y_order)
        want = direct_g_apply_grid(k, s, x_order, y_order, g_grid)
        assert got == want


def test_phi_low_orders():
    assert phi(0) == RationalFnC(C)
    assert phi(1) == RationalFnC(C * C_MINUS_ONE ** 2, TWO_MINUS_C ** 3)
    with pytest.raises(ValueError):
        phi(-1)


def test_phi_round_trips_through_normal_form():
    from ppmoments import fine_structure_to_rational
    for g in (1, 2, 3):
        f = phi(g)
        assert fine_structure_to_rational(fine_structure_form(f, g)) == f


def test_phi_fourth_order_coefficients():
    form = fine_structure_form(phi(4), 4)
    assert form.theta == {5: Fraction(1), 6: Fraction(222), 7: Fraction(5820),
                          8: Fraction(42500), 9: Fraction(110670),
                          10: Fraction(118740), 11: Fraction(45045)}


def test_operator_chain_shape():
    for r in range(1, 5):
        assert chain_shape_violations(operator_chain(r), r) == []
    with pytest.raises(ValueError):
        chain_shape_violations(f_initial(), 0)


def test_ansatz_to_series_zero_and_units():
    grid = ansatz_to_series(AnsatzSum(), 4, 4)
    assert all(v == 0 for row in grid for v in row)
    fgrid = ansatz_to_series(f_initial(), 4, 4)
    assert fgrid[2][0] == 1  # single length-2 balanced path
    assert fgrid[3][1] == 2  # two length-3 paths reaching height 1
    assert fgrid[0][0] == 1  # empty path


def test_f_series_matches_path_counts():
    grid = f_series(8, 8)
    for i in range(9):
        for j in range(9):
            assert grid[i][j] == enum_paths(i, 0, j)


def test_g_series_matches_path_counts():
    grid = g_series(8, 8, 8)
    for i in range(9):
        for j1 in range(9):
            for j2 in range(9):
                assert grid[i][j1][j2] == enum_paths(i, j1, j2)
