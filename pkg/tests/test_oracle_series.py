"""Symbolic oracle: truncated series, implicitization, order counts."""

import pytest

from polarfactor.eqclass import TheoremViolation, validate
from polarfactor.oracle_series import (
    IntPoly2,
    TruncSeries,
    evaluate_on_parametrization,
    implicitize,
    polar_poly,
    sample_parametrization,
    verify_class,
)


# ------------------------------------------------------------- TruncSeries


def test_series_arithmetic_and_truncation():
    a = TruncSeries({1: 2, 3: -1})
    b = TruncSeries({0: 1, 2: 5}, trunc=4)
    s = a + b
    assert s.coeffs == {0: 1, 1: 2, 2: 5, 3: -1}
    assert s.trunc == 4
    p = a * b
    # degree-4+ products fall outside the truncation window
    assert p.coeffs == {1: 2, 3: 10 - 1}
    assert p.trunc == 4


def test_series_order_degree_and_cleanup():
    assert TruncSeries({5: 0, 7: 3}).coeffs == {7: 3}
    assert TruncSeries({7: 3}, trunc=6).coeffs == {}
    assert TruncSeries({7: 3}, trunc=6).order() is None
    assert TruncSeries({2: 1, 9: 4}).order() == 2
    assert TruncSeries({2: 1, 9: 4}).degree == 9
    with pytest.raises(ValueError):
        TruncSeries({}).degree
    assert "O(t^6)" in repr(TruncSeries({2: 1}, trunc=6))


# ---------------------------------------------------------------- IntPoly2


def test_poly_accessors_and_derivatives():
    F = IntPoly2.from_dict({(0, 2): 1, (3, 0): -1})
    assert str(F) == "y^2 - x^3"
    assert F.degree_y == 2
    assert F.lowest_degree == 2
    assert F.diff_x().as_dict() == {(2, 0): -3}
    assert F.diff_y().as_dict() == {(0, 1): 2}
    assert str(polar_poly(F, 1, 1)) == "2*y - 3*x^2"
    assert polar_poly(F, 2, 0).as_dict() == {(2, 0): -6}


def test_polar_rejects_zero_direction():
    F = IntPoly2.from_dict({(0, 2): 1, (3, 0): -1})
    with pytest.raises(ValueError):
        polar_poly(F, 0, 0)


# ----------------------------------------------------------- implicitize


def test_implicitize_cusp():
    F = implicitize(2, TruncSeries({3: 1}))
    assert F.as_dict() == {(0, 2): 1, (3, 0): -1}
    F = implicitize(3, TruncSeries({4: 1}))
    assert F.as_dict() == {(0, 3): 1, (4, 0): -1}


def test_implicitize_perturbed_cusp_vanishes_on_the_curve():
    phi = TruncSeries({3: 1, 4: 1})
    F = implicitize(2, phi)
    assert F.degree_y == 2
    assert F.lowest_degree == 2
    assert evaluate_on_parametrization(F, 2, phi).coeffs == {}
    assert F.as_dict()[(0, 2)] == 1  # monic in y


def test_implicitize_input_guards():
    with pytest.raises(ValueError):
        implicitize(2, TruncSeries({3: 1}, trunc=9))
    with pytest.raises(ValueError):
        implicitize(2, TruncSeries({0: 1, 3: 1}))
    with pytest.raises(ValueError):
        implicitize(1, TruncSeries({3: 1}))


# ------------------------------------------------------------- sampling


def test_sample_is_deterministic_per_seed():
    E = validate(8, [12, 14, 15])
    assert sample_parametrization(E, 7) == sample_parametrization(E, 7)
    distinct = {tuple(sorted(sample_parametrization(E, s).coeffs.items()))
                for s in range(12)}
    assert len(distinct) > 1


def test_sample_realizes_exactly_the_class_invariants():
    E = validate(8, [12, 14, 15])
    for seed in range(8):
        phi = sample_parametrization(E, seed)
        assert phi.trunc is None
        assert phi.coeffs[12] == 1
        assert phi.coeffs[14] != 0 and phi.coeffs[15] != 0
        for i in phi.coeffs:
            level = sum(1 for m in E.exponents if m <= i)
            assert i in (12, 14, 15) or i % E.gcds[level] == 0
        assert max(phi.coeffs) < E.conductor


# ------------------------------------------------------------ verify_class


@pytest.mark.parametrize(
    "n, ms, expected",
    [
        (2, [3], 3),
        (5, [7], 28),
        (4, [6, 7], 19),
        (8, [12, 14, 15], 91),
    ],
)
def test_verify_class_anchor_totals(n, ms, expected):
    E = validate(n, ms)
    report = verify_class(E, seed=20260816)
    assert report.matched
    assert report.observed == report.expected == expected
    assert report.expected == E.milnor + n - 1
    assert report.fy_order == E.milnor + n - 1
    assert report.polar_multiplicity == n - 1
    assert report.attempts <= 6
    assert "match" in report.summary()


def test_verify_class_zero_retries_still_reports():
    report = verify_class(validate(2, [3]), seed=1, retries=0)
    assert report.attempts == 1 and report.matched


def test_verify_class_desk_scale_guard():
    with pytest.raises(ValueError, match="desk-scale"):
        verify_class(validate(11, [13]))
    with pytest.raises(ValueError, match="desk-scale"):
        verify_class(validate(10, [21]))  # conductor 180
