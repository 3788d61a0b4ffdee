"""Polar factorization: packages, branch invariants, and traces."""

from fractions import Fraction

import pytest

from polarfactor.decompose import (
    branch_count,
    branch_trace,
    decompose,
    package_summary,
    require_member,
)
from polarfactor.eqclass import validate


def test_three_package_worked_example():
    E = validate(8, [12, 14, 15])
    D = decompose(E)
    assert len(D.packages) == 3
    assert [pkg.multiplicity for pkg in D.packages] == [1, 2, 4]
    assert [pkg.quotient for pkg in D.packages] == [12, 13, Fraction(53, 4)]
    assert D.total_multiplicity == 7

    b1, b2, b3 = D.branches()
    assert b1.canonical is None and b1.exponents == (1, 2)
    assert (b1.p, b1.q) == (1, 2)
    assert b2.canonical == validate(2, [3]) and b2.exponents == (2, 3, 4)
    assert (b2.p, b2.q) == (1, 1)
    assert b3.canonical == validate(4, [6, 7]) and b3.exponents == (4, 6, 7, 8)
    assert [b.genus for b in (b1, b2, b3)] == [0, 1, 2]
    # upper blocks open with an exponent gap below e_{k-1} here
    assert (b1.case, b2.case, b3.case) == (">", "<", "<")
    assert str(b2) == "xi[2,1,1] K(2;3)"
    assert str(b1) == "xi[1,1,1] smooth"


def test_equisingular_copies_share_everything_but_the_copy_index():
    D = decompose(validate(5, [7]))
    (pkg,) = D.packages
    assert pkg.multiplicity == 4 and pkg.quotient == 7
    a, b = pkg.branches
    assert a.canonical == b.canonical == validate(2, [3])
    assert (a.p, a.q) == (b.p, b.q) == (2, 3)
    assert (a.copy, b.copy) == (1, 2)


def test_all_smooth_package():
    D = decompose(validate(4, [7]))
    (pkg,) = D.packages
    assert [b.canonical for b in pkg.branches] == [None, None, None]
    assert [(b.p, b.q) for b in pkg.branches] == [(1, 2)] * 3
    assert pkg.multiplicity == 3


def test_single_deep_branch():
    D = decompose(validate(6, [7]))
    (pkg,) = D.packages
    (b,) = pkg.branches
    assert b.canonical == validate(5, [6])
    assert (b.p, b.q) == (5, 6)
    assert b.genus == 1  # p > 1 keeps the full package genus


def test_two_depths_in_one_package():
    # 19/8 = [2,2,1,2] -> normalized [2,2,1,1,1]: convergents at the two
    # odd indices give one K(2;5) and one K(5;12) branch
    D = decompose(validate(8, [19]))
    (pkg,) = D.packages
    assert [(b.depth, b.p, b.q) for b in pkg.branches] == [(1, 2, 5), (2, 5, 12)]
    assert [b.canonical for b in pkg.branches] == [
        validate(2, [5]),
        validate(5, [12]),
    ]
    assert pkg.multiplicity == 7
    assert branch_count(validate(8, [19]), 1) == 2


def test_branch_count_matches_construction():
    for n, ms in [(8, [12, 14, 15]), (5, [7]), (4, [7]), (10, [15, 22])]:
        E = validate(n, ms)
        D = decompose(E)
        for pkg in D.packages:
            assert branch_count(E, pkg.index) == len(pkg.branches)
    assert branch_count(validate(8, [12, 14, 15]), 3) == 1
    assert branch_count(validate(2, [3]), 1) == 1


def test_package_summary_agrees_with_decomposition():
    for n, ms in [(8, [12, 14, 15]), (10, [15, 22]), (6, [7]), (8, [19])]:
        E = validate(n, ms)
        for pkg, s in zip(decompose(E).packages, package_summary(E)):
            assert (pkg.index, pkg.multiplicity, pkg.quotient) == (
                s.index,
                s.multiplicity,
                s.quotient,
            )
            assert len(pkg.branches) == s.branches
    assert [s.multiplicity for s in package_summary(validate(10, [15, 22]))] == [1, 8]


def test_require_member_rejects_foreign_branches():
    E8 = validate(8, [12, 14, 15])
    E5 = validate(5, [7])
    foreign = next(decompose(E5).branches())
    with pytest.raises(ValueError, match="not produced by"):
        require_member(E8, foreign)
    native = next(decompose(E8).branches())
    assert require_member(E8, native) is decompose(E8)


def test_branch_traces_worked_example():
    E = validate(8, [12, 14, 15])
    b1, b2, b3 = decompose(E).branches()
    assert branch_trace(E, b1) == (1, 1, 0, 0, 0, 0, 0)
    assert branch_trace(E, b2) == (2, 1, 1, 1, 0, 0, 0)
    assert branch_trace(E, b3) == (4, 2, 2, 1, 1, 1, 0)


def test_branch_traces_more_examples():
    E = validate(5, [7])
    for b in decompose(E).branches():
        assert branch_trace(E, b) == (2, 1, 1, 0, 0)
    E = validate(2, [3])
    (b,) = decompose(E).branches()
    assert branch_trace(E, b) == (1, 1, 0)
    E = validate(8, [19])
    shallow, deep = decompose(E).branches()
    assert branch_trace(E, shallow) == (2, 2, 1, 1, 0, 0, 0)
    assert branch_trace(E, deep) == (5, 5, 2, 2, 1, 1, 0)


def test_trace_first_entry_is_branch_multiplicity():
    for n, ms in [(8, [12, 14, 15]), (10, [15, 22]), (8, [19]), (6, [7])]:
        E = validate(n, ms)
        for b in decompose(E).branches():
            assert branch_trace(E, b)[0] == b.multiplicity
