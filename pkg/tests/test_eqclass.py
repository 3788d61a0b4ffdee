"""Validation, derived chains, quotients, and class enumeration."""

from fractions import Fraction

import pytest

from polarfactor.eqclass import (
    InvalidClassError,
    TheoremViolation,
    block_expansion,
    canonicalize_exponents,
    enumerate_classes,
    polar_quotient,
    polar_quotient_variant,
    scaled_polar_quotient,
    semigroup_and_conductor,
    validate,
)


def test_validate_derives_all_chains():
    E = validate(8, [12, 14, 15])
    assert E.multiplicity == 8
    assert E.exponents == (12, 14, 15)
    assert E.gcds == (8, 4, 2, 1)
    assert E.descents == (2, 2, 2)
    assert E.genus == 3
    assert E.semigroup == (8, 12, 26, 53)
    assert E.conductor == 84
    assert E.milnor == 84
    assert E.exponent(0) == 0
    assert E.exponent(2) == 14
    assert E.notation() == "8:12,14,15"
    assert str(E) == "K(8;12,14,15)"


def test_validate_accepts_sequences_and_is_hashable():
    assert validate(5, (7,)) == validate(5, [7])
    assert hash(validate(5, (7,))) == hash(validate(5, [7]))


@pytest.mark.parametrize(
    "n, ms, fragment",
    [
        (4, [], "genus must be at least 1"),
        (1, [3], "multiplicity must be at least 2"),
        (4, [6, 6], "strictly increasing"),
        (4, [3], "m1 must exceed n"),
        (4, [8], "n divides m1"),
        (4, [6, 8], "e1 divides m2"),
        (8, [12, 14, 16], "e2 divides m3"),
        (4, [6], "expected 1"),
    ],
)
def test_validate_names_the_violated_invariant(n, ms, fragment):
    with pytest.raises(InvalidClassError, match=fragment):
        validate(n, ms)


def test_semigroup_and_conductor_examples():
    assert semigroup_and_conductor(validate(2, [3])) == ((2, 3), 2, 2)
    assert semigroup_and_conductor(validate(5, [7])) == ((5, 7), 24, 24)
    assert semigroup_and_conductor(validate(4, [6, 7])) == ((4, 6, 13), 16, 16)
    assert semigroup_and_conductor(validate(10, [15, 22])) == (
        (10, 15, 37),
        154,
        154,
    )


def test_genus_one_conductor_closed_form():
    for n, m in [(2, 3), (3, 5), (4, 7), (5, 12), (12, 49)]:
        assert validate(n, [m]).conductor == (n - 1) * (m - 1)


def test_block_expansions():
    E = validate(8, [12, 14, 15])
    assert block_expansion(E, 1).quotients == (1, 2)
    assert block_expansion(E, 2).quotients == (0, 2)
    assert block_expansion(E, 3).quotients == (0, 2)
    assert block_expansion(E, 1).terminal == 4
    assert block_expansion(validate(5, [7]), 1).quotients == (1, 2, 2)
    with pytest.raises(ValueError):
        block_expansion(E, 4)
    with pytest.raises(ValueError):
        block_expansion(E, 0)


def test_scaled_polar_quotients():
    E = validate(8, [12, 14, 15])
    assert scaled_polar_quotient(E, 0) == 0
    assert scaled_polar_quotient(E, 1) == 96
    assert scaled_polar_quotient(E, 2) == 104
    assert scaled_polar_quotient(E, 3) == 106
    assert polar_quotient(E, 1) == 12
    assert polar_quotient(E, 2) == 13
    assert polar_quotient(E, 3) == Fraction(53, 4)
    with pytest.raises(ValueError):
        scaled_polar_quotient(E, 4)


def test_polar_quotient_first_package_is_m1():
    for n, ms in [(2, [3]), (5, [7]), (10, [15, 22]), (8, [12, 14, 15])]:
        E = validate(n, ms)
        assert polar_quotient(E, 1) == ms[0]


def test_variant_quotient_diverges_from_the_certified_one():
    E = validate(8, [12, 14, 15])
    assert polar_quotient_variant(E, 1) == polar_quotient(E, 1) == 12
    assert polar_quotient_variant(E, 2) == 20  # certified value is 13
    assert polar_quotient_variant(E, 3) == Fraction(49, 2)


def test_canonicalize_drops_non_dropping_exponents():
    assert canonicalize_exponents(4, [6, 7, 8]) == validate(4, [6, 7])
    assert canonicalize_exponents(2, [3, 4]) == validate(2, [3])
    assert canonicalize_exponents(2, [5]) == validate(2, [5])
    # idempotent on canonical input
    assert canonicalize_exponents(8, [12, 14, 15]) == validate(8, [12, 14, 15])


def test_canonicalize_rejects_non_reduced_tuples():
    with pytest.raises(InvalidClassError):
        canonicalize_exponents(4, [6, 8])  # gcd never reaches 1
    with pytest.raises(InvalidClassError):
        canonicalize_exponents(2, [1])
    with pytest.raises(InvalidClassError):
        canonicalize_exponents(3, [])


def test_enumerate_small_bounds():
    assert [E.notation() for E in enumerate_classes(2, 9, 1)] == [
        "2:3",
        "2:5",
        "2:7",
        "2:9",
    ]
    every = [E.notation() for E in enumerate_classes(4, 10)]
    assert every == [
        "2:3", "2:5", "2:7", "2:9",
        "3:4", "3:5", "3:7", "3:8", "3:10",
        "4:5", "4:6,7", "4:6,9", "4:7", "4:9",
    ]
    # genus cap prunes exactly the genus-2 entries
    genus1 = [E.notation() for E in enumerate_classes(4, 10, 1)]
    assert genus1 == [s for s in every if "," not in s]


def test_enumerate_is_lexicographic_and_valid():
    seen = list(enumerate_classes(8, 15))
    assert len(seen) == 71
    keys = [(E.multiplicity, E.exponents) for E in seen]
    assert keys == sorted(keys)
    assert validate(8, [12, 14, 15]) in seen
    for E in seen:
        assert validate(E.multiplicity, E.exponents) == E  # all invariants hold


def test_enumerate_empty_bounds():
    assert list(enumerate_classes(1, 50)) == []
    assert list(enumerate_classes(8, 1)) == []


def test_theorem_violation_is_not_invalid_input():
    assert issubclass(InvalidClassError, ValueError)
    assert issubclass(TheoremViolation, RuntimeError)
    assert not issubclass(TheoremViolation, InvalidClassError)
