"""Genus classification of polar branches, with executable scans.

Two facts about the branches of a general polar, each exposed as a
closed-form predicate and as the constructive computation it is
supposed to summarize, so scans can run both and compare:

  genus drop    every polar branch has genus <= r - 1; happens exactly
                when m_r = m_{r-1} + lambda*e_{r-1} - 1 for some
                lambda >= 1.
  smooth polar  (genus-1 classes) every polar branch is smooth; happens
                exactly when m = lambda*n - 1, the genus-drop condition
                read at r = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Iterator

from .decompose import decompose
from .eqclass import EqClass, InvalidClassError, TheoremViolation, enumerate_classes

__all__ = [
    "ScanHit",
    "genus_drop",
    "genus_drop_lambda",
    "max_branch_genus",
    "scan",
    "smooth_polar",
    "smooth_scan_pairs",
]


def max_branch_genus(E: EqClass) -> int:
    return max(b.genus for b in decompose(E).branches())


def genus_drop(E: EqClass) -> bool:
    """True when every branch of the general polar has genus < r.

    Closed form: m_r + 1 is a multiple of e_{r-1} beyond m_{r-1}, i.e.
    m_r - m_{r-1} + 1 = lambda * e_{r-1}.  The class invariant
    e_{r-1} does not divide m_r - m_{r-1} keeps lambda >= 1 honest.
    """
    gap = E.exponents[-1] - E.exponent(E.genus - 1) + 1
    return gap % E.gcds[E.genus - 1] == 0


def genus_drop_lambda(E: EqClass) -> int | None:
    """The witness lambda = (m_r - m_{r-1} + 1)/e_{r-1}, None if no drop."""
    gap = E.exponents[-1] - E.exponent(E.genus - 1) + 1
    lam, rem = divmod(gap, E.gcds[E.genus - 1])
    return lam if rem == 0 else None


def smooth_polar(n: int, m: int) -> bool:
    """True when the polar of a general genus-1 member K(n; m) has only
    smooth branches; closed form m = lambda*n - 1."""
    if n < 2 or m <= n or gcd(n, m) != 1:
        raise InvalidClassError(f"({n}, {m}) is not valid genus-1 data")
    return m % n == n - 1


@dataclass(frozen=True)
class ScanHit:
    """One class satisfying a scan predicate, with its witness."""

    eqclass: EqClass
    lam: int
    max_genus_of_branches: int


def scan(
    max_n: int,
    max_last_exponent: int,
    max_genus: int | None = None,
    predicate: str = "genus-drop",
) -> Iterator[ScanHit]:
    """Scan all classes in bounds and yield the predicate's hits.

    predicate 'genus-drop' flags classes whose polar branches all stay
    below the class genus; 'smooth' restricts to genus-1 classes and
    flags all-smooth polars (the same condition at r = 1).  For every
    scanned class — hit or not — the closed-form verdict is compared
    with the constructive one (max branch genus over the actual
    decomposition); a mismatch raises TheoremViolation, so a completed
    scan is itself a proof of the characterization over the bounds.
    """
    if predicate not in ("genus-drop", "smooth"):
        raise ValueError(f"unknown scan predicate {predicate!r}")
    genus_cap = 1 if predicate == "smooth" else max_genus
    for E in enumerate_classes(max_n, max_last_exponent, genus_cap):
        formula = genus_drop(E)
        constructive = max_branch_genus(E)
        if formula != (constructive <= E.genus - 1):
            raise TheoremViolation(
                f"{E}: closed-form verdict {formula} but max branch genus "
                f"is {constructive} (genus {E.genus})"
            )
        if predicate == "smooth" and formula != (constructive == 0):
            raise TheoremViolation(f"{E}: smooth verdict mismatch")
        if formula:
            lam = genus_drop_lambda(E)
            assert lam is not None
            yield ScanHit(E, lam, constructive)


def smooth_scan_pairs(max_n: int, max_m: int) -> list[tuple[int, int]]:
    """Convenience wrapper: the (n, m) pairs with an all-smooth polar."""
    return [
        (hit.eqclass.multiplicity, hit.eqclass.exponents[0])
        for hit in scan(max_n, max_m, predicate="smooth")
    ]
