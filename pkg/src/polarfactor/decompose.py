"""Factorization of the general polar curve into packages of branches.

The polar of a general member of a class factors into one package per
characteristic exponent.  Package k is read off the even-normalized
expansion of (m_k - m_{k-1})/e_{k-1}: every even index 2i contributes
h_{2i} equisingular branches whose invariants come from the convergent
at index 2i-1.  Branches are represented by that convergent, a raw
exponent tuple, and the canonical class of the tuple; their
multiplicity traces on the curve's cluster feed the Noether oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, NamedTuple

from .arith import convergent, forced_remainders, normalize_even
from .cluster import singularity_cluster
from .eqclass import (
    EqClass,
    TheoremViolation,
    block_expansion,
    canonicalize_exponents,
    polar_quotient,
)

__all__ = [
    "PackageSummary",
    "PolarBranch",
    "PolarDecomposition",
    "PolarPackage",
    "branch_count",
    "branch_trace",
    "decompose",
    "package_summary",
    "require_member",
]


@dataclass(frozen=True, slots=True)
class PolarBranch:
    """One branch of the general polar.

    (package, depth, copy) identify it: package k, convergent index
    2*depth - 1, copy counts the h_{2*depth} equisingular branches that
    share a convergent.  ``starts_at_terminal`` tags the block shape:
    True when m_k - m_{k-1} < e_{k-1}, in which case the branch's chain
    through block k begins at the previous block's terminal point.
    ``exponents`` is the raw invariant tuple (multiplicity first);
    ``canonical`` is its canonical class, or None for a smooth branch.
    """

    package: int
    depth: int
    copy: int
    p: int
    q: int
    starts_at_terminal: bool
    exponents: tuple[int, ...]
    canonical: EqClass | None

    @property
    def multiplicity(self) -> int:
        return self.exponents[0]

    @property
    def genus(self) -> int:
        return self.canonical.genus if self.canonical is not None else 0

    @property
    def case(self) -> str:
        return "<" if self.starts_at_terminal else ">"

    def __str__(self) -> str:
        body = (
            str(self.canonical)
            if self.canonical is not None
            else "smooth"
        )
        return f"xi[{self.package},{self.depth},{self.copy}] {body}"


@dataclass(frozen=True, slots=True)
class PolarPackage:
    """All branches sharing one polar quotient."""

    index: int
    branches: tuple[PolarBranch, ...]
    multiplicity: int
    quotient: Fraction


@dataclass(frozen=True, slots=True)
class PolarDecomposition:
    eqclass: EqClass
    packages: tuple[PolarPackage, ...]

    @property
    def total_multiplicity(self) -> int:
        return sum(pkg.multiplicity for pkg in self.packages)

    def branches(self) -> Iterator[PolarBranch]:
        for pkg in self.packages:
            yield from pkg.branches


class PackageSummary(NamedTuple):
    index: int
    multiplicity: int
    quotient: Fraction
    branches: int


@lru_cache(maxsize=512)
def decompose(E: EqClass) -> PolarDecomposition:
    """Build the full polar factorization of a general member of E.

    Postconditions cross-checked on every call: package multiplicities
    match the descent-chain closed form and sum to n - 1.
    """
    n = E.multiplicity
    packages: list[PolarPackage] = []
    for k in range(1, E.genus + 1):
        e_prev = E.gcds[k - 1]
        scale = n // e_prev
        hn = normalize_even(block_expansion(E, k).quotients)
        gap_below = hn[0] == 0
        m_prev = E.exponent(k - 1)
        branches: list[PolarBranch] = []
        for i in range(1, len(hn) // 2 + 1):
            p, q = convergent(hn, 2 * i - 1)
            exps = (
                p * scale,
                *(p * E.exponent(w) // e_prev for w in range(1, k)),
                p * m_prev // e_prev + q,
            )
            if exps[0] == 1:
                canonical = None  # smooth: p = 1 in package 1
            else:
                canonical = canonicalize_exponents(exps[0], exps[1:])
            for j in range(1, hn[2 * i] + 1):
                branches.append(
                    PolarBranch(k, i, j, p, q, gap_below, exps, canonical)
                )
        mult = sum(b.multiplicity for b in branches)
        expected = scale * (E.descents[k - 1] - 1)
        if mult != expected:
            raise TheoremViolation(
                f"package {k} of {E}: constructed multiplicity {mult} != "
                f"descent-chain value {expected}"
            )
        packages.append(PolarPackage(k, tuple(branches), mult, polar_quotient(E, k)))
    total = sum(pkg.multiplicity for pkg in packages)
    if total != n - 1:
        raise TheoremViolation(f"polar of {E} has multiplicity {total} != n - 1")
    return PolarDecomposition(E, tuple(packages))


def require_member(E: EqClass, b: PolarBranch) -> PolarDecomposition:
    """Check that b is (value-equal to) a branch of decompose(E).

    Intersection formulas silently produce garbage for a branch of some
    other class, so every entry point that takes (class, branch) pairs
    funnels through here.  Returns the decomposition for reuse.
    """
    D = decompose(E)
    if not 1 <= b.package <= len(D.packages) or b not in D.packages[b.package - 1].branches:
        raise ValueError(f"{b} was not produced by decompose({E})")
    return D


def branch_count(E: EqClass, j: int) -> int:
    """Number of branches in package j: sum of the even-index quotients
    of the normalized block expansion.  Matches len(packages[j-1].branches)."""
    hn = normalize_even(block_expansion(E, j).quotients)
    return sum(hn[a] for a in range(2, len(hn), 2))


def package_summary(E: EqClass) -> tuple[PackageSummary, ...]:
    """Per-package (multiplicity, polar quotient, branch count) from the
    closed forms alone — no branch construction, so this is the cheap
    independent side of the decomposition cross-checks."""
    n = E.multiplicity
    return tuple(
        PackageSummary(
            k,
            (n // E.gcds[k - 1]) * (E.descents[k - 1] - 1),
            polar_quotient(E, k),
            branch_count(E, k),
        )
        for k in range(1, E.genus + 1)
    )


@lru_cache(maxsize=4096)
def branch_trace(E: EqClass, b: PolarBranch) -> tuple[int, ...]:
    """Multiplicities of one polar branch along the curve's cluster.

    Through the blocks before b's package the branch follows the curve
    scaled by p/e_{k-1} (always an exact division).  Through block k it
    walks the remainder recurrence of its convergent down the staircase
    rows 0..2i-1, then leaves the cluster: all later points get 0.  In
    the gap-below-e case the walk is anchored at the previous block's
    terminal with the pair (p+q, p), and its first value must agree
    with the earlier-block rule at that point.
    """
    require_member(E, b)
    C = singularity_cluster(E)
    k = b.package
    e_prev = E.gcds[k - 1]
    hn = normalize_even(block_expansion(E, k).quotients)
    start = C.block_spans[k - 1][0]
    trace = [0] * len(C.points)
    for idx in range(start):
        scaled = C.values[idx] * b.p
        if scaled % e_prev:
            raise TheoremViolation(
                f"non-integral scaled multiplicity at point {idx} of {E}"
            )
        trace[idx] = scaled // e_prev
    if b.starts_at_terminal:
        walk = forced_remainders((1, *hn[1 : 2 * b.depth]), b.p + b.q, b.p)
        if trace[start - 1] != walk[0]:
            raise TheoremViolation(
                f"{b} of {E}: chain anchor value {walk[0]} != "
                f"terminal trace {trace[start - 1]}"
            )
    else:
        walk = forced_remainders(hn[: 2 * b.depth], b.q, b.p)
    pos = start
    for a in range(2 * b.depth):
        for _ in range(hn[a]):
            trace[pos] = walk[a]
            pos += 1
    return tuple(trace)
