"""Pairwise intersection multiplicities of polar branches.

Every number here is computed twice, by independent routes that must
agree exactly:

  closed form   integer formulas in the class invariants (this module);
  Noether trace the sum over shared infinitely near points of the
                product of branch multiplicities (cluster.noether_sum
                on decompose.branch_trace outputs).

A disagreement is not a recoverable error — it means a formula or the
construction is wrong — so it raises TheoremViolation.  verify_classes
runs the comparison exhaustively over an enumeration bound and is the
engine behind the CLI's cluster verification mode.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .cluster import check_proximity, noether_sum, polar_cluster, singularity_cluster
from .decompose import (
    PolarBranch,
    branch_trace,
    decompose,
    package_summary,
    require_member,
)
from .eqclass import (
    EqClass,
    TheoremViolation,
    enumerate_classes,
    scaled_polar_quotient,
)

__all__ = [
    "IntersectionReport",
    "SweepReport",
    "branch_vs_curve",
    "intersection_report",
    "oracle_pair_intersection",
    "pair_intersection",
    "verify_classes",
]


def _exact_div(num: int, den: int, what: str) -> int:
    q, r = divmod(num, den)
    if r:
        raise TheoremViolation(f"{what}: {num}/{den} is not an integer")
    return q


def pair_intersection(E: EqClass, b1: PolarBranch, b2: PolarBranch) -> int:
    """Closed-form intersection multiplicity of two distinct branches.

    Same package k >= 2, depths i <= u:
        p_i*p_u*Q_{k-1}/e_{k-1}^2 + q_u*p_i
    where Q_l = scaled_polar_quotient(E, l); the first factor is the
    shared staircase prefix, the second the divergence row.  Package 1
    is the exact minimum formula min(p_i*q_u, p_u*q_i); since the odd
    convergent ratios decrease, it agrees with the general form (whose
    Q_0 term vanishes).  Across packages l < k the branches separate
    where the shallower one leaves its block: p_l*p_k*Q_l/(e_{l-1}*e_{k-1}).
    """
    require_member(E, b1)
    require_member(E, b2)
    if b1.package == b2.package:
        k = b1.package
        lo, hi = (b1, b2) if b1.depth <= b2.depth else (b2, b1)
        if k == 1:
            return min(lo.p * hi.q, hi.p * lo.q)
        e_prev = E.gcds[k - 1]
        shared = _exact_div(
            lo.p * hi.p * scaled_polar_quotient(E, k - 1),
            e_prev * e_prev,
            f"same-package pair in {E}",
        )
        return shared + hi.q * lo.p
    lo, hi = (b1, b2) if b1.package < b2.package else (b2, b1)
    return _exact_div(
        lo.p * hi.p * scaled_polar_quotient(E, lo.package),
        E.gcds[lo.package - 1] * E.gcds[hi.package - 1],
        f"cross-package pair in {E}",
    )


def oracle_pair_intersection(E: EqClass, b1: PolarBranch, b2: PolarBranch) -> int:
    """The same number by Noether's formula on the branch traces.

    No shared-prefix bookkeeping is needed: the shallower branch's
    trace is zero beyond the points it passes through, so the pointwise
    product cuts the sum to the common part automatically.
    """
    require_member(E, b1)
    require_member(E, b2)
    return noether_sum(branch_trace(E, b1), branch_trace(E, b2))


def branch_vs_curve(E: EqClass, b: PolarBranch) -> int:
    """I(b, f): intersection of a polar branch with the curve itself.

    Equals multiplicity(b) * polar_quotient(E, package) — that quotient
    is constant on the package, which is what makes the package grouping
    meaningful.  Always an integer; computed without rationals.
    """
    require_member(E, b)
    return _exact_div(
        b.p * scaled_polar_quotient(E, b.package),
        E.gcds[b.package - 1],
        f"branch-curve intersection of {b} in {E}",
    )


@dataclass(frozen=True)
class IntersectionReport:
    """Full pairwise intersection data, oracle-checked on construction.

    ``matrix`` is symmetric over branches in decomposition order with a
    zero diagonal (self-intersection is not defined); ``with_curve``
    lists I(b, f) per branch; ``total`` is I(f, P(f)) = mu + n - 1.
    """

    eqclass: EqClass
    branches: tuple[PolarBranch, ...]
    matrix: tuple[tuple[int, ...], ...]
    with_curve: tuple[int, ...]
    total: int


def intersection_report(E: EqClass) -> IntersectionReport:
    """Assemble the matrix, checking closed form == oracle on the way.

    Also cross-checks every I(b, f) against the trace oracle and the
    grand total against mu + n - 1 from the semigroup.  Any mismatch
    raises TheoremViolation.
    """
    branches = tuple(decompose(E).branches())
    traces = [branch_trace(E, b) for b in branches]
    curve = singularity_cluster(E)
    size = len(branches)
    rows = [[0] * size for _ in range(size)]
    for a in range(size):
        for c in range(a + 1, size):
            closed = pair_intersection(E, branches[a], branches[c])
            oracle = noether_sum(traces[a], traces[c])
            if closed != oracle:
                raise TheoremViolation(
                    f"pair ({branches[a]}, {branches[c]}) of {E}: "
                    f"closed form {closed} != Noether oracle {oracle}"
                )
            rows[a][c] = rows[c][a] = closed
    with_curve = []
    for b, tr in zip(branches, traces):
        closed = branch_vs_curve(E, b)
        oracle = noether_sum(tr, curve.values)
        if closed != oracle:
            raise TheoremViolation(
                f"{b} against {E}: closed form {closed} != oracle {oracle}"
            )
        with_curve.append(closed)
    total = sum(with_curve)
    if total != E.milnor + E.multiplicity - 1:
        raise TheoremViolation(
            f"I(f, P(f)) = {total} for {E}, expected mu + n - 1 = "
            f"{E.milnor + E.multiplicity - 1}"
        )
    return IntersectionReport(
        E, branches, tuple(map(tuple, rows)), tuple(with_curve), total
    )


@dataclass
class SweepReport:
    """Tally of an exhaustive verification sweep.

    ``failures`` maps check name -> number of violations; ``examples``
    keeps the first few offending descriptions per check.  An empty
    failures dict means every identity held exactly on every class.
    """

    classes: int = 0
    branches: int = 0
    pairs: int = 0
    points: int = 0
    failures: dict[str, int] = field(default_factory=dict)
    examples: dict[str, list[str]] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def record(self, check: str, description: str) -> None:
        self.failures[check] = self.failures.get(check, 0) + 1
        bucket = self.examples.setdefault(check, [])
        if len(bucket) < 5:
            bucket.append(description)

    def summary(self) -> str:
        head = (
            f"{self.classes} classes, {self.branches} branches, "
            f"{self.pairs} pairs, {self.points} cluster points"
        )
        if self.ok:
            return f"all checks passed: {head}"
        lines = [f"FAILURES over {head}:"]
        for check in sorted(self.failures):
            lines.append(f"  {check}: {self.failures[check]} violation(s)")
            lines.extend(f"    {ex}" for ex in self.examples[check])
        return "\n".join(lines)


def verify_classes(
    max_n: int,
    max_last_exponent: int,
    max_genus: int | None = None,
    progress: Callable[[int], None] | None = None,
) -> SweepReport:
    """Run every cross-check on every class within the bounds.

    Per class: cluster consistency (proximity, strictness only at the
    final point, squared-value sum), package data against the closed
    forms, the aggregate sharp pass of all traces against the polar
    valuations, branch genus bounds, every I(b, f) and every branch
    pair against the Noether oracle, and the grand total mu + n - 1.

    Everything is accumulated rather than raised so a single bad
    identity yields a usable report; see SweepReport.
    """
    report = SweepReport()
    for E in enumerate_classes(max_n, max_last_exponent, max_genus):
        report.classes += 1
        if progress is not None and report.classes % 20000 == 0:
            progress(report.classes)
        try:
            _verify_one(E, report)
        except TheoremViolation as exc:
            report.record("internal", f"{E}: {exc}")
    return report


def _verify_one(E: EqClass, report: SweepReport) -> None:
    curve = singularity_cluster(E)
    polar = polar_cluster(E)
    size = len(curve.points)
    report.points += size

    if polar.points is not curve.points:
        report.record("support", f"{E}: polar support rebuilt, not shared")
    prox = check_proximity(curve)
    if prox.deficits or prox.strict != (size - 1,):
        report.record(
            "curve_proximity",
            f"{E}: deficits {prox.deficits}, strict {prox.strict}",
        )
    if not check_proximity(polar).ok:
        report.record("polar_proximity", f"{E}: polar valuations inconsistent")
    sq = sum(v * v for v in curve.values)
    if sq != scaled_polar_quotient(E, E.genus):
        report.record("value_square_sum", f"{E}: sum v^2 = {sq}")

    D = decompose(E)
    summaries = package_summary(E)
    for pkg, s in zip(D.packages, summaries):
        if (
            pkg.multiplicity != s.multiplicity
            or len(pkg.branches) != s.branches
            or pkg.quotient != s.quotient
        ):
            report.record("package_summary", f"{E}: package {pkg.index}")
    if D.total_multiplicity != E.multiplicity - 1:
        report.record("total_multiplicity", f"{E}: {D.total_multiplicity}")

    branches = tuple(D.branches())
    report.branches += len(branches)
    traces = [branch_trace(E, b) for b in branches]

    aggregate = [0] * size
    for tr in traces:
        for i, v in enumerate(tr):
            aggregate[i] += v
    if tuple(aggregate) != polar.values:
        report.record(
            "sharp_pass", f"{E}: trace sum {tuple(aggregate)} != {polar.values}"
        )

    total = 0
    for b, tr in zip(branches, traces):
        expected_genus = b.package if b.p > 1 else b.package - 1
        if b.genus != expected_genus:
            report.record("genus_bounds", f"{E}: {b} has genus {b.genus}")
        closed = branch_vs_curve(E, b)
        if closed != noether_sum(tr, curve.values):
            report.record("branch_vs_curve", f"{E}: {b}")
        if closed != b.multiplicity * D.packages[b.package - 1].quotient:
            report.record("quotient_ratio", f"{E}: {b}")
        total += closed
    if total != E.milnor + E.multiplicity - 1:
        report.record("grand_total", f"{E}: {total} != mu + n - 1")

    for a in range(len(branches)):
        tra = traces[a]
        for c in range(a + 1, len(branches)):
            report.pairs += 1
            closed = pair_intersection(E, branches[a], branches[c])
            oracle = noether_sum(tra, traces[c])
            if closed != oracle:
                report.record(
                    "pair_oracle",
                    f"{E}: ({branches[a]}, {branches[c]}) "
                    f"closed {closed} != oracle {oracle}",
                )
