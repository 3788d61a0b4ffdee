"""Desk-scale symbolic oracle for the predicted intersection totals.

The closed forms and the Noether oracle share the cluster machinery, so
they could in principle share a bug.  This module checks the headline
number against an actual curve with none of that machinery involved:

  1. sample an explicit polynomial parametrization (t^n, y(t)) of a
     member of the class, coefficients small integers;
  2. implicitize to the integer polynomial F with F(t^n, y(t)) = 0,
     via characteristic polynomials of the multiplication-by-y(t)
     matrix over Z[x][t]/(t^n - x), evaluated at integer points and
     interpolated back (exact rational arithmetic throughout);
  3. form the polar a*F_x + b*F_y at a random direction and measure
     its vanishing order along the parametrization.

That order is I(f, P(f)) for the sampled member and must equal the
predicted sum of the per-branch intersections, mu + n - 1.  All
arithmetic is exact, so a match verifies the prediction for the sample
outright; mismatches trigger a resample because a non-generic sample
is a measure-zero accident, and only persistent disagreement counts.

Everything here is deliberately restricted to desk scale (n <= 10,
conductor <= 120): implicitization cost grows quickly, and the point of
the oracle is independent spot checks, not sweeps.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .decompose import decompose
from .eqclass import EqClass, TheoremViolation
from .intersect import branch_vs_curve

__all__ = [
    "IntPoly2",
    "SeriesReport",
    "TruncSeries",
    "implicitize",
    "evaluate_on_parametrization",
    "polar_poly",
    "sample_parametrization",
    "verify_class",
    "MAX_MULTIPLICITY",
    "MAX_CONDUCTOR",
]

MAX_MULTIPLICITY = 10
MAX_CONDUCTOR = 120


class TruncSeries:
    """Series in t with exact integer coefficients and explicit truncation.

    ``trunc`` is the first unknown order: terms at exponents >= trunc
    have been dropped and must not be trusted.  None means the series
    is an exact polynomial.  Arithmetic propagates the tighter
    truncation of the operands, which is conservative.
    """

    __slots__ = ("coeffs", "trunc")

    def __init__(self, coeffs: dict[int, int], trunc: int | None = None):
        if trunc is None:
            self.coeffs = {e: c for e, c in coeffs.items() if c}
        else:
            self.coeffs = {e: c for e, c in coeffs.items() if c and e < trunc}
        self.trunc = trunc

    @staticmethod
    def _merge_trunc(a: int | None, b: int | None) -> int | None:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return TruncSeries(out, self._merge_trunc(self.trunc, other.trunc))

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        trunc = self._merge_trunc(self.trunc, other.trunc)
        out: dict[int, int] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if trunc is None or e < trunc:
                    out[e] = out.get(e, 0) + c1 * c2
        return TruncSeries(out, trunc)

    def order(self) -> int | None:
        """Lowest exponent with a nonzero coefficient; None when there is
        none below the truncation (identically zero if exact)."""
        return min(self.coeffs) if self.coeffs else None

    @property
    def degree(self) -> int:
        if not self.coeffs:
            raise ValueError("zero series has no degree")
        return max(self.coeffs)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, TruncSeries)
            and self.coeffs == other.coeffs
            and self.trunc == other.trunc
        )

    def __repr__(self) -> str:
        inside = " + ".join(
            f"{c}*t^{e}" for e, c in sorted(self.coeffs.items())
        ) or "0"
        tail = "" if self.trunc is None else f" + O(t^{self.trunc})"
        return inside + tail


@dataclass(frozen=True)
class IntPoly2:
    """Bivariate integer polynomial, stored as sorted (i, j, c) terms
    meaning c * x^i * y^j with c != 0."""

    terms: tuple[tuple[int, int, int], ...]

    @classmethod
    def from_dict(cls, d: dict[tuple[int, int], int]) -> "IntPoly2":
        return cls(tuple(sorted((i, j, c) for (i, j), c in d.items() if c)))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return {(i, j): c for i, j, c in self.terms}

    @property
    def degree_y(self) -> int:
        return max((j for _, j, _ in self.terms), default=0)

    @property
    def lowest_degree(self) -> int:
        """Degree of the lowest nonzero homogeneous part (the
        multiplicity at the origin of the curve it defines)."""
        if not self.terms:
            raise ValueError("zero polynomial")
        return min(i + j for i, j, _ in self.terms)

    def diff_x(self) -> "IntPoly2":
        return IntPoly2.from_dict(
            {(i - 1, j): c * i for i, j, c in self.terms if i}
        )

    def diff_y(self) -> "IntPoly2":
        return IntPoly2.from_dict(
            {(i, j - 1): c * j for i, j, c in self.terms if j}
        )

    def scaled(self, factor: int) -> "IntPoly2":
        return IntPoly2.from_dict({(i, j): c * factor for i, j, c in self.terms})

    def __add__(self, other: "IntPoly2") -> "IntPoly2":
        out = self.as_dict()
        for i, j, c in other.terms:
            out[(i, j)] = out.get((i, j), 0) + c
        return IntPoly2.from_dict(out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"

        def monomial(i: int, j: int, c: int) -> str:
            parts = []
            if abs(c) != 1 or (i == 0 and j == 0):
                parts.append(str(abs(c)))
            if i:
                parts.append("x" if i == 1 else f"x^{i}")
            if j:
                parts.append("y" if j == 1 else f"y^{j}")
            return "*".join(parts)

        ordered = sorted(self.terms, key=lambda t: (-t[1], t[0]))
        out = []
        for idx, (i, j, c) in enumerate(ordered):
            sign = "-" if c < 0 else ("+" if idx else "")
            out.append(f"{sign} {monomial(i, j, c)}" if idx else
                       f"{sign}{monomial(i, j, c)}")
        return " ".join(out)


def sample_parametrization(E: EqClass, seed: int | None = None) -> TruncSeries:
    """Random polynomial parametrization y(t) of a member of class E.

    y = t^{m_1} + sum of a_i t^i over m_1 < i < conductor, with a_i in
    {-3..3}.  Coefficients at the characteristic exponents are forced
    nonzero; a coefficient strictly between m_k and m_{k+1} is forced
    zero unless e_k divides its exponent, so the realized gcd chain is
    exactly E's and the sampled curve lies in E, never in a finer
    class.  Deterministic for a given seed.
    """
    rng = random.Random(seed)
    coeffs = {E.exponents[0]: 1}
    characteristic = set(E.exponents[1:])
    for i in range(E.exponents[0] + 1, E.conductor):
        if i in characteristic:
            coeffs[i] = rng.choice((-3, -2, -1, 1, 2, 3))
        else:
            level = sum(1 for m in E.exponents if m <= i)
            if i % E.gcds[level] == 0:
                coeffs[i] = rng.randint(-3, 3)
    return TruncSeries(coeffs)


def _mat_mul(A: list[list[int]], B: list[list[int]]) -> list[list[int]]:
    n = len(A)
    return [
        [sum(A[r][k] * B[k][c] for k in range(n)) for c in range(n)]
        for r in range(n)
    ]


def _charpoly(A: list[list[int]]) -> list[int]:
    """Coefficients of det(y*I - A) as [1, c_1, ..., c_n] (c_k multiplies
    y^{n-k}), by Newton's trace identities; all divisions exact."""
    n = len(A)
    traces = []
    power = A
    for i in range(n):
        if i:
            power = _mat_mul(power, A)
        traces.append(sum(power[r][r] for r in range(n)))
    elem = [1]
    for k in range(1, n + 1):
        acc = 0
        for i in range(1, k + 1):
            acc += (-1) ** (i - 1) * elem[k - i] * traces[i - 1]
        q, r = divmod(acc, k)
        if r:
            raise TheoremViolation("Newton identity division not exact")
        elem.append(q)
    return [(-1) ** k * elem[k] for k in range(n + 1)]


def _interpolate_int(xs: list[int], ys: list[int]) -> list[int]:
    """Integer coefficients (ascending) of the unique polynomial of
    degree < len(xs) through the points; raises if it is not integral."""
    divided = [Fraction(y) for y in ys]
    for level in range(1, len(xs)):
        for idx in range(len(xs) - 1, level - 1, -1):
            divided[idx] = (divided[idx] - divided[idx - 1]) / (
                xs[idx] - xs[idx - level]
            )
    poly = [Fraction(0)] * len(xs)
    basis = [Fraction(1)]
    for k, dk in enumerate(divided):
        for d, bc in enumerate(basis):
            poly[d] += dk * bc
        nxt = [Fraction(0)] * (len(basis) + 1)
        for d, bc in enumerate(basis):
            nxt[d] -= bc * xs[k]
            nxt[d + 1] += bc
        basis = nxt
    out = []
    for c in poly:
        if c.denominator != 1:
            raise TheoremViolation("interpolated coefficient is not an integer")
        out.append(int(c))
    while out and out[-1] == 0:
        out.pop()
    return out


def implicitize(n: int, phi: TruncSeries) -> IntPoly2:
    """The integer polynomial F, monic of degree n in y, vanishing on
    the parametrized curve (t^n, phi(t)).

    F is the characteristic polynomial of multiplication by phi on the
    rank-n module with basis 1, t, ..., t^{n-1} over Z[x], t^n = x.  It
    is computed at deg(phi) + 1 integer values of x with exact integer
    characteristic polynomials and interpolated; the result is checked
    to vanish identically on the parametrization and to have lowest
    homogeneous degree n (the multiplicity of the sampled branch).
    """
    if phi.trunc is not None:
        raise ValueError("implicitize needs an exact polynomial parametrization")
    if not phi.coeffs or phi.order() <= 0:
        raise ValueError("parametrization must have positive order")
    if n < 2:
        raise ValueError(f"multiplicity must be at least 2, got {n}")
    deg_phi = phi.degree
    deg_x = deg_phi  # each charpoly coefficient has x-degree <= deg(phi)
    xs: list[int] = [0]
    step = 1
    while len(xs) < deg_x + 1:
        xs.append(step)
        if len(xs) < deg_x + 1:
            xs.append(-step)
        step += 1

    max_power = (deg_phi + n - 1) // n
    columns: list[list[int]] = []
    for x0 in xs:
        powers = [1]
        for _ in range(max_power):
            powers.append(powers[-1] * x0)
        M = [[0] * n for _ in range(n)]
        for c in range(n):
            for d, a in phi.coeffs.items():
                tot = d + c
                M[tot % n][c] += a * powers[tot // n]
        columns.append(_charpoly(M))

    terms: dict[tuple[int, int], int] = {(0, n): 1}
    for k in range(1, n + 1):
        for i, c in enumerate(_interpolate_int(xs, [col[k] for col in columns])):
            if c:
                terms[(i, n - k)] = c
    F = IntPoly2.from_dict(terms)

    residue = evaluate_on_parametrization(F, n, phi)
    if residue.coeffs:
        raise TheoremViolation("implicitization residue is nonzero")
    if F.lowest_degree != n:
        raise TheoremViolation(
            f"implicit equation has multiplicity {F.lowest_degree}, expected {n}"
        )
    return F


def evaluate_on_parametrization(
    F: IntPoly2, n: int, phi: TruncSeries, trunc: int | None = None
) -> TruncSeries:
    """F(t^n, phi(t)) as a series in t, optionally truncated for speed."""
    by_y: dict[int, dict[int, int]] = {}
    for i, j, c in F.terms:
        by_y.setdefault(j, {})[n * i] = c
    result = TruncSeries({}, trunc)
    for j in range(F.degree_y, -1, -1):
        result = result * phi
        if j in by_y:
            result = result + TruncSeries(dict(by_y[j]), trunc)
    return result


def polar_poly(F: IntPoly2, a: int, b: int) -> IntPoly2:
    """The polar a*F_x + b*F_y of F in direction (a : b)."""
    if a == 0 and b == 0:
        raise ValueError("polar direction (0, 0) is not allowed")
    return F.diff_x().scaled(a) + F.diff_y().scaled(b)


@dataclass(frozen=True)
class SeriesReport:
    """Outcome of one symbolic verification run."""

    eqclass: EqClass
    expected: int
    observed: int
    fy_order: int
    polar_multiplicity: int
    direction: tuple[int, int]
    attempts: int
    matched: bool
    seed: int | None

    def summary(self) -> str:
        word = "match" if self.matched else "MISMATCH"
        return (
            f"{self.eqclass}: polar intersection order {self.observed} "
            f"(predicted {self.expected}), polar multiplicity "
            f"{self.polar_multiplicity} — {word} "
            f"[direction {self.direction}, attempt {self.attempts}]"
        )


def verify_class(E: EqClass, seed: int | None = None, retries: int = 5) -> SeriesReport:
    """End-to-end symbolic check of the predicted intersection total.

    Samples a member and a polar direction, builds the actual polar,
    and compares its vanishing order along the branch with the sum of
    branch_vs_curve over the decomposition (equivalently mu + n - 1).
    The run matches when additionally the polar has multiplicity n - 1
    and the sample passes the secondary check ord F_y = mu + n - 1.
    Anything else triggers a resample (a fresh member and direction),
    up to `retries` extra attempts.  Desk-scale bounds are enforced.
    """
    n = E.multiplicity
    if n > MAX_MULTIPLICITY or E.conductor > MAX_CONDUCTOR:
        raise ValueError(
            f"{E} is beyond the desk-scale oracle bounds "
            f"(n <= {MAX_MULTIPLICITY}, conductor <= {MAX_CONDUCTOR})"
        )
    expected = sum(branch_vs_curve(E, b) for b in decompose(E).branches())
    if expected != E.milnor + n - 1:
        raise TheoremViolation(
            f"predicted total {expected} != mu + n - 1 for {E}"
        )
    rng = random.Random(seed)
    nonzero = (-4, -3, -2, -1, 1, 2, 3, 4)
    attempts = 0
    while True:
        attempts += 1
        phi = sample_parametrization(E, rng.randrange(2**32))
        F = implicitize(n, phi)
        direction = (rng.choice(nonzero), rng.choice(nonzero))
        polar = polar_poly(F, *direction)
        observed = _order_along(polar, n, phi, expected)
        fy_order = _order_along(F.diff_y(), n, phi, expected)
        matched = (
            observed == expected
            and fy_order == E.milnor + n - 1
            and polar.lowest_degree == n - 1
        )
        if matched or attempts > retries:
            return SeriesReport(
                E, expected, observed, fy_order, polar.lowest_degree,
                direction, attempts, matched, seed,
            )


def _order_along(P: IntPoly2, n: int, phi: TruncSeries, expected: int) -> int:
    """Vanishing order of P along (t^n, phi(t)); exact despite truncation
    because the truncation window is widened until a term shows up."""
    trunc = expected + n + 4
    for _ in range(4):
        order = evaluate_on_parametrization(P, n, phi, trunc).order()
        if order is not None:
            return order
        trunc *= 2
    raise TheoremViolation(
        "polar vanishes along the branch far beyond the expected order"
    )
