r"""Eigenspaces of periodic actions on logarithmic quadratic differentials.

Let a cyclic action of order n on a closed surface of genus g have quotient
genus gbar, branch points of valency sigma_i/lambda_i, and a stable set of
marked points.  On V = H^0(S, 2K + P), where P is the reduced divisor of
the marked ("pole") points, the action decomposes V into eigenspaces
V_alpha on which the generator acts by e(alpha/n).  Writing r_i = 1 for
points of P and r_i = 0 otherwise, the dimension of V_alpha is

    3 gbar - 3 + sum_i (2 - c_i),
    c_i = { (-alpha sigma_i - 2 + r_i) / lambda_i } + (2 - r_i)/lambda_i,

summed over all branch-point orbits and the t orbits of unbranched marked
points (lambda = 1, sigma = 0, r = 1; each contributes c = 1).  The formula
requires 2 gbar - 2 + s + t > 0 and always yields a nonnegative integer on
consistent data; lambda = 1 poles go through the same code path as branch
poles rather than a special case.

The multiset of characters alpha/n, each with multiplicity dim V_alpha, is
the log-quadratic character multiset; its total size is always
3g - 3 + k', with k' the number of marked points upstairs.

Pole sets are specified per orbit, so a partially marked orbit is not
expressible; data is accepted orbitwise or not at all.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .valency import (
    PointClass,
    Rational,
    TotalValency,
    fractional_part,
)


@dataclass(frozen=True)
class BranchPoint:
    """One branch-point orbit: valency sigma/lambda and whether it is marked."""

    sigma: int
    lam: int
    is_pole: bool

    def __post_init__(self) -> None:
        if self.lam < 2:
            raise ValueError(
                "branch points have lambda >= 2; unbranched marked orbits "
                "are counted by t"
            )
        if not 1 <= self.sigma <= self.lam - 1:
            raise ValueError(f"sigma out of range: {self.sigma}/{self.lam}")
        from math import gcd

        if gcd(self.sigma, self.lam) != 1:
            raise ValueError(f"sigma, lambda not coprime: {self.sigma}/{self.lam}")


@dataclass(frozen=True)
class PointedActionData:
    """Action data entering the eigenspace formula."""

    g: int
    g_bar: int
    n: int
    branch_points: tuple[BranchPoint, ...]
    t: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "branch_points", tuple(self.branch_points))
        if self.n < 1:
            raise ValueError("order must be positive")
        if self.t < 0:
            raise ValueError("t must be nonnegative")
        if 2 * self.g_bar - 2 + self.s + self.t <= 0:
            raise ValueError(
                f"hypothesis 2 g_bar - 2 + s + t > 0 fails: "
                f"2*{self.g_bar} - 2 + {self.s} + {self.t}"
            )

    @property
    def s(self) -> int:
        return len(self.branch_points)

    @property
    def s_prime(self) -> int:
        return sum(1 for b in self.branch_points if b.is_pole)

    @property
    def k_prime(self) -> int:
        """Number of marked points upstairs: n/lambda per pole orbit, n per
        unbranched marked orbit."""
        k = sum(self.n // b.lam for b in self.branch_points if b.is_pole)
        return k + self.t * self.n


def pointed_action_data(tv: TotalValency) -> PointedActionData:
    """Pointed action data of a dressed total valency, marking every node
    entry (any boundary point class) as a pole; lambda = 1 node entries
    become the t count."""
    boundary = (PointClass.boundary_nonamphidrome, PointClass.boundary_amphidrome)
    branches = []
    t = 0
    for v in tv.valencies:
        if v.lam == 1:
            if v.point_class in boundary:
                t += 1
            continue
        branches.append(BranchPoint(v.sigma, v.lam, v.point_class in boundary))
    return PointedActionData(tv.g, tv.g_bar, tv.n, tuple(branches), t)


def eigenspace_dimension(data: PointedActionData, alpha: int) -> int:
    """dim V_alpha, the e(alpha/n)-eigenspace of H^0(S, 2K + P)."""
    if not 0 <= alpha <= data.n - 1:
        raise ValueError(f"alpha must lie in [0, n-1], got {alpha}")
    points = [(b.sigma, b.lam, 1 if b.is_pole else 0) for b in data.branch_points]
    points += [(0, 1, 1)] * data.t
    total = Fraction(3 * data.g_bar - 3)
    for sigma, lam, r in points:
        c = fractional_part(Fraction(-alpha * sigma - 2 + r, lam)) + Fraction(
            2 - r, lam
        )
        total += 2 - c
    if total.denominator != 1:
        raise ValueError(
            f"eigenspace dimension came out non-integral ({total}): "
            "inconsistent action data"
        )
    if total < 0:
        raise ValueError(
            f"eigenspace dimension came out negative ({total}): "
            "data does not arise from an action"
        )
    return int(total)


@dataclass(frozen=True)
class CharacterMultiset:
    """Ascending multiset of characters theta/n in [0, 1)."""

    values: tuple[Rational, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(self.values))
        if any(not 0 <= v < 1 for v in self.values):
            raise ValueError("characters live in [0, 1)")
        if list(self.values) != sorted(self.values):
            raise ValueError("characters must be listed ascending")

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def multiplicity(self, value: Rational) -> int:
        return sum(1 for v in self.values if v == value)

    def __str__(self) -> str:
        return "{" + ", ".join(str(v) for v in self.values) + "}"


def log_quadratic_characters(data: PointedActionData) -> CharacterMultiset:
    """The log-quadratic character multiset: alpha/n with multiplicity
    dim V_alpha, ascending.  The total multiplicity is checked against
    3g - 3 + k' on every call."""
    dims = [eigenspace_dimension(data, alpha) for alpha in range(data.n)]
    expected = 3 * data.g - 3 + data.k_prime
    if sum(dims) != expected:
        raise ValueError(
            f"character count {sum(dims)} differs from 3g-3+k' = {expected}: "
            "inconsistent action data"
        )
    values = []
    for alpha, d in enumerate(dims):
        values.extend([Fraction(alpha, data.n)] * d)
    return CharacterMultiset(tuple(values))
