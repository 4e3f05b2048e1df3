r"""Valency calculus for periodic automorphisms of closed surfaces.

A conformal automorphism of order n of a closed Riemann surface of genus g
descends to the quotient orbifold of genus g_bar with branch points
P_1, ..., P_s.  Around a point over P_i the action is rotation by
2*pi*sigma_i/lambda_i, where lambda_i is the ramification index and
gcd(sigma_i, lambda_i) = 1.  The fraction sigma_i/lambda_i is the *valency*
of the branch point, and the *total valency*

    g_bar + sigma_1/lambda_1 + ... + sigma_s/lambda_s

is a conjugacy invariant of the action.  The *covalency* delta_i is the
multiplicative inverse of sigma_i mod lambda_i; it is the valency seen from
the natural generator of the stabilizer and is the quantity that enters
screw numbers downstream.

Branch data (g, g_bar, n, {sigma_i/lambda_i}) arises from an actual action
if and only if it passes:

  (a1)  the Hurwitz formula
        2(g-1)/n = 2(g_bar - 1) + sum_i (1 - 1/lambda_i),
  (a2)  integrality of sum_i sigma_i/lambda_i,
  (a3)  the Wiman bound n <= 4g + 2           (g >= 2),
  (a4)  Harvey's lcm conditions on the branch indices lambda_i.

Conditions (a1)-(a4) are necessary and sufficient for g >= 2.  For bodies of
genus 0 and 1 (which occur as pieces of stable curves) the admissible data
are instead the classical rotation signatures of the sphere and the torus;
``validate_total_valency`` dispatches on the genus.

Entries with lambda = 1 are markers for unbranched distinguished points
(e.g. images of nodes); by convention sigma = delta = 0, the entry is
written "1", and it contributes 1 to the integrality sum while staying out
of Harvey's branch-index checks.

All arithmetic is exact: values are ``fractions.Fraction``, equalities have
tolerance zero.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator, Sequence

#: Exact rational scalar used throughout the package.
Rational = Fraction


def fractional_part(x: Rational | int) -> Rational:
    """The fractional part {x} in [0, 1), for any sign of x.

    Satisfies x - {x} in ZZ always; {x} = 0 iff x is an integer.
    """
    x = Fraction(x)
    return x - Fraction(x.numerator // x.denominator)


class PointClass(Enum):
    """How a distinguished point sits on its body.

    ``interior_branch``           branch point away from any node
    ``boundary_nonamphidrome``    point on a non-amphidrome node
    ``boundary_amphidrome``       point on an amphidrome node
    ``unbranched_marked``         marked smooth point with trivial stabilizer
    """

    interior_branch = "interior_branch"
    boundary_nonamphidrome = "boundary_nonamphidrome"
    boundary_amphidrome = "boundary_amphidrome"
    unbranched_marked = "unbranched_marked"


@dataclass(frozen=True)
class Valency:
    """A single valency sigma/lambda with its point classification.

    ``lam`` is the ramification index lambda >= 1.  For lam = 1 the numerator
    is forced to 0 (the point is unbranched); otherwise 1 <= sigma <= lam - 1
    and gcd(sigma, lam) = 1.
    """

    sigma: int
    lam: int
    point_class: PointClass = PointClass.interior_branch

    def __post_init__(self) -> None:
        if self.lam < 1:
            raise ValueError(f"ramification index must be >= 1, got {self.lam}")
        if self.lam == 1:
            if self.sigma != 0:
                raise ValueError("lambda = 1 forces sigma = 0")
        else:
            if not 1 <= self.sigma <= self.lam - 1:
                raise ValueError(
                    f"sigma must lie in [1, lambda-1], got {self.sigma}/{self.lam}"
                )
            if math.gcd(self.sigma, self.lam) != 1:
                raise ValueError(
                    f"sigma and lambda must be coprime, got {self.sigma}/{self.lam}"
                )

    @property
    def value(self) -> Rational:
        """The valency as an exact fraction sigma/lambda."""
        return Fraction(self.sigma, self.lam)

    @property
    def delta(self) -> int:
        """The covalency numerator: sigma * delta == 1 (mod lambda); 0 if lambda = 1."""
        if self.lam == 1:
            return 0
        return pow(self.sigma, -1, self.lam)

    @property
    def is_branched(self) -> bool:
        return self.lam > 1

    def nielsen_term(self) -> Rational:
        """Contribution to the integrality sum: sigma/lambda, or 1 when lambda = 1."""
        if self.lam == 1:
            return Fraction(1)
        return self.value

    def base_text(self) -> str:
        """The undecorated fraction as written in total valencies ("1" for lambda = 1)."""
        if self.lam == 1:
            return "1"
        return f"{self.sigma}/{self.lam}"

    def render(self) -> str:
        """ASCII form with the point-class dressing.

        Boundary points on non-amphidrome nodes are written bold (``**x**``),
        boundary points on amphidrome nodes doubly bracketed (``((x))``),
        everything else plain.
        """
        base = self.base_text()
        if self.point_class is PointClass.boundary_nonamphidrome:
            return f"**{base}**"
        if self.point_class is PointClass.boundary_amphidrome:
            return f"(({base}))"
        return base

    def __str__(self) -> str:
        return self.render()


def covalency(v: Valency) -> Valency:
    """The covalency of ``v``: same lambda, numerator delta with
    sigma * delta == 1 (mod lambda).  An involution; lambda = 1 is fixed.
    """
    return Valency(v.delta, v.lam, v.point_class)


@dataclass(frozen=True)
class TotalValency:
    """Branch data of a periodic action: genus, order, quotient genus, valencies.

    The valency list keeps the caller's order (dressed presentations care
    about it); equality is therefore order-sensitive.  Use
    ``sorted_values()`` when a canonical multiset is wanted.
    """

    g: int
    n: int
    g_bar: int
    valencies: tuple[Valency, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "valencies", tuple(self.valencies))
        if self.n < 1:
            raise ValueError(f"order must be >= 1, got {self.n}")
        if self.g < 0 or self.g_bar < 0:
            raise ValueError("genera must be nonnegative")

    @property
    def s(self) -> int:
        """Number of genuine branch points (lambda >= 2)."""
        return sum(1 for v in self.valencies if v.is_branched)

    def branch_valencies(self) -> tuple[Valency, ...]:
        return tuple(v for v in self.valencies if v.is_branched)

    def branch_indices(self) -> tuple[int, ...]:
        return tuple(v.lam for v in self.branch_valencies())

    def sorted_values(self) -> tuple[Rational, ...]:
        return tuple(sorted(v.value for v in self.valencies))

    def __str__(self) -> str:
        terms = [str(self.g_bar)] + [v.render() for v in self.valencies]
        return " + ".join(terms)


# ---------------------------------------------------------------------------
# admissibility conditions
# ---------------------------------------------------------------------------

def check_hurwitz(tv: TotalValency) -> Rational:
    """Residual of the Hurwitz formula (a1): LHS - RHS, zero iff consistent.

    LHS = 2(g-1)/n, RHS = 2(g_bar-1) + sum_i (1 - 1/lambda_i).  Entries with
    lambda = 1 contribute nothing to the sum.
    """
    lhs = Fraction(2 * (tv.g - 1), tv.n)
    rhs = 2 * (tv.g_bar - 1) + sum(
        (1 - Fraction(1, v.lam) for v in tv.valencies), Fraction(0)
    )
    return lhs - rhs


def check_nielsen_integrality(tv: TotalValency) -> bool:
    """Condition (a2): the valencies sum to an integer.

    A lambda = 1 entry is written "1" and contributes 1 (this never changes
    integrality, but keeps displayed sums honest).
    """
    total = sum((v.nielsen_term() for v in tv.valencies), Fraction(0))
    return total.denominator == 1


def check_wiman(g: int, n: int) -> bool:
    """Condition (a3): the order bound n <= 4g + 2, stated for g >= 2 only."""
    if g < 2:
        raise ValueError(f"the order bound is stated for g >= 2, got g = {g}")
    return n <= 4 * g + 2


def check_harvey(tv: TotalValency) -> dict[str, bool]:
    """Condition (a4): Harvey's lcm conditions on the branch indices.

    With M = lcm(lambda_1, ..., lambda_s) over the lambda >= 2 entries only:

      a4_1  removing any single lambda_i leaves the lcm equal to M;
      a4_2  M divides n, and M = n when g_bar = 0;
      a4_3  s != 1, and s >= 3 when g_bar = 0;
      a4_4  if M is even, the number of lambda_i divisible by the maximal
            power of 2 dividing M is even.
    """
    lams = tv.branch_indices()
    s = len(lams)
    m = math.lcm(*lams) if lams else 1

    a4_1 = all(
        (math.lcm(*(lams[:i] + lams[i + 1:])) if s > 1 else 1) == m
        for i in range(s)
    )
    a4_2 = tv.n % m == 0 and (tv.g_bar != 0 or m == tv.n)
    a4_3 = s != 1 and (tv.g_bar != 0 or s >= 3)
    if m % 2 == 0:
        two_power = m & -m
        a4_4 = sum(1 for lam in lams if lam % two_power == 0) % 2 == 0
    else:
        a4_4 = True
    return {"a4_1": a4_1, "a4_2": a4_2, "a4_3": a4_3, "a4_4": a4_4}


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Finding:
    """One validated condition: its label, verdict, and a human-readable note."""

    label: str
    ok: bool
    detail: str = ""


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of a validation pass.  Failures are data, not exceptions."""

    findings: tuple[Finding, ...]

    @property
    def ok(self) -> bool:
        return all(f.ok for f in self.findings)

    def failures(self) -> tuple[Finding, ...]:
        return tuple(f for f in self.findings if not f.ok)

    def __str__(self) -> str:
        lines = []
        for f in self.findings:
            mark = "ok" if f.ok else "FAIL"
            lines.append(f"{mark:4} {f.label}" + (f": {f.detail}" if f.detail else ""))
        return "\n".join(lines)


#: Euclidean rotation signatures: order n -> sorted branch indices on a
#: genus-0 quotient of the torus.
_TORUS_SIGNATURES = {
    2: (2, 2, 2, 2),
    3: (3, 3, 3),
    4: (2, 4, 4),
    6: (2, 3, 6),
}


def _structural_findings(tv: TotalValency) -> list[Finding]:
    findings = []
    bad = [v for v in tv.valencies if v.is_branched and tv.n % v.lam != 0]
    findings.append(
        Finding(
            "divisibility",
            not bad,
            "every branch index divides the order"
            if not bad
            else "branch indices not dividing n: " + ", ".join(str(v.lam) for v in bad),
        )
    )
    return findings


def validate_total_valency(tv: TotalValency) -> ValidationReport:
    """Check admissibility of the branch data, dispatching on the genus.

    For g >= 2 this runs (a1)-(a4), which are necessary and sufficient.  For
    g = 1 and g = 0 the Wiman bound and Harvey conditions do not apply;
    instead the data must match a rotation of the torus (a free action over
    genus 1, or one of the four Euclidean signatures over genus 0) or of the
    sphere (trivial, or two branch points of full index n).  The Hurwitz and
    integrality conditions are checked in every case.
    """
    findings = _structural_findings(tv)

    residual = check_hurwitz(tv)
    findings.append(
        Finding(
            "Hurwitz",
            residual == 0,
            "formula balances" if residual == 0 else f"residual {residual}",
        )
    )
    total = sum((v.nielsen_term() for v in tv.valencies), Fraction(0))
    findings.append(
        Finding(
            "Nielsen",
            total.denominator == 1,
            f"valency sum {total}",
        )
    )

    if tv.g >= 2:
        findings.append(
            Finding(
                "Wiman",
                check_wiman(tv.g, tv.n),
                f"n = {tv.n} vs bound {4 * tv.g + 2}",
            )
        )
        harvey = check_harvey(tv)
        for key, ok in harvey.items():
            findings.append(Finding(f"Harvey {key.replace('_', '-')}", ok, ""))
    elif tv.g == 1:
        lams = tuple(sorted(tv.branch_indices()))
        free = tv.g_bar == 1 and not lams
        euclidean = tv.g_bar == 0 and _TORUS_SIGNATURES.get(tv.n) == lams
        findings.append(
            Finding(
                "torus signature",
                free or euclidean,
                f"g_bar = {tv.g_bar}, n = {tv.n}, indices {list(lams)}",
            )
        )
    else:
        lams = tuple(sorted(tv.branch_indices()))
        trivial = tv.n == 1 and not lams
        rotation = tv.n >= 2 and lams == (tv.n, tv.n)
        findings.append(
            Finding(
                "sphere rotation",
                tv.g_bar == 0 and (trivial or rotation),
                f"g_bar = {tv.g_bar}, n = {tv.n}, indices {list(lams)}",
            )
        )

    return ValidationReport(tuple(findings))


# ---------------------------------------------------------------------------
# generator change and enumeration
# ---------------------------------------------------------------------------

def units_mod(n: int) -> tuple[int, ...]:
    """The units of ZZ/n, i.e. residues coprime to n, in increasing order."""
    return tuple(u for u in range(1, n + 1) if math.gcd(u, n) == 1)


def generator_change(tv: TotalValency, u: int) -> TotalValency:
    """Replace the generating automorphism phi by phi^u (u a unit mod n).

    Each valency transforms by sigma -> u * sigma (mod lambda); lambda = 1
    entries are fixed.  The resulting list is re-sorted by value so that
    generator change acts on canonical representatives.
    """
    if math.gcd(u, tv.n) != 1:
        raise ValueError(f"{u} is not a unit modulo {tv.n}")
    moved = [
        Valency(u * v.sigma % v.lam, v.lam, v.point_class) if v.lam > 1 else v
        for v in tv.valencies
    ]
    moved.sort(key=lambda v: v.value)
    return TotalValency(tv.g, tv.n, tv.g_bar, tuple(moved))


def _branch_index_multisets(
    budget: Rational, divisors: Sequence[int], start: int = 0
) -> Iterator[tuple[int, ...]]:
    """Non-decreasing tuples over ``divisors`` with sum of (1 - 1/lam) = budget."""
    if budget == 0:
        yield ()
        return
    for i in range(start, len(divisors)):
        lam = divisors[i]
        term = 1 - Fraction(1, lam)
        if term > budget:
            break
        for rest in _branch_index_multisets(budget - term, divisors, i):
            yield (lam,) + rest


def enumerate_admissible(
    g: int, *, collapse: bool = False, genus_cap: int = 8
) -> list[TotalValency]:
    """All admissible branch data (g_bar, n, {sigma_i/lambda_i}) at genus g >= 2.

    Runs over 2 <= n <= 4g + 2 (the order bound makes the search finite),
    quotient genera compatible with the Hurwitz formula, branch indices among
    the divisors of n, and numerators filtered by integrality; each candidate
    must pass ``validate_total_valency``.  Valency multisets are canonicalized
    by sorting; the output is ordered by (n, g_bar, valency values).

    With ``collapse=True``, data equivalent under generator change (a unit
    u mod n acting by sigma -> u*sigma mod lambda) are represented once, by
    the lexicographically least member of the orbit.

    ``genus_cap`` bounds the search size; genera beyond it are refused.
    """
    if g < 2:
        raise ValueError(f"enumeration is defined for g >= 2, got g = {g}")
    if g > genus_cap:
        raise ValueError(
            f"genus {g} exceeds the configured cap {genus_cap}; raise genus_cap "
            "explicitly if the search size is acceptable"
        )

    results: list[TotalValency] = []
    for n in range(2, 4 * g + 2 + 1):
        divisors = [d for d in range(2, n + 1) if n % d == 0]
        for g_bar in range(0, g + 1):
            budget = Fraction(2 * (g - 1), n) - (2 * g_bar - 2)
            if budget < 0:
                continue
            for lams in _branch_index_multisets(budget, divisors):
                # quick reject before the sigma loop: the lcm conditions
                # depend on the indices alone
                probe = TotalValency(
                    g, n, g_bar, tuple(Valency(1 if lam > 1 else 0, lam) for lam in lams)
                )
                if not all(check_harvey(probe).values()):
                    continue
                seen: set[tuple[Rational, ...]] = set()
                unit_lists = [units_mod(lam) for lam in lams]
                for sigmas in itertools.product(*unit_lists):
                    values = tuple(
                        sorted(Fraction(s, lam) for s, lam in zip(sigmas, lams))
                    )
                    if values in seen:
                        continue
                    seen.add(values)
                    tv = TotalValency(
                        g,
                        n,
                        g_bar,
                        tuple(Valency(v.numerator, v.denominator) for v in values),
                    )
                    if validate_total_valency(tv).ok:
                        results.append(tv)

    results.sort(key=lambda tv: (tv.n, tv.g_bar, tv.sorted_values()))
    if collapse:
        results = _collapse_generator_orbits(results)
    return results


def _collapse_generator_orbits(entries: list[TotalValency]) -> list[TotalValency]:
    """Keep one representative per generator-change orbit: the member whose
    sorted valency values are lexicographically least."""
    kept = []
    for tv in entries:
        orbit_min = min(
            generator_change(tv, u).sorted_values() for u in units_mod(tv.n)
        )
        if tv.sorted_values() == orbit_min:
            kept.append(tv)
    return kept
