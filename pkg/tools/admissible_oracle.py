#!/usr/bin/env python3
"""Brute-force enumeration of admissible cyclic branch data.

Independent oracle for the library's admissibility enumeration: this script
shares no code with the package.  It enumerates, for a given genus g >= 2,
every tuple (n, g_bar, multiset of sigma_i/lambda_i) with n >= 2 that satisfies

  (a1) the Hurwitz formula   2(g-1)/n = 2(g_bar-1) + sum_i (1 - 1/lambda_i),
  (a2) integrality           sum_i sigma_i/lambda_i in Z,
  (a3) the bound             n <= 4g+2  (used as the search cap),
  (a4) the lcm conditions on the branch indices,

by raw search: lambda_i ranges over 2..n without assuming divisibility (the
conditions themselves cut the search down), sigma_i over the units mod
lambda_i, and results are deduplicated as sorted multisets of reduced
fractions.

Output is canonical JSON, written to tests/golden/admissible_g<g>.json.  The
written files are frozen: the test suite compares against them byte for byte
and never regenerates them.

Usage: python tools/admissible_oracle.py [g ...]   (default: 2 3)
"""

import itertools
import json
import math
import sys
from fractions import Fraction
from pathlib import Path


def lambda_multisets(budget, lam_max, lam_min=2):
    """Yield non-decreasing tuples of integers in [lam_min, lam_max] with
    sum of (1 - 1/lam) equal to budget exactly."""
    if budget == 0:
        yield ()
        return
    if budget < 0:
        return
    for lam in range(lam_min, lam_max + 1):
        term = 1 - Fraction(1, lam)
        # remaining entries are >= lam, so each eats at least `term`
        if term > budget:
            break
        for rest in lambda_multisets(budget - term, lam_max, lam):
            yield (lam,) + rest


def harvey_ok(lams, g_bar, n):
    m = math.lcm(*lams) if lams else 1
    # (a4-1) omitting any one branch index leaves the lcm unchanged
    for i in range(len(lams)):
        others = lams[:i] + lams[i + 1:]
        if (math.lcm(*others) if others else 1) != m:
            return False
    # (a4-2)
    if n % m != 0:
        return False
    if g_bar == 0 and m != n:
        return False
    # (a4-3)
    s = len(lams)
    if s == 1:
        return False
    if g_bar == 0 and s < 3:
        return False
    # (a4-4)
    if m % 2 == 0:
        two_part = m & -m  # largest power of 2 dividing m
        if sum(1 for lam in lams if lam % two_part == 0) % 2 != 0:
            return False
    return True


def sigma_multisets(lams):
    """All distinct sorted tuples of reduced fractions sigma/lambda with
    sigma a unit mod lambda and integral total sum."""
    choices = [
        [s for s in range(1, lam) if math.gcd(s, lam) == 1] for lam in lams
    ]
    seen = set()
    for sigmas in itertools.product(*choices):
        total = sum(Fraction(s, lam) for s, lam in zip(sigmas, lams))
        if total.denominator != 1:
            continue
        key = tuple(sorted(Fraction(s, lam) for s, lam in zip(sigmas, lams)))
        seen.add(key)
    return sorted(seen)


def enumerate_admissible(g):
    found = []
    for n in range(2, 4 * g + 2 + 1):          # (a3) caps the search
        for g_bar in range(0, g + 1):
            budget = Fraction(2 * (g - 1), n) - (2 * g_bar - 2)   # (a1)
            if budget < 0:
                continue
            for lams in lambda_multisets(budget, n):
                if not harvey_ok(lams, g_bar, n):
                    continue
                for vals in sigma_multisets(lams):
                    found.append((n, g_bar, vals))
    found.sort()
    return found


def to_document(g, found):
    return {
        "g": g,
        "count": len(found),
        "entries": [
            {
                "n": n,
                "g_bar": g_bar,
                "valencies": [f"{v.numerator}/{v.denominator}" for v in vals],
            }
            for (n, g_bar, vals) in found
        ],
    }


def main(argv):
    genera = [int(a) for a in argv] or [2, 3]
    out_dir = Path(__file__).resolve().parent.parent / "tests" / "golden"
    out_dir.mkdir(parents=True, exist_ok=True)
    for g in genera:
        doc = to_document(g, enumerate_admissible(g))
        path = out_dir / f"admissible_g{g}.json"
        path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
        print(f"g={g}: {doc['count']} admissible tuples -> {path}")


if __name__ == "__main__":
    main(sys.argv[1:])
