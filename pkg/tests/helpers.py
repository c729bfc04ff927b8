"""Shared independent oracles for the test suite.

These deliberately recompute things along different routes than the
library code: coefficientwise operators on raw series grids, explicit
enumeration of marked step pairs, and Newton's identities on Hermite
coefficients.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from random import Random

from ppmoments import AnsatzSum, PolyC, ansatz_to_series, g_series


def euler_grid(r, grid):
    """Coefficientwise Euler action: x^i y^j scales by (i-j)/2 - r."""
    return [[(Fraction(i - j, 2) - r) * grid[i][j]
             for j in range(len(grid[0]))]
            for i in range(len(grid))]


def direct_g_apply_grid(k, s, x_order, y_order, g_grid=None):
    """Evaluate the defining sum of the k-th splitting operator on series.

    Pairs [z^(j+1)] xG(x,y,z) with [z^j] of the Euler-shifted series of s,
    all through exact truncated grids; independent of the closed-form
    kernel used by g_apply.
    """
    h = ansatz_to_series(s, x_order, x_order)
    ek = euler_grid(k, h)
    if g_grid is None:
        g_grid = g_series(x_order, y_order, x_order + 1)
    out = [[Fraction(0)] * (y_order + 1) for _ in range(x_order + 1)]
    for i in range(x_order + 1):
        for j in range(y_order + 1):
            acc = Fraction(0)
            for i1 in range(1, i + 1):  # x*G carries at least one power of x
                for jp in range(0, i - i1 + 1):
                    gval = g_grid[i1 - 1][j][jp + 1]
                    if gval:
                        acc += gval * ek[i - i1][jp]
            out[i][j] = acc
    return out


def random_poly(rng: Random, max_deg: int = 3) -> PolyC:
    deg = rng.randint(0, max_deg)
    coeffs = [Fraction(rng.randint(-3, 3), rng.choice((1, 1, 2)))
              for _ in range(deg + 1)]
    return PolyC(coeffs)


def random_ansatz_sum(rng: Random) -> AnsatzSum:
    terms = []
    for _ in range(rng.randint(1, 3)):
        terms.append((random_poly(rng), rng.randint(0, 3), rng.randint(0, 3)))
    return AnsatzSum(terms)


def brute_marking_count(path, g: int) -> int:
    """Count marked pair sets by explicit enumeration and injections."""
    downs = [i for i, s in enumerate(path.steps) if s == -1]
    ups = [i for i, s in enumerate(path.steps) if s == 1]
    total = 0
    for chosen in itertools.combinations(downs, g):

        def injections(i, used):
            if i == g:
                return 1
            count = 0
            for u in ups:
                if u > chosen[i] and u not in used:
                    used.add(u)
                    count += injections(i + 1, used)
                    used.discard(u)
            return count

        total += injections(0, set())
    return total


def hermite_coeffs(n: int) -> list[int]:
    """Monic probabilists' Hermite polynomial, coefficients low to high."""
    prev, cur = [1], [0, 1]
    if n == 0:
        return prev
    for k in range(1, n):
        nxt = [0] + cur
        for i, v in enumerate(prev):
            nxt[i] -= k * v
        prev, cur = cur, nxt
    return cur


def power_sums(coeffs: list[int], upto: int) -> list[int]:
    """Power sums of the roots of a monic polynomial (Newton's identities)."""
    d = len(coeffs) - 1
    e = [(-1) ** i * coeffs[d - i] for i in range(d + 1)]
    p = [d]
    for k in range(1, upto + 1):
        s = 0
        for i in range(1, min(k - 1, d) + 1):
            s += (-1) ** (i - 1) * e[i] * p[k - i]
        if k <= d:
            s += (-1) ** (k - 1) * e[k] * k
        p.append(s)
    return p
