"""Independent oracles used by the test suite and the derivation scripts.

The Igusa-Clebsch invariants of a monic separable sextic f with roots
x_1..x_6 are defined through root differences. Writing (ij) for
(x_i - x_j)^2:

* I2  = sum over the 15 ways to split {1..6} into three pairs of
        (12)(34)(56) with each factor squared,
* I4  = sum over the 10 splits into two triples {t, u} of tri(t) tri(u),
        where tri({i,j,k}) = (ij)(ik)(jk),
* I6  = sum over the 60 pairs (split into triples, bijection between them)
        of tri(t) tri(u) times the product of the three squared cross
        differences picked out by the bijection,
* I10 = product of all 15 squared differences (the discriminant).

These sums are evaluated literally here, which requires the roots. The
package itself uses coefficient formulas frozen in g2modpoly/igusa_data.py;
this module is the independent cross-check those formulas were derived from
and are tested against.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import List, Sequence, Tuple


def pair_partitions(items: Sequence[int]) -> List[List[Tuple[int, int]]]:
    """All partitions of an even-sized set into unordered pairs."""
    items = list(items)
    if not items:
        return [[]]
    first = items[0]
    rest = items[1:]
    result = []
    for i, second in enumerate(rest):
        remaining = rest[:i] + rest[i + 1:]
        for sub in pair_partitions(remaining):
            result.append([(first, second)] + sub)
    return result


def triple_partitions(items: Sequence[int]) -> List[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """All 10 unordered splits of a 6-element set into two triples."""
    items = list(items)
    first = items[0]
    out = []
    for pair in itertools.combinations(items[1:], 2):
        t = (first,) + pair
        u = tuple(x for x in items if x not in t)
        out.append((t, u))
    return out


def igusa_clebsch_from_roots(roots: Sequence) -> Tuple:
    """(I2, I4, I6, I10) evaluated from the six roots, exactly."""
    if len(roots) != 6:
        raise ValueError("need exactly six roots")
    idx = range(6)
    d = {}
    for i, j in itertools.combinations(idx, 2):
        d[(i, j)] = (roots[i] - roots[j]) ** 2
        d[(j, i)] = d[(i, j)]

    def tri(t):
        i, j, k = t
        return d[(i, j)] * d[(i, k)] * d[(j, k)]

    i2 = sum(
        d[p[0]] * d[p[1]] * d[p[2]]
        for p in pair_partitions(list(idx))
    )
    i4 = sum(tri(t) * tri(u) for t, u in triple_partitions(list(idx)))
    i6 = 0
    for t, u in triple_partitions(list(idx)):
        base = tri(t) * tri(u)
        for perm in itertools.permutations(u):
            cross = d[(t[0], perm[0])] * d[(t[1], perm[1])] * d[(t[2], perm[2])]
            i6 += base * cross
    i10 = 1
    for i, j in itertools.combinations(idx, 2):
        i10 *= d[(i, j)]
    return i2, i4, i6, i10


def coeffs_from_roots(roots: Sequence) -> List:
    """Monic polynomial coefficients, constant first, from its roots."""
    coeffs = [1]
    for r in roots:
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= c * r
        coeffs = nxt
    return coeffs


def absolute_igusa_from_roots(roots: Sequence) -> Tuple:
    """(j1, j2, j3) = (I2^5, I2^3 I4, I2^2 I6) / I10 from the roots."""
    i2, i4, i6, i10 = igusa_clebsch_from_roots(roots)
    if isinstance(i10, (int, Fraction)):
        i2, i4, i6, i10 = Fraction(i2), Fraction(i4), Fraction(i6), Fraction(i10)
    return (i2**5 / i10, i2**3 * i4 / i10, i2**2 * i6 / i10)
