"""Richelot (2,2)-isogenies between Jacobians of genus-2 curves.

A factorization of the monic sextic f into three monic quadratics
f = A B C picks a (2,2)-subgroup of the Jacobian; there are 15 of them,
one per way of pairing the six roots. Writing [P, Q] = P'Q - PQ' for the
bracket of two quadratics, the quotient abelian surface is the Jacobian of

    delta y^2 = [A, B](x) [A, C](x) [B, C](x),

where delta = det of the coefficient matrix of (A, B, C) in the basis
(1, x, x^2). When delta vanishes the quotient splits as a product of two
elliptic curves and there is no genus-2 image; that case is reported as a
split marker rather than an error. Otherwise the right side is rescaled to
a monic sextic model (the constant is absorbed into a quadratic twist,
which does not move the absolute invariants).

The dual isogeny is induced by the bracket triple itself: applying the
construction to the image with factorization ([A,B], [A,C], [B,C])
(monically normalized) recovers a curve isomorphic to the start, which is
how ``dual_triple`` is meant to be used.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from mpmath import mp, mpc, mpf

import mpmath

from .exactnum import PrecisionError, Scalar, WORK_GUARD, to_mpc, tolerance
from .g2curve import Genus2Curve, IgusaTriple, absolute_igusa

Quadratic = Tuple[mpc, mpc, mpc]  # (c0, c1, c2), constant first


@dataclass(frozen=True)
class QuadraticTriple:
    """Three monic quadratics whose product is a sextic model."""

    quads: Tuple[Quadratic, Quadratic, Quadratic]
    prec: int

    def __post_init__(self) -> None:
        quads = tuple(
            tuple(to_mpc(c, self.prec + WORK_GUARD) for c in q) for q in self.quads
        )
        if len(quads) != 3 or any(len(q) != 3 for q in quads):
            raise ValueError("expected three quadratics with three coefficients each")
        for q in quads:
            if q[2] != 1:
                raise ValueError("triple quadratics must be monic")
        object.__setattr__(self, "quads", quads)

    def product_coeffs(self) -> Tuple[mpc, ...]:
        with mp.workprec(self.prec + WORK_GUARD):
            acc = [mpc(1)]
            for q in self.quads:
                nxt = [mpc(0)] * (len(acc) + 2)
                for i, c in enumerate(acc):
                    for j, d in enumerate(q):
                        nxt[i + j] += c * d
                acc = nxt
            return tuple(acc)


@dataclass(frozen=True)
class RichelotStep:
    """One (2,2)-isogeny datum: the kernel triple, delta, and the image.

    ``image`` is None exactly when delta vanishes to tolerance, meaning the
    quotient is a product of elliptic curves (split marker).
    """

    triple: QuadraticTriple
    delta: mpc
    image: Optional[Genus2Curve]

    @property
    def is_split(self) -> bool:
        return self.image is None


@dataclass(frozen=True)
class IsogenyRecord:
    """Invariant summary of one step out of a curve."""

    index: int
    triple: QuadraticTriple
    delta: mpc
    invariants: Optional[IgusaTriple]

    @property
    def is_split(self) -> bool:
        return self.invariants is None


def pair_partitions_of_six() -> List[Tuple[Tuple[int, int], Tuple[int, int], Tuple[int, int]]]:
    """The 15 pairings of {0..5}, in a fixed deterministic order."""

    def rec(items: List[int]):
        if not items:
            return [()]
        first, rest = items[0], items[1:]
        out = []
        for i, second in enumerate(rest):
            remaining = rest[:i] + rest[i + 1:]
            for sub in rec(remaining):
                out.append((((first, second),) + sub))
        return out

    return rec(list(range(6)))


def complex_roots(curve: Genus2Curve, prec: int) -> Tuple[mpc, ...]:
    """The six roots at precision ``prec``, certified and deterministically sorted.

    Residuals are checked against 2**(-prec/2) relative to the coefficient
    and root scale; roots closer than that tolerance raise PrecisionError.
    Sorting is lexicographic by (real, imaginary).
    """
    work = prec + WORK_GUARD
    with mp.workprec(work):
        coeffs_desc = [to_mpc(c, work) for c in reversed(curve.coeffs)]
        try:
            roots = mp.polyroots(coeffs_desc, maxsteps=200, extraprec=prec // 2 + 60)
        except mpmath.libmp.NoConvergence as exc:
            raise PrecisionError("root finding did not converge; raise the precision") from exc
        tol = tolerance(prec)
        coeff_scale = max([mpf(1)] + [abs(c) for c in coeffs_desc])
        for r in roots:
            residual = abs(_eval_desc(coeffs_desc, r))
            scale = coeff_scale * max(mpf(1), abs(r)) ** 6
            if residual > tol * scale:
                raise PrecisionError("root residual exceeds the certification tolerance")
        for i in range(6):
            for j in range(i + 1, 6):
                sep = abs(roots[i] - roots[j])
                if sep <= tol * max(mpf(1), abs(roots[i]), abs(roots[j])):
                    raise PrecisionError("roots indistinguishable at this precision")
        ordered = sorted(roots, key=lambda z: (z.real, z.imag))
        return tuple(mpc(r) for r in ordered)


def _eval_desc(coeffs_desc: Sequence[mpc], x: mpc) -> mpc:
    acc = mpc(0)
    for c in coeffs_desc:
        acc = acc * x + c
    return acc


def enumerate_factorizations(curve: Genus2Curve, prec: int) -> Tuple[QuadraticTriple, ...]:
    """The 15 monic quadratic factorizations of f, in canonical order.

    Roots are sorted deterministically, so the k-th triple always pairs the
    same root indices; each quadratic is (x - r)(x - s) expanded.
    """
    roots = complex_roots(curve, prec)
    with mp.workprec(prec + WORK_GUARD):
        triples: List[QuadraticTriple] = []
        for pairing in pair_partitions_of_six():
            quads = []
            for (i, j) in pairing:
                r, s = roots[i], roots[j]
                quads.append((r * s, -(r + s), mpc(1)))
            triples.append(QuadraticTriple(tuple(quads), prec))
        return tuple(triples)


def bracket(a: Sequence[Scalar], b: Sequence[Scalar], prec: int = 300) -> Quadratic:
    """[A, B] = A'B - AB' for quadratics, constant coefficient first.

    For A = a0 + a1 x + a2 x^2 and B likewise this is
    (a1 b0 - a0 b1) + 2 (a2 b0 - a0 b2) x + (a2 b1 - a1 b2) x^2.
    The result can degenerate to lower degree (for example when A and B are
    both monic with equal linear coefficients).
    """
    with mp.workprec(prec + WORK_GUARD):
        a0, a1, a2 = (to_mpc(c, prec + WORK_GUARD) for c in a)
        b0, b1, b2 = (to_mpc(c, prec + WORK_GUARD) for c in b)
        return (
            a1 * b0 - a0 * b1,
            2 * (a2 * b0 - a0 * b2),
            a2 * b1 - a1 * b2,
        )


def richelot_delta(triple: QuadraticTriple) -> mpc:
    """det of the 3x3 coefficient matrix of (A, B, C) in basis (1, x, x^2)."""
    (a0, a1, a2), (b0, b1, b2), (c0, c1, c2) = triple.quads
    with mp.workprec(triple.prec + WORK_GUARD):
        return (
            a0 * (b1 * c2 - b2 * c1)
            - a1 * (b0 * c2 - b2 * c0)
            + a2 * (b0 * c1 - b1 * c0)
        )


def richelot_image(triple: QuadraticTriple, prec: Optional[int] = None) -> RichelotStep:
    """Apply one (2,2)-isogeny step to a factorization triple.

    Returns a split marker when delta vanishes to tolerance (relative to
    the coefficient scale of the triple). Otherwise the image sextic
    [A,B][A,C][B,C] is renormalized monic; if its leading coefficient
    degenerates (a bracket drops degree), the model is first moved by an
    integer Moebius substitution x -> t + 1/x, which changes neither the
    isomorphism class nor the invariants.
    """
    p = prec if prec is not None else triple.prec
    with mp.workprec(p + WORK_GUARD):
        delta = richelot_delta(triple)
        coeff_scale = max([mpf(1)] + [abs(c) for q in triple.quads for c in q])
        if abs(delta) <= tolerance(p) * coeff_scale**3:
            return RichelotStep(triple, delta, None)
        a, b, c = triple.quads
        g = _poly_mul3(bracket(a, b, p), bracket(a, c, p), bracket(b, c, p))
        gscale = max([mpf(1)] + [abs(x) for x in g])
        if abs(g[6]) <= tolerance(p) * gscale:
            g = _restore_degree(g, p)
        lead = g[6]
        monic = tuple(mpc(x / lead) for x in g[:6]) + (mpc(1),)
        return RichelotStep(triple, delta, Genus2Curve(monic, p))


def _poly_mul3(q1: Quadratic, q2: Quadratic, q3: Quadratic) -> Tuple[mpc, ...]:
    def mul(u: Sequence[mpc], v: Sequence[mpc]) -> List[mpc]:
        out = [mpc(0)] * (len(u) + len(v) - 1)
        for i, x in enumerate(u):
            for j, y in enumerate(v):
                out[i + j] += x * y
        return out

    return tuple(mul(mul(list(q1), list(q2)), list(q3)))


def _restore_degree(g: Sequence[mpc], prec: int) -> Tuple[mpc, ...]:
    """Moebius-move a degenerate (degree < 6) image sextic back to degree 6.

    Substitutes x -> t + 1/x and clears denominators, giving coefficient
    reversal of g(x + t); t is a small integer with g(t) well away from 0.
    """
    tol = tolerance(prec)
    gscale = max([mpf(1)] + [abs(x) for x in g])
    best_t, best_val = None, mpf(0)
    for t in (0, 1, -1, 2, -2, 3, -3, 4, -4):
        val = abs(_eval_desc(list(reversed(list(g))), mpc(t)))
        if val > best_val:
            best_t, best_val = t, val
    if best_t is None or best_val <= tol * gscale:
        raise PrecisionError("could not renormalize a degenerate image model")
    shifted = list(g)
    # Taylor shift: coefficients of g(x + t) via repeated synthetic addition
    t = mpc(best_t)
    n = len(shifted)
    for i in range(n):
        for j in range(n - 2, i - 1, -1):
            shifted[j] += t * shifted[j + 1]
    return tuple(reversed(shifted))


def dual_triple(step: RichelotStep) -> QuadraticTriple:
    """The factorization of the image induced by the bracket quadratics.

    Normalizes ([A,B], [A,C], [B,C]) monic; their product is then exactly
    the image's monic model, and applying ``richelot_image`` to the result
    realizes the dual isogeny (so invariants return to the source curve).
    Degenerate brackets raise PrecisionError; use a transformed model then.
    """
    if step.is_split:
        raise ValueError("split steps have no genus-2 dual factorization")
    p = step.triple.prec
    with mp.workprec(p + WORK_GUARD):
        a, b, c = step.triple.quads
        quads = []
        tol = tolerance(p)
        for u, v in ((a, b), (a, c), (b, c)):
            q = bracket(u, v, p)
            scale = max([mpf(1)] + [abs(x) for x in q])
            if abs(q[2]) <= tol * scale:
                raise PrecisionError("degenerate bracket: dual factorization has no monic model")
            quads.append((q[0] / q[2], q[1] / q[2], mpc(1)))
        return QuadraticTriple(tuple(quads), p)


def all_isogenous_invariants(curve: Genus2Curve, prec: int) -> Tuple[IsogenyRecord, ...]:
    """Invariant triples of all 15 (2,2)-isogenous surfaces (or split markers)."""
    records: List[IsogenyRecord] = []
    for k, triple in enumerate(enumerate_factorizations(curve, prec)):
        step = richelot_image(triple, prec)
        if step.is_split:
            records.append(IsogenyRecord(k, triple, step.delta, None))
        else:
            records.append(IsogenyRecord(k, triple, step.delta, absolute_igusa(step.image)))
    return tuple(records)
