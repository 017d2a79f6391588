"""Genus-2 curves y^2 = f(x) with monic sextic f, and their Igusa invariants.

A curve is stored by the seven coefficients of f, constant term first,
leading coefficient exactly 1. Coefficients are either all rational
(Fraction) for exact work or all complex (mpc) at a stated precision.

Invariants come in two flavours:

* ``igusa_clebsch``: the classical quadruple (I2, I4, I6, I10) of weights
  (2, 4, 6, 10) in the coefficients of a general sextic, normalized so that
  they agree with the symmetric root-difference sums (I10 is the
  discriminant of the monic sextic). I2, I4, I6 are evaluated from frozen
  integer coefficient formulas (igusa_data.py); I10 from a Sylvester
  resultant. All four are exact over the rationals.
* ``absolute_igusa``: the weight-zero triple
  j1 = I2^5/I10, j2 = I2^3 I4/I10, j3 = I2^2 I6/I10.
  These are invariant under Moebius changes of the x coordinate and under
  quadratic twists, so they classify the curve up to isomorphism over an
  algebraically closed field (away from I2 = 0).

``transform_model`` applies a fractional-linear substitution to x and
renormalizes to a monic model, absorbing the leading coefficient into a
twist; the absolute triple is unchanged.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from mpmath import mp, mpc, mpf

from .exactnum import (
    PrecisionError,
    Scalar,
    WORK_GUARD,
    format_rational,
    parse_rational,
    to_mpc,
    tolerance,
)
from .igusa_data import I2_TERMS, I4_TERMS, I6_TERMS

DEFAULT_PREC = 300


class NotMonicError(ValueError):
    """The sextic model is not monic of degree 6."""


class SingularCurveError(ValueError):
    """The sextic has a repeated root, so y^2 = f(x) is not a genus-2 curve."""


@dataclass(frozen=True)
class Genus2Curve:
    """y^2 = f(x) with f monic of degree 6, coefficients constant first."""

    coeffs: Tuple[Scalar, ...]
    prec: Optional[int] = None

    def __post_init__(self) -> None:
        if len(self.coeffs) != 7:
            raise NotMonicError("expected 7 coefficients for a sextic")

    @property
    def is_exact(self) -> bool:
        return all(isinstance(c, (Fraction, int)) for c in self.coeffs)

    def f(self, x: Scalar) -> Scalar:
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        return acc

    def working_prec(self) -> int:
        return self.prec if self.prec is not None else DEFAULT_PREC


@dataclass(frozen=True)
class IgusaTriple:
    """Absolute Igusa invariants (j1, j2, j3); exact or at a stated precision."""

    j1: Scalar
    j2: Scalar
    j3: Scalar

    def as_tuple(self) -> Tuple[Scalar, Scalar, Scalar]:
        return (self.j1, self.j2, self.j3)

    @property
    def is_exact(self) -> bool:
        return all(isinstance(v, (Fraction, int)) for v in self.as_tuple())


def validate_curve(coeffs: Sequence[Union[Scalar, str]], prec: Optional[int] = None) -> Genus2Curve:
    """Build a curve after checking monicity and separability.

    Rational input is checked exactly (discriminant nonzero); complex input
    is checked numerically at ``prec`` via pairwise root distances.
    """
    if len(coeffs) != 7:
        raise NotMonicError(f"expected 7 coefficients, got {len(coeffs)}")
    parsed: List[Scalar] = []
    exact = True
    for c in coeffs:
        if isinstance(c, str):
            parsed.append(parse_rational(c))
        elif isinstance(c, (int, Fraction)):
            parsed.append(Fraction(c))
        else:
            parsed.append(c)
            exact = False
    if exact:
        if parsed[6] != 1:
            raise NotMonicError("leading coefficient must be exactly 1")
        curve = Genus2Curve(tuple(parsed), prec)
        if igusa_clebsch(curve)[3] == 0:
            raise SingularCurveError("sextic has a repeated root (discriminant is zero)")
        return curve
    p = prec if prec is not None else DEFAULT_PREC
    with mp.workprec(p + WORK_GUARD):
        parsed = [to_mpc(c, p + WORK_GUARD) for c in parsed]
        lead = parsed[6]
        tol = tolerance(p)
        if abs(lead - 1) > tol:
            raise NotMonicError("leading coefficient must be 1 within tolerance")
        parsed[6] = mpc(1)
    curve = Genus2Curve(tuple(parsed), p)
    # separability via root distances, delegated to the root finder
    from .richelot import complex_roots

    roots = complex_roots(curve, p)
    with mp.workprec(p + WORK_GUARD):
        scale = max([mpf(1)] + [abs(r) for r in roots])
        for i in range(6):
            for j in range(i + 1, 6):
                if abs(roots[i] - roots[j]) <= tol * scale:
                    raise SingularCurveError("roots closer than the resolution tolerance")
    return curve


def _eval_terms(terms, cs):
    """Evaluate a frozen exponent-vector table at coefficients c0..c5."""
    total = None
    for mono, coeff in terms.items():
        acc = None
        for e, c in zip(mono, cs):
            if e:
                part = c**e
                acc = part if acc is None else acc * part
        term = coeff if acc is None else coeff * acc
        total = term if total is None else total + term
    return total


def _resultant_f_fprime(coeffs: Sequence[Scalar], exact: bool, prec: int) -> Scalar:
    """Res(f, f') for monic sextic f, coefficients constant first."""
    size = 11
    if exact:
        from .exactnum import det_fraction

        f_desc = list(reversed(list(coeffs)))
        fp_desc = [(6 - i) * f_desc[i] for i in range(6)]
        rows = []
        for i in range(5):
            rows.append([0] * i + f_desc + [0] * (size - 7 - i))
        for i in range(6):
            rows.append([0] * i + fp_desc + [0] * (size - 6 - i))
        return det_fraction(rows)
    with mp.workprec(prec + WORK_GUARD):
        f_desc = [to_mpc(c, prec + WORK_GUARD) for c in reversed(list(coeffs))]
        fp_desc = [(6 - i) * f_desc[i] for i in range(6)]
        rows = []
        for i in range(5):
            rows.append([mpc(0)] * i + f_desc + [mpc(0)] * (size - 7 - i))
        for i in range(6):
            rows.append([mpc(0)] * i + fp_desc + [mpc(0)] * (size - 6 - i))
        a = [[to_mpc(x, prec + WORK_GUARD) for x in row] for row in rows]
        det = mpc(1)
        for k in range(size):
            piv = max(range(k, size), key=lambda i: abs(a[i][k]))
            if a[piv][k] == 0:
                return mpc(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det *= a[k][k]
            for i in range(k + 1, size):
                if a[i][k] != 0:
                    fct = a[i][k] / a[k][k]
                    a[i] = [x - fct * y for x, y in zip(a[i], a[k])]
        return det


def igusa_clebsch(curve: Genus2Curve) -> Tuple[Scalar, Scalar, Scalar, Scalar]:
    """(I2, I4, I6, I10); exact Fractions for exact curves, mpc otherwise."""
    cs = curve.coeffs[:6]
    exact = curve.is_exact
    prec = curve.working_prec()
    if exact:
        cs = tuple(Fraction(c) for c in cs)
        i2 = Fraction(_eval_terms(I2_TERMS, cs))
        i4 = Fraction(_eval_terms(I4_TERMS, cs))
        i6 = Fraction(_eval_terms(I6_TERMS, cs))
        i10 = -_resultant_f_fprime(curve.coeffs, True, prec)
        return (i2, i4, i6, Fraction(i10))
    with mp.workprec(prec + WORK_GUARD):
        cs = tuple(to_mpc(c, prec + WORK_GUARD) for c in cs)
        i2 = _eval_terms(I2_TERMS, cs)
        i4 = _eval_terms(I4_TERMS, cs)
        i6 = _eval_terms(I6_TERMS, cs)
        i10 = -_resultant_f_fprime(curve.coeffs, False, prec)
        return (mpc(i2), mpc(i4), mpc(i6), mpc(i10))


def absolute_igusa(curve: Genus2Curve) -> IgusaTriple:
    """The weight-zero triple (I2^5, I2^3 I4, I2^2 I6) / I10."""
    i2, i4, i6, i10 = igusa_clebsch(curve)
    if curve.is_exact:
        if i10 == 0:
            raise SingularCurveError("discriminant is zero")
        return IgusaTriple(i2**5 / i10, i2**3 * i4 / i10, i2**2 * i6 / i10)
    prec = curve.working_prec()
    with mp.workprec(prec + WORK_GUARD):
        scale = max([mpf(1)] + [abs(c) for c in curve.coeffs]) ** 10
        if abs(i10) <= tolerance(prec) * scale:
            raise SingularCurveError("discriminant vanishes at working precision")
    with mp.workprec(prec + WORK_GUARD):
        return IgusaTriple(i2**5 / i10, i2**3 * i4 / i10, i2**2 * i6 / i10)


def transform_model(curve: Genus2Curve, g: Sequence[Sequence[Union[Fraction, int]]],
                    prec: Optional[int] = None) -> Genus2Curve:
    """Apply x -> (a x + b)/(c x + d) and renormalize to a monic model.

    ``g`` is a 2x2 matrix ((a, b), (c, d)) with nonzero determinant. The
    substituted sextic is (c x + d)^6 f((a x + b)/(c x + d)); its leading
    coefficient is absorbed into the quadratic twist, which leaves the
    absolute invariants unchanged. Degenerate substitutions (the image of
    infinity is a root of f, dropping the degree) are rejected.
    """
    (a, b), (c, d) = g
    a, b, c, d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)
    if a * d - b * c == 0:
        raise ValueError("substitution matrix must be invertible")
    exact = curve.is_exact
    p = prec if prec is not None else curve.working_prec()

    def poly_mul(u, v, zero):
        out = [zero] * (len(u) + len(v) - 1)
        for i, x in enumerate(u):
            for j, y in enumerate(v):
                out[i + j] += x * y
        return out

    def substitute(cs, num, den, zero, one):
        # sum_i c_i (a x + b)^i (c x + d)^(6 - i)
        num_pows = [[one]]
        den_pows = [[one]]
        for _ in range(6):
            num_pows.append(poly_mul(num_pows[-1], num, zero))
            den_pows.append(poly_mul(den_pows[-1], den, zero))
        acc = [zero] * 7
        for i, coeff in enumerate(cs):
            if coeff == 0:
                continue
            term = poly_mul(num_pows[i], den_pows[6 - i], zero)
            for k, val in enumerate(term):
                acc[k] += coeff * val
        return acc

    if exact:
        acc = substitute([Fraction(x) for x in curve.coeffs],
                         [Fraction(b), Fraction(a)], [Fraction(d), Fraction(c)],
                         Fraction(0), Fraction(1))
        lead = acc[6]
        if lead == 0:
            raise ValueError("substitution drops the degree (image of infinity is a root)")
        monic = tuple(x / lead for x in acc)
        return Genus2Curve(monic, curve.prec)
    with mp.workprec(p + WORK_GUARD):
        acc = substitute([to_mpc(x, p + WORK_GUARD) for x in curve.coeffs],
                         [to_mpc(b, p + WORK_GUARD), to_mpc(a, p + WORK_GUARD)],
                         [to_mpc(d, p + WORK_GUARD), to_mpc(c, p + WORK_GUARD)],
                         mpc(0), mpc(1))
        lead = acc[6]
        scale = max([mpf(1)] + [abs(x) for x in acc])
        if abs(lead) <= tolerance(p) * scale:
            raise ValueError("substitution drops the degree (image of infinity is a root)")
        monic = tuple(mpc(x / lead) for x in acc)
        monic = monic[:6] + (mpc(1),)
        return Genus2Curve(monic, p)


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def curve_to_json(curve: Genus2Curve) -> dict:
    if not curve.is_exact:
        raise ValueError("only exact curves serialize to JSON")
    return {"f": [format_rational(Fraction(c)) for c in curve.coeffs]}


def curve_from_json(doc: dict, prec: Optional[int] = None) -> Genus2Curve:
    if not isinstance(doc, dict) or "f" not in doc:
        raise ValueError('curve JSON must be an object with an "f" list')
    return validate_curve([str(c) for c in doc["f"]], prec)


def load_curve(path: str, prec: Optional[int] = None) -> Genus2Curve:
    with open(path) as fh:
        return curve_from_json(json.load(fh), prec)
