"""Point evaluations of the level-2 modular relations, and degree detection.

For a genus-2 curve C with absolute invariants (j1, j2, j3), the 15
(2,2)-isogenous surfaces have j1-invariants x_1..x_15. Two families of
univariate polynomials in X tie these together:

* ``evaluated_P2``: the monic degree-15 polynomial with the x_i as roots.
  For a curve defined over Q its coefficients are rational; they can be
  recovered exactly by continued-fraction reconstruction with precision
  escalation.
* ``evaluated_Ftilde`` (k = 2 or 3): the interpolation companion
  sum_i prod_{j != i} (X - x_j) * j_k(image_i), which satisfies
  Ftilde_k(x_i) = P'(x_i) j_k(image_i), so j_2 and j_3 of every image are
  read off from P and the two companions.

``l2_evaluate`` evaluates the split-locus polynomial deciding whether an
invariant triple belongs to a product of elliptic curves; its 34 terms ship
as a data file whose integrity (term count, leading term, checksum) is
enforced on load. ``degree_profile`` recovers the numerator/denominator
degrees of an unknown rational function from exact samples, which is how
the degree shape of such relations is measured experimentally.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from typing import Callable, List, Optional, Sequence, Tuple, Union

from mpmath import mp, mpc, mpf

from .exactnum import (
    ComplexPoly,
    MultiPoly,
    PrecisionError,
    WORK_GUARD,
    bareiss_det,
    mpf_to_fraction,
    rational_reconstruct,
    tolerance,
)
from .g2curve import Genus2Curve, IgusaTriple, absolute_igusa
from .richelot import all_isogenous_invariants

DEFAULT_PREC = 300
DEFAULT_DENOM_BOUND = 1 << 256
DEFAULT_PREC_CAP = 2000

#: Degree data of the full symbolic level-2 relation over Q(j1, j2, j3),
#: pinned as fixed reference targets.  Each coefficient of the degree-15
#: polynomial is a rational function of the invariants; the constant term
#: has numerator degree 60 and denominator degree 51 in j1, every
#: denominator has degree 42 in j2 and degree 30 in j3, and the constant
#: term's numerator alone holds 16795 monomials (coefficients with up to
#: ~200 decimal digits; tens of megabytes for the full system).  That
#: symbolic object is far beyond desk-scale recomputation; this package
#: works with point evaluations instead and records these values only so
#: that ``degree_profile`` results can be compared against the known shape.
FULL_P2_DEGREE_DATA = {
    "j1_constant_term_profile": (60, 51),
    "j2_denominator_degree": 42,
    "j3_denominator_degree": 30,
    "constant_term_monomials": 16795,
}

L2_TERM_COUNT = 34
L2_LEADING = ((5, 0, 0), Fraction(236196))
L2_CHECKSUM = "381246cd732442107201dd132ebf5462aa4b6ec4ebfd73ae739a3b0579ac741a"

_PREFILTER_PRIME = 2305843009213693951  # 2^61 - 1


class SplitInputError(ValueError):
    """The input curve is (2,2)-isogenous to a split surface, so the
    evaluated polynomial has a missing root and is not defined."""


class CollidingImagesError(PrecisionError):
    """Two image invariants coincide to tolerance; the construction needs
    higher precision (or the images genuinely collide)."""


class DataIntegrityError(ValueError):
    """A shipped data file failed its integrity checks."""


_l2_cache: Optional[MultiPoly] = None


def l2_poly() -> MultiPoly:
    """The split-locus polynomial, loaded once and integrity checked."""
    global _l2_cache
    if _l2_cache is None:
        with resources.as_file(resources.files("g2modpoly").joinpath("data/l2.terms")) as p:
            poly = MultiPoly.load(str(p), ("j1", "j2", "j3"))
        if len(poly) != L2_TERM_COUNT:
            raise DataIntegrityError(f"split-locus file has {len(poly)} terms, expected {L2_TERM_COUNT}")
        if poly.terms.get(L2_LEADING[0]) != L2_LEADING[1]:
            raise DataIntegrityError("split-locus leading term mismatch")
        if poly.checksum() != L2_CHECKSUM:
            raise DataIntegrityError("split-locus checksum mismatch")
        _l2_cache = poly
    return _l2_cache


def l2_evaluate(j: Union[IgusaTriple, Sequence],
                prec: int = DEFAULT_PREC) -> Union[Fraction, mpc]:
    """Evaluate the split-locus polynomial at an invariant triple.

    Exact Fraction arithmetic for rational triples (zero is then a proof of
    a split Jacobian); mpc at ``prec`` working bits otherwise.
    """
    if isinstance(j, IgusaTriple):
        point = j.as_tuple()
    else:
        point = tuple(j)
        if len(point) != 3:
            raise ValueError("expected a triple (j1, j2, j3)")
    point = tuple(Fraction(v) if isinstance(v, (int, Fraction)) else v for v in point)
    if all(isinstance(v, Fraction) for v in point):
        return l2_poly().evaluate(point)
    with mp.workprec(prec + WORK_GUARD):
        return l2_poly().evaluate(point)


# ---------------------------------------------------------------------------
# the evaluated modular polynomial and its companions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class EvaluatedModPoly:
    """P and its two companions at one curve, with optional exact coefficients.

    ``p2`` is monic of degree 15 with the image j1-invariants as roots;
    ``ftilde2``/``ftilde3`` have degree at most 14. ``rational_p2`` holds
    the 16 reconstructed rational coefficients of p2 (constant first) when
    reconstruction was requested and succeeded, else None. ``prec`` is the
    binary precision the stored complex data was computed at.
    """

    prec: int
    source: IgusaTriple
    p2: ComplexPoly
    ftilde2: ComplexPoly
    ftilde3: ComplexPoly
    rational_p2: Optional[Tuple[Fraction, ...]] = None


def _image_data(curve: Genus2Curve, prec: int):
    """j-invariants of the 15 images; raises on split or colliding images."""
    records = all_isogenous_invariants(curve, prec)
    split = [r.index for r in records if r.is_split]
    if split:
        raise SplitInputError(
            f"factorizations {split} give split quotients; the evaluated polynomial is undefined")
    xs = [r.invariants.j1 for r in records]
    j2s = [r.invariants.j2 for r in records]
    j3s = [r.invariants.j3 for r in records]
    tol = tolerance(prec)
    with mp.workprec(prec + WORK_GUARD):
        for i in range(15):
            for j in range(i + 1, 15):
                scale = max(mpf(1), abs(xs[i]), abs(xs[j]))
                if abs(xs[i] - xs[j]) <= tol * scale:
                    raise CollidingImagesError(
                        f"image invariants {i} and {j} collide at this precision")
    return xs, j2s, j3s


def _build(curve: Genus2Curve, prec: int) -> EvaluatedModPoly:
    xs, j2s, j3s = _image_data(curve, prec)
    with mp.workprec(prec + WORK_GUARD):
        p2 = ComplexPoly.from_roots(xs, prec)
        ft2: Optional[ComplexPoly] = None
        ft3: Optional[ComplexPoly] = None
        for i, x in enumerate(xs):
            q = p2.deflate(x)
            t2 = q.scale(j2s[i])
            t3 = q.scale(j3s[i])
            ft2 = t2 if ft2 is None else ft2.add(t2)
            ft3 = t3 if ft3 is None else ft3.add(t3)
    src = absolute_igusa(curve)
    return EvaluatedModPoly(prec=prec, source=src, p2=p2, ftilde2=ft2, ftilde3=ft3)


def evaluated_P2(curve: Genus2Curve, prec: int = DEFAULT_PREC, *,
                 reconstruct: bool = False,
                 denom_bound: int = DEFAULT_DENOM_BOUND,
                 prec_cap: int = DEFAULT_PREC_CAP) -> EvaluatedModPoly:
    """The evaluated degree-15 polynomial at ``curve``.

    With ``reconstruct`` (rational curves only) the coefficients are
    reconstructed as exact rationals with denominators up to
    ``denom_bound``; on failure the precision is doubled up to ``prec_cap``
    and the pipeline rerun. A successful reconstruction is certified by
    recomputing at twice the successful precision and comparing to the
    tolerance ``2**(-prec/2)`` relative; the result then carries
    ``rational_p2``. If every rung fails, the highest-precision complex
    result is returned with ``rational_p2 = None``.
    """
    if not reconstruct:
        return _build(curve, prec)
    if not curve.is_exact:
        raise ValueError("rational reconstruction needs an exact input curve")
    rungs = [prec]
    while rungs[-1] < prec_cap:
        rungs.append(min(2 * rungs[-1], prec_cap))
    result = None
    for q in rungs:
        result = _build(curve, q)
        coeffs = _reconstruct_coeffs(result.p2, q, denom_bound)
        if coeffs is None:
            continue
        check = _build(curve, 2 * q)
        if _certify(coeffs, check.p2, q):
            return EvaluatedModPoly(
                prec=q, source=result.source, p2=result.p2,
                ftilde2=result.ftilde2, ftilde3=result.ftilde3,
                rational_p2=tuple(coeffs),
            )
    return result


def _reconstruct_coeffs(p2: ComplexPoly, prec: int,
                        denom_bound: int) -> Optional[List[Fraction]]:
    """Rational candidates for every coefficient, or None to force escalation.

    Besides the convergent residual check, each candidate must sit within
    the unique-decoding radius 1/(2 B^2) of the approximation: two distinct
    fractions with denominators <= B differ by more than 1/B^2, so inside
    that radius the candidate is the only explanation with a legal
    denominator. Without this, a convergent of a higher-denominator true
    value can masquerade as a reconstruction at low precision.

    The radius test only means something when the approximation resolves
    below the radius in the first place (a coefficient of magnitude 2^s at
    p bits is only known to ~2^(s-p), and may even round to an exact
    integer); rungs whose resolution is coarser than the radius are
    rejected outright so the caller escalates.
    """
    tol = tolerance(prec)
    radius = Fraction(1, 2 * denom_bound * denom_bound)
    resolution = Fraction(1, 1 << max(prec - 2 * WORK_GUARD, 1))
    out: List[Fraction] = []
    with mp.workprec(prec + WORK_GUARD):
        for c in p2.coeffs:
            c = mpc(c)
            if abs(c.imag) > tol * max(mpf(1), abs(c.real)):
                return None
            mag = mpf_to_fraction(mpf(abs(c.real)))
            if resolution * max(Fraction(1), mag) > radius / 2:
                return None
            r = rational_reconstruct(c.real, denom_bound, prec)
            if r is None:
                return None
            if abs(mpf_to_fraction(mpf(c.real)) - r) > radius:
                return None
            out.append(r)
    return out


def _certify(coeffs: Sequence[Fraction], high: ComplexPoly, prec: int) -> bool:
    tol = tolerance(prec)
    with mp.workprec(high.prec + WORK_GUARD):
        for frac, c in zip(coeffs, high.coeffs):
            c = mpc(c)
            num = mpf(frac.numerator)
            den = mpf(frac.denominator)
            err = abs(num / den - c.real) + abs(c.imag)
            if err > tol * max(mpf(1), abs(c)):
                return False
    return True


def evaluated_Ftilde(curve: Genus2Curve, k: int, prec: int = DEFAULT_PREC) -> ComplexPoly:
    """The degree-14 companion carrying j_k of the images (k in {2, 3})."""
    if k not in (2, 3):
        raise ValueError("k must be 2 or 3")
    built = _build(curve, prec)
    return built.ftilde2 if k == 2 else built.ftilde3


@dataclass(frozen=True)
class CompanionReport:
    """Certified check that Ftilde_k(x_i) = P'(x_i) j_k(image_i) holds.

    ``prec`` is the precision the tolerance refers to; ``pipeline_prec`` is
    the internal precision actually used, which must exceed ``prec`` by the
    conditioning of evaluating the expanded coefficients at the roots
    (those evaluations cancel heavily, so extra working bits are needed to
    certify a 2**(-prec/2) relative identity).
    """

    prec: int
    pipeline_prec: int
    worst_rel_2: mpf
    worst_rel_3: mpf

    @property
    def ok(self) -> bool:
        tol = tolerance(self.prec)
        return self.worst_rel_2 <= tol and self.worst_rel_3 <= tol


def companion_identity_report(curve: Genus2Curve, prec: int = DEFAULT_PREC,
                              max_pipeline_prec: Optional[int] = None) -> CompanionReport:
    """Measure the companion identity residuals at certified precision.

    Builds the evaluated polynomial and companions at an internal precision,
    measures the largest relative deviation of Ftilde_k(x_i)/P'(x_i) from
    j_k(image_i) over all 15 roots and k in {2, 3}, and escalates the
    internal precision until the residual bound is dominated by the
    requested tolerance (or the cap is hit, raising PrecisionError).
    """
    cap = max_pipeline_prec if max_pipeline_prec is not None else 64 * prec
    w = prec + WORK_GUARD
    while True:
        xs, j2s, j3s = _image_data(curve, w)
        with mp.workprec(w + WORK_GUARD):
            p2 = ComplexPoly.from_roots(xs, w)
            dp = p2.derivative()
            ft = {2: None, 3: None}
            for i, x in enumerate(xs):
                q = p2.deflate(x)
                for k, jk in ((2, j2s[i]), (3, j3s[i])):
                    t = q.scale(jk)
                    ft[k] = t if ft[k] is None else ft[k].add(t)
            worst = {2: mpf(0), 3: mpf(0)}
            cond_bits = 0
            for i, x in enumerate(xs):
                dpx = dp(x)
                spread = _eval_magnitude(dp, x)
                if dpx == 0:
                    raise CollidingImagesError("derivative vanishes at an image invariant")
                cond_bits = max(cond_bits, int(mp.log(spread / abs(dpx), 2)) + 1)
                for k, jks in ((2, j2s), (3, j3s)):
                    val = ft[k](x) / dpx
                    ref = jks[i]
                    rel = abs(val - ref) / max(mpf(1), abs(ref))
                    worst[k] = max(worst[k], rel)
                    spread_f = _eval_magnitude(ft[k], x)
                    if abs(ft[k](x)) > 0:
                        cond_bits = max(
                            cond_bits, int(mp.log(spread_f / abs(ft[k](x)), 2)) + 1)
        needed = prec // 2 + cond_bits + 2 * WORK_GUARD
        if worst[2] <= tolerance(prec) and worst[3] <= tolerance(prec) and w >= needed:
            return CompanionReport(prec, w, worst[2], worst[3])
        if w >= cap:
            raise PrecisionError(
                f"companion identity not certified below precision cap {cap}")
        w = min(cap, max(2 * w, needed))


def _eval_magnitude(poly: ComplexPoly, x: mpc) -> mpf:
    """Sum of absolute term magnitudes |c_k| |x|^k (conditioning estimate)."""
    ax = abs(mpc(x))
    acc = mpf(0)
    for c in reversed(poly.coeffs):
        acc = acc * ax + abs(c)
    return acc


# ---------------------------------------------------------------------------
# degree detection for rational functions
# ---------------------------------------------------------------------------


def degree_profile(evaluator: Callable[[Fraction], Fraction], m_max: int, n_max: int,
                   samples: Sequence[Union[Fraction, int]]) -> Optional[Tuple[int, int]]:
    """Exact numerator/denominator degrees of a rational function from samples.

    Sweeps candidate profiles (m, n) by increasing m + n, then m. For each
    candidate, the square matrix with rows
    (1, x, ..., x^m, -c(x), -c(x) x, ..., -c(x) x^n) over m + n + 2 sample
    points is singular exactly when a relation P = c Q with deg P <= m,
    deg Q <= n fits the samples. The first profile singular on two disjoint
    sample windows (one window if only m + n + 2 samples are given) is
    returned; None if no candidate fits. Determinants are decided exactly:
    a 61-bit prime residue prefilter, then a fraction-free integer
    determinant when the residue vanishes.

    ``evaluator`` must return exact Fractions and be defined at every
    sample; for a target in lowest terms and generic samples the returned
    profile is the true degree pair.
    """
    if m_max < 0 or n_max < 0:
        raise ValueError("degree bounds must be nonnegative")
    xs = [Fraction(s) for s in samples]
    if len(set(xs)) != len(xs):
        raise ValueError("sample points must be distinct")
    if len(xs) < m_max + n_max + 2:
        raise ValueError("need at least m_max + n_max + 2 samples")
    values = [Fraction(evaluator(x)) for x in xs]
    for total in range(m_max + n_max + 1):
        for m in range(total + 1):
            n = total - m
            if m > m_max or n > n_max:
                continue
            need = total + 2
            windows = [(0, need)]
            if len(xs) >= 2 * need:
                windows.append((need, 2 * need))
            if all(
                _relation_matrix_singular(m, n, xs[lo:hi], values[lo:hi])
                for lo, hi in windows
            ):
                return (m, n)
    return None


def _relation_matrix_singular(m: int, n: int, xs: Sequence[Fraction],
                              cs: Sequence[Fraction]) -> bool:
    size = m + n + 2
    rows: List[List[int]] = []
    prefilter_ok = True
    for x, c in zip(xs, cs):
        row: List[Fraction] = []
        p = Fraction(1)
        for _ in range(m + 1):
            row.append(p)
            p *= x
        p = -c
        for _ in range(n + 1):
            row.append(p)
            p *= x
        lcm = 1
        for v in row:
            g = _gcd(lcm, v.denominator)
            lcm = lcm // g * v.denominator
        ints = [int(v * lcm) for v in row]
        if lcm % _PREFILTER_PRIME == 0:
            prefilter_ok = False
        rows.append(ints)
    if prefilter_ok:
        if _det_mod(rows, _PREFILTER_PRIME) != 0:
            return False
    return bareiss_det(rows) == 0


def _det_mod(rows: Sequence[Sequence[int]], p: int) -> int:
    a = [[x % p for x in row] for row in rows]
    n = len(a)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            det = p - det
        det = (det * a[k][k]) % p
        inv = pow(a[k][k], p - 2, p)
        for i in range(k + 1, n):
            if a[i][k]:
                f = (a[i][k] * inv) % p
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[k])]
    return det % p


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)
