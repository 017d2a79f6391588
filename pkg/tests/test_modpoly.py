"""Point-evaluated modular relations: P2, companions, split locus, degrees."""

import hashlib
from fractions import Fraction

import pytest
from mpmath import mp, mpc, mpf

from g2modpoly.exactnum import to_mpc, tolerance
from g2modpoly.g2curve import Genus2Curve, absolute_igusa
from g2modpoly.modpoly import (
    DEFAULT_DENOM_BOUND,
    DEFAULT_PREC,
    L2_LEADING,
    L2_TERM_COUNT,
    CompanionReport,
    SplitInputError,
    companion_identity_report,
    degree_profile,
    evaluated_Ftilde,
    evaluated_P2,
    l2_evaluate,
    l2_poly,
)
from g2modpoly.richelot import all_isogenous_invariants

F = Fraction


def curve(*asc):
    return Genus2Curve(tuple(F(c) for c in asc))


GENERIC = (-2, 3, 1, -1, 0, 2, 1)
SPLIT_WITNESS = (-36, 0, 49, 0, -14, 0, 1)

# frozen: sha256 over "num/den|..." of the 16 reconstructed coefficients of
# the generic curve's evaluated polynomial (independently re-derived from an
# 8000-bit build during development)
GENERIC_P2_SHA256 = "e991f46eeb0fec5abfbdff23cdb9daf05fcd5ff80af065adbb0f93c3fadab642"


# ---------------------------------------------------------------------------
# the split-locus polynomial
# ---------------------------------------------------------------------------


def test_locus_polynomial_shape_is_pinned():
    poly = l2_poly()
    assert len(poly.terms) == L2_TERM_COUNT == 34
    exps, coeff = L2_LEADING
    assert poly.terms[exps] == coeff == F(236196)
    assert poly.degrees()[0] == 5


def test_locus_vanishes_at_origin():
    assert l2_evaluate((F(0), F(0), F(0))) == 0


def test_locus_pure_j1_profile():
    # exactly two monomials survive at (1, 0, 0)
    poly = l2_poly()
    pure = {e: c for e, c in poly.terms.items() if e[1] == 0 and e[2] == 0}
    assert pure == {(5, 0, 0): F(236196), (4, 0, 0): F(125971200000)}
    assert l2_evaluate((F(1), F(0), F(0))) == F(125971436196)


def test_locus_value_at_ones_is_coefficient_sum():
    assert l2_evaluate((F(1), F(1), F(1))) == F(127484175537)
    assert l2_evaluate((F(1), F(1), F(1))) == sum(l2_poly().terms.values())


@pytest.mark.parametrize(
    "roots",
    [
        (1, -1, 2, -2, 3, -3),
        (1, -1, 4, -4, 5, -5),
        (F(1, 2), F(-1, 2), 2, -2, 3, -3),
        (F(2, 3), F(-2, 3), F(5, 2), F(-5, 2), 4, -4),
    ],
)
def test_locus_vanishes_on_bielliptic_curves(roots):
    from oracles import coeffs_from_roots

    c = Genus2Curve(tuple(F(x) for x in coeffs_from_roots(roots)))
    assert l2_evaluate(absolute_igusa(c)) == 0


def test_locus_is_nonzero_on_generic_curve():
    assert l2_evaluate(absolute_igusa(curve(*GENERIC))) != 0


def test_locus_accepts_triple_object_and_complex_point():
    t = absolute_igusa(curve(*GENERIC))
    exact = l2_evaluate(t)
    with mp.workprec(364):
        point = tuple(to_mpc(v, 364) for v in (t.j1, t.j2, t.j3))
    numeric = l2_evaluate(point)
    with mp.workprec(364):
        w = to_mpc(exact, 364)
        assert abs(numeric - w) <= tolerance(300) * max(mpf(1), abs(w))


# ---------------------------------------------------------------------------
# the evaluated degree-15 polynomial
# ---------------------------------------------------------------------------


def test_evaluated_p2_is_monic_degree_15_with_real_coefficients():
    ev = evaluated_P2(curve(*GENERIC), DEFAULT_PREC)
    assert ev.p2.degree == 15
    tol = tolerance(DEFAULT_PREC)
    with mp.workprec(DEFAULT_PREC + 64):
        assert abs(ev.p2.coeffs[15] - 1) <= tol
        for c in ev.p2.coeffs:
            assert abs(c.imag) <= tol * max(mpf(1), abs(c)) * 2**20


def test_evaluated_p2_refuses_split_input():
    with pytest.raises(SplitInputError):
        evaluated_P2(curve(*SPLIT_WITNESS), DEFAULT_PREC)
    with pytest.raises(SplitInputError):
        evaluated_Ftilde(curve(*SPLIT_WITNESS), 2, DEFAULT_PREC)


def test_evaluated_p2_coefficients_match_newton_identities():
    # the identities cancel across intermediates ~2^350 larger than the
    # result, so compute at 1200 bits and compare at the 600-bit tolerance
    prec = 1200
    c = curve(*GENERIC)
    ev = evaluated_P2(c, prec)
    records = all_isogenous_invariants(c, prec)
    roots = [r.invariants.j1 for r in records]
    tol = tolerance(600)
    with mp.workprec(prec + 64):
        power = [mpc(15)]  # p_0 = n
        for k in range(1, 16):
            power.append(sum(r**k for r in roots))
        e = [mpc(1)]
        for k in range(1, 16):
            acc = mpc(0)
            for i in range(1, k + 1):
                acc += (-1) ** (i - 1) * e[k - i] * power[i]
            e.append(acc / k)
        scale = max(abs(x) for x in e) + mpf(1)
        for k in range(16):
            want = (-1) ** k * e[k]
            got = ev.p2.coeffs[15 - k]
            assert abs(got - want) <= tol * scale


def test_evaluated_p2_vanishes_at_image_invariants():
    prec = 300
    c = curve(*GENERIC)
    ev = evaluated_P2(c, prec)
    records = all_isogenous_invariants(c, prec)
    tol = tolerance(prec)
    with mp.workprec(prec + 64):
        scale = sum(abs(x) for x in ev.p2.coeffs)
        for r in records:
            x = r.invariants.j1
            val = ev.p2(x)
            bound = tol * scale * max(mpf(1), abs(x)) ** 15
            assert abs(val) <= bound


# ---------------------------------------------------------------------------
# rational reconstruction of the coefficients
# ---------------------------------------------------------------------------


def test_reconstruction_succeeds_at_adequate_parameters():
    # denominators of this curve's coefficients need up to 714 bits; with
    # bound 2^800 the decoding radius 2^-1601 requires roughly 4200 bits of
    # working precision (coefficients reach 2^477 in magnitude)
    ev = evaluated_P2(
        curve(*GENERIC), 4200, reconstruct=True, denom_bound=1 << 800, prec_cap=4200
    )
    assert ev.rational_p2 is not None
    assert ev.rational_p2[-1] == 1
    assert max(f.denominator.bit_length() for f in ev.rational_p2) == 714
    payload = "|".join(
        "%d/%d" % (f.numerator, f.denominator) for f in ev.rational_p2
    )
    assert hashlib.sha256(payload.encode()).hexdigest() == GENERIC_P2_SHA256


def test_reconstruction_refuses_underpowered_precision():
    # same bound, but the precision rungs stop far below what is needed to
    # separate fractions with denominators up to 2^800: must return None
    # rather than a spurious convergent
    ev = evaluated_P2(
        curve(*GENERIC), 300, reconstruct=True, denom_bound=1 << 800, prec_cap=600
    )
    assert ev.rational_p2 is None


def test_reconstruction_fails_honestly_when_bound_is_too_small():
    ev = evaluated_P2(
        curve(*GENERIC), 300, reconstruct=True, denom_bound=1 << 64, prec_cap=1200
    )
    assert ev.rational_p2 is None


def test_reconstruction_requires_exact_curve():
    num = Genus2Curve(tuple(mpc(x) for x in GENERIC), prec=300)
    with pytest.raises(ValueError):
        evaluated_P2(num, 300, reconstruct=True)


def test_default_reconstruction_knobs():
    assert DEFAULT_DENOM_BOUND == 1 << 256
    assert DEFAULT_PREC == 300


# ---------------------------------------------------------------------------
# denominator growth toward the split locus
# ---------------------------------------------------------------------------


def test_coefficients_blow_up_as_the_curve_approaches_a_split_one():
    # f_t = (x^2-1)(x^2-4)(x^2-9) + t x stays separable and non-split for
    # small t != 0 but degenerates at t = 0; the evaluated coefficients must
    # grow while the locus value at the source invariants shrinks
    sizes = []
    locus = []
    for k in range(1, 6):
        t = F(1, 2**k)
        c = curve(F(-36) + 0, t, F(49), 0, F(-14), 0, 1)
        ev = evaluated_P2(c, 300)
        with mp.workprec(364):
            sizes.append(max(abs(x) for x in ev.p2.coeffs))
        locus.append(abs(l2_evaluate(absolute_igusa(c))))
    assert all(a < b for a, b in zip(sizes, sizes[1:]))
    assert all(a > b for a, b in zip(locus, locus[1:]))
    assert sizes[-1] > sizes[0] * 100
    assert locus[-1] < locus[0] / 100


# ---------------------------------------------------------------------------
# companions
# ---------------------------------------------------------------------------


def test_companions_have_degree_at_most_14():
    for k in (2, 3):
        ft = evaluated_Ftilde(curve(*GENERIC), k, 300)
        assert ft.degree <= 14
    with pytest.raises(ValueError):
        evaluated_Ftilde(curve(*GENERIC), 4, 300)


def test_companion_identity_direct_at_high_build_precision():
    prec = 1200
    c = curve(*GENERIC)
    ev = evaluated_P2(c, prec)
    records = all_isogenous_invariants(c, prec)
    dp = ev.p2.derivative()
    tol = tolerance(300)
    with mp.workprec(prec + 64):
        for r in records:
            x = r.invariants.j1
            dpx = dp(x)
            assert abs(dpx) > 0
            for ft, want in ((ev.ftilde2, r.invariants.j2), (ev.ftilde3, r.invariants.j3)):
                got = ft(x) / dpx
                assert abs(got - want) <= tol * max(mpf(1), abs(want))


def test_companion_report_certifies_the_identity():
    report = companion_identity_report(curve(*GENERIC), 200)
    assert isinstance(report, CompanionReport)
    assert report.ok
    assert report.pipeline_prec >= 200
    tol = tolerance(200)
    assert report.worst_rel_2 <= tol
    assert report.worst_rel_3 <= tol


# ---------------------------------------------------------------------------
# degree detection
# ---------------------------------------------------------------------------


def _samples(n):
    # odd/8 is never an integer, so these avoid the small integer poles
    # used in the tests below
    return [F(2 * t + 3, 8) for t in range(n)]


def test_degree_profile_examples():
    assert degree_profile(lambda x: F(5), 3, 3, _samples(10)) == (0, 0)
    assert degree_profile(lambda x: x, 3, 3, _samples(10)) == (1, 0)
    assert degree_profile(
        lambda x: (x * x + 1) / (x - 2), 3, 3, _samples(12)
    ) == (2, 1)


def test_degree_profile_reduces_common_factors():
    assert degree_profile(
        lambda x: (x * x - 1) / (x - 1), 3, 3, _samples(10)
    ) == (1, 0)


def test_degree_profile_returns_none_when_bounds_are_too_small():
    assert degree_profile(lambda x: x**3, 2, 2, _samples(10)) is None


def test_degree_profile_validates_samples():
    with pytest.raises(ValueError):
        degree_profile(lambda x: x, 2, 2, _samples(3))
    with pytest.raises(ValueError):
        degree_profile(lambda x: x, 2, 2, [F(1)] * 8)
    with pytest.raises(ValueError):
        degree_profile(lambda x: x, -1, 2, _samples(8))


def test_degree_profile_recovers_random_rational_functions():
    import random

    rng = random.Random(8)
    for _ in range(10):
        m = rng.randint(0, 4)
        n = rng.randint(0, 4)
        num = [F(rng.randint(-9, 9)) for _ in range(m)] + [F(rng.randint(1, 9))]
        den = [F(rng.randint(-9, 9)) for _ in range(n)] + [F(rng.randint(1, 9))]

        def ev(x, num=num, den=den):
            nv = sum(c * x**i for i, c in enumerate(num))
            dv = sum(c * x**i for i, c in enumerate(den))
            return nv / dv

        xs = []
        t = 0
        while len(xs) < 2 * (4 + 4 + 2):
            x = F(2 * t + 3, 8)
            t += 1
            dv = sum(c * x**i for i, c in enumerate(den))
            if dv != 0:
                xs.append(x)
        got = degree_profile(ev, 4, 4, xs)
        assert got is not None
        gm, gn = got
        # common factors may reduce the true degrees, never raise them
        assert gm <= m and gn <= n
        if gm < m or gn < n:
            assert m - gm == n - gn
