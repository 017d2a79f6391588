"""Acceptance gate: eleven certified criteria, one pass/fail line each.

Each test prints ``ACCEPTANCE nn <name>: PASS|FAIL (detail)`` directly to
the terminal (bypassing capture) before asserting, so a full run always
shows the eleven verdict lines.  Tolerances and time budgets are part of
the criteria and are asserted, not just measured.

Criterion 6 (exact rational reconstruction of all sixteen evaluated
coefficients under a 2^256 denominator bound with escalation capped at
2000 bits) is expected to FAIL honestly on random integer curves: the true
coefficient denominators measure in the 400-800 bit range (the test prints
the measured size), so no correct algorithm can certify them under a 2^256
bound.  The reconstruction layer refuses rather than returning a plausible
wrong answer, and this test documents that refusal.
"""

import random
import time
from fractions import Fraction as F
from functools import lru_cache

from mpmath import mp, mpf

from g2modpoly import g2curve, modpoly, qseries, richelot, siegel, sp4
from g2modpoly.exactnum import to_mpc, tolerance

GENERIC = (-2, 3, 1, -1, 0, 2, 1)
BIELLIPTIC = (-36, 0, 49, 0, -14, 0, 1)


def _line(capsys, num, name, ok, detail):
    with capsys.disabled():
        print(f"ACCEPTANCE {num:02d} {name}: {'PASS' if ok else 'FAIL'} ({detail})")


@lru_cache(maxsize=1)
def _random_curves():
    """Ten seeded random monic sextics, integer coefficients in [-3, 3].

    Draws that are non-separable (invalid curves) or that lie on the split
    locus (outside the evaluated-polynomial domain) are resampled.
    """
    rng = random.Random(601)
    curves = []
    while len(curves) < 10:
        coeffs = tuple(rng.randint(-3, 3) for _ in range(6)) + (1,)
        try:
            c = g2curve.validate_curve(coeffs)
        except ValueError:
            continue
        if modpoly.l2_evaluate(g2curve.absolute_igusa(c)) == 0:
            continue
        curves.append(c)
    return tuple(curves)


def _product_poly(roots):
    """Exact ascending coefficients of prod (x - r) over rational roots."""
    cs = [F(1)]
    for r in roots:
        cs = [F(0)] + cs
        for i in range(len(cs) - 1):
            cs[i] -= r * cs[i + 1]
    return cs


# ---------------------------------------------------------------------------
# 1. index counts
# ---------------------------------------------------------------------------


def test_criterion_01_isotropic_plane_counts(capsys):
    start = time.monotonic()
    counts = {p: len(sp4.enumerate_isotropic_planes(p)) for p in (2, 3, 5)}
    formula = {p: (p**4 - 1) // (p - 1) for p in (2, 3, 5)}
    elapsed = time.monotonic() - start
    ok = counts == {2: 15, 3: 40, 5: 156} and all(
        counts[p] == formula[p] == sp4.gamma0_index(p) for p in counts)
    _line(capsys, 1, "isotropic-plane-counts", ok,
          f"p=2,3,5 -> {counts[2]}, {counts[3]}, {counts[5]} in {elapsed:.1f}s")
    assert ok
    assert elapsed < 10


# ---------------------------------------------------------------------------
# 2. coset certification
# ---------------------------------------------------------------------------


def test_criterion_02_coset_certification(capsys):
    start = time.monotonic()
    ok = True
    details = []
    for p in (2, 3):
        rep = sp4.verify_coset_set(sp4.coset_representatives(p))
        expected = p**3 + p**2 + p + 1
        ok = ok and rep.ok and rep.count == expected
        details.append(f"p={p}: {rep.count} members")
    elapsed = time.monotonic() - start
    _line(capsys, 2, "coset-certification", ok,
          "; ".join(details) + f", all symplectic and inequivalent in {elapsed:.1f}s")
    assert ok
    assert elapsed < 10


# ---------------------------------------------------------------------------
# 3. level-lowering conjugate bridge
# ---------------------------------------------------------------------------


def test_criterion_03_level_lowering_bridge(capsys):
    prec = 128
    tol = tolerance(prec)
    rng = random.Random(3)
    start = time.monotonic()
    worst = mpf(0)
    ok = True
    for p in (2, 3, 5):
        for _ in range(100):
            g = sp4.random_gamma0(rng, p)
            b = sp4.lemma41_conjugate(g, p)
            if not sp4.is_symplectic(b.rows):
                ok = False
            tau = siegel.random_tau(rng, prec)
            lhs = siegel.scale_point(siegel.symplectic_act(g, tau), p)
            rhs = siegel.symplectic_act(b, siegel.scale_point(tau, p))
            d = siegel.point_distance(lhs, rhs)
            worst = max(worst, d)
            if d > tol:
                ok = False
    elapsed = time.monotonic() - start
    _line(capsys, 3, "level-lowering-bridge", ok,
          f"300 samples, worst distance {mp.nstr(worst, 3)} <= 2^-64 in {elapsed:.1f}s")
    assert ok
    assert elapsed < 30


# ---------------------------------------------------------------------------
# 4. symplectic action laws
# ---------------------------------------------------------------------------


def test_criterion_04_action_laws(capsys):
    prec = 128
    tol = mpf(2) ** -64
    rng = random.Random(4)
    start = time.monotonic()
    worst = mpf(0)
    closed = True
    for _ in range(100):
        m = sp4.random_symplectic(rng)
        n = sp4.random_symplectic(rng)
        tau = siegel.random_tau(rng, prec)
        inner = siegel.symplectic_act(n, tau)
        lhs = siegel.symplectic_act(m, inner)
        rhs = siegel.symplectic_act(m @ n, tau)
        worst = max(worst, siegel.point_distance(lhs, rhs))
        closed = closed and siegel.is_in_H2(inner) and siegel.is_in_H2(lhs)
    elapsed = time.monotonic() - start
    ok = worst <= tol and closed
    _line(capsys, 4, "symplectic-action-laws", ok,
          f"100 samples, worst associativity gap {mp.nstr(worst, 3)}, "
          f"closure {closed} in {elapsed:.1f}s")
    assert ok
    assert elapsed < 10


# ---------------------------------------------------------------------------
# 5. Richelot factorization count
# ---------------------------------------------------------------------------


def test_criterion_05_fifteen_factorizations(capsys):
    prec = 300
    tol = tolerance(prec)
    test_curves = [
        g2curve.validate_curve(GENERIC),
        g2curve.validate_curve(BIELLIPTIC),
        g2curve.validate_curve((1, 0, 0, 0, 0, 0, 1)),
    ] + list(_random_curves()[:3])
    ok = True
    worst = mpf(0)
    slowest = 0.0
    for c in test_curves:
        start = time.monotonic()
        triples = richelot.enumerate_factorizations(c, prec)
        if len(triples) != 15:
            ok = False
        ref = [to_mpc(v, prec + 64) for v in c.coeffs]
        scale = max(abs(v) for v in ref)
        with mp.workprec(prec + 64):
            for t in triples:
                prod = t.product_coeffs()
                err = max(abs(a - b) for a, b in zip(prod, ref)) / scale
                worst = max(worst, err)
                if err > tol:
                    ok = False
        slowest = max(slowest, time.monotonic() - start)
    _line(capsys, 5, "fifteen-factorizations", ok,
          f"{len(test_curves)} curves x 15 factorizations, worst rebuild error "
          f"{mp.nstr(worst, 3)}, slowest curve {slowest:.1f}s")
    assert ok
    assert slowest < 5


# ---------------------------------------------------------------------------
# 6. evaluated rationality (expected honest failure)
# ---------------------------------------------------------------------------


def test_criterion_06_evaluated_rationality(capsys):
    prec = 300
    reconstructed = 0
    verified = 0
    for c in _random_curves():
        built = modpoly.evaluated_P2(c, prec, reconstruct=True,
                                     denom_bound=1 << 256, prec_cap=2000)
        if built.rational_p2 is None:
            continue
        reconstructed += 1
        tol = tolerance(built.prec)
        with mp.workprec(built.prec + 64):
            worst = max(
                abs(to_mpc(r, built.prec + 64) - cnum) / max(mpf(1), abs(cnum))
                for r, cnum in zip(built.rational_p2, built.p2.coeffs))
        if worst <= tol:
            verified += 1
    ok = verified == 10
    if not ok:
        # measure the true denominator size for the first curve so the
        # failure line documents why the 2^256 bound cannot succeed
        big = modpoly.evaluated_P2(_random_curves()[0], 6000, reconstruct=True,
                                   denom_bound=1 << 1500, prec_cap=6000)
        if big.rational_p2 is not None:
            bits = max(x.denominator.bit_length() for x in big.rational_p2)
            why = (f"true max denominator needs {bits} bits > 256; "
                   "refusing is the only sound outcome")
        else:
            why = "denominators exceed even 2^1500"
        detail = f"{verified}/10 curves certified under the 2^256 bound; {why}"
    else:
        detail = "10/10 curves reconstructed and re-verified"
    _line(capsys, 6, "evaluated-rationality", ok, detail)
    assert ok, detail


# ---------------------------------------------------------------------------
# 7. companion identity at the evaluated roots
# ---------------------------------------------------------------------------


def test_criterion_07_companion_identity(capsys):
    prec = 300
    start = time.monotonic()
    worst = mpf(0)
    ok = True
    for c in _random_curves():
        rep = modpoly.companion_identity_report(c, prec)
        worst = max(worst, rep.worst_rel_2, rep.worst_rel_3)
        ok = ok and rep.ok
    elapsed = time.monotonic() - start
    _line(capsys, 7, "companion-identity", ok,
          f"10 curves x 15 roots x k=2,3, worst relative residual "
          f"{mp.nstr(worst, 3)} <= 2^-150 in {elapsed:.1f}s")
    assert ok
    assert worst <= tolerance(prec)


# ---------------------------------------------------------------------------
# 8. split locus vanishing
# ---------------------------------------------------------------------------


def test_criterion_08_split_locus(capsys):
    start = time.monotonic()
    rng = random.Random(8)
    pool = [F(p, q) for q in (1, 2, 3) for p in range(1, 13)
            if F(p, q).denominator == q]
    zeros = 0
    tried = 0
    while zeros < 20 and tried < 200:
        tried += 1
        a, b, c = rng.sample(pool, 3)
        if len({a * a, b * b, c * c}) < 3:
            continue
        e1 = a * a + b * b + c * c
        e2 = a * a * b * b + a * a * c * c + b * b * c * c
        e3 = a * a * b * b * c * c
        cur = g2curve.validate_curve((-e3, F(0), e2, F(0), -e1, F(0), F(1)))
        if modpoly.l2_evaluate(g2curve.absolute_igusa(cur)) == 0:
            zeros += 1

    rng = random.Random(9)
    nonzeros = 0
    generic_ok = True
    while nonzeros < 20:
        coeffs = tuple(rng.randint(-3, 3) for _ in range(6)) + (1,)
        if all(c == 0 for c in coeffs[1::2]):
            continue  # even sextics are bielliptic by construction
        try:
            cur = g2curve.validate_curve(coeffs)
        except ValueError:
            continue
        if modpoly.l2_evaluate(g2curve.absolute_igusa(cur)) == 0:
            generic_ok = False
        nonzeros += 1
    elapsed = time.monotonic() - start
    ok = zeros == 20 and generic_ok
    _line(capsys, 8, "split-locus", ok,
          f"exactly 0 on {zeros}/20 bielliptic curves, nonzero on 20 generic "
          f"in {elapsed:.1f}s")
    assert ok
    assert elapsed < 60


# ---------------------------------------------------------------------------
# 9. Richelot involution
# ---------------------------------------------------------------------------


def test_criterion_09_richelot_involution(capsys):
    prec = 300
    work = 400  # guard bits for the two root-finding passes
    tol = tolerance(prec)
    start = time.monotonic()
    worst = mpf(0)
    for c in _random_curves():
        triples = richelot.enumerate_factorizations(c, work)
        step = richelot.richelot_image(triples[0], work)
        back = richelot.richelot_image(richelot.dual_triple(step), work)
        src = [to_mpc(v, work + 64) for v in g2curve.absolute_igusa(c).as_tuple()]
        img = [to_mpc(v, work + 64)
               for v in g2curve.absolute_igusa(back.image).as_tuple()]
        with mp.workprec(work + 64):
            worst = max(worst, max(
                abs(x - y) / max(mpf(1), abs(x)) for x, y in zip(src, img)))
    elapsed = time.monotonic() - start
    ok = worst <= tol
    _line(capsys, 9, "richelot-involution", ok,
          f"10 curves, worst relative return error {mp.nstr(worst, 3)} "
          f"<= 2^-150 in {elapsed:.1f}s")
    assert ok
    assert elapsed < 60


# ---------------------------------------------------------------------------
# 10. series engine
# ---------------------------------------------------------------------------


def test_criterion_10_series_engine(capsys):
    order = 10
    rng = random.Random(10)
    indices = list(qseries.cone_indices(order))
    start = time.monotonic()
    units = []
    inv_ok = True
    cone_ok = True
    for _ in range(100):
        terms = {(0, 0, 0): F(rng.randint(1, 9))}
        for idx in indices:
            if idx != (0, 0, 0) and rng.random() < 0.10:
                terms[idx] = F(rng.randint(-5, 5))
        s = qseries.FourierSeries(terms, order)
        units.append(s)
        prod = qseries.series_mul(s, qseries.series_invert(s))
        if prod.constant_term != 1 or any(
                c != 0 for i, c in prod.terms.items() if i != (0, 0, 0)):
            inv_ok = False
        if not qseries.koecher_check(prod.terms):
            cone_ok = False
    for a, b in zip(units, units[1:]):
        if not qseries.koecher_check(qseries.series_mul(a, b).terms):
            cone_ok = False
    elapsed = time.monotonic() - start
    ok = inv_ok and cone_ok
    _line(capsys, 10, "series-engine", ok,
          f"100 order-{order} units, s*s^-1 = 1 exactly, 199 products "
          f"cone-supported in {elapsed:.1f}s")
    assert ok
    assert elapsed < 10


# ---------------------------------------------------------------------------
# 11. degree detection
# ---------------------------------------------------------------------------


def test_criterion_11_degree_detection(capsys):
    rng = random.Random(11)
    start = time.monotonic()
    recovered = 0
    for _ in range(50):
        m = rng.randint(0, 10)
        n = rng.randint(0, 10)
        roots = rng.sample(range(-20, 21), m + n)
        lead = F(rng.randint(1, 5))
        num = [lead * c for c in _product_poly(roots[:m])]
        den = _product_poly(roots[m:])

        def ev(x, num=num, den=den):
            nv = sum(c * x**i for i, c in enumerate(num))
            dv = sum(c * x**i for i, c in enumerate(den))
            return nv / dv

        samples = [F(2 * t + 3, 8) for t in range(44)]
        if modpoly.degree_profile(ev, 10, 10, samples) == (m, n):
            recovered += 1
    pinned = modpoly.FULL_P2_DEGREE_DATA
    pinned_ok = (pinned["j1_constant_term_profile"] == (60, 51)
                 and pinned["j2_denominator_degree"] == 42
                 and pinned["j3_denominator_degree"] == 30
                 and pinned["constant_term_monomials"] == 16795)
    elapsed = time.monotonic() - start
    ok = recovered == 50 and pinned_ok
    _line(capsys, 11, "degree-detection", ok,
          f"{recovered}/50 synthetic profiles recovered exactly; large-scale "
          f"targets (60/51, 42, 30, 16795) pinned in {elapsed:.1f}s")
    assert ok
    assert elapsed < 30
