"""Frozen coefficient formulas for the Igusa-Clebsch invariants.

Generated by scripts/derive_igusa_clebsch.py; do not edit by hand.
Each table maps an exponent vector (e0..e5) for the non-leading
coefficients c0..c5 of a monic sextic to an integer coefficient;
the invariant is the sum of coeff * c0^e0 * ... * c5^e5.
"""

I2_TERMS = {
    (0, 0, 0, 2, 0, 0): 6,
    (0, 0, 1, 0, 1, 0): -16,
    (0, 1, 0, 0, 0, 1): 40,
    (1, 0, 0, 0, 0, 0): -240,
}

I4_TERMS = {
    (0, 0, 2, 0, 2, 0): 4,
    (0, 0, 2, 1, 0, 1): -12,
    (0, 0, 3, 0, 0, 0): 48,
    (0, 1, 0, 1, 2, 0): -12,
    (0, 1, 0, 2, 0, 1): 36,
    (0, 1, 1, 0, 1, 1): 4,
    (0, 1, 1, 1, 0, 0): -180,
    (0, 2, 0, 0, 0, 2): -80,
    (0, 2, 0, 0, 1, 0): 300,
    (1, 0, 0, 0, 3, 0): 48,
    (1, 0, 0, 1, 1, 1): -180,
    (1, 0, 0, 2, 0, 0): 324,
    (1, 0, 1, 0, 0, 2): 300,
    (1, 0, 1, 0, 1, 0): -504,
    (1, 1, 0, 0, 0, 1): -540,
    (2, 0, 0, 0, 0, 0): 1620,
}

I6_TERMS = {
    (0, 0, 2, 2, 2, 0): 8,
    (0, 0, 2, 3, 0, 1): -24,
    (0, 0, 3, 0, 3, 0): -24,
    (0, 0, 3, 1, 1, 1): 76,
    (0, 0, 3, 2, 0, 0): 60,
    (0, 0, 4, 0, 0, 2): -36,
    (0, 0, 4, 0, 1, 0): -160,
    (0, 1, 0, 3, 2, 0): -24,
    (0, 1, 0, 4, 0, 1): 72,
    (0, 1, 1, 1, 3, 0): 76,
    (0, 1, 1, 2, 1, 1): -238,
    (0, 1, 1, 3, 0, 0): -198,
    (0, 1, 2, 0, 2, 1): 28,
    (0, 1, 2, 1, 0, 2): 26,
    (0, 1, 2, 1, 1, 0): 492,
    (0, 1, 3, 0, 0, 1): 616,
    (0, 2, 0, 0, 4, 0): -36,
    (0, 2, 0, 1, 2, 1): 26,
    (0, 2, 0, 2, 0, 2): 176,
    (0, 2, 0, 2, 1, 0): 330,
    (0, 2, 1, 0, 1, 2): 64,
    (0, 2, 1, 0, 2, 0): -640,
    (0, 2, 1, 1, 0, 1): -1860,
    (0, 2, 2, 0, 0, 0): -900,
    (0, 3, 0, 0, 0, 3): -320,
    (0, 3, 0, 0, 1, 1): 1600,
    (0, 3, 0, 1, 0, 0): 2250,
    (1, 0, 0, 2, 3, 0): 60,
    (1, 0, 0, 3, 1, 1): -198,
    (1, 0, 0, 4, 0, 0): 162,
    (1, 0, 1, 0, 4, 0): -160,
    (1, 0, 1, 1, 2, 1): 492,
    (1, 0, 1, 2, 0, 2): 330,
    (1, 0, 1, 2, 1, 0): -468,
    (1, 0, 2, 0, 1, 2): -640,
    (1, 0, 2, 0, 2, 0): 424,
    (1, 0, 2, 1, 0, 1): -876,
    (1, 0, 3, 0, 0, 0): -96,
    (1, 1, 0, 0, 3, 1): 616,
    (1, 1, 0, 1, 1, 2): -1860,
    (1, 1, 0, 1, 2, 0): -876,
    (1, 1, 0, 2, 0, 1): 1818,
    (1, 1, 1, 0, 0, 3): 1600,
    (1, 1, 1, 0, 1, 1): 3472,
    (1, 1, 1, 1, 0, 0): 3060,
    (1, 2, 0, 0, 0, 2): -2240,
    (1, 2, 0, 0, 1, 0): -18600,
    (2, 0, 0, 0, 2, 2): -900,
    (2, 0, 0, 0, 3, 0): -96,
    (2, 0, 0, 1, 0, 3): 2250,
    (2, 0, 0, 1, 1, 1): 3060,
    (2, 0, 0, 2, 0, 0): -10044,
    (2, 0, 1, 0, 0, 2): -18600,
    (2, 0, 1, 0, 1, 0): 20664,
    (2, 1, 0, 0, 0, 1): 59940,
    (3, 0, 0, 0, 0, 0): -119880,
}

