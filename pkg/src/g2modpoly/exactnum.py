"""Exact rational and arbitrary-precision numeric kernel.

Everything downstream (symplectic matrices, Siegel points, Fourier series,
curve invariants, evaluated modular polynomials) is built on four ingredients
collected here:

* rationals: ``fractions.Fraction`` with ``p/q`` string (de)serialization,
* sparse multivariate polynomials over the rationals (``MultiPoly``),
* dense univariate complex polynomials at a stated precision (``ComplexPoly``),
* exact linear algebra (nullspace, fraction-free determinants) and
  continued-fraction rational reconstruction.

All floating point work goes through mpmath with explicit binary precision.
A value "at precision ``prec``" means the computation ran with at least
``prec`` mantissa bits; the associated comparison tolerance is
``2**(-prec/2)`` throughout the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from types import MappingProxyType
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import hashlib

from mpmath import mp, mpc, mpf

Rational = Fraction
Scalar = Union[Fraction, int, mpc, mpf]

# Extra working bits used inside kernels so that results are good to the
# caller's stated precision after roundoff.
WORK_GUARD = 64


class PrecisionError(ArithmeticError):
    """A numeric kernel could not certify its result at the requested precision."""


class CoincidentNodesError(ValueError):
    """Interpolation nodes closer than the resolution tolerance."""


# ---------------------------------------------------------------------------
# rational helpers
# ---------------------------------------------------------------------------


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` (optionally signed) into a Fraction."""
    s = text.strip()
    if not s:
        raise ValueError("empty rational literal")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational literal {text!r}") from exc


def format_rational(q: Fraction) -> str:
    """Render a Fraction as ``p/q``, or ``p`` when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def tolerance(prec: int) -> mpf:
    """The package-wide comparison tolerance ``2**(-prec/2)``."""
    with mp.workprec(64):
        return mpf(2) ** (mpf(-prec) / 2)


def mpf_to_fraction(x: mpf) -> Fraction:
    """Exact rational value of an mpf (mpf values are dyadic rationals)."""
    if x == 0:
        return Fraction(0)
    sign, man, exp, _ = x._mpf_
    # The gmpy2 backend stores mantissas as gmpy2.mpz; coerce to int so
    # Fraction arithmetic works.
    man, exp = int(man), int(exp)
    value = Fraction(man)
    if exp >= 0:
        value *= 2**exp
    else:
        value /= 2**(-exp)
    return -value if int(sign) else value


def fraction_to_mpf(q: Union[Fraction, int], prec: int) -> mpf:
    """Round a rational to the nearest mpf at ``prec`` bits."""
    q = Fraction(q)
    with mp.workprec(prec + 8):
        return mpf(q.numerator) / mpf(q.denominator)


def to_mpc(value: Scalar, prec: int) -> mpc:
    """Convert to mpc without ambient-precision re-rounding.

    mpmath constructors round existing values to the current context
    precision, so a bare mpc(x) silently truncates high-precision data when
    called at the default context; conversions here always happen at an
    explicit precision, and mpc input passes through untouched.
    """
    if isinstance(value, mpc):
        return value
    with mp.workprec(prec + 8):
        if isinstance(value, (Fraction, int)):
            return mpc(fraction_to_mpf(value, prec))
        return mpc(value)


def mpf_to_str(x: mpf, prec: int) -> str:
    """Deterministic decimal rendering carrying the full stated precision."""
    dps = max(17, int(prec * 0.30103) + 3)
    if not isinstance(x, mpf):
        with mp.workprec(prec + 8):
            x = mpf(x)
    return mp.nstr(x, dps)


def str_to_mpf(s: str, prec: int) -> mpf:
    with mp.workprec(prec + 8):
        return mpf(s)


def complex_to_pair(z: mpc, prec: int) -> List[str]:
    """Serialize a complex value as a ``[re, im]`` pair of decimal strings."""
    z = to_mpc(z, prec)
    return [mpf_to_str(z.real, prec), mpf_to_str(z.imag, prec)]


def pair_to_complex(pair: Sequence[str], prec: int) -> mpc:
    if len(pair) != 2:
        raise ValueError("complex value must be a [re, im] pair")
    with mp.workprec(prec + 8):
        return mpc(str_to_mpf(str(pair[0]), prec), str_to_mpf(str(pair[1]), prec))


# ---------------------------------------------------------------------------
# sparse multivariate polynomials over Q
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MultiPoly:
    """Sparse multivariate polynomial with Fraction coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients; zero coefficients
    are dropped on construction so representations are canonical.
    """

    variables: Tuple[str, ...]
    terms: Mapping[Tuple[int, ...], Fraction]

    def __post_init__(self) -> None:
        nvars = len(self.variables)
        clean: Dict[Tuple[int, ...], Fraction] = {}
        for exps, coeff in self.terms.items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != nvars:
                raise ValueError(f"term {exps} does not match arity {nvars}")
            if any(e < 0 for e in exps):
                raise ValueError(f"negative exponent in term {exps}")
            coeff = Fraction(coeff)
            if coeff != 0:
                clean[exps] = coeff
        object.__setattr__(self, "terms", MappingProxyType(clean))

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> Tuple[int, ...]:
        """Per-variable maximal exponent (all zeros for the zero polynomial)."""
        nvars = len(self.variables)
        degs = [0] * nvars
        for exps in self.terms:
            for i, e in enumerate(exps):
                degs[i] = max(degs[i], e)
        return tuple(degs)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def evaluate(self, point: Sequence[Scalar]):
        """Evaluate exactly over rationals, or numerically for mpc/mpf points.

        Uses nested Horner on one variable at a time, so a rational point
        gives an exact Fraction with no intermediate power table.
        """
        if len(point) != len(self.variables):
            raise ValueError("point arity does not match polynomial arity")
        items = [(exps, coeff) for exps, coeff in self.terms.items()]
        return _horner_multi(items, tuple(point), 0)

    def canonical_text(self) -> str:
        """Canonical line rendering used for hashing and term files."""
        lines = []
        for exps in sorted(self.terms):
            coeff = self.terms[exps]
            lines.append(" ".join(str(e) for e in exps) + " " + format_rational(coeff))
        return "\n".join(lines) + "\n"

    def checksum(self) -> str:
        return hashlib.sha256(self.canonical_text().encode()).hexdigest()

    def save(self, path: str) -> None:
        with open(path, "w") as fh:
            fh.write(self.canonical_text())

    @classmethod
    def load(cls, path: str, variables: Tuple[str, ...]) -> "MultiPoly":
        terms: Dict[Tuple[int, ...], Fraction] = {}
        nvars = len(variables)
        with open(path) as fh:
            for lineno, raw in enumerate(fh, 1):
                line = raw.split("#", 1)[0].strip()
                if not line:
                    continue
                parts = line.split()
                if len(parts) != nvars + 1:
                    raise ValueError(f"{path}:{lineno}: expected {nvars} exponents and a coefficient")
                exps = tuple(int(p) for p in parts[:nvars])
                if exps in terms:
                    raise ValueError(f"{path}:{lineno}: duplicate term {exps}")
                terms[exps] = parse_rational(parts[nvars])
        return cls(variables=variables, terms=terms)


def _horner_multi(items: List[Tuple[Tuple[int, ...], Fraction]], point: Tuple[Scalar, ...], var: int):
    """Recursive sparse Horner evaluation over the remaining variables."""
    if not items:
        return Fraction(0)
    if var == len(point):
        # all exponents exhausted; items is a single constant term
        total = Fraction(0)
        for _, coeff in items:
            total += coeff
        return total
    by_exp: Dict[int, List[Tuple[Tuple[int, ...], Fraction]]] = {}
    for exps, coeff in items:
        by_exp.setdefault(exps[var], []).append((exps, coeff))
    x = point[var]
    result = None
    prev_exp = 0
    for e in sorted(by_exp, reverse=True):
        inner = _horner_multi(by_exp[e], point, var + 1)
        if result is None:
            result = inner
        else:
            result = result * x ** (prev_exp - e) + inner
        prev_exp = e
    assert result is not None
    if prev_exp:
        result = result * x**prev_exp
    return result


# ---------------------------------------------------------------------------
# dense univariate complex polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ComplexPoly:
    """Dense univariate polynomial over mpc, constant coefficient first.

    ``prec`` records the binary precision the coefficients were computed at.
    Exactly-zero leading coefficients are trimmed so ``degree`` is honest for
    exact constructions; numerically tiny leading coefficients are the
    caller's responsibility.
    """

    coeffs: Tuple[mpc, ...]
    prec: int

    def __post_init__(self) -> None:
        cs = [c if isinstance(c, mpc) else to_mpc(c, self.prec + WORK_GUARD)
              for c in self.coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs:
            cs = [mpc(0)]
        object.__setattr__(self, "coeffs", tuple(cs))

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def __call__(self, x: Scalar) -> mpc:
        with mp.workprec(self.prec + WORK_GUARD):
            x = to_mpc(x, self.prec + WORK_GUARD)
            acc = mpc(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c
            return acc

    def derivative(self) -> "ComplexPoly":
        with mp.workprec(self.prec + WORK_GUARD):
            if len(self.coeffs) == 1:
                return ComplexPoly((mpc(0),), self.prec)
            cs = tuple(self.coeffs[k] * k for k in range(1, len(self.coeffs)))
            return ComplexPoly(cs, self.prec)

    def mul(self, other: "ComplexPoly") -> "ComplexPoly":
        prec = min(self.prec, other.prec)
        with mp.workprec(prec + WORK_GUARD):
            out = [mpc(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if a == 0:
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
            return ComplexPoly(tuple(out), prec)

    def add(self, other: "ComplexPoly") -> "ComplexPoly":
        prec = min(self.prec, other.prec)
        with mp.workprec(prec + WORK_GUARD):
            n = max(len(self.coeffs), len(other.coeffs))
            out = [mpc(0)] * n
            for i, a in enumerate(self.coeffs):
                out[i] += a
            for i, b in enumerate(other.coeffs):
                out[i] += b
            return ComplexPoly(tuple(out), prec)

    def scale(self, factor: Scalar) -> "ComplexPoly":
        with mp.workprec(self.prec + WORK_GUARD):
            f = to_mpc(factor, self.prec + WORK_GUARD)
            return ComplexPoly(tuple(c * f for c in self.coeffs), self.prec)

    def deflate(self, root: Scalar) -> "ComplexPoly":
        """Synthetic division by ``X - root`` (remainder is discarded)."""
        with mp.workprec(self.prec + WORK_GUARD):
            r = to_mpc(root, self.prec + WORK_GUARD)
            n = len(self.coeffs)
            if n == 1:
                return ComplexPoly((mpc(0),), self.prec)
            out = [mpc(0)] * (n - 1)
            acc = mpc(0)
            for k in range(n - 1, 0, -1):
                acc = acc * r + self.coeffs[k]
                out[k - 1] = acc
            return ComplexPoly(tuple(out), self.prec)

    @classmethod
    def from_roots(cls, roots: Sequence[Scalar], prec: int) -> "ComplexPoly":
        """Expand the monic polynomial with the given roots."""
        with mp.workprec(prec + WORK_GUARD):
            coeffs = [mpc(1)]
            for root in roots:
                r = to_mpc(root, prec + WORK_GUARD)
                nxt = [mpc(0)] * (len(coeffs) + 1)
                for k, c in enumerate(coeffs):
                    nxt[k + 1] += c
                    nxt[k] -= c * r
                coeffs = nxt
            return cls(tuple(coeffs), prec)


# ---------------------------------------------------------------------------
# exact linear algebra
# ---------------------------------------------------------------------------


def nullspace(matrix: Sequence[Sequence[Union[Fraction, int]]]) -> Tuple[Tuple[Fraction, ...], ...]:
    """Canonical rational basis of the right nullspace of ``matrix``.

    Rows may be any rationals. Each basis vector is scaled so its first
    nonzero coordinate is 1; vectors are ordered by their free column. The
    zero matrix therefore returns the standard basis.
    """
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return ()
    ncols = len(rows[0])
    for row in rows:
        if len(row) != ncols:
            raise ValueError("ragged matrix")
    # reduced row echelon form
    pivot_cols: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = rows[r][c]
        rows[r] = [x / inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivot_cols.append(c)
        r += 1
        if r == len(rows):
            break
    free_cols = [c for c in range(ncols) if c not in pivot_cols]
    basis: List[Tuple[Fraction, ...]] = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for ri, pc in enumerate(pivot_cols):
            vec[pc] = -rows[ri][fc]
        # canonical scaling: first nonzero coordinate equals 1
        lead = next(x for x in vec if x != 0)
        vec = [x / lead for x in vec]
        basis.append(tuple(vec))
    return tuple(basis)


def bareiss_det(matrix: Sequence[Sequence[int]]) -> int:
    """Exact determinant of an integer matrix (fraction-free Bareiss)."""
    a = [[int(x) for x in row] for row in matrix]
    n = len(a)
    if n == 0:
        return 1
    for row in a:
        if len(row) != n:
            raise ValueError("determinant needs a square matrix")
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if pivot is None:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def det_fraction(matrix: Sequence[Sequence[Union[Fraction, int]]]) -> Fraction:
    """Exact determinant over the rationals (clears denominators, then Bareiss)."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    n = len(rows)
    if n == 0:
        return Fraction(1)
    scale = Fraction(1)
    cleared: List[List[int]] = []
    for row in rows:
        lcm = 1
        for x in row:
            lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
        scale /= lcm
        cleared.append([int(x * lcm) for x in row])
    return scale * bareiss_det(cleared)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


# ---------------------------------------------------------------------------
# rational reconstruction
# ---------------------------------------------------------------------------


def rational_reconstruct(approx: Union[mpf, Fraction, int, float], denom_bound: int,
                         prec: int) -> Optional[Fraction]:
    """Recover ``p/q`` with ``q <= denom_bound`` from an approximation.

    ``approx`` is taken as exact (mpf values are dyadic rationals) and walked
    through its continued-fraction convergents. The best convergent within
    the denominator bound is accepted when it matches ``approx`` to the
    resolution tolerance ``2**(-prec/2)``; otherwise None.
    """
    if denom_bound < 1:
        raise ValueError("denominator bound must be at least 1")
    if isinstance(approx, mpf):
        x = mpf_to_fraction(approx)
    elif isinstance(approx, float):
        x = Fraction(approx)
    else:
        x = Fraction(approx)
    tol = Fraction(1, 2**(prec // 2))

    # continued-fraction convergents of x
    p_prev, q_prev = 1, 0
    p_cur, q_cur = int(_floor_fraction(x)), 1
    rem = x - int(_floor_fraction(x))
    best = Fraction(p_cur, q_cur)
    while rem != 0:
        rem = 1 / rem
        a = int(_floor_fraction(rem))
        rem -= a
        p_nxt = a * p_cur + p_prev
        q_nxt = a * q_cur + q_prev
        if q_nxt > denom_bound:
            break
        p_prev, q_prev, p_cur, q_cur = p_cur, q_cur, p_nxt, q_nxt
        best = Fraction(p_cur, q_cur)
        if best == x:
            break
    if abs(x - best) <= tol:
        return best
    return None


def _floor_fraction(x: Fraction) -> int:
    return x.numerator // x.denominator


# ---------------------------------------------------------------------------
# interpolation
# ---------------------------------------------------------------------------


def lagrange_interpolate(nodes: Sequence[Tuple[Scalar, Scalar]], prec: int) -> ComplexPoly:
    """Complex interpolating polynomial through distinct nodes.

    Nodes must be pairwise separated by more than ``2**(-prec/2)``; closer
    nodes raise CoincidentNodesError. Uses Newton divided differences at
    ``prec`` plus guard bits, then expands to the monomial basis.
    """
    n = len(nodes)
    if n == 0:
        raise ValueError("at least one node required")
    work = prec + WORK_GUARD
    with mp.workprec(work):
        xs = [to_mpc(x, work) for x, _ in nodes]
        ys = [to_mpc(y, work) for _, y in nodes]
        tol = tolerance(prec)
        for i in range(n):
            for j in range(i + 1, n):
                if abs(xs[i] - xs[j]) <= tol:
                    raise CoincidentNodesError(
                        f"nodes {i} and {j} are within 2^(-{prec}/2) of each other")
        # divided differences
        table = list(ys)
        divided = [table[0]]
        for level in range(1, n):
            for i in range(n - level):
                table[i] = (table[i + 1] - table[i]) / (xs[i + level] - xs[i])
            divided.append(table[0])
        # Horner expansion of the Newton form
        coeffs = [divided[-1]]
        for k in range(n - 2, -1, -1):
            nxt = [mpc(0)] * (len(coeffs) + 1)
            for i, c in enumerate(coeffs):
                nxt[i + 1] += c
                nxt[i] -= c * xs[k]
            nxt[0] += divided[k]
            coeffs = nxt
        return ComplexPoly(tuple(coeffs), prec)
