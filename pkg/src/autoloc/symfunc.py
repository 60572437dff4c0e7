"""Exact symmetric-function engine.

Schur polynomials are evaluated at exact rational points by the
Jacobi-Trudi determinant in complete homogeneous polynomials, which is
insensitive to repeated or zero parameter values (the bialternant form,
kept as a cross-check, needs distinct values).  On top of that we provide
the two truncated series used in the local computations: the Cauchy sum
sum_lambda s_lambda(x) s_lambda(y) t^|lambda| and the even-indexed
Littlewood sum sum_lambda s_{2 lambda}(x) t^|lambda|, both to be compared
coefficientwise against their product sides.
"""

from dataclasses import dataclass
from fractions import Fraction

from . import linalg
from .errors import InputError
from .linalg import frac


def is_dominant(parts) -> bool:
    return all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def is_partition(parts) -> bool:
    return is_dominant(parts) and (not parts or parts[-1] >= 0)


def check_partition(parts):
    if not is_partition(parts):
        raise InputError("weight %r is not a partition (weakly decreasing, nonnegative)" % (tuple(parts),))


def partitions(size, max_length=None, max_part=None):
    """Yield the partitions of ``size``, largest first part first.

    The order is fixed (parts chosen greedily in decreasing order) so that
    every report built from this enumeration is deterministic.
    """
    if size < 0:
        return
    if max_length is None:
        max_length = size
    if max_part is None:
        max_part = size

    def rec(remaining, cap, slots, prefix):
        if remaining == 0:
            yield tuple(prefix)
            return
        if slots == 0:
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            yield from rec(remaining - part, part, slots - 1, prefix)
            prefix.pop()

    yield from rec(size, max_part, max_length, [])


def complete_homogeneous_table(xs, max_degree):
    """[h_0(xs), ..., h_{max_degree}(xs)] by the one-variable-at-a-time recurrence."""
    h = [Fraction(1)] + [Fraction(0)] * max_degree
    for x in xs:
        x = frac(x)
        if x == 0:
            continue
        for k in range(1, max_degree + 1):
            h[k] += x * h[k - 1]
    return h


def elementary(i, xs) -> Fraction:
    """Elementary symmetric polynomial sigma_i(xs); zero once i exceeds len(xs)."""
    if i < 0:
        raise InputError("elementary symmetric index must be nonnegative")
    e = [Fraction(1)] + [Fraction(0)] * i
    for x in xs:
        x = frac(x)
        for k in range(min(i, len(e) - 1), 0, -1):
            e[k] += x * e[k - 1]
    return e[i]


def schur(lam, xs) -> Fraction:
    """s_lambda(xs) by the Jacobi-Trudi determinant det(h_{lambda_i - i + j}).

    ``lam`` must be a partition with at most len(xs) parts; trailing zeros
    are allowed.  Vanishes whenever lam has more rows than xs has nonzero
    entries.
    """
    check_partition(lam)
    lam = tuple(part for part in lam if part > 0)
    if len(lam) > len(xs):
        raise InputError("partition has more rows than there are variables")
    ell = len(lam)
    if ell == 0:
        return Fraction(1)
    h = complete_homogeneous_table(xs, lam[0] + ell)
    mat = [
        [h[lam[i] - i + j] if 0 <= lam[i] - i + j else Fraction(0) for j in range(ell)]
        for i in range(ell)
    ]
    return linalg.det(mat)


def schur_bialternant(lam, xs) -> Fraction:
    """Ratio-of-alternants evaluation; requires pairwise distinct xs."""
    check_partition(lam)
    xs = [frac(x) for x in xs]
    n = len(xs)
    if len(lam) > n:
        raise InputError("partition has more rows than there are variables")
    if len(set(xs)) != n:
        raise InputError("bialternant formula needs distinct parameter values")
    full = tuple(lam) + (0,) * (n - len(lam))
    num = linalg.det([[x ** (full[j] + n - 1 - j) for j in range(n)] for x in xs])
    den = linalg.det([[x ** (n - 1 - j) for j in range(n)] for x in xs])
    return num / den


def schur_weight(lam, xs) -> Fraction:
    """s_lambda for a dominant integer weight (possibly negative parts).

    Interpreted as the GL_n Weyl character at xs: factor out
    (x_1 ... x_n)^{lambda_n} and evaluate the remaining partition.  Needs as
    many variables as parts, all nonzero when lambda_n < 0.
    """
    if not is_dominant(lam):
        raise InputError("weight %r is not weakly decreasing" % (tuple(lam),))
    if len(lam) != len(xs):
        raise InputError("dominant weight and variable list must have equal length")
    if not lam:
        return Fraction(1)
    shift = min(lam[-1], 0)
    prod = Fraction(1)
    if shift:
        for x in xs:
            x = frac(x)
            if x == 0:
                raise InputError("negative weight entries need nonzero variables")
            prod *= x ** shift
    return prod * schur(tuple(part - shift for part in lam), xs)


@dataclass(frozen=True)
class TruncatedSeries:
    """A formal power series in t, exact and truncated at ``max_degree``."""

    coefficients: tuple

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(frac(c) for c in self.coefficients))
        if not self.coefficients:
            raise InputError("a truncated series needs at least the constant coefficient")

    @property
    def max_degree(self):
        return len(self.coefficients) - 1

    @classmethod
    def zero(cls, max_degree):
        return cls((Fraction(0),) * (max_degree + 1))

    @classmethod
    def one(cls, max_degree):
        return cls((Fraction(1),) + (Fraction(0),) * max_degree)

    def __add__(self, other):
        self._match(other)
        return TruncatedSeries(tuple(a + b for a, b in zip(self.coefficients, other.coefficients)))

    def __sub__(self, other):
        self._match(other)
        return TruncatedSeries(tuple(a - b for a, b in zip(self.coefficients, other.coefficients)))

    def __mul__(self, other):
        if isinstance(other, TruncatedSeries):
            self._match(other)
            d = self.max_degree
            out = [Fraction(0)] * (d + 1)
            for i, a in enumerate(self.coefficients):
                if a:
                    for j in range(0, d + 1 - i):
                        b = other.coefficients[j]
                        if b:
                            out[i + j] += a * b
            return TruncatedSeries(tuple(out))
        return TruncatedSeries(tuple(frac(other) * c for c in self.coefficients))

    __rmul__ = __mul__

    def is_zero(self):
        return all(c == 0 for c in self.coefficients)

    def _match(self, other):
        if self.max_degree != other.max_degree:
            raise InputError("truncated series of different precision")


def series_inverse(poly_coeffs, max_degree):
    """Series of 1/P(t) through degree ``max_degree``; P(0) must be nonzero."""
    a = [frac(c) for c in poly_coeffs]
    if not a or a[0] == 0:
        raise InputError("cannot invert a series with zero constant term")
    inv0 = 1 / a[0]
    out = [inv0] + [Fraction(0)] * max_degree
    for k in range(1, max_degree + 1):
        acc = Fraction(0)
        for j in range(1, min(k, len(a) - 1) + 1):
            if a[j]:
                acc += a[j] * out[k - j]
        out[k] = -acc * inv0
    return TruncatedSeries(tuple(out))


def product_inverse_series(factors, max_degree):
    """Series of prod 1/(1 - c t^k) for ``factors`` a list of (c, k) pairs."""
    poly = [Fraction(1)] + [Fraction(0)] * max_degree
    for c, k in factors:
        c = frac(c)
        if c == 0 or k > max_degree:
            continue
        new = poly[:]
        for i in range(0, max_degree + 1 - k):
            if poly[i]:
                new[i + k] -= c * poly[i]
        poly = new
    return series_inverse(poly, max_degree)


def cauchy_series(xs, ys, max_length, max_degree) -> TruncatedSeries:
    """Truncated Cauchy sum: coefficient of t^d is
    sum over partitions lambda of d with at most ``max_length`` rows of
    s_lambda(xs) s_lambda(ys).  ``max_length=None`` leaves the length
    unrestricted (beyond min(len(xs), len(ys)) nothing survives anyway).
    """
    if max_degree < 0:
        raise InputError("series precision must be nonnegative")
    cap = min(len(xs), len(ys))
    length = cap if max_length is None else min(max_length, cap)
    coeffs = [Fraction(0)] * (max_degree + 1)
    coeffs[0] = Fraction(1)
    for d in range(1, max_degree + 1):
        acc = Fraction(0)
        for lam in partitions(d, max_length=length):
            sx = schur(lam, xs)
            if sx:
                acc += sx * schur(lam, ys)
        coeffs[d] = acc
    return TruncatedSeries(tuple(coeffs))


def littlewood_even_series(xs, max_degree) -> TruncatedSeries:
    """Coefficient of t^d is sum over partitions lambda of d of s_{2 lambda}(xs).

    The grading tracks |lambda|, i.e. half the polynomial degree of each
    term; the matching product side is
    prod_i 1/(1 - t x_i^2) prod_{j<k} 1/(1 - t x_j x_k).
    """
    if max_degree < 0:
        raise InputError("series precision must be nonnegative")
    coeffs = [Fraction(0)] * (max_degree + 1)
    coeffs[0] = Fraction(1)
    for d in range(1, max_degree + 1):
        acc = Fraction(0)
        for lam in partitions(d, max_length=len(xs)):
            acc += schur(tuple(2 * part for part in lam), xs)
        coeffs[d] = acc
    return TruncatedSeries(tuple(coeffs))


def cauchy_product_side(xs, ys, max_degree) -> TruncatedSeries:
    """Series of prod_{i,j} 1/(1 - t x_i y_j)."""
    return product_inverse_series([(frac(x) * frac(y), 1) for x in xs for y in ys], max_degree)


def littlewood_product_side(xs, max_degree) -> TruncatedSeries:
    """Series of prod_i 1/(1 - t x_i^2) prod_{j<k} 1/(1 - t x_j x_k)."""
    xs = [frac(x) for x in xs]
    factors = [(x * x, 1) for x in xs]
    factors += [(xs[j] * xs[k], 1) for j in range(len(xs)) for k in range(j + 1, len(xs))]
    return product_inverse_series(factors, max_degree)
