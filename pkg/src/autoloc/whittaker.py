"""Newvector Whittaker torus values and the closed-form pairing sums.

Torus values of essential (new-) vectors are half-integral q-powers times
Schur values at the padded inverse-root list; they vanish off the dominant
cone.  The series constructors carry out the modulus-character bookkeeping
symbolically: after the cancellations the d-th coefficient of each series
is a pure rational in the inverse roots and the formal variable t stands
for q^{-1} (or q^{-s} for the Asai zeta sum), so the identities under test
are exact statements about rational coefficients.
"""

from fractions import Fraction

from . import symfunc
from .errors import InputError
from .lfactors import rankin_selberg_imprimitive
from .satake import QHalfValue, SatakeData, modulus_half
from .symfunc import TruncatedSeries, partitions, schur, schur_weight


def essential_value(sd: SatakeData, f) -> QHalfValue:
    """Whittaker value of the essential vector at diag(ϖ^f, 1), normalized at 1.

    Zero unless f_1 >= ... >= f_{n-1} >= 0; on the dominant cone the value is
    the modulus square root times s_f at the inverse roots padded with zeros.
    """
    f = tuple(int(x) for x in f)
    if len(f) != sd.n - 1:
        raise InputError("torus exponent tuple must have length n-1")
    if not symfunc.is_partition(f):
        return QHalfValue.zero(sd.q)
    s = schur(f, sd.padded_alphas())
    if s == 0:
        return QHalfValue.zero(sd.q)
    return modulus_half(sd.n, sd.q, f + (0,)) * s


def spherical_value(sd: SatakeData, lam) -> QHalfValue:
    """Shintani value of the spherical vector at the full torus point ϖ^lam."""
    if not sd.is_unramified:
        raise InputError("spherical values need an unramified datum")
    lam = tuple(int(x) for x in lam)
    if len(lam) != sd.n:
        raise InputError("torus exponent tuple must have length n")
    if not symfunc.is_dominant(lam):
        return QHalfValue.zero(sd.q)
    s = schur_weight(lam, sd.alphas)
    if s == 0:
        return QHalfValue.zero(sd.q)
    return modulus_half(sd.n, sd.q, lam) * s


def transposed_normalizer(sd: SatakeData) -> QHalfValue:
    """Essential value at the scalar shift ϖ_{n-1}^c; zero signals that the
    second transposed essential vector does not exist."""
    return essential_value(sd, (sd.conductor,) * (sd.n - 1))


def _check_pair(sd, sd_dual):
    if sd.q != sd_dual.q:
        raise InputError("paired data must share the residue cardinality")
    if sd.n != sd_dual.n:
        raise InputError("paired data must share the rank")


def pairing_series(sd: SatakeData, sd_dual: SatakeData, max_degree: int) -> TruncatedSeries:
    """Truncated essential-vector pairing sum.

    Coefficient of t^d is the sum over partitions lambda of d with at most
    n-1 rows of s_lambda(alpha padded) s_lambda(beta padded), t standing for
    q^{-1}.  At least one datum must be ramified; padding then makes the
    row restriction invisible and the series matches the imprimitive
    Rankin-Selberg series coefficientwise.
    """
    _check_pair(sd, sd_dual)
    if sd.is_unramified and sd_dual.is_unramified:
        raise InputError("pairing series needs a ramified datum "
                         "(the row restriction breaks the unramified identity)")
    if max_degree < 0:
        raise InputError("series precision must be nonnegative")
    xs, ys = sd.padded_alphas(), sd_dual.padded_alphas()
    coeffs = [Fraction(1)] + [Fraction(0)] * max_degree
    for d in range(1, max_degree + 1):
        acc = Fraction(0)
        for lam in partitions(d, max_length=sd.n - 1):
            sx = schur(lam, xs)
            if sx:
                acc += sx * schur(lam, ys)
        coeffs[d] = acc
    return TruncatedSeries(tuple(coeffs))


def transposed_pairing_series(sd: SatakeData, sd_dual: SatakeData,
                              max_degree: int) -> TruncatedSeries:
    """Truncated pairing of the essential vector against the second transposed one.

    Computed from torus values: coefficient of t^d is
    sum_{|lambda| = d} s_lambda(alpha) s_{lambda + (c..c)}(beta) / s_{(c..c)}(beta),
    the normalizer being the transposed-normalizer value of the dual datum.
    When r < n-1 the normalizer vanishes identically and so does every shifted
    numerator, and the series is zero; when r = n-1 it reproduces the
    imprimitive Rankin-Selberg series.
    """
    _check_pair(sd, sd_dual)
    if sd.is_unramified or sd.conductor < 1:
        raise InputError("transposed pairing needs a ramified datum with conductor >= 1")
    if sd.conductor != sd_dual.conductor or sd.r != sd_dual.r:
        raise InputError("the two data must have matching conductor and standard degree")
    if max_degree < 0:
        raise InputError("series precision must be nonnegative")
    n, c = sd.n, sd.conductor
    ys = sd_dual.padded_alphas()
    normalizer = schur((c,) * (n - 1), ys)
    if normalizer == 0:
        # degree r < n-1: every shifted Schur value below has n-1 rows too,
        # so the whole sum vanishes with the normalizer
        return TruncatedSeries.zero(max_degree)
    xs = sd.padded_alphas()
    coeffs = [Fraction(1)] + [Fraction(0)] * max_degree
    for d in range(1, max_degree + 1):
        acc = Fraction(0)
        for lam in partitions(d, max_length=n - 1):
            sx = schur(lam, xs)
            if sx:
                shifted = tuple(lam[i] + c if i < len(lam) else c for i in range(n - 1))
                acc += sx * schur(shifted, ys)
        coeffs[d] = acc / normalizer
    return TruncatedSeries(tuple(coeffs))


def asai_ramified_zeta_series(sd: SatakeData, max_degree: int) -> TruncatedSeries:
    """Spherical Asai zeta sum over a ramified quadratic extension.

    Coefficient of t^d is sum over partitions lambda of d of
    s_{2 lambda}(alpha), with t standing for q^{-s}; matches the series of
    the inverted ramified Asai product
    prod_i (1 - alpha_i^2 t) prod_{j<k} (1 - alpha_j alpha_k t).
    """
    if not sd.is_unramified:
        raise InputError("the spherical Asai zeta sum needs an unramified datum")
    return symfunc.littlewood_even_series(sd.alphas, max_degree)


def rankin_selberg_series(sd: SatakeData, sd_dual: SatakeData,
                          max_degree: int) -> TruncatedSeries:
    """Series of the imprimitive Rankin-Selberg factor in T = t (comparison side)."""
    return rankin_selberg_imprimitive(sd, sd_dual).series(max_degree)
