"""Local representation data at a non-archimedean place.

A :class:`SatakeData` packages the rank n, the residue cardinality q, the
inverse roots of the standard local factor (r of them, r = n exactly in the
unramified case) and the conductor exponent.  Half-integral powers of q,
which enter through the square root of the Borel modulus character, are
carried exactly by :class:`QHalfValue` instead of floating point.
"""

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from . import symfunc
from .errors import InputError
from .linalg import frac


class PlaceType(enum.Enum):
    SPLIT = "split"
    INERT = "inert"
    RAMIFIED = "ramified"

    @classmethod
    def parse(cls, name):
        try:
            return cls(str(name).lower())
        except ValueError:
            raise InputError("unknown place type %r (expected split/inert/ramified)" % (name,))


def _is_prime_power(q):
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            while q % d == 0:
                q //= d
            return q == 1
        d += 1
    return True  # q itself prime


@dataclass(frozen=True)
class SatakeData:
    """Rank, residue cardinality, inverse roots and conductor of a local datum.

    Invariants: r = len(alphas) <= n, every alpha nonzero, and conductor = 0
    exactly when r = n (a representation is ramified iff its standard factor
    has degree < n).
    """

    n: int
    q: int
    alphas: tuple
    conductor: int = 0

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(frac(a) for a in self.alphas))
        if self.n < 1:
            raise InputError("rank must be positive")
        if not _is_prime_power(self.q):
            raise InputError("residue cardinality must be a prime power >= 2")
        if len(self.alphas) > self.n:
            raise InputError("more inverse roots than the rank allows")
        if any(a == 0 for a in self.alphas):
            raise InputError("inverse roots must be nonzero")
        if self.conductor < 0:
            raise InputError("conductor exponent must be nonnegative")
        if (self.conductor == 0) != (len(self.alphas) == self.n):
            raise InputError("conductor 0 must mean exactly n inverse roots, and conversely")

    @property
    def r(self):
        return len(self.alphas)

    @property
    def is_unramified(self):
        return self.r == self.n

    def dual(self):
        """Contragredient datum: every inverse root gets inverted."""
        return SatakeData(self.n, self.q, tuple(1 / a for a in self.alphas), self.conductor)

    def padded_alphas(self):
        """The inverse roots padded with zeros to length n."""
        return self.alphas + (Fraction(0),) * (self.n - self.r)

    def to_json_dict(self):
        return {
            "n": self.n,
            "q": self.q,
            "alphas": [[a.numerator, a.denominator] for a in self.alphas],
            "conductor": self.conductor,
        }


@dataclass(frozen=True)
class QHalfValue:
    """An exact value c * u^m with u = q^(-1/2), canonicalized to m in {0, 1}.

    Even powers of u are folded into the rational coefficient, so a value is
    genuinely irrational exactly when half_power is 1.  Zero is stored with
    half_power 0.
    """

    coefficient: Fraction
    half_power: int
    q: int

    @classmethod
    def of(cls, q, coefficient, u_exponent=0):
        c = frac(coefficient)
        if c == 0:
            return cls(Fraction(0), 0, q)
        k, r = divmod(u_exponent, 2)
        c = c * Fraction(1, q) ** k
        if r:
            root = math.isqrt(q)
            if root * root == q:  # u itself is rational over a square cardinality
                c, r = c / root, 0
        return cls(c, r, q)

    @classmethod
    def zero(cls, q):
        return cls(Fraction(0), 0, q)

    @classmethod
    def one(cls, q):
        return cls(Fraction(1), 0, q)

    def is_zero(self):
        return self.coefficient == 0

    def _check_q(self, other):
        if self.q != other.q:
            raise InputError("cannot combine values over different residue cardinalities")

    def __mul__(self, other):
        if isinstance(other, QHalfValue):
            self._check_q(other)
            return QHalfValue.of(self.q, self.coefficient * other.coefficient,
                                 self.half_power + other.half_power)
        return QHalfValue.of(self.q, self.coefficient * frac(other), self.half_power)

    __rmul__ = __mul__

    def __add__(self, other):
        self._check_q(other)
        if self.is_zero():
            return other
        if other.is_zero():
            return self
        if self.half_power != other.half_power:
            raise InputError("cannot add an integral and a genuinely half-integral q-power")
        return QHalfValue.of(self.q, self.coefficient + other.coefficient, self.half_power)

    def __neg__(self):
        return QHalfValue(-self.coefficient, self.half_power, self.q)

    def __sub__(self, other):
        return self + (-other)

    def as_rational(self):
        if self.half_power:
            raise InputError("value carries a genuine half power of q")
        return self.coefficient

    def to_json_dict(self):
        return {
            "coefficient": [self.coefficient.numerator, self.coefficient.denominator],
            "half_power": self.half_power,
            "q": self.q,
        }


def q_sqrt_power(q, exponent) -> QHalfValue:
    """(sqrt q)^exponent as a QHalfValue (exponent of u is -exponent)."""
    return QHalfValue.of(q, 1, -exponent)


def modulus_half(n, q, f) -> QHalfValue:
    """Square root of the Borel modulus character at the torus point ϖ^f.

    For f = (f_1, ..., f_n) this is u^(sum_i (n+1-2i) f_i) with u = q^(-1/2);
    length n-1 tuples are handled by the caller appending a zero.
    """
    if len(f) != n:
        raise InputError("modulus_half expects a length-n exponent tuple")
    exponent = sum((n + 1 - 2 * (i + 1)) * fi for i, fi in enumerate(f))
    return QHalfValue.of(q, 1, exponent)


def hecke_eigenvalue(sd: SatakeData, i: int) -> QHalfValue:
    """Eigenvalue q^(i(n-i)/2) sigma_i(alpha) of the i-th spherical Hecke operator."""
    if not sd.is_unramified:
        raise InputError("Hecke eigenvalues are defined for unramified data only")
    if not 0 <= i <= sd.n:
        raise InputError("Hecke operator index out of range")
    if i == 0:
        return QHalfValue.one(sd.q)
    sigma = symfunc.elementary(i, sd.alphas)
    return q_sqrt_power(sd.q, i * (sd.n - i)) * sigma


def bc_local(sd: SatakeData, place: PlaceType):
    """Quadratic base change on Satake parameters.

    Split places give the pair (sd, sd); inert places square every parameter
    and the residue cardinality; ramified places leave the datum unchanged
    (residue degree 1).  Ramified *representations* are rejected: at that
    level the transfer runs through L-parameters, which live outside this
    toolkit.
    """
    if not sd.is_unramified:
        raise InputError("Satake-level base change needs an unramified datum")
    if place is PlaceType.SPLIT:
        return (sd, sd)
    if place is PlaceType.INERT:
        return SatakeData(sd.n, sd.q * sd.q, tuple(a * a for a in sd.alphas), 0)
    if place is PlaceType.RAMIFIED:
        return sd
    raise InputError("unknown place type %r" % (place,))


def sbc_local_split(sd: SatakeData):
    """Stable base change at a split place: the pair (sd, dual of sd)."""
    return (sd, sd.dual())


@dataclass(frozen=True)
class ThetaBCReport:
    """Both sides of the Hecke transfer identity at an inert place, plus the verdict."""

    lhs: QHalfValue
    rhs: QHalfValue
    equal: bool


def verify_theta_bc(n, i, sd: SatakeData, q_v) -> ThetaBCReport:
    """Check lambda_Pi(T_{w,i}) = lambda_pi(theta_BC(T_{w,i})) at an inert place.

    The left side is the i-th eigenvalue of the inert base change (parameters
    squared, residue cardinality squared); the right side is the transfer
    sum_k (-q)^((i-k)^2) T_{v,k} T_{v,2i-k} evaluated on the eigenvalues of sd.
    """
    if sd.q != q_v:
        raise InputError("residue cardinality mismatch between datum and place")
    if sd.n != n or not sd.is_unramified:
        raise InputError("verify_theta_bc needs an unramified rank-n datum")
    if not 1 <= i <= n:
        raise InputError("Hecke operator index out of range")
    upstairs = bc_local(sd, PlaceType.INERT)
    lhs = hecke_eigenvalue(upstairs, i)
    rhs = QHalfValue.zero(sd.q)
    for k in range(max(0, 2 * i - n), min(2 * i, n) + 1):
        sign_power = Fraction(-q_v) ** ((i - k) ** 2)
        rhs = rhs + sign_power * (hecke_eigenvalue(sd, k) * hecke_eigenvalue(sd, 2 * i - k))
    # both sides combine to integral powers of q, so they compare as rationals
    # (lhs lives over q^2, rhs over q; the QHalfValue q fields differ)
    equal = lhs.half_power == 0 and rhs.half_power == 0 and lhs.coefficient == rhs.coefficient
    return ThetaBCReport(lhs=lhs, rhs=rhs, equal=equal)
