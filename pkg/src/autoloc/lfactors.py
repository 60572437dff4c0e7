"""Euler-factor arithmetic.

A local factor 1/P(q^{-s}) is represented by the polynomial P(T) with
P(0) = 1, together with the residue cardinality its variable refers to.
Standard, Rankin-Selberg, adjoint, Asai (both signs) and the imprimitive
variants are built from :class:`~autoloc.satake.SatakeData`; products,
exact quotients and rational evaluation never leave exact arithmetic.

Convention for Asai factors: the inverse roots in the input datum are those
of the standard factor at the upstairs place, while the q field is read as
the residue cardinality of the downstairs place (the variable T always
stands for q_v^{-s}).  At split and ramified places the two coincide.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InputError, InternalError
from .linalg import frac
from .satake import PlaceType, SatakeData
from .symfunc import TruncatedSeries, series_inverse


@dataclass(frozen=True)
class EulerFactor:
    """P(T) = sum c_k T^k with c_0 = 1, the factor being 1/P(q^{-s})."""

    q: int
    coefficients: tuple

    def __post_init__(self):
        coeffs = [frac(c) for c in self.coefficients]
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(coeffs))
        if not self.coefficients or self.coefficients[0] != 1:
            raise InputError("an Euler factor polynomial must have constant term 1")

    @property
    def degree(self):
        return len(self.coefficients) - 1

    @classmethod
    def one(cls, q):
        return cls(q, (Fraction(1),))

    @classmethod
    def from_inverse_roots(cls, q, roots):
        coeffs = [Fraction(1)]
        for root in roots:
            root = frac(root)
            coeffs = [a - root * b for a, b in
                      zip(coeffs + [Fraction(0)], [Fraction(0)] + coeffs)]
        return cls(q, tuple(coeffs))

    def __mul__(self, other):
        if self.q != other.q:
            raise InputError("cannot multiply factors over different residue cardinalities")
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j, b in enumerate(other.coefficients):
                    if b:
                        out[i + j] += a * b
        return EulerFactor(self.q, tuple(out))

    def divide_exact(self, other):
        """Exact polynomial quotient self/other; InputError if inexact."""
        if self.q != other.q:
            raise InputError("cannot divide factors over different residue cardinalities")
        num = list(self.coefficients)
        den = other.coefficients
        if len(num) < len(den):
            raise InputError("quotient would have negative degree")
        out = [Fraction(0)] * (len(num) - len(den) + 1)
        for k in range(len(out) - 1, -1, -1):
            c = num[k + len(den) - 1] / den[-1]
            out[k] = c
            if c:
                for j, d in enumerate(den):
                    num[k + j] -= c * d
        if any(num):
            raise InputError("polynomial division is not exact")
        return EulerFactor(self.q, tuple(out))

    def substitute_square(self):
        """The polynomial P(T^2), over the same q."""
        out = [Fraction(0)] * (2 * self.degree + 1)
        for i, c in enumerate(self.coefficients):
            out[2 * i] = c
        return EulerFactor(self.q, tuple(out))

    def series(self, max_degree) -> TruncatedSeries:
        """Power series of 1/P(t) through the given degree."""
        return series_inverse(self.coefficients, max_degree)

    def __call__(self, t):
        t = frac(t)
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * t + c
        return acc

    def to_json_dict(self):
        return {
            "q": self.q,
            "coefficients": [[c.numerator, c.denominator] for c in self.coefficients],
        }


@dataclass(frozen=True)
class FactorValue:
    """Value of 1/P(q^{-s}) at an integer s, or a pole marker."""

    value: Optional[Fraction]
    pole: bool = False

    def to_json_dict(self):
        if self.pole:
            return {"pole": True}
        return {"value": [self.value.numerator, self.value.denominator]}


def standard_factor(sd: SatakeData) -> EulerFactor:
    """P(T) = prod_{i<=r} (1 - alpha_i T)."""
    return EulerFactor.from_inverse_roots(sd.q, sd.alphas)


def rankin_selberg_imprimitive(sd1: SatakeData, sd2: SatakeData) -> EulerFactor:
    """P(T) = prod_{i,j} (1 - alpha_i beta_j T) over the two truncated root lists.

    For unramified inputs this is also the primitive Rankin-Selberg factor.
    """
    if sd1.q != sd2.q:
        raise InputError("Rankin-Selberg factor needs matching residue cardinalities")
    return EulerFactor.from_inverse_roots(
        sd1.q, [a * b for a in sd1.alphas for b in sd2.alphas])


def adjoint_factor(sd: SatakeData) -> EulerFactor:
    """Adjoint factor of an unramified datum: RS(sd, dual) / (1 - T), degree n^2 - 1."""
    if not sd.is_unramified:
        raise InputError("adjoint factor needs an unramified datum")
    rs = rankin_selberg_imprimitive(sd, sd.dual())
    try:
        return rs.divide_exact(EulerFactor(sd.q, (1, -1)))
    except InputError as exc:  # the i = j diagonal always contributes (1-T)^n
        raise InternalError("adjoint quotient failed on unramified input") from exc


def _asai_from_roots(q, alphas, place, sign):
    n = len(alphas)
    if place is PlaceType.INERT:
        unit = Fraction(1) if sign == "+" else Fraction(-1)
        linear = EulerFactor.from_inverse_roots(q, [unit * a for a in alphas])
        cross = EulerFactor.from_inverse_roots(
            q, [alphas[j] * alphas[k] for j in range(n) for k in range(j + 1, n)])
        return linear * cross.substitute_square()
    if place is PlaceType.RAMIFIED:
        # the quadratic character carries no unramified data here, so both
        # signs produce the same polynomial
        squares = EulerFactor.from_inverse_roots(q, [a * a for a in alphas])
        cross = EulerFactor.from_inverse_roots(
            q, [alphas[j] * alphas[k] for j in range(n) for k in range(j + 1, n)])
        return squares * cross
    raise InputError("split Asai factors are built from the partner datum")


def _check_sign(sign):
    if sign not in ("+", "-"):
        raise InputError("Asai sign must be '+' or '-'")


def asai_imprimitive(sd: SatakeData, place: PlaceType, sign: str = "+",
                     sd_partner: Optional[SatakeData] = None) -> EulerFactor:
    """Imprimitive Asai factor: the Asai formulas applied to the truncated root list.

    Split places take the imprimitive Rankin-Selberg factor of the two
    partners; the sign is immaterial there (the quadratic character is
    trivial on the split completion).
    """
    _check_sign(sign)
    if place is PlaceType.SPLIT:
        if sd_partner is None:
            raise InputError("split Asai factor needs the partner datum")
        return rankin_selberg_imprimitive(sd, sd_partner)
    return _asai_from_roots(sd.q, sd.alphas, place, sign)


def asai_factor(sd: SatakeData, place: PlaceType, sign: str = "+",
                sd_partner: Optional[SatakeData] = None) -> EulerFactor:
    """Primitive Asai factor of an unramified datum (equals the imprimitive one)."""
    _check_sign(sign)
    if not sd.is_unramified:
        raise InputError("primitive Asai factor needs an unramified datum")
    if place is PlaceType.SPLIT and sd_partner is not None and not sd_partner.is_unramified:
        raise InputError("primitive Asai factor needs an unramified partner")
    return asai_imprimitive(sd, place, sign, sd_partner)


def unitary_adjoint_imprimitive(data, place: PlaceType, twisted: bool = False) -> EulerFactor:
    """Imprimitive (twisted) adjoint factor of a unitary-group datum.

    ``data`` is the stable base change at the place: a pair (sd, dual sd) at
    split places, a single datum with inversion-stable parameter multiset at
    inert or ramified places.  Untwisted divides As^{(-)^n} by the local
    factor of the quadratic character; twisted divides As^{(-)^{n+1}} by the
    local zeta factor.  Inexact division signals parameters that are not of
    base-change shape.
    """
    if place is PlaceType.SPLIT:
        if not (isinstance(data, tuple) and len(data) == 2):
            raise InputError("split input must be the pair produced by sbc_local_split")
        sd, sd_dual = data
        n = sd.n
        q = sd.q
        asai = {s: asai_imprimitive(sd, place, s, sd_partner=sd_dual) for s in ("+", "-")}
        chi_at_q = 1
    else:
        if not isinstance(data, SatakeData):
            raise InputError("non-split input must be a single SatakeData")
        sd = data
        n = sd.n
        q = sd.q
        asai = {s: asai_imprimitive(sd, place, s) for s in ("+", "-")}
        chi_at_q = -1 if place is PlaceType.INERT else None  # None: ramified, factor trivial
    plus_for_untwisted = "+" if n % 2 == 0 else "-"
    wanted = plus_for_untwisted if not twisted else ("-" if plus_for_untwisted == "+" else "+")
    numerator = asai[wanted]
    if twisted:
        divisor = EulerFactor(q, (1, -1))  # zeta_{F,v}(s)^{-1} contributes (1 - T)
    elif chi_at_q is None:
        divisor = EulerFactor.one(q)
    else:
        divisor = EulerFactor(q, (1, -chi_at_q))
    return numerator.divide_exact(divisor)


def evaluate(factor: EulerFactor, s: int) -> FactorValue:
    """Value of 1/P(q^{-s}) at an integer point s, or the pole marker."""
    if not isinstance(s, int):
        raise InputError("evaluation is restricted to integer s")
    t = Fraction(1, factor.q ** s) if s >= 0 else Fraction(factor.q ** (-s))
    denom = factor(t)
    if denom == 0:
        return FactorValue(value=None, pole=True)
    return FactorValue(value=1 / denom)
