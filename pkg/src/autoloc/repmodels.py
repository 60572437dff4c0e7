"""Integral models of the irreducible algebraic GL3-representations.

The carrier is the space of 6-variable polynomials in X, Y, Z; A, B, C,
bihomogeneous of degrees (n+, n-), cut down to the kernel of the second
order contraction d2/dXdA + d2/dYdB + d2/dZdC.  On top of the kernel
bases we provide the substitution group action, the multinomial pairing
between a weight and its dual, the variable-swap duality, the three
tensor-factor involutions, and the p-integrality diagnostics of the
pairing (Gram elementary divisors of the saturated kernel lattices).

Monomials are keyed by exponent pairs ((a, b, c), (d, e, f)) and ordered
lexicographically so that bases and reports are deterministic.
"""

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy

from . import linalg
from .errors import InputError
from .linalg import frac


@dataclass(frozen=True)
class WeightTriple:
    """(n+, n-, v) with n+ and n- nonnegative; v an arbitrary integer."""

    n_plus: int
    n_minus: int
    v: int

    def __post_init__(self):
        if self.n_plus < 0 or self.n_minus < 0:
            raise InputError("symmetric-power degrees must be nonnegative")

    def dual(self):
        return WeightTriple(self.n_minus, self.n_plus, -self.v)

    def contracted(self):
        if self.n_plus == 0 or self.n_minus == 0:
            raise InputError("no contraction target below degree zero")
        return WeightTriple(self.n_plus - 1, self.n_minus - 1, self.v)

    def kernel_dimension(self):
        return (self.n_plus + 1) * (self.n_minus + 1) * (self.n_plus + self.n_minus + 2) // 2

    def as_tuple(self):
        return (self.n_plus, self.n_minus, self.v)


def _exponents(total):
    """All (a, b, c) with a + b + c = total, lexicographically."""
    return [(a, b, total - a - b)
            for a in range(total, -1, -1)
            for b in range(total - a, -1, -1)][::-1]


def monomials(weight: WeightTriple):
    """All monomial keys of the given bidegree, in lexicographic order."""
    return [(up, low)
            for up in _exponents(weight.n_plus)
            for low in _exponents(weight.n_minus)]


class BiHomPolynomial:
    """A bihomogeneous polynomial: weight plus a sparse coefficient map."""

    __slots__ = ("weight", "coefficients")

    def __init__(self, weight: WeightTriple, coefficients):
        cleaned = {}
        for key, value in coefficients.items():
            value = frac(value)
            if value == 0:
                continue
            up, low = tuple(key[0]), tuple(key[1])
            if len(up) != 3 or len(low) != 3 or min(up) < 0 or min(low) < 0:
                raise InputError("malformed monomial key %r" % (key,))
            if sum(up) != weight.n_plus or sum(low) != weight.n_minus:
                raise InputError("monomial %r is not bihomogeneous of bidegree (%d, %d)"
                                 % (key, weight.n_plus, weight.n_minus))
            cleaned[(up, low)] = value
        self.weight = weight
        self.coefficients = cleaned

    @classmethod
    def highest_weight_vector(cls, weight: WeightTriple):
        """X^{n+} C^{n-}, the kernel's highest weight vector."""
        key = ((weight.n_plus, 0, 0), (0, 0, weight.n_minus))
        return cls(weight, {key: Fraction(1)})

    def is_zero(self):
        return not self.coefficients

    def __eq__(self, other):
        return (isinstance(other, BiHomPolynomial)
                and self.weight == other.weight
                and self.coefficients == other.coefficients)

    def __hash__(self):
        return hash((self.weight.as_tuple(), tuple(sorted(self.coefficients.items()))))

    def __add__(self, other):
        if self.weight != other.weight:
            raise InputError("cannot add polynomials of different weight")
        out = dict(self.coefficients)
        for key, value in other.coefficients.items():
            out[key] = out.get(key, Fraction(0)) + value
        return BiHomPolynomial(self.weight, out)

    def scale(self, c):
        c = frac(c)
        return BiHomPolynomial(self.weight, {k: c * v for k, v in self.coefficients.items()})

    def coefficient_vector(self, monomial_order=None):
        order = monomial_order if monomial_order is not None else monomials(self.weight)
        return [self.coefficients.get(key, Fraction(0)) for key in order]

    @classmethod
    def from_vector(cls, weight, vector, monomial_order=None):
        order = monomial_order if monomial_order is not None else monomials(weight)
        return cls(weight, dict(zip(order, vector)))

    def to_json_dict(self):
        terms = []
        for (up, low), value in sorted(self.coefficients.items()):
            terms.append({"x": list(up), "a": list(low),
                          "coef": [value.numerator, value.denominator]})
        return {"weight": list(self.weight.as_tuple()), "terms": terms}


def contraction(poly: BiHomPolynomial) -> BiHomPolynomial:
    """The equivariant contraction d2/dXdA + d2/dYdB + d2/dZdC.

    Drops the bidegree by (1, 1); anything of degree zero in either group
    is sent to the zero polynomial at the lower weight.
    """
    w = poly.weight
    if w.n_plus == 0 or w.n_minus == 0:
        target = WeightTriple(max(w.n_plus - 1, 0), max(w.n_minus - 1, 0), w.v)
        return BiHomPolynomial(target, {})
    target = w.contracted()
    out = {}
    for (up, low), value in poly.coefficients.items():
        for slot in range(3):
            if up[slot] and low[slot]:
                new_up = tuple(e - 1 if i == slot else e for i, e in enumerate(up))
                new_low = tuple(e - 1 if i == slot else e for i, e in enumerate(low))
                key = (new_up, new_low)
                out[key] = out.get(key, Fraction(0)) + value * up[slot] * low[slot]
    return BiHomPolynomial(target, out)


def _contraction_matrix_int(weight: WeightTriple):
    """Integer matrix of the contraction: rows = source monomials, cols = target."""
    source = monomials(weight)
    target = monomials(weight.contracted())
    index = {key: i for i, key in enumerate(target)}
    rows = []
    for up, low in source:
        row = [0] * len(target)
        for slot in range(3):
            if up[slot] and low[slot]:
                new_up = tuple(e - 1 if i == slot else e for i, e in enumerate(up))
                new_low = tuple(e - 1 if i == slot else e for i, e in enumerate(low))
                row[index[(new_up, new_low)]] = up[slot] * low[slot]
        rows.append(row)
    return rows, source


@functools.lru_cache(maxsize=None)
def _kernel_rows(n_plus, n_minus):
    """Saturated integer kernel of the contraction at bidegree (n+, n-).

    Independent of the determinant twist, hence cached by bidegree alone.
    """
    weight = WeightTriple(n_plus, n_minus, 0)
    if n_plus == 0 or n_minus == 0:
        k = len(monomials(weight))
        return tuple(tuple(1 if i == j else 0 for j in range(k)) for i in range(k))
    matrix, _ = _contraction_matrix_int(weight)
    return tuple(tuple(row) for row in linalg.left_integer_kernel(matrix))


def kernel_basis(weight: WeightTriple):
    """Deterministic saturated integer basis of the contraction kernel.

    The coefficient lattice is the full kernel of the contraction over the
    integers, so it is saturated and the Gram divisors computed from it do
    not depend on basis choices.
    """
    source = monomials(weight)
    rows = _kernel_rows(weight.n_plus, weight.n_minus)
    basis = [BiHomPolynomial(weight, dict(zip(source, map(Fraction, row))))
             for row in rows]
    expected = weight.kernel_dimension()
    if len(basis) != expected:
        raise linalg.InternalError(
            "kernel dimension %d differs from the closed formula %d"
            % (len(basis), expected))
    return basis


_RANK_PRIME = 2_147_483_647


def kernel_dimension(weight: WeightTriple, exact=False):
    """Kernel dimension of the contraction, certified.

    A modular rank bound shows rank_Q >= rank_p; when the modular rank
    reaches the full target dimension, the rational rank is pinned exactly
    and the kernel dimension follows.  Otherwise (or on request) fall back
    to the exact integer kernel.
    """
    if weight.n_plus == 0 or weight.n_minus == 0:
        return len(monomials(weight))
    if not exact:
        matrix, _ = _contraction_matrix_int(weight)
        arr = numpy.array(matrix, dtype=numpy.int64) % _RANK_PRIME
        rank = _modular_rank(arr, _RANK_PRIME)
        target = len(monomials(weight.contracted()))
        if rank == target:
            return len(matrix) - rank
    return len(kernel_basis(weight))


def _modular_rank(arr, p):
    rank, _, _ = _modular_echelon(arr, p)
    return rank


def _modular_echelon(arr, p):
    """In-place-free Gauss reduction mod p; returns (rank, echelon, pivot cols)."""
    arr = arr.copy()
    rows, cols = arr.shape
    rank = 0
    pivots = []
    for c in range(cols):
        piv = None
        for r in range(rank, rows):
            if arr[r, c]:
                piv = r
                break
        if piv is None:
            continue
        arr[[rank, piv]] = arr[[piv, rank]]
        inv = pow(int(arr[rank, c]), p - 2, p)
        arr[rank] = (arr[rank] * inv) % p
        mask = arr[:, c] != 0
        mask[rank] = False
        if mask.any():
            arr[mask] = (arr[mask] - arr[mask][:, [c]] * arr[rank]) % p
        pivots.append(c)
        rank += 1
        if rank == rows:
            break
    return rank, arr, pivots


def _modular_kernel(matrix_rows, p):
    """Basis of the left kernel {x : x A = 0} of an integer matrix, mod p."""
    a = numpy.array(matrix_rows, dtype=numpy.int64).T % p
    rank, red, pivots = _modular_echelon(a, p)
    n = a.shape[1]
    free = [c for c in range(n) if c not in pivots]
    kernel = numpy.zeros((len(free), n), dtype=numpy.int64)
    for idx, f in enumerate(free):
        kernel[idx, f] = 1
        for r, c in enumerate(pivots):
            kernel[idx, c] = (-int(red[r, f])) % p
    return kernel


_GRAM_PRIME = 1_000_003  # small enough that int64 matrix products cannot overflow


def gram_nonsingular_certificate(weight: WeightTriple, prime=_GRAM_PRIME):
    """Certify that the kernel pairing is nondegenerate over Q.

    Works entirely mod a large prime: any mod-p kernel basis differs from
    the reduction of a saturated integral basis by a GL(F_p) change once
    the mod-p kernel has the expected dimension, so a nonzero mod-p Gram
    determinant forces a nonzero rational one.  Returns True on success;
    an inconclusive reduction (wrong dimension or zero determinant, which
    does not happen for primes beyond the degeneracy range) falls back to
    the exact divisor computation.
    """
    w_dual = weight.dual()
    if weight.n_plus == 0 or weight.n_minus == 0:
        side = [numpy.eye(len(monomials(weight)), dtype=numpy.int64),
                numpy.eye(len(monomials(w_dual)), dtype=numpy.int64)]
    else:
        side = [_modular_kernel(_contraction_matrix_int(weight)[0], prime),
                _modular_kernel(_contraction_matrix_int(w_dual)[0], prime)]
    expected = weight.kernel_dimension()
    if side[0].shape[0] != expected or side[1].shape[0] != expected:
        return _gram_nonsingular_exact(weight)
    source = monomials(weight)
    dual_source = monomials(w_dual)
    index = {key: i for i, key in enumerate(dual_source)}
    n_plus, n_minus = weight.n_plus, weight.n_minus
    weights_mod = numpy.zeros(len(source), dtype=numpy.int64)
    column_map = numpy.zeros(len(source), dtype=numpy.int64)
    for i, (up, low) in enumerate(source):
        m = _multinomial(n_plus, up) * _multinomial(n_minus, low)
        weights_mod[i] = pow(m % prime, prime - 2, prime)
        column_map[i] = index[(low, up)]
    paired = side[1][:, column_map]
    gram = (side[0] * weights_mod[None, :]) @ paired.T % prime
    rank, _, _ = _modular_echelon(gram % prime, prime)
    if rank == expected:
        return True
    return _gram_nonsingular_exact(weight)


def _gram_nonsingular_exact(weight):
    """Exact fallback: the divisor computation succeeds iff the rational
    Gram is nonsingular (any p works for that question)."""
    try:
        gram_divisors(weight, 2)
        return True
    except (InputError, linalg.InternalError):
        return False


def _linear_form_power_table(coeffs, max_power):
    """Powers of a 3-variable linear form as exponent->coefficient dicts."""
    base = {}
    for i, c in enumerate(coeffs):
        if c:
            key = tuple(1 if j == i else 0 for j in range(3))
            base[key] = frac(c)
    powers = [{(0, 0, 0): Fraction(1)}]
    for _ in range(max_power):
        prev = powers[-1]
        nxt = {}
        for expo, val in prev.items():
            for key, c in base.items():
                new = tuple(e + k for e, k in zip(expo, key))
                nxt[new] = nxt.get(new, Fraction(0)) + val * c
        powers.append(nxt)
    return powers


def act(g, poly: BiHomPolynomial, variant: str = "standard") -> BiHomPolynomial:
    """Substitution action of an invertible rational 3x3 matrix.

    standard: P(X, Y, Z; A, B, C) -> det(g)^v P((X,Y,Z)g; (A,B,C) g^{-T});
    dual: the same with g replaced by its inverse transpose (the
    contragredient realized on the same polynomial space).
    """
    if variant not in ("standard", "dual"):
        raise InputError("variant must be 'standard' or 'dual'")
    g = [[frac(x) for x in row] for row in g]
    if len(g) != 3 or any(len(row) != 3 for row in g):
        raise InputError("the acting matrix must be 3x3")
    d = linalg.det(g)
    if d == 0:
        raise InputError("the acting matrix must be invertible")
    if variant == "dual":
        g = linalg.transpose(linalg.mat_inverse(g))
        d = 1 / d
    h = linalg.transpose(linalg.mat_inverse(g))
    w = poly.weight
    det_factor = d ** w.v
    upper_forms = [_linear_form_power_table([g[0][j], g[1][j], g[2][j]], w.n_plus)
                   for j in range(3)]
    lower_forms = [_linear_form_power_table([h[0][j], h[1][j], h[2][j]], w.n_minus)
                   for j in range(3)]
    out = {}
    for (up, low), value in poly.coefficients.items():
        upper = {(0, 0, 0): Fraction(1)}
        for slot in range(3):
            if up[slot]:
                upper = _poly3_mul(upper, upper_forms[slot][up[slot]])
        lower = {(0, 0, 0): Fraction(1)}
        for slot in range(3):
            if low[slot]:
                lower = _poly3_mul(lower, lower_forms[slot][low[slot]])
        scale = det_factor * value
        for ue, uc in upper.items():
            for le, lc in lower.items():
                key = (ue, le)
                out[key] = out.get(key, Fraction(0)) + scale * uc * lc
    return BiHomPolynomial(w, out)


def _poly3_mul(a, b):
    out = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            key = tuple(x + y for x, y in zip(ea, eb))
            out[key] = out.get(key, Fraction(0)) + ca * cb
    return out


def _multinomial(total, parts):
    out = math.factorial(total)
    for part in parts:
        out //= math.factorial(part)
    return out


def pair(p: BiHomPolynomial, q: BiHomPolynomial) -> Fraction:
    """The multinomial pairing between a weight and its dual:
    sum over monomials of binom(n+; i+)^{-1} binom(n-; i-)^{-1} a_{i+,i-} b_{i-,i+}.
    """
    w = p.weight
    if q.weight != w.dual():
        raise InputError("pairing needs dual weights")
    acc = Fraction(0)
    for (up, low), a in p.coefficients.items():
        b = q.coefficients.get((low, up))
        if b:
            acc += Fraction(a * b, _multinomial(w.n_plus, up) * _multinomial(w.n_minus, low))
    return acc


def vee(p: BiHomPolynomial) -> BiHomPolynomial:
    """Variable-group swap P(X,Y,Z;A,B,C) -> P(A,B,C;X,Y,Z); weight goes to its dual."""
    return BiHomPolynomial(p.weight.dual(),
                           {(low, up): value for (up, low), value in p.coefficients.items()})


def gram_divisors(weight: WeightTriple, p: int):
    """Sorted p-exponents of the pairing's Gram matrix between the saturated
    kernel lattices at the weight and its dual.

    All zero means the lattice pairing is perfect over Z_(p); the p-small
    bound p > max(n+, n-) guarantees that.
    """
    if p < 2:
        raise InputError("p must be a prime")
    basis = kernel_basis(weight)
    dual_basis = kernel_basis(weight.dual())
    gram = [[pair(u, v) for v in dual_basis] for u in basis]
    if not gram:
        return []
    integral = all(linalg.is_p_integral(x, p) for row in gram for x in row)
    if integral:
        d = linalg.det(gram)
        if d == 0:
            raise linalg.InternalError("kernel pairing is degenerate over Q")
        if linalg.p_val(d, p) == 0:
            # p-integral entries with unit determinant: every divisor is 0
            return [0] * len(gram)
    return linalg.snf_exponents_p(gram, p)


def tensor_involution(kind: str, pair_of_polys):
    """The involutions on two-factor tensors: sigma swaps the factors,
    vee dualizes both in place, epsilon = sigma composed with vee."""
    first, second = pair_of_polys
    if kind == "sigma":
        if first.weight != second.weight:
            raise InputError("sigma needs equal factor weights")
        return (second, first)
    if kind == "vee":
        if first.weight.dual() != first.weight or second.weight.dual() != second.weight:
            raise InputError("vee needs self-dual factor weights")
        return (vee(first), vee(second))
    if kind == "epsilon":
        if first.weight != second.weight.dual():
            raise InputError("epsilon needs cross-dual factor weights")
        return (vee(second), vee(first))
    raise InputError("involution kind must be sigma, vee or epsilon")
