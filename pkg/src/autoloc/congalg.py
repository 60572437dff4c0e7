"""Congruence-number calculus over the localization of Z at an odd prime.

The ground ring O is Z_(p), realized as rationals with p-integral entries;
a finite flat O-algebra T is given by structure constants on a basis, a
Hecke module by its action matrices.  All congruence modules are quotients
of explicit Z_(p)-lattices inside Q-vector spaces, so their Fitting ideals
(powers of p) come out of exact integer normal forms.  Only the p-part of
anything is ever asserted: generators may be rescaled by p-units at will.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import linalg
from .errors import InputError
from .linalg import (frac, frac_rows, identity, integer_kernel_columns, is_p_integral,
                     lattice_basis_p, mat_eq, mat_mul, mat_vec, p_val,
                     quotient_exponents_p, rational_roots, snf_exponents_p, transpose)


def _is_odd_prime(p):
    if p < 3 or p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _check_p_integral_matrix(rows, p, what):
    for row in rows:
        for x in row:
            if not is_p_integral(x, p):
                raise InputError("%s must have p-integral entries" % what)


@dataclass(frozen=True)
class DVRAlgebra:
    """Finite flat commutative Z_(p)-algebra by structure constants.

    structure[i][j] is the coordinate vector of b_i * b_j; unit is the
    coordinate vector of 1.  Commutativity, associativity, unitality and
    p-integrality are checked on the basis.  Split-ness of the rational
    algebra is not checked here; :func:`split_spectrum` raises on demand.
    """

    p: int
    dim: int
    structure: tuple
    unit: tuple

    def __post_init__(self):
        if not _is_odd_prime(self.p):
            raise InputError("the residue characteristic must be an odd prime")
        d = self.dim
        structure = tuple(tuple(tuple(frac(x) for x in vec) for vec in row)
                          for row in self.structure)
        unit = tuple(frac(x) for x in self.unit)
        object.__setattr__(self, "structure", structure)
        object.__setattr__(self, "unit", unit)
        if len(structure) != d or any(len(row) != d for row in structure) or \
                any(len(vec) != d for row in structure for vec in row) or len(unit) != d:
            raise InputError("structure constants must form a d x d x d array")
        for i in range(d):
            for j in range(d):
                for x in structure[i][j]:
                    if not is_p_integral(x, self.p):
                        raise InputError("structure constants must be p-integral")
                if structure[i][j] != structure[j][i]:
                    raise InputError("multiplication must be commutative")
        mult = self.multiplication_matrices()
        one = identity(d)
        unit_action = [[sum(unit[i] * mult[i][r][c] for i in range(d)) for c in range(d)]
                       for r in range(d)]
        if not mat_eq(unit_action, one):
            raise InputError("the designated unit does not act as the identity")
        # associativity on basis triples: b_k (b_i b_j) = b_i (b_j b_k)
        for i in range(d):
            mi = mult[i]
            for j in range(i, d):
                prod_ij = list(structure[i][j])
                for k in range(d):
                    lhs = mat_vec(mult[k], prod_ij)
                    rhs = mat_vec(mi, list(structure[j][k]))
                    if lhs != rhs:
                        raise InputError("structure constants are not associative")

    def multiplication_matrices(self):
        """Regular representation: matrix of multiplication by each basis element."""
        d = self.dim
        return [[[self.structure[i][j][k] for j in range(d)] for k in range(d)]
                for i in range(d)]

    def element_action(self, coords):
        """Matrix of multiplication by the element with the given coordinates."""
        d = self.dim
        mult = self.multiplication_matrices()
        out = [[Fraction(0)] * d for _ in range(d)]
        for i, c in enumerate(coords):
            if c:
                mi = mult[i]
                for r in range(d):
                    for s in range(d):
                        if mi[r][s]:
                            out[r][s] += frac(c) * mi[r][s]
        return out

    def multiply(self, x, y):
        """Product of two coordinate vectors."""
        d = self.dim
        out = [Fraction(0)] * d
        for i in range(d):
            if x[i]:
                for j in range(d):
                    if y[j]:
                        c = frac(x[i]) * frac(y[j])
                        for k in range(d):
                            out[k] += c * self.structure[i][j][k]
        return out

    def regular_module(self):
        """T acting on itself, as a HeckeModule."""
        return HeckeModule(rank=self.dim,
                           action=tuple(tuple(tuple(row) for row in m)
                                        for m in self.multiplication_matrices()),
                           p=self.p)

    def to_json_dict(self):
        return {
            "p": self.p,
            "dim": self.dim,
            "structure": [[[[x.numerator, x.denominator] for x in vec] for vec in row]
                          for row in self.structure],
            "unit": [[x.numerator, x.denominator] for x in self.unit],
        }


@dataclass(frozen=True)
class Eigensystem:
    """A Z_(p)-algebra morphism T -> Q by its values on the basis."""

    values: tuple

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(frac(x) for x in self.values))

    def is_p_integral(self, p):
        return all(is_p_integral(x, p) for x in self.values)

    def of(self, coords):
        return sum((frac(c) * v for c, v in zip(coords, self.values)), Fraction(0))

    def validate(self, algebra: DVRAlgebra):
        if len(self.values) != algebra.dim:
            raise InputError("eigensystem has the wrong number of values")
        if self.of(algebra.unit) != 1:
            raise InputError("an eigensystem must send the unit to 1")
        for i in range(algebra.dim):
            for j in range(i, algebra.dim):
                if self.of(algebra.structure[i][j]) != self.values[i] * self.values[j]:
                    raise InputError("eigensystem is not multiplicative on the basis")

    def to_json_dict(self):
        return {"values": [[x.numerator, x.denominator] for x in self.values]}


@dataclass(frozen=True)
class HeckeModule:
    """A T-module, finite flat over Z_(p): rank and one action matrix per basis element."""

    rank: int
    action: tuple
    p: int

    def __post_init__(self):
        action = tuple(tuple(tuple(frac(x) for x in row) for row in mat)
                       for mat in self.action)
        object.__setattr__(self, "action", action)
        for mat in action:
            if len(mat) != self.rank or any(len(row) != self.rank for row in mat):
                raise InputError("action matrices must be rank x rank")
            _check_p_integral_matrix(mat, self.p, "module action")

    def validate_over(self, algebra: DVRAlgebra):
        if len(self.action) != algebra.dim:
            raise InputError("need one action matrix per algebra basis element")
        if self.p != algebra.p:
            raise InputError("module and algebra live over different primes")
        acts = [frac_rows(m) for m in self.action]
        unit_action = self.element_action(algebra.unit)
        if not mat_eq(unit_action, identity(self.rank)):
            raise InputError("the unit must act as the identity on the module")
        for i in range(algebra.dim):
            for j in range(i, algebra.dim):
                lhs = mat_mul(acts[i], acts[j])
                rhs = self.element_action(algebra.structure[i][j])
                if not mat_eq(lhs, rhs):
                    raise InputError("action matrices do not respect the structure constants")

    def element_action(self, coords):
        out = [[Fraction(0)] * self.rank for _ in range(self.rank)]
        for i, c in enumerate(coords):
            if c:
                c = frac(c)
                mat = self.action[i]
                for r in range(self.rank):
                    row = mat[r]
                    for s in range(self.rank):
                        if row[s]:
                            out[r][s] += c * row[s]
        return out

    def dual(self):
        """Hom(M, O) with (t.psi)(m) = psi(t.m): transposed action matrices."""
        return HeckeModule(rank=self.rank,
                           action=tuple(tuple(map(tuple, transpose(list(map(list, m)))))
                                        for m in self.action),
                           p=self.p)

    def direct_sum(self, other):
        if self.p != other.p:
            raise InputError("direct sum needs a common prime")
        r1, r2 = self.rank, other.rank
        mats = []
        for a, b in zip(self.action, other.action):
            mat = [[Fraction(0)] * (r1 + r2) for _ in range(r1 + r2)]
            for i in range(r1):
                for j in range(r1):
                    mat[i][j] = a[i][j]
            for i in range(r2):
                for j in range(r2):
                    mat[r1 + i][r1 + j] = b[i][j]
            mats.append(tuple(map(tuple, mat)))
        return HeckeModule(rank=r1 + r2, action=tuple(mats), p=self.p)

    def to_json_dict(self):
        return {
            "rank": self.rank,
            "action": [[[[x.numerator, x.denominator] for x in row] for row in m]
                       for m in self.action],
        }


@dataclass(frozen=True)
class SemiLinearInvolution:
    """An algebra involution with a compatible module involution.

    algebra_involution sends basis coordinates of t to those of iota(t);
    module_involution satisfies iota . t = iota(t) . iota on the module.
    """

    algebra_involution: tuple
    module_involution: tuple

    def __post_init__(self):
        object.__setattr__(self, "algebra_involution",
                           tuple(tuple(frac(x) for x in row) for row in self.algebra_involution))
        object.__setattr__(self, "module_involution",
                           tuple(tuple(frac(x) for x in row) for row in self.module_involution))

    def validate(self, algebra: DVRAlgebra, module: HeckeModule):
        iota_t = frac_rows(self.algebra_involution)
        iota_m = frac_rows(self.module_involution)
        d, m = algebra.dim, module.rank
        if len(iota_t) != d or len(iota_m) != m:
            raise InputError("involution matrices have the wrong size")
        _check_p_integral_matrix(iota_t, algebra.p, "algebra involution")
        _check_p_integral_matrix(iota_m, algebra.p, "module involution")
        if not mat_eq(mat_mul(iota_t, iota_t), identity(d)):
            raise InputError("algebra involution must square to the identity")
        if not mat_eq(mat_mul(iota_m, iota_m), identity(m)):
            raise InputError("module involution must square to the identity")
        cols = transpose(iota_t)
        if [frac(x) for x in mat_vec(iota_t, list(algebra.unit))] != list(algebra.unit):
            raise InputError("algebra involution must fix the unit")
        for i in range(d):
            for j in range(i, d):
                lhs = mat_vec(iota_t, algebra.structure[i][j])
                rhs = algebra.multiply(cols[i], cols[j])
                if list(lhs) != list(rhs):
                    raise InputError("algebra involution is not multiplicative")
        for i in range(d):
            lhs = mat_mul(iota_m, module.action[i])
            rhs = mat_mul(module.element_action(cols[i]), iota_m)
            if not mat_eq(lhs, rhs):
                raise InputError("module involution is not semi-linear over the algebra one")

    def transform_eigensystem(self, lam: Eigensystem) -> Eigensystem:
        cols = transpose(frac_rows(self.algebra_involution))
        return Eigensystem(tuple(lam.of(col) for col in cols))

    def dual(self):
        """The involution induced on Hom(M, O), with the sign flip that makes
        the evaluation pairing anti-equivariant."""
        return tuple(tuple(-x for x in row)
                     for row in transpose(frac_rows(self.module_involution)))


@dataclass(frozen=True)
class TransferData:
    """A surjective algebra morphism theta: source -> target.

    theta is a (target dim) x (source dim) matrix whose column j gives the
    coordinates of theta(source basis j).
    """

    source: DVRAlgebra
    target: DVRAlgebra
    theta: tuple

    def __post_init__(self):
        object.__setattr__(self, "theta",
                           tuple(tuple(frac(x) for x in row) for row in self.theta))
        if self.source.p != self.target.p:
            raise InputError("transfer needs a common prime")
        rows = frac_rows(self.theta)
        if len(rows) != self.target.dim or any(len(r) != self.source.dim for r in rows):
            raise InputError("theta must be (target dim) x (source dim)")
        _check_p_integral_matrix(rows, self.target.p, "transfer matrix")
        cols = transpose(rows)
        if list(self.image_of(self.source.unit)) != list(self.target.unit):
            raise InputError("theta must send the unit to the unit")
        for i in range(self.source.dim):
            for j in range(i, self.source.dim):
                lhs = self.image_of(self.source.structure[i][j])
                rhs = self.target.multiply(cols[i], cols[j])
                if list(lhs) != list(rhs):
                    raise InputError("theta is not multiplicative")
        # surjectivity over Z_(p): the column lattice must be everything
        exps = snf_exponents_p(_square_up(cols, self.target.dim, self.target.p),
                               self.target.p)
        if any(e != 0 for e in exps):
            raise InputError("theta is not surjective over the p-local ring")

    def image_of(self, coords):
        return mat_vec(frac_rows(self.theta), list(map(frac, coords)))

    def pullback(self, lam: Eigensystem) -> Eigensystem:
        cols = transpose(frac_rows(self.theta))
        return Eigensystem(tuple(lam.of(col) for col in cols))


def _square_up(rows, dim, p):
    """Pick dim independent rows spanning the same Z_(p)-lattice, via HNF."""
    basis = lattice_basis_p(rows, p)
    if len(basis) > dim:
        raise InputError("lattice rank exceeds ambient dimension")
    if len(basis) < dim:
        raise InputError("lattice does not have full rank")
    return basis


def split_spectrum(algebra: DVRAlgebra):
    """All Q-algebra morphisms T -> Q, sorted by value tuples.

    Simultaneous eigenspace refinement of the commuting regular
    representation; raises InputError when the rational algebra is not a
    split product of copies of Q.
    """
    d = algebra.dim
    mult = algebra.multiplication_matrices()
    spaces = [identity(d)]  # each entry: list of column vectors spanning a subspace
    for mat in mult:
        refined = []
        for basis in spaces:
            if len(basis) == 1:
                refined.append(basis)
                continue
            k = len(basis)
            images = [mat_vec(mat, v) for v in basis]
            restricted = []
            for img in images:
                x = linalg.solve_in_row_basis(basis, img)
                if x is None:
                    raise InputError("regular representation does not preserve "
                                     "a refinement subspace (algebra is not semisimple)")
                restricted.append(x)
            small = transpose(restricted)  # matrix of the restriction
            roots, leftover = rational_roots(linalg.charpoly(small))
            if leftover:
                raise InputError("rational algebra is not Q-split")
            refined.extend(_eigen_split(small, basis, roots, k))
        spaces = refined
    systems = []
    for basis in spaces:
        if len(basis) != 1:
            raise InputError("rational algebra is not etale (repeated eigensystem)")
        vec = basis[0]
        pivot = next(i for i, x in enumerate(vec) if x)
        values = []
        for mat in mult:
            img = mat_vec(mat, vec)
            values.append(img[pivot] / vec[pivot])
        systems.append(Eigensystem(tuple(values)))
    systems.sort(key=lambda lam: lam.values)
    if len(systems) != d:
        raise InputError("rational algebra is not Q-split etale")
    return systems


def _eigen_split(small, basis, roots, k):
    seen = {}
    for root in roots:
        seen[root] = seen.get(root, 0) + 1
    pieces = []
    total = 0
    for root in sorted(seen):
        shifted = [[small[i][j] - (root if i == j else 0) for j in range(k)]
                   for i in range(k)]
        kernel = linalg.rational_kernel(shifted)
        if len(kernel) != seen[root]:
            raise InputError("rational algebra is not semisimple "
                             "(defective eigenvalue in the regular representation)")
        lifted = [[sum(vec[i] * basis[i][j] for i in range(k)) for j in range(len(basis[0]))]
                  for vec in kernel]
        pieces.append(lifted)
        total += len(kernel)
    if total != k:
        raise InputError("rational algebra is not Q-split")
    return pieces


def _find_in_spectrum(spectrum, lam: Eigensystem):
    for mu in spectrum:
        if mu.values == lam.values:
            return mu
    raise InputError("eigensystem does not belong to the split spectrum")


def idempotent_for(algebra: DVRAlgebra, lam: Eigensystem, spectrum=None):
    """Coordinates of the primitive idempotent e_lambda in T tensor Q."""
    spectrum = spectrum if spectrum is not None else split_spectrum(algebra)
    _find_in_spectrum(spectrum, lam)
    rows = [list(mu.values) for mu in spectrum]
    rhs = [Fraction(int(mu.values == lam.values)) for mu in spectrum]
    aug = [row + [rhs[i]] for i, row in enumerate(rows)]
    red, pivots = linalg.rref(aug)
    d = algebra.dim
    coords = [Fraction(0)] * d
    for r, c in enumerate(pivots):
        if c == d:
            raise InputError("eigensystem values are degenerate")
        coords[c] = red[r][d]
    return coords


def _image_lattice(matrix, p):
    """Z_(p)-lattice generated by the columns of a rational matrix."""
    return lattice_basis_p(transpose(matrix), p)


def _fixed_lattice(matrix, p):
    """Saturated lattice of integral fixed vectors of an idempotent's action."""
    m = len(matrix)
    shifted = [[matrix[i][j] - (1 if i == j else 0) for j in range(m)] for i in range(m)]
    return integer_kernel_columns(shifted)


def _sublattice_image(matrix, lattice_rows, p):
    return lattice_basis_p([mat_vec(matrix, list(v)) for v in lattice_rows], p)


def congruence_module_divisors(algebra: DVRAlgebra, lam: Eigensystem,
                               module: HeckeModule, spectrum=None):
    """Elementary-divisor p-exponents of M^lambda / M_lambda (zeros dropped)."""
    lam.validate(algebra)
    module.validate_over(algebra)
    e_lam = idempotent_for(algebra, lam, spectrum)
    big = module.element_action(e_lam)
    upper = _image_lattice(big, algebra.p)       # e_lambda . M
    if not upper:
        return []
    lower = _fixed_lattice(big, algebra.p)       # e_lambda M_K  intersect  M
    return quotient_exponents_p(upper, lower, algebra.p)


def congruence_number(algebra: DVRAlgebra, lam: Eigensystem) -> int:
    """p-exponent of the congruence number eta_lambda (M = T itself)."""
    divisors = congruence_module_divisors(algebra, lam, algebra.regular_module())
    return sum(divisors)


def congruence_exists(algebra: DVRAlgebra, lam: Eigensystem) -> bool:
    """Brute force: is some other p-integral eigensystem congruent to lam mod p?"""
    lam.validate(algebra)
    p = algebra.p
    if not lam.is_p_integral(p):
        raise InputError("the reference eigensystem must be p-integral")
    for mu in split_spectrum(algebra):
        if mu.values == lam.values or not mu.is_p_integral(p):
            continue
        if all(is_p_integral(x - y, p) and (x == y or p_val(x - y, p) >= 1)
               for x, y in zip(mu.values, lam.values)):
            return True
    return False


@dataclass(frozen=True)
class TransferReport:
    """The three exponents in the multiplicativity relation
    eta_{lambda'}(M) = eta_lambda(M_T) * eta^#_lambda(M)."""

    total: int
    pushforward: int
    transfer: int
    transfer_divisors: tuple


def transfer_report(td: TransferData, lam: Eigensystem, module: HeckeModule) -> TransferReport:
    lam.validate(td.target)
    module.validate_over(td.source)
    p = td.source.p
    source_spec = split_spectrum(td.source)
    target_spec = split_spectrum(td.target)
    lam_prime = td.pullback(lam)
    lam_prime.validate(td.source)
    # e_theta: sum of the primitive idempotents pulled back from the target
    pulled = {td.pullback(mu).values for mu in target_spec}
    coords_theta = [Fraction(0)] * td.source.dim
    for mu in source_spec:
        if mu.values in pulled:
            e_mu = idempotent_for(td.source, mu, source_spec)
            coords_theta = [a + b for a, b in zip(coords_theta, e_mu)]
    e_lp = idempotent_for(td.source, lam_prime, source_spec)
    act_lp = module.element_action(e_lp)
    act_theta = module.element_action(coords_theta)

    m_upper = _image_lattice(act_lp, p)                    # M^{lambda'}
    m_t = _fixed_lattice(act_theta, p)                     # M_T = M cap e_theta M_K
    mt_upper = _sublattice_image(act_lp, m_t, p)           # (M_T)^lambda
    m_lower = _fixed_lattice(act_lp, p)                    # M_{lambda'} = (M_T)_lambda

    transfer_divs = quotient_exponents_p(m_upper, mt_upper, p) if m_upper else []
    push_divs = quotient_exponents_p(mt_upper, m_lower, p) if mt_upper else []
    total_divs = quotient_exponents_p(m_upper, m_lower, p) if m_upper else []
    return TransferReport(total=sum(total_divs), pushforward=sum(push_divs),
                          transfer=sum(transfer_divs), transfer_divisors=tuple(transfer_divs))


def transfer_congruence(td: TransferData, lam: Eigensystem, module: HeckeModule) -> int:
    """p-exponent of the transfer congruence number eta^#_lambda(M)."""
    return transfer_report(td, lam, module).transfer


@dataclass(frozen=True)
class TransferInvolutionReport:
    """Sign-refined exponents of the three transfer congruence modules.

    Multiplicativity holds signwise:
    eta_{lambda'}(M)[+-] = eta_lambda(M_T)[+-] * eta^#_lambda(M)[+-].
    """

    total: tuple
    pushforward: tuple
    transfer: tuple

    @property
    def multiplicative(self):
        return all(self.total[i] == self.pushforward[i] + self.transfer[i] for i in (0, 1))


def transfer_involution_report(td: TransferData, lam: Eigensystem, module: HeckeModule,
                               inv: SemiLinearInvolution) -> TransferInvolutionReport:
    """Sign decomposition of the transfer multiplicativity relation."""
    lam.validate(td.target)
    module.validate_over(td.source)
    inv.validate(td.source, module)
    p = td.source.p
    source_spec = split_spectrum(td.source)
    target_spec = split_spectrum(td.target)
    lam_prime = td.pullback(lam)
    if inv.transform_eigensystem(lam_prime).values != lam_prime.values:
        raise InputError("pulled-back eigensystem is not iota-invariant")
    pulled = {td.pullback(mu).values for mu in target_spec}
    for values in pulled:
        if inv.transform_eigensystem(Eigensystem(values)).values not in pulled:
            raise InputError("the transferred eigensystem block is not iota-stable, "
                             "so iota does not act on the transfer congruence module")
    coords_theta = [Fraction(0)] * td.source.dim
    for mu in source_spec:
        if mu.values in pulled:
            e_mu = idempotent_for(td.source, mu, source_spec)
            coords_theta = [a + b for a, b in zip(coords_theta, e_mu)]
    e_lp = idempotent_for(td.source, lam_prime, source_spec)
    act_lp = module.element_action(e_lp)
    act_theta = module.element_action(coords_theta)
    iota_m = frac_rows(inv.module_involution)

    m_upper = _image_lattice(act_lp, p)
    if not m_upper:
        zero = (0, 0)
        return TransferInvolutionReport(zero, zero, zero)
    m_t = _fixed_lattice(act_theta, p)
    mt_upper = _sublattice_image(act_lp, m_t, p)
    m_lower = _fixed_lattice(act_lp, p)

    def signed(outer, inner):
        out_pm = _plus_minus_lattices(outer, iota_m, p)
        in_pm = _plus_minus_lattices(inner, iota_m, p)
        return tuple(sum(quotient_exponents_p(o, i, p)) if o else 0
                     for o, i in zip(out_pm, in_pm))

    return TransferInvolutionReport(total=signed(m_upper, m_lower),
                                    pushforward=signed(mt_upper, m_lower),
                                    transfer=signed(m_upper, mt_upper))


def _plus_minus_lattices(lattice_rows, iota, p):
    """Projections of an iota-stable lattice to the two eigenspaces (p odd)."""
    half = Fraction(1, 2)
    out = {}
    for sign in (1, -1):
        gens = []
        for v in lattice_rows:
            img = mat_vec(iota, list(v))
            gens.append([half * (x + sign * y) for x, y in zip(v, img)])
        out[sign] = lattice_basis_p(gens, p)
    return out[1], out[-1]


def involution_parts(algebra: DVRAlgebra, lam: Eigensystem, module: HeckeModule,
                     inv: SemiLinearInvolution, spectrum=None):
    """Fitting p-exponents of the +/- eigenspaces of iota on M^lambda / M_lambda."""
    lam.validate(algebra)
    module.validate_over(algebra)
    inv.validate(algebra, module)
    if inv.transform_eigensystem(lam).values != lam.values:
        raise InputError("the eigensystem must be invariant under the algebra involution")
    e_lam = idempotent_for(algebra, lam, spectrum)
    act = module.element_action(e_lam)
    p = algebra.p
    upper = _image_lattice(act, p)
    if not upper:
        return (0, 0)
    lower = _fixed_lattice(act, p)
    iota_m = frac_rows(inv.module_involution)
    up_plus, up_minus = _plus_minus_lattices(upper, iota_m, p)
    low_plus, low_minus = _plus_minus_lattices(lower, iota_m, p)
    plus = sum(quotient_exponents_p(up_plus, low_plus, p)) if up_plus else 0
    minus = sum(quotient_exponents_p(up_minus, low_minus, p)) if up_minus else 0
    return (plus, minus)


@dataclass
class LemmaReport:
    """Outcome of one of the involution lemmas on a concrete instance."""

    name: str
    ok: Optional[bool]
    precondition_failures: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    witness: dict = field(default_factory=dict)

    @property
    def precondition_ok(self):
        return not self.precondition_failures

    def to_json_dict(self):
        return {
            "name": self.name,
            "ok": self.ok,
            "precondition_failures": list(self.precondition_failures),
            "checks": list(self.checks),
            "witness": {k: str(v) for k, v in self.witness.items()},
        }


def _canonical_rank_one_generator(lattice_rows):
    return list(lattice_rows[0])


def verify_pairing_lemma(algebra: DVRAlgebra, lam: Eigensystem,
                         module_m: HeckeModule, module_n: HeckeModule,
                         pairing, inv_m: SemiLinearInvolution,
                         inv_n: SemiLinearInvolution) -> LemmaReport:
    """Check the two displayed equalities for a perfect equivariant pairing.

    Hypotheses (perfectness, T-equivariance, iota-anti-equivariance,
    iota-invariance of lambda, lambda-rank 2 with nontrivial involution) are
    verified first; any failure produces a precondition report, not a crash.
    """
    report = LemmaReport(name="pairing_lemma", ok=None)
    p = algebra.p
    g = frac_rows(pairing)
    try:
        lam.validate(algebra)
        module_m.validate_over(algebra)
        module_n.validate_over(algebra)
        inv_m.validate(algebra, module_m)
        inv_n.validate(algebra, module_n)
    except InputError as exc:
        report.precondition_failures.append(str(exc))
        return report
    if len(g) != module_m.rank or any(len(row) != module_n.rank for row in g):
        report.precondition_failures.append("pairing matrix has the wrong shape")
        return report
    if module_m.rank != module_n.rank:
        report.precondition_failures.append("perfect pairing needs equal ranks")
        return report
    try:
        _check_p_integral_matrix(g, p, "pairing matrix")
    except InputError as exc:
        report.precondition_failures.append(str(exc))
        return report
    if p_val(linalg.det(g), p) != 0:
        report.precondition_failures.append("pairing is not perfect over Z_(p)")
    for i in range(algebra.dim):
        lhs = mat_mul(transpose(frac_rows(module_m.action[i])), g)
        rhs = mat_mul(g, frac_rows(module_n.action[i]))
        if not mat_eq(lhs, rhs):
            report.precondition_failures.append("pairing is not T-equivariant")
            break
    anti = mat_mul(transpose(frac_rows(inv_m.module_involution)),
                   mat_mul(g, frac_rows(inv_n.module_involution)))
    if not mat_eq(anti, [[-x for x in row] for row in g]):
        report.precondition_failures.append("pairing is not iota-anti-equivariant")
    if inv_m.transform_eigensystem(lam).values != lam.values:
        report.precondition_failures.append("eigensystem is not iota-invariant")
    if report.precondition_failures:
        return report

    spectrum = split_spectrum(algebra)
    e_lam = idempotent_for(algebra, lam, spectrum)
    lattices = {}
    for key, module, inv in (("M", module_m, inv_m), ("N", module_n, inv_n)):
        act = module.element_action(e_lam)
        lower = _fixed_lattice(act, p)
        if len(lower) != 2:
            report.precondition_failures.append("%s does not have lambda-rank 2" % key)
            return report
        iota = frac_rows(inv.module_involution)
        low_plus, low_minus = _plus_minus_lattices(lower, iota, p)
        if len(low_plus) != 1 or len(low_minus) != 1:
            report.precondition_failures.append(
                "involution acts trivially on the lambda-part of %s" % key)
            return report
        lattices[key] = (low_plus, low_minus)

    parts_m = involution_parts(algebra, lam, module_m, inv_m, spectrum)
    parts_n = involution_parts(algebra, lam, module_n, inv_n, spectrum)
    checks = []
    checks.append(("eta(M)[+] == eta(N)[-]", parts_m[0] == parts_n[1]))
    checks.append(("eta(M)[-] == eta(N)[+]", parts_m[1] == parts_n[0]))
    m_plus, m_minus = lattices["M"]
    n_plus, n_minus = lattices["N"]

    def pair_val(u, v):
        acc = Fraction(0)
        for i, ui in enumerate(u):
            if ui:
                for j, vj in enumerate(v):
                    if vj:
                        acc += ui * g[i][j] * vj
        return acc

    val_pm = pair_val(_canonical_rank_one_generator(m_plus),
                      _canonical_rank_one_generator(n_minus))
    val_mp = pair_val(_canonical_rank_one_generator(m_minus),
                      _canonical_rank_one_generator(n_plus))
    checks.append(("v_p(<m_+, n_->) == eta(M)[+]",
                   val_pm != 0 and p_val(val_pm, p) == parts_m[0]))
    checks.append(("v_p(<m_-, n_+>) == eta(M)[-]",
                   val_mp != 0 and p_val(val_mp, p) == parts_m[1]))
    report.checks = checks
    report.ok = all(flag for _, flag in checks)
    report.witness = {
        "eta_M": parts_m, "eta_N": parts_n,
        "pairing_plus_minus": val_pm, "pairing_minus_plus": val_mp,
    }
    return report


def verify_lf_lemma(td: TransferData, lam: Eigensystem, module: HeckeModule,
                    inv: SemiLinearInvolution, linear_form) -> LemmaReport:
    """Check the linear-form valuation bound on a transfer instance.

    For an iota-eigen functional L killing the complementary part of M_K,
    every generator delta of M_{lambda'}[sign] must satisfy
    v_p(L(delta)) >= the transfer exponent of the dual module's sign-part.
    """
    report = LemmaReport(name="lf_lemma", ok=None)
    p = td.source.p
    lform = [frac(x) for x in linear_form]
    try:
        lam.validate(td.target)
        module.validate_over(td.source)
        inv.validate(td.source, module)
    except InputError as exc:
        report.precondition_failures.append(str(exc))
        return report
    if len(lform) != module.rank:
        report.precondition_failures.append("linear form has the wrong length")
        return report
    if any(not is_p_integral(x, p) for x in lform):
        report.precondition_failures.append("linear form must be p-integral")
        return report
    lam_prime = td.pullback(lam)
    if inv.transform_eigensystem(lam_prime).values != lam_prime.values:
        report.precondition_failures.append("pulled-back eigensystem is not iota-invariant")
        return report
    iota_m = frac_rows(inv.module_involution)
    composed = mat_vec(transpose(iota_m), lform)
    if composed == lform:
        sign = 1
    elif composed == [-x for x in lform]:
        sign = -1
    else:
        report.precondition_failures.append("linear form is not an iota eigenvector")
        return report

    source_spec = split_spectrum(td.source)
    target_spec = split_spectrum(td.target)
    pulled = {td.pullback(mu).values for mu in target_spec}
    coords_theta = [Fraction(0)] * td.source.dim
    for mu in source_spec:
        if mu.values in pulled:
            e_mu = idempotent_for(td.source, mu, source_spec)
            coords_theta = [a + b for a, b in zip(coords_theta, e_mu)]
    act_theta = module.element_action(coords_theta)
    # L_K must vanish on e_# M_K, i.e. L . (1 - e_theta) = 0
    residual = [x - y for x, y in zip(lform, mat_vec(transpose(act_theta), lform))]
    if any(residual):
        report.precondition_failures.append("linear form does not vanish on the #-part")
        return report
    e_lp = idempotent_for(td.source, lam_prime, source_spec)
    act_lp = module.element_action(e_lp)
    m_lower = _fixed_lattice(act_lp, p)
    if len(m_lower) != 2:
        report.precondition_failures.append("module does not have lambda-rank 2")
        return report

    dual_module = module.dual()
    dual_inv = SemiLinearInvolution(algebra_involution=inv.algebra_involution,
                                    module_involution=inv.dual())
    act_lp_dual = transpose(act_lp)
    act_theta_dual = transpose(act_theta)
    n_upper = _image_lattice(act_lp_dual, p)
    n_t = _fixed_lattice(act_theta_dual, p)
    nt_upper = _sublattice_image(act_lp_dual, n_t, p)
    iota_dual = frac_rows(dual_inv.module_involution)
    up_plus, up_minus = _plus_minus_lattices(n_upper, iota_dual, p)
    mid_plus, mid_minus = _plus_minus_lattices(nt_upper, iota_dual, p)
    if sign == 1:
        exponent = sum(quotient_exponents_p(up_plus, mid_plus, p)) if up_plus else 0
    else:
        exponent = sum(quotient_exponents_p(up_minus, mid_minus, p)) if up_minus else 0

    low_plus, low_minus = _plus_minus_lattices(m_lower, iota_m, p)
    generators = low_plus if sign == 1 else low_minus
    checks = []
    vals = []
    for idx, delta in enumerate(generators):
        value = sum(a * b for a, b in zip(lform, delta))
        vals.append(value)
        ok = value == 0 or p_val(value, p) >= exponent
        checks.append(("v_p(L(delta_%d)) >= %d" % (idx, exponent), ok))
    if not generators:
        checks.append(("sign-part of M_{lambda'} is zero; bound vacuous", True))
    report.checks = checks
    report.ok = all(flag for _, flag in checks)
    report.witness = {"sign": sign, "transfer_exponent": exponent,
                      "values": tuple(vals)}
    return report
