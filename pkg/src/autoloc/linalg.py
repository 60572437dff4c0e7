"""Exact linear algebra over Q and over the localization Z_(p).

Everything here works with ``fractions.Fraction`` (or plain ints for the
integer lattice routines).  Matrices are lists of row lists.  Lattices over
Z_(p) are given by lists of generating vectors in Q^m; only the p-part of
any index or elementary divisor is ever meaningful, so generators may be
rescaled by p-units freely.
"""

from fractions import Fraction
from math import gcd

from .errors import InputError, InternalError


def frac(x):
    return x if isinstance(x, Fraction) else Fraction(x)


def frac_rows(rows):
    return [[frac(x) for x in row] for row in rows]


def identity(k):
    return [[Fraction(int(i == j)) for j in range(k)] for i in range(k)]


def zero_vector(m):
    return [Fraction(0)] * m


def mat_mul(a, b):
    n, k = len(a), len(b)
    m = len(b[0]) if b else 0
    out = []
    for i in range(n):
        row_a = a[i]
        row = [Fraction(0)] * m
        for t in range(k):
            c = row_a[t]
            if c:
                row_b = b[t]
                for j in range(m):
                    if row_b[j]:
                        row[j] += c * row_b[j]
        out.append(row)
    return out


def mat_vec(a, v):
    return [sum((row[j] * v[j] for j in range(len(v)) if v[j]), Fraction(0)) for row in a]


def transpose(a):
    if not a:
        return []
    return [list(col) for col in zip(*a)]


def mat_eq(a, b):
    return len(a) == len(b) and all(ra == rb for ra, rb in zip(a, b))


def det(a):
    """Determinant of a square rational matrix, by fraction elimination."""
    n = len(a)
    m = [row[:] for row in frac_rows(a)]
    result = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            m[col], m[piv] = m[piv], m[col]
            result = -result
        result *= m[col][col]
        inv = 1 / m[col][col]
        for r in range(col + 1, n):
            if m[r][col]:
                f = m[r][col] * inv
                for c in range(col, n):
                    m[r][c] -= f * m[col][c]
    return result


def mat_inverse(a):
    """Exact inverse of a square rational matrix; InputError if singular."""
    n = len(a)
    m = [row[:] + ident_row for row, ident_row in zip(frac_rows(a), identity(n))]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col]), None)
        if piv is None:
            raise InputError("matrix is singular")
        m[col], m[piv] = m[piv], m[col]
        inv = 1 / m[col][col]
        m[col] = [x * inv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col]:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return [row[n:] for row in m]


def rref(a):
    """Reduced row echelon form; returns (rows, pivot column list)."""
    m = [row[:] for row in frac_rows(a)]
    rows = len(m)
    cols = len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m[:r], pivots


def rational_kernel(a):
    """Basis of the right kernel {v : a v = 0} of a rational matrix."""
    if not a:
        return []
    cols = len(a[0])
    red, pivots = rref(a)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = zero_vector(cols)
        v[f] = Fraction(1)
        for r, c in enumerate(pivots):
            v[c] = -red[r][f]
        basis.append(v)
    return basis


def solve_in_row_basis(basis, v):
    """Coefficients x with x . basis = v, or None if v is outside the span."""
    if not basis:
        return None if any(v) else []
    # solve basis^T x = v
    m = [row[:] + [v[i]] for i, row in enumerate(transpose(basis))]
    red, pivots = rref(m)
    k = len(basis)
    x = [Fraction(0)] * k
    for r, c in enumerate(pivots):
        if c == k:
            return None  # inconsistent
        x[c] = red[r][k]
    # verify (guards against deficient basis input)
    check = [sum(x[i] * basis[i][j] for i in range(k)) for j in range(len(v))]
    if check != list(v):
        return None
    return x


def charpoly(a):
    """Monic characteristic polynomial of a rational matrix.

    Returned as coefficient list [c_0, ..., c_{n-1}, 1] with
    det(xI - a) = x^n + c_{n-1} x^{n-1} + ... + c_0.
    """
    n = len(a)
    coeffs = [Fraction(0)] * n + [Fraction(1)]
    m = identity(n)
    for k in range(1, n + 1):
        m = mat_mul(a, m)
        c = -sum(m[i][i] for i in range(n)) / k
        coeffs[n - k] = c
        for i in range(n):
            m[i][i] += c
    return coeffs


def _divisors(n):
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def rational_roots(coeffs):
    """All rational roots (with multiplicity) of a rational polynomial.

    Returns (roots list, degree of the rootless remainder factor).
    """
    c = [frac(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    if len(c) <= 1:
        return [], 0
    den_lcm = 1
    for x in c:
        den_lcm = den_lcm * x.denominator // gcd(den_lcm, x.denominator)
    ic = [int(x * den_lcm) for x in c]
    roots = []
    # strip roots at zero
    while ic[0] == 0:
        roots.append(Fraction(0))
        ic = ic[1:]
        if len(ic) == 1:
            return roots, 0
    candidates = set()
    for pnum in _divisors(ic[0]):
        for pden in _divisors(ic[-1]):
            candidates.add(Fraction(pnum, pden))
            candidates.add(Fraction(-pnum, pden))
    for cand in sorted(candidates):
        while len(ic) > 1:
            # synthetic division by (x - cand)
            val = Fraction(0)
            quo = [Fraction(0)] * (len(ic) - 1)
            for k in range(len(ic) - 1, -1, -1):
                if k == len(ic) - 1:
                    val = frac(ic[k])
                else:
                    quo[k] = val
                    val = frac(ic[k]) + cand * val
            if val != 0:
                break
            roots.append(cand)
            den = 1
            for x in quo:
                den = den * x.denominator // gcd(den, x.denominator)
            ic = [int(x * den) for x in quo]
    return roots, len(ic) - 1


# ---------------------------------------------------------------------------
# integer lattice machinery
# ---------------------------------------------------------------------------


def hnf_with_transform(rows):
    """Row Hermite-style echelon form over Z with transform.

    Returns (H, U) with U unimodular, U . rows = H, H in echelon form with
    nonnegative pivots and rows of zeros at the bottom.
    """
    m = [list(map(int, row)) for row in rows]
    n = len(m)
    cols = len(m[0]) if m else 0
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    r = 0
    for c in range(cols):
        # gcd-reduce column c below row r
        while True:
            nz = [i for i in range(r, n) if m[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            if piv != r:
                m[r], m[piv] = m[piv], m[r]
                u[r], u[piv] = u[piv], u[r]
            done = True
            for i in range(r + 1, n):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    if q:
                        m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                        u[i] = [x - q * y for x, y in zip(u[i], u[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < n and m[r][c]:
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
                u[r] = [-x for x in u[r]]
            # reduce entries above the pivot
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [x - q * y for x, y in zip(m[i], m[r])]
                    u[i] = [x - q * y for x, y in zip(u[i], u[r])]
            r += 1
            if r == n:
                break
    return m, u


def hnf(rows):
    """Nonzero rows of the Hermite form of the integer row span."""
    h, _ = hnf_with_transform(rows)
    return [row for row in h if any(row)]


def left_integer_kernel(a):
    """Basis of {x in Z^r : x . a = 0} for an integer matrix a (r rows).

    The returned lattice is saturated (it is the full integer kernel).
    """
    h, u = hnf_with_transform(a)
    return [u[i] for i in range(len(h)) if not any(h[i])]


def integer_kernel_columns(a):
    """Saturated basis of {v in Z^m : a v = 0} for a rational matrix a."""
    if not a:
        return []
    den = 1
    for row in a:
        for x in row:
            x = frac(x)
            den = den * x.denominator // gcd(den, x.denominator)
    int_rows = [[int(frac(x) * den) for x in row] for row in a]
    # right kernel of a = left kernel of a^T
    at = [list(col) for col in zip(*int_rows)]
    return [[Fraction(x) for x in v] for v in left_integer_kernel(at)]


def p_val(x, p):
    """p-adic valuation of a nonzero Fraction/int; None for zero."""
    x = frac(x)
    if x == 0:
        return None
    v = 0
    num, den = x.numerator, x.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def is_p_integral(x, p):
    return frac(x).denominator % p != 0


def _p_coprime_denominator(row, p):
    den = 1
    for x in row:
        d = frac(x).denominator
        while d % p == 0:
            d //= p
        den = den * d // gcd(den, d)
    return den


def lattice_basis_p(gens, p):
    """Z_(p)-basis (rational vectors) of the Z_(p)-span of ``gens``.

    Handles p in denominators by a global p-power rescale; per-vector
    p-coprime rescales do not change the span.
    """
    gens = [g for g in (list(map(frac, g)) for g in gens) if any(g)]
    if not gens:
        return []
    shift = 0
    for g in gens:
        for x in g:
            v = p_val(x, p)
            if v is not None and v < -shift:
                shift = -v
    scale = Fraction(p) ** shift
    int_rows = []
    for g in gens:
        scaled = [x * scale for x in g]
        den = _p_coprime_denominator(scaled, p)
        int_rows.append([int(x * den) for x in scaled])
    basis = hnf(int_rows)
    return [[Fraction(x) / scale for x in row] for row in basis]


def snf_exponents_p(matrix, p):
    """p-valuations of the invariant factors of a rational matrix over Z_(p).

    Works by Smith reduction over the local ring Z_(p): at every step the
    pivot is an entry of minimal p-valuation, which is then a unit times a
    power of p and clears its row and column exactly.  The matrix must have
    full rank (square); exponents may be negative if entries are not
    p-integral.
    """
    m = [row[:] for row in frac_rows(matrix)]
    n = len(m)
    if any(len(row) != n for row in m):
        raise InternalError("snf_exponents_p expects a square matrix")
    exps = []
    top = 0
    while top < n:
        best = None
        for i in range(top, n):
            for j in range(top, n):
                if m[i][j]:
                    v = p_val(m[i][j], p)
                    if best is None or v < best[0]:
                        best = (v, i, j)
        if best is None:
            raise InputError("matrix is singular over Q")
        v, bi, bj = best
        m[top], m[bi] = m[bi], m[top]
        for row in m:
            row[top], row[bj] = row[bj], row[top]
        piv = m[top][top]
        for i in range(top + 1, n):
            if m[i][top]:
                f = m[i][top] / piv
                m[i] = [x - f * y for x, y in zip(m[i], m[top])]
        for j in range(top + 1, n):
            if m[top][j]:
                f = m[top][j] / piv
                for i in range(top, n):
                    m[i][j] -= f * m[i][top]
        exps.append(v)
        top += 1
    return sorted(exps)


def quotient_exponents_p(outer_basis, inner_basis, p):
    """Elementary divisor p-exponents of (Z_(p)-span outer)/(span inner).

    Both bases must span the same Q-subspace and inner must be contained in
    outer over Z_(p); zero exponents are dropped, the rest sorted.
    """
    if len(outer_basis) != len(inner_basis):
        raise InputError("lattices of different rank have no finite quotient")
    if not outer_basis:
        return []
    coords = []
    for v in inner_basis:
        x = solve_in_row_basis(outer_basis, list(map(frac, v)))
        if x is None:
            raise InputError("inner lattice does not lie in the span of the outer one")
        coords.append(x)
    exps = snf_exponents_p(coords, p)
    if any(e < 0 for e in exps):
        raise InputError("inner lattice is not contained in the outer lattice over Z_(p)")
    return sorted(e for e in exps if e > 0)
