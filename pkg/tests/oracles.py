"""Independent oracles used by the tests.

These deliberately avoid the library's own evaluation paths: Schur values
come from explicit semistandard-tableau enumeration, series from direct
truncated multiplication of geometric factors.
"""

from fractions import Fraction


def ssyt_schur(shape, xs):
    """s_shape(xs) as a sum over semistandard tableaux: rows weakly increase,
    columns strictly increase, entries in 1..len(xs)."""
    shape = tuple(part for part in shape if part > 0)
    m = len(xs)
    xs = [Fraction(x) for x in xs]
    if not shape:
        return Fraction(1)
    if len(shape) > m:
        return Fraction(0)
    total = Fraction(0)
    rows = len(shape)

    def fill_rows(row_idx, prev_row, acc):
        nonlocal total
        if row_idx == rows:
            total += acc
            return
        width = shape[row_idx]

        def fill_cells(col, min_val, row, acc_row):
            if col == width:
                fill_rows(row_idx + 1, row, acc_row)
                return
            lower = min_val
            if prev_row is not None and col < len(prev_row):
                lower = max(lower, prev_row[col] + 1)
            for val in range(lower, m + 1):
                if xs[val - 1] == 0:
                    continue
                fill_cells(col + 1, val, row + [val], acc_row * xs[val - 1])

        fill_cells(0, 1, [], acc)

    fill_rows(0, None, Fraction(1))
    return total


def geometric_product_series(factors, max_degree):
    """Coefficients of prod 1/(1 - c t^k) by direct truncated multiplication."""
    out = [Fraction(1)] + [Fraction(0)] * max_degree
    for c, k in factors:
        c = Fraction(c)
        geo = [Fraction(0)] * (max_degree + 1)
        power = Fraction(1)
        for d in range(0, max_degree + 1, k):
            geo[d] = power
            power *= c
        new = [Fraction(0)] * (max_degree + 1)
        for i, a in enumerate(out):
            if a:
                for j in range(max_degree + 1 - i):
                    if geo[j]:
                        new[i + j] += a * geo[j]
        out = new
    return tuple(out)


def partitions_upto(size, max_length):
    """All partitions of each d <= size with bounded length (oracle-side)."""
    out = {d: [] for d in range(size + 1)}

    def rec(remaining, cap, prefix):
        if remaining == 0:
            out[sum(prefix)].append(tuple(prefix))
            return
        if len(prefix) == max_length:
            return
        for part in range(min(cap, remaining), 0, -1):
            rec(remaining - part, part, prefix + [part])

    out[0].append(())
    for d in range(1, size + 1):
        rec(d, d, [])
    return out
