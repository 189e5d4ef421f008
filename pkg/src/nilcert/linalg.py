"""Exact linear algebra over field-like scalars.

All routines are deterministic: pivots are chosen as the first nonzero entry
scanning columns left to right and rows top to bottom, so echelon forms are
reproducible for golden tests.  A fraction-free fast path over Gaussian
integers backs the large kernel computations.
"""

from __future__ import annotations

from dataclasses import dataclass


class SingularMatrixError(ValueError):
    """Matrix inversion or basis change attempted with a singular matrix."""


@dataclass(frozen=True)
class Field:
    """Minimal scalar-domain adapter: identities plus an element coercion."""

    zero: object
    one: object
    name: str
    coerce: object = None  # callable turning ints/Fractions into field scalars


def rref(rows, zero, one):
    """Reduced row echelon form with unit pivots.

    Returns (rows, pivot_columns); zero rows are kept at the bottom.  Scalars
    are tested against zero through their truth value, which every exact
    scalar type here implements cheaply.
    """
    rows = [list(r) for r in rows]
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for col in range(ncols):
        if r == nrows:
            break
        pr = None
        for k in range(r, nrows):
            if rows[k][col]:
                pr = k
                break
        if pr is None:
            continue
        if pr != r:
            rows[r], rows[pr] = rows[pr], rows[r]
        pv = rows[r][col]
        if pv != one:
            rows[r] = [x / pv for x in rows[r]]
        for k in range(nrows):
            if k != r and rows[k][col]:
                f = rows[k][col]
                rk, rr = rows[k], rows[r]
                rows[k] = [a - f * b if b else a for a, b in zip(rk, rr)]
        pivots.append(col)
        r += 1
    return rows, pivots


def rank(rows, zero, one) -> int:
    if not rows:
        return 0
    return len(rref(rows, zero, one)[1])


def kernel_basis(rows, ncols, zero, one):
    """Basis of {x : A x = 0} for the matrix with the given rows.

    The basis is the standard free-column parametrization of the RREF, taken
    in ascending free-column order, so the output is deterministic.
    """
    if not rows:
        return [[one if c == f else zero for c in range(ncols)] for f in range(ncols)]
    reduced, pivots = rref(rows, zero, one)
    pivot_set = set(pivots)
    basis = []
    for free_col in range(ncols):
        if free_col in pivot_set:
            continue
        v = [zero] * ncols
        v[free_col] = one
        for ri, pc in enumerate(pivots):
            v[pc] = zero - reduced[ri][free_col]
        basis.append(v)
    return basis


def invert_matrix(matrix, zero, one):
    """Inverse via Gauss-Jordan on an identity augment."""
    n = len(matrix)
    aug = [list(row) + [one if i == j else zero for j in range(n)]
           for i, row in enumerate(matrix)]
    reduced, pivots = rref(aug, zero, one)
    if pivots != list(range(n)):
        raise SingularMatrixError("matrix is singular")
    return [row[n:] for row in reduced]


def det(matrix, zero, one):
    """Determinant by forward elimination with exact division."""
    n = len(matrix)
    rows = [list(r) for r in matrix]
    out = one
    for col in range(n):
        pr = None
        for k in range(col, n):
            if rows[k][col]:
                pr = k
                break
        if pr is None:
            return zero
        if pr != col:
            rows[col], rows[pr] = rows[pr], rows[col]
            out = zero - out
        pv = rows[col][col]
        out = out * pv
        for k in range(col + 1, n):
            if rows[k][col]:
                f = rows[k][col] / pv
                rows[k] = [a - f * b if b else a
                           for a, b in zip(rows[k], rows[col])]
    return out


def solve_right(matrix, rhs, zero, one):
    """One exact solution of A x = rhs (free variables set to 0), or None."""
    aug = [list(row) + [b] for row, b in zip(matrix, rhs)]
    ncols = len(matrix[0])
    reduced, pivots = rref(aug, zero, one)
    if ncols in pivots:
        return None
    x = [zero] * ncols
    for ri, pc in enumerate(pivots):
        x[pc] = reduced[ri][ncols]
    return x


def vec_matmul(vector, matrix, zero):
    """Row vector times matrix."""
    ncols = len(matrix[0])
    out = [zero] * ncols
    for k, vk in enumerate(vector):
        if not vk:
            continue
        row = matrix[k]
        out = [acc + vk * m if m else acc for acc, m in zip(out, row)]
    return out


def matmul(a, b, zero):
    return [vec_matmul(row, b, zero) for row in a]


# -- fraction-free fast path over Gaussian integers ------------------------------

def gaussian_int_rank(rows) -> int:
    """Rank of a matrix of Gaussian integers given as (re, im) int pairs.

    Single-step Bareiss elimination: the cross-multiplied update is divided
    exactly by the previous pivot, so intermediate entries stay minors of the
    input instead of growing exponentially.  No content stripping: it would
    break the exactness of the Bareiss division.
    """
    rows = [list(r) for r in rows if any(a or b for a, b in r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rk = 0
    prev_re, prev_im, prev_norm = 1, 0, 1
    for col in range(ncols):
        pr = None
        for k in range(rk, len(rows)):
            if rows[k][col] != (0, 0):
                pr = k
                break
        if pr is None:
            continue
        if pr != rk:
            rows[rk], rows[pr] = rows[pr], rows[rk]
        pa, pb = rows[rk][col]
        prow = rows[rk]
        for k in range(rk + 1, len(rows)):
            ka, kb = rows[k][col]
            row = rows[k]
            new = []
            # every row below is rescaled, zero pivot entries included;
            # skipping them would break the exactness of the division
            for (xa, xb), (ya, yb) in zip(row, prow):
                na = pa * xa - pb * xb - (ka * ya - kb * yb)
                nb = pa * xb + pb * xa - (ka * yb + kb * ya)
                if prev_norm != 1 or prev_im:
                    # exact division by the previous pivot (Bareiss identity)
                    da = na * prev_re + nb * prev_im
                    db = nb * prev_re - na * prev_im
                    na, nb = da // prev_norm, db // prev_norm
                new.append((na, nb))
            rows[k] = new
        prev_re, prev_im = pa, pb
        prev_norm = pa * pa + pb * pb
        rk += 1
        if rk == len(rows):
            break
    return rk
