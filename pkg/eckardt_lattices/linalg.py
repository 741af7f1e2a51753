"""Exact integer and rational matrix helpers.

Matrices are plain lists of rows. Integer normal forms keep their unimodular
transforms so that callers can lift results back to the original basis.
"""

import logging
from fractions import Fraction
from math import gcd, lcm

import sympy
from sympy.matrices.normalforms import smith_normal_decomp

logger = logging.getLogger(__name__)


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(rows, ncols=0):
    if not rows:
        return [[] for _ in range(ncols)]
    return [list(column) for column in zip(*rows)]


def dot(u, v):
    return sum(x * y for x, y in zip(u, v))


def mat_vec(matrix, v):
    return [dot(row, v) for row in matrix]


def mat_mul(a, b):
    columns = transpose(b)
    return [[dot(row, column) for column in columns] for row in a]


def bilinear(gram, u, v):
    return dot(u, mat_vec(gram, v))


def gram_of(gram, rows):
    """Gram matrix of the vectors ``rows`` under the form ``gram``."""
    images = [mat_vec(gram, row) for row in rows]
    return [[dot(u, w) for w in images] for u in rows]


def exgcd(a, b):
    """Extended GCD.

    Returns ``(g, x, y)`` with ``g = gcd(a, b) >= 0`` and ``x * a + y * b == g``.
    """
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def _combine(r1, r2, x, y, z, w):
    return (
        [x * s + y * t for s, t in zip(r1, r2)],
        [z * s + w * t for s, t in zip(r1, r2)],
    )


def _add_row(rows, target, source, factor):
    rows[target] = [s + factor * t for s, t in zip(rows[target], rows[source])]


def hermite_normal_form(matrix):
    """Row-style Hermite normal form.

    Returns ``(H, U, rank)`` where ``U`` is unimodular, ``U @ matrix == H``,
    the first ``rank`` rows of ``H`` are in echelon form with positive pivots
    and entries above each pivot reduced into ``[0, pivot)``, and the remaining
    rows of ``H`` are zero. The rows ``U[rank:]`` span the integer left kernel.
    """
    a = [[int(x) for x in row] for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = identity(m)
    rank = 0
    for c in range(n):
        if rank == m:
            break
        for i in range(rank + 1, m):
            if a[i][c] == 0:
                continue
            if a[rank][c] == 0:
                a[rank], a[i] = a[i], a[rank]
                u[rank], u[i] = u[i], u[rank]
                continue
            p, q = a[rank][c], a[i][c]
            g, x, y = exgcd(p, q)
            a[rank], a[i] = _combine(a[rank], a[i], x, y, -(q // g), p // g)
            u[rank], u[i] = _combine(u[rank], u[i], x, y, -(q // g), p // g)
        if a[rank][c] == 0:
            continue
        if a[rank][c] < 0:
            a[rank] = [-x for x in a[rank]]
            u[rank] = [-x for x in u[rank]]
        pivot = a[rank][c]
        for i in range(rank):
            factor = a[i][c] // pivot
            if factor:
                _add_row(a, i, rank, -factor)
                _add_row(u, i, rank, -factor)
        rank += 1
    return a, u, rank


def row_basis(rows):
    """Canonical (HNF) basis of the integer row span of ``rows``."""
    h, _, rank = hermite_normal_form(rows)
    return h[:rank]


def integer_kernel(rows, n):
    """Basis of ``{x in Z^n : row . x == 0 for every row}`` in HNF."""
    _, u, rank = hermite_normal_form(transpose(rows, n))
    return row_basis(u[rank:])


def same_span(rows1, rows2):
    return row_basis(rows1) == row_basis(rows2)


def smith_normal_form(matrix):
    """Smith normal form with transforms.

    Returns ``(diagonal, U, V)`` with ``U @ matrix @ V`` diagonal, ``U`` and
    ``V`` unimodular, the diagonal nonnegative and each entry dividing the
    next (zeros last).
    """
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    if not m or not n:
        return [], identity(m), identity(n)
    a, s, t = smith_normal_decomp(sympy.Matrix(matrix), domain=sympy.ZZ)
    diagonal = [int(a[i, i]) for i in range(min(m, n))]
    u = [[int(s[i, j]) for j in range(m)] for i in range(m)]
    v = [[int(t[i, j]) for j in range(n)] for i in range(n)]
    for i, entry in enumerate(diagonal):
        if entry < 0:
            diagonal[i] = -entry
            u[i] = [-x for x in u[i]]
    return diagonal, u, v


def to_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    raise TypeError(f"{value!r} is not an exact rational")


def determinant(matrix):
    if not matrix:
        return 1
    return int(sympy.Matrix(matrix).det())


def rank_of(matrix):
    if not matrix:
        return 0
    return sympy.Matrix(matrix).rank()


def inverse(matrix):
    inv = sympy.Matrix(matrix).inv()
    return [[to_fraction(inv[i, j]) for j in range(inv.cols)] for i in range(inv.rows)]


def solve_in_span(rows, target):
    """Coefficients ``c`` with ``sum(c[i] * rows[i]) == target``, or None."""
    if not rows:
        return [] if not any(target) else None
    system = sympy.Matrix(rows).T
    try:
        solution, params = system.gauss_jordan_solve(sympy.Matrix(target))
    except ValueError:
        return None
    if params.shape[0]:
        solution = solution.subs({p: 0 for p in params})
    return [to_fraction(x) for x in solution]


def common_denominator(values):
    return lcm(*(Fraction(x).denominator for x in values)) if values else 1


def primitive_part(values):
    """Scale a rational vector to the primitive integer vector on its ray."""
    scale = common_denominator(values)
    ints = [int(Fraction(x) * scale) for x in values]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    return [x // g for x in ints]


def symmetric_signature(matrix):
    """Counts of positive, negative and zero pivots under congruence.

    Repeated symmetric elimination over the rationals; when every remaining
    diagonal entry vanishes, a row and column are added to a partner with a
    nonzero off-diagonal entry to create a pivot.
    """
    a = [[Fraction(x) for x in row] for row in matrix]
    n = len(a)
    positive = negative = 0
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][i] != 0), None)
        if pivot is None:
            pair = next(
                ((i, j) for i in range(k, n) for j in range(i + 1, n) if a[i][j] != 0),
                None,
            )
            if pair is None:
                break
            i, j = pair
            for row in a:
                row[i] += row[j]
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            pivot = i
        a[k], a[pivot] = a[pivot], a[k]
        for row in a:
            row[k], row[pivot] = row[pivot], row[k]
        p = a[k][k]
        if p > 0:
            positive += 1
        else:
            negative += 1
        for i in range(k + 1, n):
            if a[i][k] == 0:
                continue
            factor = a[i][k] / p
            a[i] = [x - factor * y for x, y in zip(a[i], a[k])]
            for row in a:
                row[i] -= factor * row[k]
    return positive, negative, n - positive - negative
