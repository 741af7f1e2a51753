"""Short vectors, roots and reflection groups of positive definite lattices."""

import logging
from collections import deque
from fractions import Fraction
from math import floor, isqrt

import sympy

from . import linalg
from .conf import get_setting
from .exceptions import (
    CapExceeded,
    DimensionMismatch,
    InvalidParams,
    InvalidRank,
    LatticeError,
    NonIntegralReflection,
    NotPositiveDefinite,
)
from .lattice import LatticeVector, determinant, preserves_form, reflection_matrix, signature

logger = logging.getLogger(__name__)


def require_positive_definite(lattice):
    pos, _, _ = signature(lattice)
    if pos != lattice.rank:
        raise NotPositiveDefinite(f"{lattice} has signature {signature(lattice)}")


def pair_reduce(gram):
    """Greedy pairwise size reduction.

    Returns ``(transform, reduced_gram)`` where the rows of ``transform`` are
    the reduced basis vectors in the original coordinates.
    """
    n = len(gram)
    basis = linalg.identity(n)
    g = [list(row) for row in gram]
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if i == j or not g[i][j]:
                    continue
                k = floor(Fraction(g[i][j], g[j][j]) + Fraction(1, 2))
                if not k or g[i][i] - 2 * k * g[i][j] + k * k * g[j][j] >= g[i][i]:
                    continue
                basis[i] = [a - k * b for a, b in zip(basis[i], basis[j])]
                g = linalg.gram_of(gram, basis)
                changed = True
    return basis, g


def _ldl(gram):
    """``(d, mu)`` with x.G.x = sum_k d_k (x_k + sum_{i>k} mu_ki x_i)^2."""
    n = len(gram)
    lower, diagonal = sympy.Matrix(gram).LDLdecomposition()
    d = [linalg.to_fraction(diagonal[k, k]) for k in range(n)]
    mu = [[linalg.to_fraction(lower[i, k]) if i > k else Fraction(0) for i in range(n)] for k in range(n)]
    return d, mu


def _enumerate(gram, norm):
    """All nonzero x with x.G.x == norm (both signs)."""
    n = len(gram)
    d, mu = _ldl(gram)
    x = [0] * n
    found = []

    def descend(k, budget):
        if k < 0:
            if budget == 0 and any(x):
                found.append(list(x))
            return
        center = -sum(mu[k][i] * x[i] for i in range(k + 1, n))
        radius = isqrt(floor(budget / d[k])) + 1
        for value in range(floor(center) - radius, floor(center) + radius + 2):
            used = d[k] * (value - center) ** 2
            if used <= budget:
                x[k] = value
                descend(k - 1, budget - used)
        x[k] = 0

    descend(n - 1, Fraction(norm))
    return found


def _is_positive(coords):
    first = next((c for c in coords if c), 0)
    return first > 0


def short_vectors(lattice, norm):
    """Vectors of the given norm, one per +- pair, lexicographically positive and sorted."""
    if norm <= 0:
        raise InvalidParams(f"norm must be positive, got {norm}")
    limit = get_setting("MAX_SHORT_VECTOR_RANK")
    if lattice.rank > limit:
        raise InvalidRank(f"rank {lattice.rank} exceeds the enumeration limit {limit}")
    require_positive_definite(lattice)
    transform, reduced = pair_reduce(lattice.matrix)
    columns = linalg.transpose(transform)
    vectors = []
    for y in _enumerate(reduced, norm):
        coords = linalg.mat_vec(columns, y)
        if _is_positive(coords):
            vectors.append(tuple(coords))
    vectors.sort()
    logger.debug("%s vectors of norm %s in %s", 2 * len(vectors), norm, lattice)
    return [LatticeVector(v, lattice) for v in vectors]


def root_count(lattice):
    return 2 * len(short_vectors(lattice, 2))


def roots_of(lattice):
    half = short_vectors(lattice, 2)
    return half + [-v for v in half]


def _generator_matrix(lattice, generator):
    if isinstance(generator, LatticeVector):
        reflection = reflection_matrix(generator)
        if not reflection.integral:
            raise NonIntegralReflection(f"reflection in {generator} is not integral")
        matrix = [[int(x) for x in row] for row in reflection.matrix]
    else:
        matrix = [[int(x) for x in row] for row in generator]
        if len(matrix) != lattice.rank:
            raise DimensionMismatch(f"{len(matrix)}x{len(matrix)} matrix on a lattice of rank {lattice.rank}")
        if not preserves_form(lattice, matrix):
            raise LatticeError("generator does not preserve the Gram matrix")
    return matrix


def _sparse(matrix):
    return [[(k, x) for k, x in enumerate(row) if x] for row in matrix]


def reflection_group(lattice, generators, cap=None):
    """Elements of the group generated by reflections or isometry matrices.

    Generators are ``LatticeVector`` (reflected in) or square matrices whose
    columns are images of basis vectors. Elements are tuples of row tuples.
    """
    cap = cap or get_setting("GROUP_CAP")
    matrices = [_generator_matrix(lattice, g) for g in generators]
    sparse = [_sparse(m) for m in matrices]
    identity = tuple(tuple(row) for row in linalg.identity(lattice.rank))
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for rows in sparse:
            product = tuple(
                tuple(sum(x * current[k][c] for k, x in row) for c in range(lattice.rank))
                for row in rows
            )
            if product not in seen:
                seen.add(product)
                if len(seen) > cap:
                    raise CapExceeded(f"group generated by {len(generators)} elements exceeds {cap}")
                queue.append(product)
    logger.info("group generated by %s elements has order %s", len(generators), len(seen))
    return seen


def reflection_group_order(lattice, generators, cap=None):
    return len(reflection_group(lattice, generators, cap=cap))


def find_isometry(first, second):
    """Images in ``second`` of the basis of ``first`` under an isometry, or None."""
    if first.rank != second.rank or determinant(first) != determinant(second):
        return None
    require_positive_definite(first)
    require_positive_definite(second)
    gram1 = first.matrix
    pools = {}
    for i in range(first.rank):
        n = gram1[i][i]
        if n not in pools:
            half = [v.coords for v in short_vectors(second, n)]
            pools[n] = [(v, linalg.mat_vec(second.matrix, v)) for v in half]
            pools[n] += [(tuple(-x for x in v), [-x for x in w]) for v, w in pools[n]]
    images = []

    def extend(i):
        if i == first.rank:
            return True
        for v, gv in pools[gram1[i][i]]:
            if all(linalg.dot(gv, images[j][0]) == gram1[i][j] for j in range(i)):
                images.append((v, gv))
                if extend(i + 1):
                    return True
                images.pop()
        return False

    if not extend(0):
        logger.warning("no isometry between %s and %s", first, second)
        return None
    return [list(v) for v, _ in images]
