import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd, prod
from typing import NamedTuple

from . import linalg
from .exceptions import (
    AsymmetricGram,
    DegenerateLattice,
    DimensionMismatch,
    InvalidRank,
    IsotropicVector,
    MalformedInput,
    NonIntegralOverlattice,
    NotIsotropicGraph,
    UnknownKind,
    ZeroScale,
    ZeroVector,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GramLattice:
    labels: tuple
    gram: tuple

    def __post_init__(self):
        if len(self.gram) != len(self.labels):
            raise DimensionMismatch(
                f"{len(self.labels)} labels for a Gram matrix with {len(self.gram)} rows"
            )
        for i, row in enumerate(self.gram):
            if len(row) != len(self.gram):
                raise DimensionMismatch(f"row {i} of the Gram matrix has length {len(row)}")
        for i, j in itertools.combinations(range(len(self.gram)), 2):
            if self.gram[i][j] != self.gram[j][i]:
                raise AsymmetricGram(
                    f"entry ({i},{j})={self.gram[i][j]} differs from ({j},{i})={self.gram[j][i]}"
                )

    def __str__(self):
        return f"lattice of rank {self.rank} ({', '.join(self.labels)})"

    @property
    def rank(self):
        return len(self.labels)

    @cached_property
    def matrix(self):
        return [list(row) for row in self.gram]

    def dot(self, u, v):
        return linalg.bilinear(self.matrix, u, v)

    def vector(self, coords):
        return LatticeVector(tuple(coords), self)

    def basis_vector(self, label):
        coords = [0] * self.rank
        coords[self.labels.index(label)] = 1
        return self.vector(coords)

    def combination(self, **coefficients):
        """``L.combination(e1=2, f1=-2)`` builds 2e1 - 2f1 from labels."""
        coords = [0] * self.rank
        for label, c in coefficients.items():
            coords[self.labels.index(label)] += c
        return self.vector(coords)

    def to_json(self):
        return {"labels": list(self.labels), "gram": [list(row) for row in self.gram]}

    @classmethod
    def from_json(cls, data):
        try:
            return make_lattice(data["labels"], data["gram"])
        except (KeyError, TypeError) as e:
            raise MalformedInput(f"not a lattice document: {e}") from e


@dataclass(frozen=True)
class LatticeVector:
    coords: tuple
    home: GramLattice = field(repr=False)

    def __post_init__(self):
        if len(self.coords) != self.home.rank:
            raise DimensionMismatch(
                f"vector of length {len(self.coords)} in a lattice of rank {self.home.rank}"
            )

    def __add__(self, other):
        return LatticeVector(tuple(a + b for a, b in zip(self.coords, other.coords)), self.home)

    def __sub__(self, other):
        return LatticeVector(tuple(a - b for a, b in zip(self.coords, other.coords)), self.home)

    def __neg__(self):
        return LatticeVector(tuple(-a for a in self.coords), self.home)

    def __mul__(self, k):
        return LatticeVector(tuple(k * a for a in self.coords), self.home)

    __rmul__ = __mul__

    def __str__(self):
        terms = []
        for label, c in zip(self.home.labels, self.coords):
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            amount = "" if abs(c) == 1 else str(abs(c))
            terms.append(f"{sign}{amount}{label}")
        text = "".join(terms) or "0"
        return text[1:] if text.startswith("+") else text

    def dot(self, other):
        return self.home.dot(self.coords, other.coords)

    def norm(self):
        return self.dot(self)

    def is_zero(self):
        return not any(self.coords)

    def content(self):
        g = 0
        for c in self.coords:
            g = gcd(g, c)
        return g

    def is_primitive(self):
        return self.content() == 1


@dataclass(frozen=True)
class LatticeEmbedding:
    sub: GramLattice
    ambient: GramLattice
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.sub.rank:
            raise DimensionMismatch(
                f"{len(self.images)} images for a sublattice of rank {self.sub.rank}"
            )
        for image in self.images:
            if len(image) != self.ambient.rank:
                raise DimensionMismatch(
                    f"image of length {len(image)} in an ambient of rank {self.ambient.rank}"
                )
        gram = linalg.gram_of(self.ambient.matrix, [list(x) for x in self.images])
        if gram != self.sub.matrix:
            raise DimensionMismatch("images do not reproduce the Gram matrix of the sublattice")
        if self.images and linalg.rank_of([list(x) for x in self.images]) != len(self.images):
            raise DimensionMismatch("images are linearly dependent")

    @property
    def rows(self):
        return [list(x) for x in self.images]

    def image_of(self, coords):
        """Ambient coordinates of the sublattice vector with ``coords``."""
        result = [0] * self.ambient.rank
        for c, image in zip(coords, self.images):
            if c:
                result = [r + c * x for r, x in zip(result, image)]
        return self.ambient.vector(result)

    def same_image(self, other):
        return linalg.same_span(self.rows, other.rows)

    def to_json(self):
        data = self.sub.to_json()
        data["images"] = self.rows
        data["ambient"] = self.ambient.to_json()
        return data

    @classmethod
    def from_json(cls, data):
        try:
            ambient = GramLattice.from_json(data["ambient"])
            images = [tuple(int(x) for x in row) for row in data["images"]]
        except (KeyError, TypeError, ValueError) as e:
            raise MalformedInput(f"not an embedding document: {e}") from e
        if "gram" in data:
            sub = GramLattice.from_json(data)
        else:
            sub = make_lattice(
                [f"v{i + 1}" for i in range(len(images))],
                linalg.gram_of(ambient.matrix, [list(x) for x in images]),
            )
        return cls(sub, ambient, tuple(images))


@dataclass(frozen=True)
class FiniteAbelianGroupPresentation:
    """Generators of L*/L as rational vectors in the basis of L."""

    generators: tuple
    orders: tuple

    @property
    def order(self):
        return prod(self.orders)

    @property
    def is_two_elementary(self):
        return all(n == 2 for n in self.orders)

    def elements(self):
        return itertools.product(*(range(n) for n in self.orders))

    def representative(self, coefficients):
        rank = len(self.generators[0]) if self.generators else 0
        result = [Fraction(0)] * rank
        for c, generator in zip(coefficients, self.generators):
            if c:
                result = [r + c * g for r, g in zip(result, generator)]
        return result

    @cached_property
    def lookup(self):
        table = {}
        for coefficients in self.elements():
            key = tuple(x % 1 for x in self.representative(coefficients))
            table[key] = coefficients
        return table

    def coordinates(self, vector):
        """Coefficients of the class of a dual vector, or None when it is not one."""
        key = tuple(Fraction(x) % 1 for x in vector)
        if not self.generators:
            return () if not any(key) else None
        return self.lookup.get(key)


def make_lattice(labels, gram):
    if labels is None:
        labels = [f"b{i + 1}" for i in range(len(gram))]
    try:
        rows = tuple(tuple(int(x) for x in row) for row in gram)
    except (TypeError, ValueError) as e:
        raise MalformedInput(f"Gram entries must be integers: {e}") from e
    return GramLattice(tuple(str(x) for x in labels), rows)


def relabel(lattice, labels):
    return make_lattice(labels, lattice.gram)


def _cartan(n, edges):
    gram = [[2 * (i == j) for j in range(n)] for i in range(n)]
    for i, j in edges:
        gram[i - 1][j - 1] = gram[j - 1][i - 1] = -1
    return gram


def _parse_kind(kind, rank):
    kind = kind.replace("_", "").replace("{", "").replace("}", "")
    letter, rest = kind[:1].upper(), kind[1:]
    if rest and rank is None and letter != "I":
        try:
            rank = int(rest)
        except ValueError as e:
            raise UnknownKind(f"unknown lattice kind {kind}") from e
    return letter, rank


def standard_lattice(kind, rank=None, p=None, q=None):
    """Standard lattices in Bourbaki simple-root conventions.

    Kinds: ``U``, ``A``, ``D``, ``E`` (with a rank, or written ``D4``,
    ``E8``...) and ``I`` with signature ``(p, q)``.
    """
    letter, rank = _parse_kind(kind, rank)
    if letter == "U":
        return make_lattice(["e", "f"], [[0, 1], [1, 0]])
    if letter == "I":
        if p is None or q is None or p < 0 or q < 0 or p + q == 0:
            raise InvalidRank(f"I_(p,q) needs p, q >= 0 with p + q > 0, got ({p}, {q})")
        diagonal = [1] * p + [-1] * q
        return make_lattice(
            [f"x{i + 1}" for i in range(p + q)],
            [[diagonal[i] * (i == j) for j in range(p + q)] for i in range(p + q)],
        )
    if letter not in "ADE":
        raise UnknownKind(f"unknown lattice kind {kind}")
    if rank is None:
        raise InvalidRank(f"{letter} needs a rank")
    labels = [f"a{i + 1}" for i in range(rank)]
    if letter == "A":
        if rank < 1:
            raise InvalidRank(f"A_{rank} does not exist")
        return make_lattice(labels, _cartan(rank, [(i, i + 1) for i in range(1, rank)]))
    if letter == "D":
        if rank < 4:
            raise InvalidRank(f"D_{rank} is not supported, rank must be at least 4")
        edges = [(i, i + 1) for i in range(1, rank - 1)] + [(rank - 2, rank)]
        return make_lattice(labels, _cartan(rank, edges))
    if rank not in (6, 7, 8):
        raise InvalidRank(f"E_{rank} does not exist")
    edges = [(1, 3), (2, 4)] + [(i, i + 1) for i in range(3, rank)]
    return make_lattice(labels, _cartan(rank, edges))


def direct_sum(*lattices):
    labels = [label for lattice in lattices for label in lattice.labels]
    n = len(labels)
    gram = [[0] * n for _ in range(n)]
    offset = 0
    for lattice in lattices:
        for i, row in enumerate(lattice.gram):
            gram[offset + i][offset : offset + lattice.rank] = list(row)
        offset += lattice.rank
    return make_lattice(labels, gram)


def rescale(lattice, k):
    if k == 0:
        raise ZeroScale("cannot rescale a lattice by 0")
    return make_lattice(lattice.labels, [[k * x for x in row] for row in lattice.gram])


def determinant(lattice):
    return linalg.determinant(lattice.matrix)


def signature(lattice):
    return linalg.symmetric_signature(lattice.matrix)


def is_even(lattice):
    return all(lattice.gram[i][i] % 2 == 0 for i in range(lattice.rank))


def _require_nondegenerate(lattice):
    if determinant(lattice) == 0:
        raise DegenerateLattice(f"{lattice} is degenerate")


def dual_and_discriminant(lattice):
    """Dual basis (rows of the inverse Gram) and a presentation of L*/L."""
    _require_nondegenerate(lattice)
    dual = linalg.inverse(lattice.matrix)
    diagonal, _, v = linalg.smith_normal_form(lattice.matrix)
    generators, orders = [], []
    for i, d in enumerate(diagonal):
        if d == 1:
            continue
        generators.append(tuple(Fraction(v[r][i], d) for r in range(lattice.rank)))
        orders.append(d)
    return dual, FiniteAbelianGroupPresentation(tuple(generators), tuple(orders))


def _sublattice(ambient, rows, prefix):
    gram = linalg.gram_of(ambient.matrix, rows)
    sub = make_lattice([f"{prefix}{i + 1}" for i in range(len(rows))], gram)
    return LatticeEmbedding(sub, ambient, tuple(tuple(row) for row in rows))


def orthogonal_complement(embedding):
    ambient = embedding.ambient
    _require_nondegenerate(ambient)
    pairings = [linalg.mat_vec(ambient.matrix, row) for row in embedding.rows]
    rows = linalg.integer_kernel(pairings, ambient.rank)
    return _sublattice(ambient, rows, "c")


def saturate_rows(rows, n):
    """Basis of (Q-span of rows) meet Z^n, kept close to ``rows``.

    The saturated lattice is expressed in coordinates relative to ``rows`` and
    put into Hermite form there, so each new basis vector is a row of the input
    plus small multiples of later rows.
    """
    if not rows:
        return []
    saturated = linalg.integer_kernel(linalg.integer_kernel(rows, n), n)
    relative = [linalg.solve_in_span(rows, row) for row in saturated]
    scale = linalg.common_denominator([x for row in relative for x in row])
    scaled = [[int(x * scale) for x in row] for row in relative]
    basis = []
    for coefficients in linalg.row_basis(scaled):
        vector = [Fraction(0)] * n
        for c, row in zip(coefficients, rows):
            if c:
                vector = [v + Fraction(c, scale) * x for v, x in zip(vector, row)]
        basis.append([int(x) for x in vector])
    return basis


def saturation(embedding):
    ambient = embedding.ambient
    _require_nondegenerate(ambient)
    return _sublattice(ambient, saturate_rows(embedding.rows, ambient.rank), "s")


def is_primitive(embedding):
    return linalg.same_span(embedding.rows, saturation(embedding).rows)


def divisibility(vector):
    if vector.is_zero():
        raise ZeroVector("divisibility of the zero vector")
    g = 0
    for x in linalg.mat_vec(vector.home.matrix, vector.coords):
        g = gcd(g, x)
    if g == 0:
        raise DegenerateLattice(f"{vector} lies in the radical")
    return g


class Reflection(NamedTuple):
    matrix: list
    integral: bool


def reflection_matrix(vector):
    """Matrix of x -> x - 2 (x.v / v.v) v; column j is the image of basis vector j."""
    norm = vector.norm()
    if norm == 0:
        raise IsotropicVector(f"{vector} is isotropic")
    pairings = linalg.mat_vec(vector.home.matrix, vector.coords)
    n = vector.home.rank
    matrix = [
        [Fraction(int(i == j)) - Fraction(2 * vector.coords[i] * pairings[j], norm) for j in range(n)]
        for i in range(n)
    ]
    integral = all(x.denominator == 1 for row in matrix for x in row)
    return Reflection(matrix, integral)


def apply(matrix, coords):
    return [sum(m * c for m, c in zip(row, coords)) for row in matrix]


def preserves_form(lattice, matrix):
    """True iff ``matrix`` (columns are images) is an isometry of ``lattice``."""
    return linalg.mat_mul(linalg.mat_mul(linalg.transpose(matrix), lattice.matrix), matrix) == lattice.matrix


class Gluing(NamedTuple):
    lattice: GramLattice
    first: LatticeEmbedding
    second: LatticeEmbedding
    index: int


def glue(first, second, graph, even=False):
    """Overlattice of ``first + second`` generated by the glue vectors ``(a, b)``.

    ``a`` and ``b`` are rational vectors in the bases of the two pieces,
    representing classes of the two discriminant groups.
    """
    base = direct_sum(first, second)
    glue_vectors = []
    for a, b in graph:
        a, b = [Fraction(x) for x in a], [Fraction(x) for x in b]
        for piece, part in ((first, a), (second, b)):
            if any(Fraction(x).denominator != 1 for x in linalg.mat_vec(piece.matrix, part)):
                raise NotIsotropicGraph(f"{part} does not lie in the dual of {piece}")
        glue_vectors.append(a + b)
    for u, w in itertools.combinations_with_replacement(glue_vectors, 2):
        value = linalg.bilinear(base.matrix, u, w)
        if value.denominator != 1:
            raise NotIsotropicGraph(f"glue vectors pair to {value}, not an integer")
        if even and u is w and value % 2:
            raise NonIntegralOverlattice(f"glue vector of odd norm {value}")

    n = base.rank
    generators = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)] + glue_vectors
    scale = linalg.common_denominator([x for row in generators for x in row])
    scaled = linalg.row_basis([[int(x * scale) for x in row] for row in generators])
    basis = [[Fraction(x, scale) for x in row] for row in scaled]
    gram = [[linalg.bilinear(base.matrix, u, w) for w in basis] for u in basis]
    if any(x.denominator != 1 for row in gram for x in row):
        raise NonIntegralOverlattice("glued lattice has a non-integral Gram matrix")
    index = scale**n // abs(linalg.determinant(scaled))
    lattice = make_lattice([f"g{i + 1}" for i in range(n)], [[int(x) for x in row] for row in gram])
    if even and not is_even(lattice):
        raise NonIntegralOverlattice("glued lattice is not even")

    inverse = linalg.inverse(basis)
    coordinates = [[int(x) for x in row] for row in inverse]
    first_embedding = LatticeEmbedding(first, lattice, tuple(tuple(row) for row in coordinates[: first.rank]))
    second_embedding = LatticeEmbedding(second, lattice, tuple(tuple(row) for row in coordinates[first.rank :]))
    logger.debug("glued %s and %s with index %s", first, second, index)
    return Gluing(lattice, first_embedding, second_embedding, int(index))


def glue_overlattice(first, second, graph, even=False):
    return glue(first, second, graph, even=even).lattice


def load_lattice(path):
    with open(path) as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise MalformedInput(f"{path} is not valid JSON: {e}") from e
    return GramLattice.from_json(data)


def load_embedding(path):
    with open(path) as f:
        try:
            data = json.load(f)
        except json.JSONDecodeError as e:
            raise MalformedInput(f"{path} is not valid JSON: {e}") from e
    return LatticeEmbedding.from_json(data)
