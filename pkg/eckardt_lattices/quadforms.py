"""Finite bilinear and quadratic forms on discriminant groups.

Group elements are tuples of coefficients with respect to the generators of
the form. Bilinear values are kept in ``[0, 1)`` and quadratic values in
``[0, 2)`` so that tables compare syntactically.
"""

import itertools
import logging
from collections import Counter, deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import prod
from typing import NamedTuple

from . import linalg
from .conf import get_setting
from .exceptions import (
    CapExceeded,
    DimensionMismatch,
    EnumerationBoundExceeded,
    LatticeError,
    MalformedInput,
    NonIntegerValues,
    NotCharacteristic,
    NotTwoElementary,
)
from .lattice import (
    FiniteAbelianGroupPresentation,
    dual_and_discriminant,
    is_even,
    standard_lattice,
)

logger = logging.getLogger(__name__)

ISOMETRY = "isometry"
ANTI_ISOMETRY = "anti_isometry"


def _mod(value, modulus):
    return Fraction(value) % modulus


@dataclass(frozen=True)
class FiniteQuadraticForm:
    orders: tuple
    bilinear: tuple
    quadratic: tuple = None
    presentation: FiniteAbelianGroupPresentation = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        k = len(self.orders)
        if len(self.bilinear) != k or any(len(row) != k for row in self.bilinear):
            raise DimensionMismatch(f"bilinear table is not {k}x{k}")
        if self.quadratic is not None and len(self.quadratic) != k:
            raise DimensionMismatch(f"quadratic table has {len(self.quadratic)} values for {k} generators")
        for i, j in itertools.combinations(range(k), 2):
            if self.bilinear[i][j] != self.bilinear[j][i]:
                raise LatticeError(f"bilinear table is not symmetric at ({i},{j})")

    @property
    def rank(self):
        return len(self.orders)

    @property
    def order(self):
        return prod(self.orders)

    @property
    def is_two_elementary(self):
        return all(n == 2 for n in self.orders)

    @cached_property
    def elements(self):
        return list(itertools.product(*(range(n) for n in self.orders)))

    @cached_property
    def _radix(self):
        weights, w = [], 1
        for n in reversed(self.orders):
            weights.append(w)
            w *= n
        return tuple(reversed(weights))

    def index(self, x):
        return sum(c % n * w for c, n, w in zip(x, self.orders, self._radix))

    def add(self, x, y):
        return tuple((a + b) % n for a, b, n in zip(x, y, self.orders))

    def neg(self, x):
        return tuple(-a % n for a, n in zip(x, self.orders))

    def combine(self, coefficients, images):
        """``sum(c_i * images[i])`` reduced in the group."""
        result = [0] * self.rank
        for c, image in zip(coefficients, images):
            if c:
                result = [r + c * y for r, y in zip(result, image)]
        return tuple(r % n for r, n in zip(result, self.orders))

    def b(self, x, y):
        total = Fraction(0)
        for i, c in enumerate(x):
            if not c:
                continue
            for j, d in enumerate(y):
                if d:
                    total += c * d * self.bilinear[i][j]
        return total % 1

    def q(self, x):
        if self.quadratic is None:
            raise NonIntegerValues("form has no quadratic part")
        total = Fraction(0)
        for i, c in enumerate(x):
            if not c:
                continue
            total += c * c * self.quadratic[i]
            for j in range(i + 1, self.rank):
                if x[j]:
                    total += 2 * c * x[j] * self.bilinear[i][j]
        return total % 2

    def value(self, x):
        """q(x) when the quadratic part is present, otherwise b(x, x)."""
        if self.quadratic is None:
            return self.b(x, x)
        return self.q(x)

    @property
    def modulus(self):
        return 1 if self.quadratic is None else 2

    @cached_property
    def values(self):
        return [self.value(x) for x in self.elements]

    def reduce(self, coords):
        """Element of a lattice-vector class when generators are unit vectors mod their orders."""
        return tuple(c % n for c, n in zip(coords, self.orders))

    def to_json(self):
        return {
            "orders": list(self.orders),
            "bilinear": [[str(x) for x in row] for row in self.bilinear],
            "quadratic": None if self.quadratic is None else [str(x) for x in self.quadratic],
        }

    @classmethod
    def from_json(cls, data):
        try:
            quadratic = data.get("quadratic")
            return make_form(
                data["orders"],
                [[Fraction(x) for x in row] for row in data["bilinear"]],
                None if quadratic is None else [Fraction(x) for x in quadratic],
            )
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise MalformedInput(f"not a finite form document: {e}") from e


def make_form(orders, bilinear, quadratic=None, presentation=None):
    return FiniteQuadraticForm(
        tuple(int(n) for n in orders),
        tuple(tuple(_mod(x, 1) for x in row) for row in bilinear),
        None if quadratic is None else tuple(_mod(x, 2) for x in quadratic),
        presentation,
    )


def _form_from_presentation(lattice, presentation, quadratic_of=None):
    gram = lattice.matrix
    generators = presentation.generators
    bilinear = [[linalg.bilinear(gram, g, h) for h in generators] for g in generators]
    quadratic = None
    if quadratic_of is not None:
        quadratic = [quadratic_of(g) for g in generators]
    return make_form(presentation.orders, bilinear, quadratic, presentation)


def discriminant_form(lattice):
    _, presentation = dual_and_discriminant(lattice)
    quadratic_of = None
    if is_even(lattice):

        def quadratic_of(g):
            return linalg.bilinear(lattice.matrix, g, g)

    return _form_from_presentation(lattice, presentation, quadratic_of)


def _presentation_on(lattice, generators):
    gram = lattice.matrix
    generators = tuple(tuple(Fraction(x) for x in g) for g in generators)
    orders = []
    for g in generators:
        pairings = linalg.mat_vec(gram, g)
        if any(Fraction(x).denominator != 1 for x in pairings):
            raise LatticeError(f"{g} does not lie in the dual lattice")
        orders.append(linalg.common_denominator(g))
    presentation = FiniteAbelianGroupPresentation(generators, tuple(orders))
    det = abs(linalg.determinant(gram))
    if presentation.order != det or len(presentation.lookup) != det:
        raise DimensionMismatch(f"generators do not present a discriminant group of order {det}")
    return presentation


def form_on_generators(lattice, generators):
    """Discriminant form of ``lattice`` on chosen dual representatives."""
    presentation = _presentation_on(lattice, generators)
    quadratic_of = None
    if is_even(lattice):

        def quadratic_of(g):
            return linalg.bilinear(lattice.matrix, g, g)

    return _form_from_presentation(lattice, presentation, quadratic_of)


def characteristic_refinement(lattice, w, generators=None):
    """The form x^2 - x.w mod 2 on the discriminant group of an odd lattice."""
    gram = lattice.matrix
    pairings = linalg.mat_vec(gram, w)
    for i in range(lattice.rank):
        if (gram[i][i] - pairings[i]) % 2:
            raise NotCharacteristic(f"{w} is not characteristic: fails on basis vector {lattice.labels[i]}")
    if generators is None:
        _, presentation = dual_and_discriminant(lattice)
    else:
        presentation = _presentation_on(lattice, generators)

    def quadratic_of(g):
        return linalg.bilinear(gram, g, g) - linalg.dot(g, pairings)

    return _form_from_presentation(lattice, presentation, quadratic_of)


def value_distribution(form):
    return dict(sorted(Counter(form.values).items()))


def arf_invariant(form):
    if not form.is_two_elementary:
        raise NotTwoElementary(f"group with orders {form.orders} is not 2-elementary")
    if form.quadratic is None:
        raise NonIntegerValues("form has no quadratic part")
    counts = value_distribution(form)
    if any(v.denominator != 1 for v in counts):
        raise NonIntegerValues(f"quadratic values {sorted(counts)} are not integers")
    return int(counts.get(1, 0) > counts.get(0, 0))


def u_form():
    return make_form((2, 2), [[0, Fraction(1, 2)], [Fraction(1, 2), 0]], [0, 0])


def v_form():
    return make_form((2, 2), [[1, Fraction(1, 2)], [Fraction(1, 2), 1]], [1, 1])


def orthogonal_sum(*forms):
    orders = [n for f in forms for n in f.orders]
    k = len(orders)
    bilinear = [[Fraction(0)] * k for _ in range(k)]
    offset = 0
    for f in forms:
        for i, row in enumerate(f.bilinear):
            bilinear[offset + i][offset : offset + f.rank] = list(row)
        offset += f.rank
    quadratic = None
    if all(f.quadratic is not None for f in forms):
        quadratic = [x for f in forms for x in f.quadratic]
    return make_form(orders, bilinear, quadratic)


def halved_quotient_form(lattice):
    """(L/2L, x^2/2 mod 2) for an even lattice L, on the classes of the basis."""
    if not is_even(lattice):
        raise NonIntegerValues(f"{lattice} is not even")
    gram = lattice.matrix
    return make_form(
        [2] * lattice.rank,
        [[Fraction(x, 2) for x in row] for row in gram],
        [Fraction(gram[i][i], 2) for i in range(lattice.rank)],
    )


def quotient_form_E6():
    return halved_quotient_form(standard_lattice("E6"))


class _Matcher:
    """Backtracking search for maps f1 -> f2 matching values up to a sign."""

    def __init__(self, f1, f2, sign):
        self.f1, self.f2, self.sign = f1, f2, sign
        self.use_q = f1.quadratic is not None and f2.quadratic is not None
        modulus = 2 if self.use_q else 1
        self.modulus = modulus
        self.targets = [
            (sign * self._value(f1, g)) % modulus for g in self._generators(f1)
        ]
        buckets = {}
        for idx, x in enumerate(f2.elements):
            buckets.setdefault(self._value(f2, x), []).append(idx)
        self.buckets = buckets
        self.rows = {}

    @staticmethod
    def _generators(f):
        return [tuple(int(i == j) for j in range(f.rank)) for i in range(f.rank)]

    def _value(self, f, x):
        return f.q(x) if self.use_q else f.b(x, x)

    def _row(self, idx):
        if idx not in self.rows:
            x = self.f2.elements[idx]
            self.rows[idx] = [self.f2.b(x, y) for y in self.f2.elements]
        return self.rows[idx]

    def _annihilated(self, idx, n):
        return all(n * c % m == 0 for c, m in zip(self.f2.elements[idx], self.f2.orders))

    def _is_bijective(self, images):
        f2 = self.f2
        span = {tuple([0] * f2.rank)}
        for idx in images:
            y = f2.elements[idx]
            frontier = set(span)
            while True:
                grown = {f2.add(x, y) for x in frontier} - span
                if not grown:
                    break
                span |= grown
                frontier = grown
        return len(span) == f2.order

    def solutions(self):
        f1, f2 = self.f1, self.f2
        if f1.order != f2.order:
            return
        k = f1.rank
        two_elementary = f1.is_two_elementary and f2.is_two_elementary
        wanted = [
            [(self.sign * f1.bilinear[i][j]) % 1 for j in range(k)] for i in range(k)
        ]
        images = []
        spans = [{0}]

        def extend(i):
            if i == k:
                if two_elementary or self._is_bijective(images):
                    yield tuple(images)
                return
            for idx in self.buckets.get(self.targets[i], ()):
                if not self._annihilated(idx, f1.orders[i]):
                    continue
                if two_elementary and idx in spans[-1]:
                    continue
                if any(self._row(images[j])[idx] != wanted[i][j] for j in range(i)):
                    continue
                images.append(idx)
                if two_elementary:
                    span = spans[-1]
                    added = {f2.index(f2.add(f2.elements[s], f2.elements[idx])) for s in span}
                    spans.append(span | added)
                yield from extend(i + 1)
                images.pop()
                if two_elementary:
                    spans.pop()

        yield from extend(0)


def _sign(mode):
    if mode == ISOMETRY:
        return 1
    if mode == ANTI_ISOMETRY:
        return -1
    raise ValueError(f"mode {mode} is not supported")


def isometry_search(f1, f2, mode=ISOMETRY):
    """Images of the generators of ``f1`` under an (anti-)isometry onto ``f2``, or None."""
    matcher = _Matcher(f1, f2, _sign(mode))
    for images in matcher.solutions():
        return tuple(f2.elements[idx] for idx in images)
    logger.warning("no %s found between forms of orders %s and %s", mode, f1.orders, f2.orders)
    return None


def is_morphism(f1, f2, images, mode=ISOMETRY):
    """Exhaustive check that ``images`` define an (anti-)isometry f1 -> f2."""
    sign = _sign(mode)
    use_q = f1.quadratic is not None and f2.quadratic is not None
    mapped = {x: f2.combine(x, images) for x in f1.elements}
    if len(set(mapped.values())) != f2.order or f1.order != f2.order:
        return False
    for x in f1.elements:
        if use_q and f2.q(mapped[x]) != (sign * f1.q(x)) % 2:
            return False
        for y in f1.elements:
            if f2.b(mapped[x], mapped[y]) != (sign * f1.b(x, y)) % 1:
                return False
    return True


def action_matrix(images):
    """Matrix whose columns are the coefficient vectors of ``images``."""
    return [list(row) for row in zip(*images)]


class GroupEnumeration(NamedTuple):
    order: int
    elements: list


def _permutation(form, images):
    return tuple(form.index(form.combine(x, images)) for x in form.elements)


def orthogonal_group(form, generators=None, cap=None):
    """O(form) by full search, or the subgroup generated by ``generators``.

    Elements are tuples of generator images, each image an element tuple.
    """
    cap = cap or get_setting("GROUP_CAP")
    bound = get_setting("ENUMERATION_BOUND")
    if form.order > bound:
        raise EnumerationBoundExceeded(f"group of order {form.order} exceeds the bound {bound}")
    if generators is None:
        elements = []
        for images in _Matcher(form, form, 1).solutions():
            elements.append(tuple(form.elements[idx] for idx in images))
            if len(elements) > cap:
                raise CapExceeded(f"orthogonal group exceeds {cap} elements")
        logger.info("full orthogonal group of a form of order %s has %s elements", form.order, len(elements))
        return GroupEnumeration(len(elements), sorted(elements))

    permutations = [_permutation(form, images) for images in generators]
    identity = tuple(form.index(tuple(int(i == j) for j in range(form.rank))) for i in range(form.rank))
    seen = {identity}
    queue = deque([identity])
    while queue:
        current = queue.popleft()
        for perm in permutations:
            image = tuple(perm[idx] for idx in current)
            if image not in seen:
                seen.add(image)
                if len(seen) > cap:
                    raise CapExceeded(f"generated group exceeds {cap} elements")
                queue.append(image)
    logger.info("closure of %s generators has %s elements", len(generators), len(seen))
    elements = sorted(tuple(form.elements[idx] for idx in key) for key in seen)
    return GroupEnumeration(len(elements), elements)


def orbit(form, generators, element):
    permutations = [_permutation(form, images) for images in generators]
    start = form.index(tuple(element))
    seen = {start}
    queue = deque([start])
    while queue:
        current = queue.popleft()
        for perm in permutations:
            if perm[current] not in seen:
                seen.add(perm[current])
                queue.append(perm[current])
    return sorted(form.elements[idx] for idx in seen)


def induced_action(lattice, form, matrix):
    """Images of the generators of ``form`` under a lattice isometry.

    ``matrix`` has the images of the basis vectors of ``lattice`` as columns.
    """
    presentation = form.presentation
    if presentation is None:
        raise LatticeError("form is not attached to a lattice presentation")
    images = []
    for g in presentation.generators:
        image = [sum(m * x for m, x in zip(row, g)) for row in matrix]
        coordinates = presentation.coordinates(image)
        if coordinates is None:
            raise LatticeError(f"matrix does not preserve the dual of {lattice}")
        images.append(tuple(coordinates))
    return tuple(images)


def transport(images, isometry, source, target):
    """Conjugate an automorphism of ``source`` onto ``target``.

    ``isometry`` gives the images in ``target`` of the generators of ``source``.
    """
    forward = {x: target.combine(x, isometry) for x in source.elements}
    backward = {y: x for x, y in forward.items()}
    result = []
    for i in range(target.rank):
        x = backward[tuple(int(i == j) for j in range(target.rank))]
        result.append(forward[source.combine(x, images)])
    return tuple(result)
