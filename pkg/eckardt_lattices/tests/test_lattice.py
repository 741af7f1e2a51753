import json
import os
import random
import tempfile
from collections import Counter
from fractions import Fraction
from math import gcd, lcm

from django.test import SimpleTestCase

from eckardt_lattices import linalg
from eckardt_lattices.exceptions import (
    AsymmetricGram,
    DegenerateLattice,
    InvalidRank,
    IsotropicVector,
    MalformedInput,
    NonIntegralOverlattice,
    NotIsotropicGraph,
    UnknownKind,
    ZeroScale,
    ZeroVector,
)
from eckardt_lattices.lattice import (
    GramLattice,
    LatticeEmbedding,
    determinant,
    direct_sum,
    divisibility,
    dual_and_discriminant,
    glue,
    glue_overlattice,
    is_even,
    is_primitive,
    load_lattice,
    make_lattice,
    orthogonal_complement,
    preserves_form,
    reflection_matrix,
    relabel,
    rescale,
    saturation,
    signature,
    standard_lattice,
)
from eckardt_lattices.quadforms import discriminant_form
from eckardt_lattices.roots import root_count


def line_embedding(ambient, coords):
    vector = ambient.vector(coords)
    return LatticeEmbedding(make_lattice(["v"], [[vector.norm()]]), ambient, (tuple(coords),))


class StandardLatticeTest(SimpleTestCase):
    def test_determinants(self):
        expected = {"A2": 3, "A4": 5, "D4": 4, "D5": 4, "E6": 3, "E7": 2, "E8": 1}
        for kind, det in expected.items():
            with self.subTest(kind=kind):
                lattice = standard_lattice(kind)
                self.assertEqual(determinant(lattice), det)
                self.assertTrue(is_even(lattice))
                self.assertEqual(signature(lattice), (lattice.rank, 0, 0))

    def test_hyperbolic_plane_and_odd_lattices(self):
        u = standard_lattice("U")
        self.assertEqual(determinant(u), -1)
        self.assertEqual(signature(u), (1, 1, 0))
        odd = standard_lattice("I", p=2, q=1)
        self.assertEqual(determinant(odd), -1)
        self.assertFalse(is_even(odd))

    def test_rank_passed_separately(self):
        self.assertEqual(standard_lattice("D", 6).gram, standard_lattice("D6").gram)

    def test_invalid_requests(self):
        with self.assertRaises(InvalidRank):
            standard_lattice("D3")
        with self.assertRaises(InvalidRank):
            standard_lattice("E9")
        with self.assertRaises(UnknownKind):
            standard_lattice("F4")
        with self.assertRaises(InvalidRank):
            standard_lattice("I")
        with self.assertRaises(ZeroScale):
            rescale(standard_lattice("A2"), 0)

    def test_rescale_and_direct_sum(self):
        e6 = rescale(standard_lattice("E6"), 2)
        self.assertEqual(determinant(e6), 3 * 2**6)
        total = direct_sum(standard_lattice("U"), standard_lattice("D4"))
        self.assertEqual(total.rank, 6)
        self.assertEqual(determinant(total), -4)


class GramLatticeTest(SimpleTestCase):
    def test_asymmetric_gram_is_rejected(self):
        with self.assertRaises(AsymmetricGram):
            make_lattice(None, [[2, 1], [0, 2]])

    def test_vectors(self):
        u = standard_lattice("U")
        v = u.combination(e=1, f=1)
        self.assertEqual(v.norm(), 2)
        self.assertEqual(str(v), "e+f")
        self.assertEqual(str(2 * v - u.basis_vector("f")), "2e+f")
        self.assertEqual((3 * v).content(), 3)
        self.assertFalse((3 * v).is_primitive())

    def test_json_document(self):
        lattice = relabel(standard_lattice("A2"), ["x", "y"])
        self.assertEqual(GramLattice.from_json(json.loads(json.dumps(lattice.to_json()))), lattice)
        with self.assertRaises(MalformedInput):
            GramLattice.from_json({"gram": [[2]]})

    def test_load_lattice(self):
        with tempfile.TemporaryDirectory() as directory:
            good = os.path.join(directory, "a2.json")
            with open(good, "w") as f:
                json.dump(standard_lattice("A2").to_json(), f)
            self.assertEqual(determinant(load_lattice(good)), 3)

            bad = os.path.join(directory, "bad.json")
            with open(bad, "w") as f:
                f.write("{not json")
            with self.assertRaises(MalformedInput):
                load_lattice(bad)


class DiscriminantGroupTest(SimpleTestCase):
    def test_known_groups(self):
        self.assertEqual(dual_and_discriminant(standard_lattice("D4"))[1].orders, (2, 2))
        self.assertEqual(dual_and_discriminant(standard_lattice("A2"))[1].orders, (3,))
        self.assertEqual(dual_and_discriminant(standard_lattice("E8"))[1].orders, ())

    def test_degenerate_lattice(self):
        with self.assertRaises(DegenerateLattice):
            dual_and_discriminant(make_lattice(None, [[2, 2], [2, 2]]))

    def test_structure_and_values_match_brute_force(self):
        rng = random.Random(2)
        tested = 0
        while tested < 20:
            n = rng.randint(1, 4)
            ambient = standard_lattice(f"A{n}").matrix if tested % 2 else linalg.identity(n)
            basis = [[rng.randint(-1, 1) for _ in range(n)] for _ in range(n)]
            gram = linalg.gram_of(ambient, basis)
            det = linalg.determinant(gram)
            if det <= 0 or det > (30 if n < 4 else 10):
                continue
            lattice = make_lattice(None, gram)
            dual, presentation = dual_and_discriminant(lattice)
            modulus = 2 if is_even(lattice) else 1
            classes = {tuple(x % 1 for x in linalg.mat_vec(dual, y)) for y in _box(n, det)}
            # finite abelian groups are determined by how many elements have each order
            orders = Counter(
                lcm(*(k // gcd(c, k) for c, k in zip(x, presentation.orders))) for x in presentation.elements()
            )
            self.assertEqual(orders, Counter(lcm(*(x.denominator for x in c)) for c in classes))
            for a, b in zip(presentation.orders, presentation.orders[1:]):
                self.assertEqual(b % a, 0)
            values = Counter(linalg.bilinear(gram, c, c) % modulus for c in classes)
            self.assertEqual(Counter(discriminant_form(lattice).values), values)
            tested += 1

    def test_order_matches_brute_force(self):
        rng = random.Random(1)
        tested = 0
        while tested < 25:
            n = rng.randint(1, 3)
            basis = [[rng.randint(-2, 2) for _ in range(n)] for _ in range(n)]
            gram = linalg.gram_of(linalg.identity(n), linalg.transpose(basis))
            det = linalg.determinant(gram)
            if det == 0 or det > 30:
                continue
            lattice = make_lattice(None, gram)
            dual, presentation = dual_and_discriminant(lattice)
            # classes of G^-1 y mod Z^n with y in a box of side det cover L*/L
            classes = set()
            for y in _box(n, det):
                classes.add(tuple(x % 1 for x in linalg.mat_vec(dual, y)))
            self.assertEqual(len(classes), presentation.order)
            self.assertEqual(presentation.order, det)
            self.assertEqual(len(presentation.lookup), det)
            tested += 1


def _box(n, side):
    if n == 0:
        yield []
        return
    for rest in _box(n - 1, side):
        for x in range(side):
            yield rest + [x]


class ComplementTest(SimpleTestCase):
    def test_complement_of_the_all_ones_vector_is_a2(self):
        ambient = standard_lattice("I", p=3, q=0)
        complement = orthogonal_complement(line_embedding(ambient, (1, 1, 1)))
        self.assertEqual(complement.sub.rank, 2)
        self.assertEqual(determinant(complement.sub), 3)
        self.assertTrue(is_even(complement.sub))
        self.assertTrue(is_primitive(complement))

    def test_saturation(self):
        ambient = standard_lattice("I", p=3, q=0)
        embedding = line_embedding(ambient, (2, 0, 0))
        self.assertFalse(is_primitive(embedding))
        saturated = saturation(embedding)
        self.assertEqual(saturated.rows, [[1, 0, 0]])
        self.assertTrue(saturation(saturated).same_image(saturated))

    def test_saturation_is_idempotent(self):
        rng = random.Random(2)
        ambient = standard_lattice("E8")
        for _ in range(10):
            rows = [[rng.randint(-3, 3) * rng.choice((1, 2)) for _ in range(8)] for _ in range(3)]
            if linalg.rank_of(rows) != 3:
                continue
            embedding = LatticeEmbedding(
                make_lattice(None, linalg.gram_of(ambient.matrix, rows)),
                ambient,
                tuple(tuple(r) for r in rows),
            )
            once = saturation(embedding)
            self.assertTrue(is_primitive(once))
            self.assertTrue(saturation(once).same_image(once))
            complement = orthogonal_complement(embedding)
            self.assertEqual(complement.sub.rank, 5)
            self.assertTrue(is_primitive(complement))


class DivisibilityTest(SimpleTestCase):
    def test_divisibility(self):
        u = standard_lattice("U")
        self.assertEqual(divisibility(u.combination(e=1)), 1)
        self.assertEqual(divisibility(u.combination(e=2, f=4)), 2)
        d4 = standard_lattice("D4")
        self.assertEqual(divisibility(d4.basis_vector("a1")), 1)
        with self.assertRaises(ZeroVector):
            divisibility(u.vector((0, 0)))


class ReflectionTest(SimpleTestCase):
    def test_reflections_in_roots_are_integral_involutions(self):
        e8 = standard_lattice("E8")
        roots = [e8.basis_vector(label) for label in e8.labels]
        roots.append(e8.combination(a1=1, a3=1))
        roots.append(e8.combination(a4=1, a5=1))
        for root in roots:
            reflection = reflection_matrix(root)
            self.assertTrue(reflection.integral)
            self.assertTrue(preserves_form(e8, reflection.matrix))
            square = linalg.mat_mul(reflection.matrix, reflection.matrix)
            self.assertEqual(square, linalg.identity(8))

    def test_non_integral_reflection(self):
        square = standard_lattice("I", p=2, q=0)
        reflection = reflection_matrix(square.vector((1, 2)))
        self.assertFalse(reflection.integral)
        self.assertTrue(preserves_form(square, reflection.matrix))

    def test_isotropic_vector(self):
        with self.assertRaises(IsotropicVector):
            reflection_matrix(standard_lattice("U").combination(e=1))


class GlueTest(SimpleTestCase):
    def setUp(self):
        self.first = relabel(standard_lattice("A1"), ["x"])
        self.second = relabel(standard_lattice("A1"), ["y"])

    def test_two_copies_of_a1_glue_to_the_odd_square_lattice(self):
        half = [Fraction(1, 2)]
        gluing = glue(self.first, self.second, [(half, half)])
        self.assertEqual(gluing.index, 2)
        self.assertEqual(determinant(gluing.lattice), 1)
        self.assertEqual(determinant(gluing.lattice) * gluing.index**2, 4)
        self.assertFalse(is_even(gluing.lattice))
        self.assertTrue(is_primitive(gluing.first))
        self.assertTrue(orthogonal_complement(gluing.first).same_image(gluing.second))

    def test_even_gluing_rejects_odd_glue(self):
        half = [Fraction(1, 2)]
        with self.assertRaises(NonIntegralOverlattice):
            glue(self.first, self.second, [(half, half)], even=True)

    def test_glue_outside_the_dual(self):
        with self.assertRaises(NotIsotropicGraph):
            glue(self.first, self.second, [([Fraction(1, 3)], [0])])

    def test_non_isotropic_graph(self):
        with self.assertRaises(NotIsotropicGraph):
            glue(self.first, self.second, [([Fraction(1, 2)], [0])])

    def test_overlattice_of_two_a1_copies(self):
        half = [Fraction(1, 2)]
        lattice = glue_overlattice(self.first, self.second, [(half, half)])
        self.assertEqual(lattice.rank, 2)
        self.assertEqual(determinant(lattice), 1)
        self.assertEqual(signature(lattice), (2, 0, 0))

    def test_two_copies_of_d4_glue_to_e8(self):
        first = relabel(standard_lattice("D4"), ["p1", "p2", "p3", "p4"])
        second = relabel(standard_lattice("D4"), ["r1", "r2", "r3", "r4"])
        half = Fraction(1, 2)
        # fundamental weights w1 and w3, glued diagonally
        w1, w3 = [1, 1, half, half], [half, 1, 1, half]
        gluing = glue(first, second, [(w1, w1), (w3, w3)], even=True)
        self.assertEqual(gluing.index, 4)
        self.assertEqual(determinant(gluing.lattice) * gluing.index**2, determinant(first) * determinant(second))
        self.assertEqual(determinant(gluing.lattice), 1)
        self.assertTrue(is_even(gluing.lattice))
        self.assertEqual(root_count(gluing.lattice), 240)
