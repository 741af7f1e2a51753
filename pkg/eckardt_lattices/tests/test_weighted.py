import itertools
import random
from fractions import Fraction
from unittest import mock

from django.test import SimpleTestCase

from eckardt_lattices.exceptions import InconsistentClassification, InvalidParams, NoFermatMember, OddDimension
from eckardt_lattices.weighted import (
    PARTITIONS_OF_ONE_INTO_FOUR,
    PARTITIONS_OF_ONE_INTO_THREE,
    QUASI_K3_FOURFOLDS,
    WeightedHypersurface,
    classify_quasi_k3_fermat_fourfolds,
    counterexample_report,
    eckardt_fermat_eigenspaces,
    expected_lead_terms,
    fermat_exists,
    fermat_hodge_numbers,
    infinite_family_check,
    is_numerical_k3_fermat,
    is_quasi_k3,
    is_well_formed,
    jacobian_lead_terms,
    s_of,
    threefold_section_h21,
    unit_fraction_partitions,
    well_form,
)


class UnitFractionPartitionsTest(SimpleTestCase):
    def test_known_lists(self):
        self.assertEqual(tuple(unit_fraction_partitions(1, 4)), PARTITIONS_OF_ONE_INTO_FOUR)
        self.assertEqual(tuple(unit_fraction_partitions(1, 3)), PARTITIONS_OF_ONE_INTO_THREE)
        self.assertEqual(unit_fraction_partitions(1, 2), [(2, 2)])
        self.assertEqual(unit_fraction_partitions(1, 1), [])
        self.assertEqual(unit_fraction_partitions(Fraction(1, 2), 1), [(2,)])

    def test_matches_bounded_brute_force(self):
        for parts, largest in ((3, 6), (4, 42)):
            brute = [
                c
                for c in itertools.combinations_with_replacement(range(2, largest + 1), parts)
                if sum(Fraction(1, n) for n in c) == 1
            ]
            self.assertEqual(unit_fraction_partitions(1, parts), sorted(brute))

    def test_invalid_target(self):
        with self.assertRaises(InvalidParams):
            unit_fraction_partitions(0, 3)
        with self.assertRaises(InvalidParams):
            unit_fraction_partitions(1, 0)


class HypersurfaceTest(SimpleTestCase):
    def test_cubic_fourfold(self):
        weights = (1,) * 6
        self.assertTrue(is_quasi_k3(weights, 3))
        self.assertTrue(fermat_exists(weights, 3))
        self.assertEqual(s_of(weights), 6)
        self.assertEqual(fermat_hodge_numbers(weights, 3), [0, 1, 20, 1, 0])

    def test_quartic_surface(self):
        self.assertEqual(fermat_hodge_numbers((1, 1, 1, 1), 4), [1, 19, 1])
        self.assertTrue(is_numerical_k3_fermat((1, 1, 1, 1), 4))

    def test_record(self):
        surface = WeightedHypersurface((1, 1, 1, 1), 4)
        self.assertEqual(surface.dimension, 2)
        self.assertEqual(surface.exponents, (4, 4, 4, 4))
        self.assertEqual(str(surface), "P(1,1,1,1) degree 4")
        with self.assertRaises(InvalidParams):
            WeightedHypersurface((1, 0), 2)

    def test_well_forming(self):
        self.assertTrue(is_well_formed((1, 1, 1, 1, 1, 1)))
        self.assertFalse(is_well_formed((1, 2, 2)))
        self.assertEqual(well_form((2, 2, 2, 2, 2, 2), 6), ((1, 1, 1, 1, 1, 1), 3))
        self.assertEqual(well_form((1, 2, 2), 4), ((1, 1, 1), 2))
        self.assertEqual(well_form((1, 2, 2, 2, 2, 3), 6), ((1, 2, 2, 2, 2, 3), 6))

    def test_errors(self):
        with self.assertRaises(NoFermatMember):
            fermat_hodge_numbers((1, 3, 5, 5), 16)
        with self.assertRaises(OddDimension):
            is_numerical_k3_fermat((1, 1, 1, 1, 1), 3)


class QuasiK3FourfoldTest(SimpleTestCase):
    def test_table_rows(self):
        for case, weights, degree, h22 in QUASI_K3_FOURFOLDS:
            with self.subTest(case=case):
                hodge = fermat_hodge_numbers(weights, degree)
                self.assertTrue(is_quasi_k3(weights, degree))
                self.assertEqual(hodge, hodge[::-1])
                self.assertEqual(hodge[:2], [0, 1])
                self.assertEqual(hodge[2], h22)

    def test_classifier(self):
        rows = classify_quasi_k3_fermat_fourfolds()
        self.assertEqual(len(rows), 17)
        self.assertEqual({row["case"] for row in rows}, {f"N{i}" for i in range(1, 18)})
        by_case = {row["case"]: row for row in rows}
        self.assertEqual(by_case["N3"]["weights"], [3, 3, 4, 4, 4, 6])
        self.assertEqual(by_case["N3"]["h22_prim"], 2)

    def test_rows_do_not_depend_on_weight_order(self):
        rng = random.Random(5)
        for row in classify_quasi_k3_fermat_fourfolds():
            shuffled = list(row["weights"])
            rng.shuffle(shuffled)
            with self.subTest(case=row["case"], weights=shuffled):
                self.assertTrue(is_quasi_k3(shuffled, row["degree"]))
                self.assertTrue(fermat_exists(shuffled, row["degree"]))
                self.assertEqual(fermat_hodge_numbers(shuffled, row["degree"]), row["hodge"])
                weights, degree = well_form(shuffled, row["degree"])
                self.assertEqual((sorted(weights), degree), (row["weights"], row["degree"]))

    def test_disagreeing_enumerations(self):
        with mock.patch("eckardt_lattices.weighted.structural_families", return_value=set()):
            with self.assertRaises(InconsistentClassification):
                classify_quasi_k3_fermat_fourfolds()

    def test_sections(self):
        sections = threefold_section_h21()
        self.assertEqual({case: s["h21"] for case, s in sections.items()}, {"N1": 5, "N2": 4, "N3": 2})


class RemarksTest(SimpleTestCase):
    def test_counterexamples(self):
        report = counterexample_report()
        self.assertTrue(report["passed"])
        self.assertEqual(report["surface_h20"], 1)

    def test_infinite_family(self):
        for d, e in ((4, 1), (4, 3), (5, 1)):
            with self.subTest(d=d, e=e):
                self.assertTrue(infinite_family_check(d, e)["passed"])
        with self.assertRaises(InvalidParams):
            infinite_family_check(2, 1)
        with self.assertRaises(InvalidParams):
            infinite_family_check(4, 0)

    def test_eckardt_eigenspaces(self):
        self.assertEqual(jacobian_lead_terms(), expected_lead_terms())
        self.assertEqual(eckardt_fermat_eigenspaces(), (6, 14, 1))
