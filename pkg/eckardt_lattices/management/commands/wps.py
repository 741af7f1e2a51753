import argparse
from fractions import Fraction

from eckardt_lattices.exceptions import InvalidParams
from eckardt_lattices.exporters import HodgeTableExporter, PartitionExporter
from eckardt_lattices.weighted import (
    QUASI_K3_FOURFOLDS,
    WeightedHypersurface,
    classify_quasi_k3_fermat_fourfolds,
    fermat_hodge_numbers,
    is_quasi_k3,
    unit_fraction_partitions,
    well_form,
)

from ..base import LatticeCommand


def weight_list(value):
    try:
        weights = [int(w) for w in value.split(",")]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"weights must be comma separated integers, got {value}") from e
    return weights


class Command(LatticeCommand):
    help = "Fermat hypersurfaces in weighted projective space"

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest="subcommand", required=True)

        classify = subparsers.add_parser("classify", help="quasi-K3 Fermat hypersurfaces")
        classify.add_argument("--dim", type=int, default=4)
        classify.add_argument("--fermat", action="store_true")

        hodge = subparsers.add_parser("hodge", help="primitive Hodge numbers of the Fermat member")
        hodge.add_argument("--weights", type=weight_list, required=True)
        hodge.add_argument("--degree", type=int, required=True)

        partitions = subparsers.add_parser("partitions", help="sums of unit fractions")
        partitions.add_argument("--target", type=Fraction, default=Fraction(1))
        partitions.add_argument("--parts", type=int, required=True)

        for subparser in (classify, hodge, partitions):
            subparser.add_argument("--format", choices=HodgeTableExporter.FORMATS, default="table")
        return super().add_arguments(parser)

    def handle_classify(self, dim, fermat, format, **options):
        if dim != 4:
            raise InvalidParams(f"classification is available for fourfolds only, got dimension {dim}")
        if not fermat:
            raise InvalidParams("only hypersurfaces with a Fermat member are classified; pass --fermat")
        rows = classify_quasi_k3_fermat_fourfolds()
        self.emit(HodgeTableExporter(format, style=self.style).export(rows))

    def handle_hodge(self, weights, degree, format, **options):
        hypersurface = WeightedHypersurface(tuple(weights), degree)
        weights, degree = well_form(hypersurface.weights, hypersurface.degree)
        hodge = fermat_hodge_numbers(weights, degree)
        cases = {(w, d): case for case, w, d, _ in QUASI_K3_FOURFOLDS}
        row = {
            "case": cases.get((tuple(sorted(weights)), degree)),
            "weights": list(weights),
            "degree": degree,
            "h22_prim": hodge[2] if len(weights) == 6 else None,
            "hodge": hodge,
            "quasi_k3": is_quasi_k3(weights, degree),
        }
        self.emit(HodgeTableExporter(format, style=self.style).export([row]))

    def handle_partitions(self, target, parts, format, **options):
        found = unit_fraction_partitions(target, parts)
        self.emit(PartitionExporter(format, style=self.style).export(found))
