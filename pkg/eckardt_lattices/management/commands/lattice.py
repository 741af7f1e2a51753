import json

from eckardt_lattices.lattice import (
    determinant,
    is_even,
    is_primitive,
    load_embedding,
    load_lattice,
    orthogonal_complement,
    signature,
)
from eckardt_lattices.quadforms import discriminant_form, value_distribution
from eckardt_lattices.roots import short_vectors

from ..base import LatticeCommand


def _signature(lattice):
    pos, neg, zero = signature(lattice)
    return [pos, neg] if not zero else [pos, neg, zero]


def _summary(lattice):
    return {
        "rank": lattice.rank,
        "determinant": determinant(lattice),
        "signature": _signature(lattice),
        "even": is_even(lattice),
    }


class Command(LatticeCommand):
    help = "Invariants, complements, discriminant forms and short vectors of integral lattices"

    def add_arguments(self, parser):
        subparsers = parser.add_subparsers(dest="subcommand", required=True)

        info = subparsers.add_parser("info", help="rank, determinant, signature and parity")
        info.add_argument("--file", required=True)

        complement = subparsers.add_parser("complement", help="orthogonal complement of an embedding")
        complement.add_argument("--file", required=True, help="embedding document")

        discriminant = subparsers.add_parser("discriminant", help="discriminant group and form")
        discriminant.add_argument("--file", required=True)

        roots = subparsers.add_parser("roots", help="number of vectors of a given norm")
        roots.add_argument("--file", required=True)
        roots.add_argument("--norm", type=int, default=2)

        for subparser in (info, complement, discriminant, roots):
            subparser.add_argument("--format", choices=["text", "json"], default="text")
        return super().add_arguments(parser)

    def _write(self, data, format, lines):
        if format == "json":
            self.emit(json.dumps(data, indent=2) + "\n")
        else:
            self.emit("".join(f"{line}\n" for line in lines))

    def handle_info(self, file, format, **options):
        lattice = load_lattice(file)
        data = _summary(lattice)
        self._write(
            data,
            format,
            [
                f"rank {data['rank']}",
                f"determinant {data['determinant']}",
                f"signature ({', '.join(map(str, data['signature']))})",
                "even" if data["even"] else "odd",
            ],
        )

    def handle_complement(self, file, format, **options):
        embedding = load_embedding(file)
        complement = orthogonal_complement(embedding)
        data = complement.to_json()
        data["primitive"] = is_primitive(embedding)
        data.update(_summary(complement.sub))
        lines = [f"rank {complement.sub.rank}", f"determinant {data['determinant']}", "gram:"]
        lines += ["  " + " ".join(str(x) for x in row) for row in complement.sub.gram]
        lines.append("images:")
        lines += ["  " + " ".join(str(x) for x in row) for row in complement.rows]
        self._write(data, format, lines)

    def handle_discriminant(self, file, format, **options):
        lattice = load_lattice(file)
        form = discriminant_form(lattice)
        data = form.to_json()
        data["order"] = form.order
        data["values"] = {str(k): v for k, v in value_distribution(form).items()}
        orders = " x ".join(f"Z/{n}" for n in form.orders) or "0"
        lines = [f"group {orders} of order {form.order}", "bilinear:"]
        lines += ["  " + " ".join(row) for row in data["bilinear"]]
        if data["quadratic"] is not None:
            lines.append("quadratic: " + " ".join(data["quadratic"]))
        lines.append("values: " + ", ".join(f"{k}: {v}" for k, v in data["values"].items()))
        self._write(data, format, lines)

    def handle_roots(self, file, norm, format, **options):
        lattice = load_lattice(file)
        count = 2 * len(short_vectors(lattice, norm))
        self._write({"norm": norm, "count": count}, format, [str(count)])
