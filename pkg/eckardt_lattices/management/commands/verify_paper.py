from django.core.management.base import CommandError
from django.core.management.color import no_style

from eckardt_lattices.exporters import ReportExporter
from eckardt_lattices.verification import FAIL, verify

from ..base import VERIFICATION_FAILED, LatticeCommand


class Command(LatticeCommand):
    help = "Recompute every lattice-theoretic and Hodge-theoretic claim and report the outcome"

    def add_arguments(self, parser):
        parser.add_argument("--format", choices=ReportExporter.FORMATS, default="text")
        parser.add_argument("--only", help="run only checks whose id starts with this prefix")
        parser.add_argument("--seed", type=int, help="seed for the pseudorandom checks")
        parser.add_argument("--out", help="write the report here instead of stdout")
        return super().add_arguments(parser)

    def handle_run(self, format, only, seed, out, **options):
        report = verify(only=only, seed=seed)
        style = no_style() if out else self.style
        self.emit(ReportExporter(format, style=style).export(report), out)
        if not report.passed:
            failed = [entry.id for entry in report.entries if entry.status == FAIL]
            raise CommandError(f"failed checks: {', '.join(failed)}", returncode=VERIFICATION_FAILED)
