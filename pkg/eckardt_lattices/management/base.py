import json
import logging
import os

from django.core.management.base import BaseCommand, CommandError
from django.core.management.color import no_style

from ..exceptions import LatticeError

logger = logging.getLogger("eckardt_lattices")

INPUT_ERROR = 2
VERIFICATION_FAILED = 1


class LatticeCommand(BaseCommand):
    """Dispatches ``handle_<subcommand>`` and maps library errors to exit codes."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        if os.environ.get("NO_COLOR"):
            self.style = no_style()

    def handle(self, *args, **options):
        if options["verbosity"] >= 2:
            logger.setLevel(logging.DEBUG)
        subcommand = options.get("subcommand") or "run"
        try:
            return getattr(self, f"handle_{subcommand}")(**options)
        except (LatticeError, OSError, json.JSONDecodeError) as e:
            raise CommandError(str(e), returncode=INPUT_ERROR) from e

    def emit(self, text, out=None):
        if out:
            with open(out, "w") as f:
                f.write(text)
        else:
            self.stdout.write(text, ending="")
