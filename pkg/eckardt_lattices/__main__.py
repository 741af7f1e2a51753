import os
import sys

ALIASES = {"verify-paper": "verify_paper"}


def main(argv=None):
    os.environ.setdefault("DJANGO_SETTINGS_MODULE", "eckardt_lattices.settings")
    from django.core.management import execute_from_command_line

    argv = list(sys.argv if argv is None else argv)
    if len(argv) > 1:
        argv[1] = ALIASES.get(argv[1], argv[1])
    execute_from_command_line(argv)


if __name__ == "__main__":
    main()
