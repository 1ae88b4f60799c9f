# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import sys

import django
from django.conf import settings
from django.core.management import execute_from_command_line


SUBCOMMANDS = ("check", "diff", "gen")

USAGE = """usage: soloist {check,diff,gen} [options]

  check   check a formula on a trace (exit 0: holds, 1: does not hold, 2: bad input)
  diff    compare the engine with the oracle on random inputs
  gen     generate a random trace

Run `soloist <command> --help` for the options of a command.
"""

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "handlers": {"console": {"class": "logging.StreamHandler", "stream": "ext://sys.stderr"}},
    "loggers": {"soloist": {"handlers": ["console"], "level": "WARNING"}},
}


def configure():
    """ Outside a Django project, run with a minimal settings object that only installs the checker. """
    if not settings.configured:
        settings.configure(INSTALLED_APPS=["soloist.apps.SoloistConfig"], DATABASES={}, LOGGING=LOGGING)
    django.setup()


def main(argv=None):
    argv = list(sys.argv[1:] if argv is None else argv)
    if not argv or argv[0] not in SUBCOMMANDS:
        sys.stderr.write(USAGE)
        return 0 if argv and argv[0] in ("-h", "--help") else 2

    configure()
    execute_from_command_line(["soloist", "soloist_{}".format(argv[0])] + argv[1:])
    return 0


if __name__ == "__main__":
    sys.exit(main())
