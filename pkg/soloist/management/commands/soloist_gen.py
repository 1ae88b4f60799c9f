# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

from django.core.management.base import BaseCommand, CommandError

from soloist.exceptions import GeneratorParameterError
from soloist.trace import generate_random_trace, save_trace


class Command(BaseCommand):
    help = "Write a random trace with uniformly drawn atoms and timestamp gaps."

    def add_arguments(self, parser):
        parser.add_argument("--seed", type=int, required=True)
        parser.add_argument("--len", dest="length", type=int, required=True, help="Number of positions")
        parser.add_argument("--atoms", type=int, required=True, help="Size of the atom universe a0..a{U-1}")
        parser.add_argument("--max-per-instant", dest="max_per_instant", type=int, required=True)
        parser.add_argument("--max-gap", dest="max_gap", type=int, required=True)
        parser.add_argument("--out", required=True, help="Trace file to write")

    def handle(self, *args, **options):
        try:
            trace = generate_random_trace(
                options["seed"],
                length=options["length"],
                atom_universe_size=options["atoms"],
                max_atoms_per_instant=options["max_per_instant"],
                max_gap=options["max_gap"],
            )
            with open(options["out"], "wb") as fh:
                save_trace(trace, fh)
        except (GeneratorParameterError, OSError) as e:
            raise CommandError(str(e), returncode=2)
