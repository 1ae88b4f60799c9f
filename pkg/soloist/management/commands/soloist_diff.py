# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import re

from django.core.management.base import BaseCommand, CommandError

from soloist.exceptions import SoloistError
from soloist.testing import differential_check


SEEDS_REGEX = re.compile(r"^(\d+)\.\.(\d+)$")


def seed_range(value):
    match = SEEDS_REGEX.match(value)
    if not match or int(match.group(1)) > int(match.group(2)):
        raise CommandError("--seeds expects A..B with A <= B, got {!r}".format(value), returncode=2)
    return range(int(match.group(1)), int(match.group(2)) + 1)


class Command(BaseCommand):
    help = "Compare the engine with the oracle on random traces and formulae, one pair per seed."

    def add_arguments(self, parser):
        parser.add_argument("--seeds", default="1..100", help="Inclusive seed range A..B")
        parser.add_argument("--height-max", dest="height_max", type=int, default=4)
        parser.add_argument("--trace-len-max", dest="trace_len_max", type=int, default=200)
        parser.add_argument("--atoms", type=int, default=8)
        parser.add_argument("--workers", type=int, default=1)

    def handle(self, *args, **options):
        seeds = seed_range(options["seeds"])
        if options["trace_len_max"] < 1 or options["atoms"] < 1 or options["height_max"] < 0:
            raise CommandError("--trace-len-max and --atoms must be positive and --height-max not negative", returncode=2)

        passed = failed = 0
        for seed in seeds:
            try:
                outcome = differential_check(
                    seed,
                    height_max=options["height_max"],
                    trace_len_max=options["trace_len_max"],
                    atoms=options["atoms"],
                    workers=options["workers"],
                )
            except SoloistError as e:
                raise CommandError("seed {}: {}".format(seed, e), returncode=2)

            if outcome.passed:
                passed += 1
                continue
            if not failed:
                self.stdout.write("first divergence: seed={} root={}".format(seed, outcome.formula))
                self.stdout.write(str(outcome.divergence))
            failed += 1

        self.stdout.write("passed={}".format(passed))
        self.stdout.write("failed={}".format(failed))
        if failed:
            raise CommandError("{} of {} seeds diverged".format(failed, len(seeds)), returncode=1)
