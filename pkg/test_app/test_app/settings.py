"""
Django settings for the project that runs the soloist test suite.

Nothing is stored, so there is no database; the checker is the only installed app.
"""

import os

from soloist.constants import FailureBehaviour

# Build paths inside the project like this: os.path.join(BASE_DIR, ...)
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))

# Only used by the test runner
SECRET_KEY = "soloist-test-app-not-a-secret"

DEBUG = True

INSTALLED_APPS = [
    "soloist.apps.SoloistConfig",
]

DATABASES = {}

TEST_RUNNER = "django.test.runner.DiscoverRunner"


# Checker

SOLOIST_WORKERS = 1
SOLOIST_ON_ALTERNATION = FailureBehaviour.WARN
SOLOIST_DUMP_INTERMEDIATE = None


# Logging

LOGGING = {
    "version": 1,
    "disable_existing_loggers": False,
    "handlers": {"console": {"class": "logging.StreamHandler"}},
    "loggers": {"soloist": {"handlers": ["console"], "level": "ERROR"}},
}
