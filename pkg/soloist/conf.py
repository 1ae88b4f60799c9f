# Copyright (c) 2020, Vercer Ltd. Rights set out in LICENCE.txt

import logging

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

from soloist.constants import FailureBehaviour


logger = logging.getLogger(__name__)


DEFAULTS = {
    "SOLOIST_WORKERS": 1,
    "SOLOIST_ON_ALTERNATION": FailureBehaviour.WARN,
    "SOLOIST_DUMP_INTERMEDIATE": None,
}


def get_setting(name):
    """
    Read a SOLOIST_* setting from the Django settings, falling back to its default when it is not set or when the
    checker is used as a library without a configured project.
    """
    if not settings.configured:
        logger.debug("Django settings are not configured, using the default for %s", name)
        return DEFAULTS[name]
    return getattr(settings, name, DEFAULTS[name])


def workers():
    value = get_setting("SOLOIST_WORKERS")
    if not isinstance(value, int) or value < 1:
        raise ImproperlyConfigured("SOLOIST_WORKERS must be a positive integer, got {!r}".format(value))
    return value


def on_alternation():
    return FailureBehaviour(get_setting("SOLOIST_ON_ALTERNATION"))


def dump_intermediate():
    return get_setting("SOLOIST_DUMP_INTERMEDIATE")
